#include <algorithm>
#include <stdexcept>

#include "gen.hpp"

namespace steal_lab {
namespace detail {

Gen::Gen(const KernelConfig& cfg, AddressSpace& space)
    : t_(std::max<std::uint32_t>(cfg.leaf, 1)), bw_(cfg.block_words), space_(space), b_(cfg.node_cap) {
  if (!is_pow2(t_)) throw std::invalid_argument("leaf size must be a power of two");
  b_.set_fork_join_work(cfg.fork_work, cfg.join_work);
}

MatView Gen::alloc_matrix(const std::string& name, std::uint64_t n, Value* data) {
  return {data, space_.allocate(name, n * n), 0, 0, n};
}

VecView Gen::alloc_vector(const std::string& name, std::uint64_t m, Value* data) {
  return {data, space_.allocate(name, m), VecLayout::contiguous, 0, 0, m};
}

MatView Gen::scratch_matrix(const std::string& kind, std::uint64_t n, bool values) {
  auto [it, fresh] = scratch_.try_emplace({kind, n});
  if (fresh) it->second.addr = space_.allocate("scratch:" + kind + ":" + std::to_string(n), n * n);
  if (values && it->second.data.empty()) it->second.data.assign(n * n, kInf);
  return {values ? it->second.data.data() : nullptr, it->second.addr, 0, 0, n};
}

VecView Gen::scratch_vector(const std::string& kind, std::uint64_t m, bool values) {
  auto [it, fresh] = scratch_.try_emplace({kind, m});
  if (fresh) it->second.addr = space_.allocate("scratch:" + kind + ":" + std::to_string(m), m);
  if (values && it->second.data.empty()) it->second.data.assign(m, kInf);
  return {values ? it->second.data.data() : nullptr, it->second.addr, VecLayout::contiguous, 0, 0, m};
}

Fragment Gen::leaf(std::uint64_t work, const std::vector<BlockId>& trace) {
  const auto w = static_cast<std::uint32_t>(std::clamp<std::uint64_t>(work, 1, 0xffffffffu));
  return b_.leaf(w, trace);
}

Fragment Gen::par(std::initializer_list<Fragment> parts) {
  return b_.parallel(std::span<const Fragment>(parts.begin(), parts.size()));
}

Fragment Gen::par(const std::vector<Fragment>& parts) { return b_.parallel(parts); }

Fragment Gen::ser(std::initializer_list<Fragment> parts) {
  return b_.series(std::span<const Fragment>(parts.begin(), parts.size()));
}

std::vector<BlockId> Gen::tile_trace(LeafKind kind, std::uint64_t n, std::span<const MatView> ops) {
  const auto k = static_cast<std::uint8_t>(kind);
  bool aligned = true;
  for (const auto& v : ops) aligned = aligned && v.aligned();
  if (!aligned) {
    TraceBuilder tb(bw_);
    for_each_tile_access(k, n, [&](std::uint8_t op, std::uint64_t i, std::uint64_t j) { tb.touch(ops[op].word(i, j)); });
    return tb.blocks();
  }
  // An aligned tile is the contiguous range [base, base + n^2) and element
  // (i,j) sits at base + morton(i,j).
  std::array<std::uint64_t, 3> base{};
  PatternKey key{kind, n, {}};
  for (std::size_t o = 0; o < ops.size(); ++o) {
    base[o] = ops[o].word(0, 0);
    key.mods[o] = base[o] % bw_;
  }
  auto it = patterns_.find(key);
  if (it == patterns_.end()) {
    Pattern pat;
    std::vector<std::pair<std::uint8_t, std::int64_t>> seen;
    std::pair<std::uint8_t, std::int64_t> last{255, 0};
    for_each_tile_access(k, n, [&](std::uint8_t op, std::uint64_t i, std::uint64_t j) {
      const std::pair<std::uint8_t, std::int64_t> e{
          op, static_cast<std::int64_t>((key.mods[op] + morton_unchecked(i, j)) / bw_)};
      if (e == last) return;
      last = e;
      if (std::find(pat.begin(), pat.end(), e) == pat.end()) pat.push_back(e);
    });
    it = patterns_.emplace(key, std::move(pat)).first;
  }
  std::vector<BlockId> out;
  out.reserve(it->second.size());
  for (const auto& [op, delta] : it->second) {
    const BlockId blk = base[op] / bw_ + static_cast<BlockId>(delta);
    // operands may alias (in-place updates)
    if (std::find(out.begin(), out.end(), blk) == out.end()) out.push_back(blk);
  }
  return out;
}

Fragment Gen::mm_leaf(const MatView& c, const MatView& a, const MatView& b, bool overwrite, const MMWeight& w) {
  const std::uint64_t n = c.size;
  if (c.data != nullptr) {
    std::vector<std::uint64_t> ar(n), ac(n), br(n), bc(n);
    for (std::uint64_t x = 0; x < n; ++x) {
      ar[x] = spread_bits(a.row0 + x) << 1;
      ac[x] = spread_bits(a.col0 + x);
      br[x] = spread_bits(b.row0 + x) << 1;
      bc[x] = spread_bits(b.col0 + x);
    }
    for (std::uint64_t i = 0; i < n; ++i) {
      for (std::uint64_t j = 0; j < n; ++j) {
        Value& cij = c.at(i, j);
        Value v = overwrite ? kInf : cij;
        if (w.w == nullptr) {
          for (std::uint64_t k = 0; k < n; ++k) v = std::min(v, a.data[ar[i] | ac[k]] + b.data[br[k] | bc[j]]);
        } else {
          for (std::uint64_t k = 0; k < n; ++k) {
            v = std::min(v, a.data[ar[i] | ac[k]] + b.data[br[k] | bc[j]] + (*w.w)(w.ib + i, w.kb + k, w.jb + j));
          }
        }
        cij = std::min(v, kInf);
      }
    }
  }
  const std::array<MatView, 3> ops{c, a, b};
  return leaf(n * n * n, tile_trace(LeafKind::mm, n, ops));
}

Fragment Gen::mm(const MatView& c, const MatView& a, const MatView& b, bool overwrite, const MMWeight& w) {
  if (a.size != c.size || b.size != c.size) throw std::invalid_argument("mm: size mismatch");
  begin("mm", c.size);
  Fragment f;
  if (c.size <= t_) {
    f = mm_leaf(c, a, b, overwrite, w);
  } else {
    const std::uint64_t h = c.size / 2;
    const MatView t = scratch_matrix("mm", c.size, c.data != nullptr);
    const Fragment p0 = mm(c.quad(0, 0), a.quad(0, 0), b.quad(0, 0), overwrite, w.shift(0, 0, 0));
    const Fragment p1 = mm(c.quad(0, 1), a.quad(0, 0), b.quad(0, 1), overwrite, w.shift(0, 0, h));
    const Fragment p2 = mm(c.quad(1, 0), a.quad(1, 0), b.quad(0, 0), overwrite, w.shift(h, 0, 0));
    const Fragment p3 = mm(c.quad(1, 1), a.quad(1, 0), b.quad(0, 1), overwrite, w.shift(h, 0, h));
    const Fragment p4 = mm(t.quad(0, 0), a.quad(0, 1), b.quad(1, 0), true, w.shift(0, h, 0));
    const Fragment p5 = mm(t.quad(0, 1), a.quad(0, 1), b.quad(1, 1), true, w.shift(0, h, h));
    const Fragment p6 = mm(t.quad(1, 0), a.quad(1, 1), b.quad(1, 0), true, w.shift(h, h, 0));
    const Fragment p7 = mm(t.quad(1, 1), a.quad(1, 1), b.quad(1, 1), true, w.shift(h, h, h));
    const Fragment products = par({p0, p1, p2, p3, p4, p5, p6, p7});
    f = b_.seq(products, merge(c, t));
  }
  end();
  return f;
}

Fragment Gen::merge(const MatView& c, const MatView& t) {
  const std::uint64_t n = c.size;
  if (n <= t_) {
    if (c.data != nullptr) {
      for (std::uint64_t i = 0; i < n; ++i) {
        for (std::uint64_t j = 0; j < n; ++j) c.at(i, j) = std::min(c.at(i, j), t.at(i, j));
      }
    }
    const std::array<MatView, 2> ops{c, t};
    return leaf(n * n, tile_trace(LeafKind::merge, n, ops));
  }
  return par({merge(c.quad(0, 0), t.quad(0, 0)), merge(c.quad(0, 1), t.quad(0, 1)),
              merge(c.quad(1, 0), t.quad(1, 0)), merge(c.quad(1, 1), t.quad(1, 1))});
}

Fragment Gen::mt(const MatView& a, const MatView& o) {
  begin("mt", a.size);
  Fragment f;
  const std::uint64_t n = a.size;
  if (n <= t_) {
    if (o.data != nullptr) {
      for (std::uint64_t i = 0; i < n; ++i) {
        for (std::uint64_t j = 0; j < n; ++j) o.at(j, i) = a.at(i, j);
      }
    }
    const std::array<MatView, 2> ops{a, o};
    f = leaf(n * n, tile_trace(LeafKind::mt, n, ops));
  } else {
    f = par({mt(a.quad(0, 0), o.quad(0, 0)), mt(a.quad(0, 1), o.quad(1, 0)), mt(a.quad(1, 0), o.quad(0, 1)),
             mt(a.quad(1, 1), o.quad(1, 1))});
  }
  end();
  return f;
}

Fragment Gen::closure_leaf(const MatView& a) {
  const std::uint64_t n = a.size;
  if (a.data != nullptr) {
    for (std::uint64_t k = 0; k < n; ++k) {
      for (std::uint64_t i = 0; i < n; ++i) {
        const Value aik = a.at(i, k);
        for (std::uint64_t j = 0; j < n; ++j) {
          Value& aij = a.at(i, j);
          aij = std::min(aij, std::min(aik + a.at(k, j), kInf));
        }
      }
    }
  }
  const std::array<MatView, 1> ops{a};
  return leaf(n * n * n, tile_trace(LeafKind::fw, n, ops));
}

Fragment Gen::kleene(const MatView& a) {
  begin("kleene", a.size);
  Fragment f;
  if (a.size <= t_) {
    f = closure_leaf(a);
  } else {
    const MatView a00 = a.quad(0, 0), a01 = a.quad(0, 1), a10 = a.quad(1, 0), a11 = a.quad(1, 1);
    const MMWeight none;
    const Fragment s1 = kleene(a00);
    const Fragment s2a = mm(a01, a00, a01, false, none);
    const Fragment s2b = mm(a10, a10, a00, false, none);
    const Fragment s2 = par({s2a, s2b});
    const Fragment s3 = mm(a11, a10, a01, false, none);
    const Fragment s4 = kleene(a11);
    const Fragment s5a = mm(a10, a11, a10, false, none);
    const Fragment s5b = mm(a01, a01, a11, false, none);
    const Fragment s5 = par({s5a, s5b});
    const Fragment s6 = mm(a00, a01, a10, false, none);
    f = ser({s1, s2, s3, s4, s5, s6});
  }
  end();
  return f;
}

}  // namespace detail

namespace {

void check_same(const SemiringMatrix& a, const SemiringMatrix& b) {
  if (a.n() != b.n()) throw std::invalid_argument("mm: size mismatch");
}

}  // namespace

MatrixResult mm(const SemiringMatrix& a, const SemiringMatrix& b, const SemiringMatrix& c, const KernelConfig& cfg) {
  check_same(a, b);
  check_same(a, c);
  MatrixResult r{c, {}, AddressSpace(cfg.block_words)};
  SemiringMatrix ac = a, bc = b;
  detail::Gen g(cfg, r.space);
  const auto va = g.alloc_matrix("A", a.n(), ac.data().data());
  const auto vb = g.alloc_matrix("B", a.n(), bc.data().data());
  const auto vc = g.alloc_matrix("C", a.n(), r.value.data().data());
  r.value.base_address = vc.addr;
  const Fragment f = g.mm(vc, va, vb, false, {});
  r.dag = std::move(g).finish(f);
  return r;
}

MatrixResult mt(const SemiringMatrix& a, const KernelConfig& cfg) {
  MatrixResult r{SemiringMatrix(a.n()), {}, AddressSpace(cfg.block_words)};
  SemiringMatrix ac = a;
  detail::Gen g(cfg, r.space);
  const auto va = g.alloc_matrix("A", a.n(), ac.data().data());
  const auto vo = g.alloc_matrix("out", a.n(), r.value.data().data());
  r.value.base_address = vo.addr;
  const Fragment f = g.mt(va, vo);
  r.dag = std::move(g).finish(f);
  return r;
}

MatrixResult kleene(const SemiringMatrix& a, const KernelConfig& cfg) {
  MatrixResult r{a, {}, AddressSpace(cfg.block_words)};
  detail::Gen g(cfg, r.space);
  const auto va = g.alloc_matrix("A", a.n(), r.value.data().data());
  r.value.base_address = va.addr;
  const Fragment f = g.kleene(va);
  r.dag = std::move(g).finish(f);
  return r;
}

}  // namespace steal_lab
