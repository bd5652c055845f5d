#include <algorithm>
#include <stdexcept>

#include "gen.hpp"

namespace steal_lab {
namespace detail {

Fragment Gen::grid(const VecView& in, const VecView& out, bool overwrite, const GridWeight& w) {
  if (in.size != out.size) throw std::invalid_argument("grid2d: |D_in| != |D_out|");
  const std::uint64_t m = out.size;
  begin("grid2d", m);
  Fragment f;
  if (m <= t_) {
    if (out.data != nullptr) {
      for (std::uint64_t j = 0; j < m; ++j) {
        Value v = overwrite ? kInf : out.at(j);
        for (std::uint64_t i = 0; i < m; ++i) {
          const Value wij = w.w != nullptr ? (*w.w)(w.ib + i, w.jb + j) : 0;
          v = std::min(v, in.at(i) + wij);
        }
        out.at(j) = std::min(v, kInf);
      }
    }
    // loop order j, i: first touches are out[0], in[0..m), out[1..m)
    TraceBuilder tb(bw_);
    tb.touch(out.word(0));
    for (std::uint64_t i = 0; i < m; ++i) tb.touch(in.word(i));
    for (std::uint64_t j = 1; j < m; ++j) tb.touch(out.word(j));
    f = leaf(m * m, tb.blocks());
  } else {
    const std::uint64_t h = m / 2;
    const VecView t = scratch_vector("grid2d", m, out.data != nullptr);
    const VecView in0 = in.sub(0, h), in1 = in.sub(h, h);
    const Fragment p0 = grid(in0, out.sub(0, h), overwrite, w);
    const Fragment p1 = grid(in0, out.sub(h, h), overwrite, w.shift(0, h));
    const Fragment p2 = grid(in1, t.sub(0, h), true, w.shift(h, 0));
    const Fragment p3 = grid(in1, t.sub(h, h), true, w.shift(h, h));
    f = b_.seq(par({p0, p1, p2, p3}), merge(out, t));
  }
  end();
  return f;
}

Fragment Gen::merge(const VecView& out, const VecView& t) {
  const std::uint64_t m = out.size;
  if (m <= t_) {
    if (out.data != nullptr) {
      for (std::uint64_t j = 0; j < m; ++j) out.at(j) = std::min(out.at(j), t.at(j));
    }
    TraceBuilder tb(bw_);
    for (std::uint64_t j = 0; j < m; ++j) {
      tb.touch(out.word(j));
      tb.touch(t.word(j));
    }
    return leaf(m, tb.blocks());
  }
  const std::uint64_t h = m / 2;
  return par({merge(out.sub(0, h), t.sub(0, h)), merge(out.sub(h, h), t.sub(h, h))});
}

}  // namespace detail

VectorResult grid2d(const std::vector<Value>& d_in, const std::vector<Value>& d_out, const WeightOracle& w,
                    const KernelConfig& cfg) {
  if (d_in.size() != d_out.size()) throw std::invalid_argument("grid2d: |D_in| != |D_out|");
  if (!is_pow2(d_in.size())) throw std::invalid_argument("grid2d: size must be a power of two");
  VectorResult r{d_out, {}, AddressSpace(cfg.block_words)};
  std::vector<Value> in = d_in;
  detail::Gen g(cfg, r.space);
  const auto vi = g.alloc_vector("D_in", in.size(), in.data());
  const auto vo = g.alloc_vector("D_out", in.size(), r.value.data());
  const Fragment f = g.grid(vi, vo, false, {&w, 0, 0});
  r.dag = std::move(g).finish(f);
  return r;
}

namespace {

class LwsGen {
 public:
  LwsGen(detail::Gen& g, const detail::VecView& d, const WeightOracle& w) : g_(g), d_(d), w_(w) {}

  // Settles D[k+1] for k in [lo, lo+m) given D[lo] final; contributions from
  // sources below lo are already folded in.
  Fragment solve(std::uint64_t lo, std::uint64_t m) {
    g_.begin("lws", m);
    Fragment f;
    if (m <= g_.leaf_size()) {
      detail::TraceBuilder tb(g_.block_words());
      std::uint64_t work = 0;
      for (std::uint64_t k = lo; k < lo + m; ++k) {
        Value v = d_.at(k + 1);
        for (std::uint64_t i = lo; i <= k; ++i) {
          tb.touch(d_.word(i));
          tb.touch(d_.word(k + 1));
          v = std::min(v, d_.at(i) + w_(i, k + 1));
          ++work;
        }
        d_.at(k + 1) = std::min(v, kInf);
      }
      f = g_.leaf(work, tb.blocks());
    } else {
      const std::uint64_t h = m / 2;
      const Fragment first = solve(lo, h);
      const Fragment cross = g_.grid(d_.sub(lo, h), d_.sub(lo + h + 1, h), false, {&w_, lo, lo + h + 1});
      const Fragment second = solve(lo + h, h);
      f = g_.ser({first, cross, second});
    }
    g_.end();
    return f;
  }

 private:
  detail::Gen& g_;
  detail::VecView d_;
  const WeightOracle& w_;
};

}  // namespace

VectorResult lws(const LwsInstance& inst, const KernelConfig& cfg) {
  if (!is_pow2(inst.n)) throw std::invalid_argument("lws: n must be a power of two");
  VectorResult r{std::vector<Value>(inst.n + 1, kInf), {}, AddressSpace(cfg.block_words)};
  r.value[0] = inst.d0;
  detail::Gen g(cfg, r.space);
  const auto vd = g.alloc_vector("D", inst.n + 1, r.value.data());
  LwsGen lg(g, vd, inst.w);
  const Fragment f = lg.solve(0, inst.n);
  r.dag = std::move(g).finish(f);
  return r;
}

}  // namespace steal_lab
