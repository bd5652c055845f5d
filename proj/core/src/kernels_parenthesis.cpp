#include <algorithm>
#include <stdexcept>

#include "gen.hpp"

namespace steal_lab {
namespace {

// D_{i,j} (i < j) is stored at X[i][j-1], so the triangle over points
// [lo, lo+s] is the diagonal block of X at (lo, lo) and the square between
// two adjacent triangles is an aligned off-diagonal block.
class ParenGen {
 public:
  ParenGen(detail::Gen& g, const detail::MatView& x, const WeightOracle& w) : g_(g), x_(x), w_(w) {}

  Fragment tri(std::uint64_t lo, std::uint64_t s) {
    g_.begin("parenthesis", s);
    Fragment f;
    if (s <= g_.leaf_size()) {
      f = tri_leaf(lo, s);
    } else {
      const std::uint64_t h = s / 2;
      const std::uint64_t mid = lo + h;
      const Fragment left = tri(lo, h);
      const Fragment right = tri(mid, h);
      const Fragment both = g_.par({left, right});
      const Fragment sd = seed(lo, mid, h, mid);
      const Fragment sq = square(lo, mid, h);
      f = g_.ser({both, sd, sq});
    }
    g_.end();
    return f;
  }

 private:
  Value d(std::uint64_t i, std::uint64_t j) const { return x_.at(i, j - 1); }
  Value& dref(std::uint64_t i, std::uint64_t j) const { return x_.at(i, j - 1); }
  std::uint64_t dword(std::uint64_t i, std::uint64_t j) const { return x_.word(i, j - 1); }
  bool values() const { return x_.data != nullptr; }

  Fragment tri_leaf(std::uint64_t lo, std::uint64_t s) {
    detail::TraceBuilder tb(g_.block_words());
    std::uint64_t work = 0;
    const std::uint64_t hi = lo + s;
    for (std::uint64_t i = hi; i-- > lo;) {
      for (std::uint64_t j = i + 2; j <= hi; ++j) {
        Value v = values() ? d(i, j) : 0;
        tb.touch(dword(i, j));
        for (std::uint64_t k = i + 1; k < j; ++k) {
          tb.touch(dword(i, k));
          tb.touch(dword(k, j));
          if (values()) v = std::min(v, d(i, k) + d(k, j) + w_(i, k, j));
          ++work;
        }
        if (values()) dref(i, j) = std::min(v, kInf);
      }
    }
    if (tb.blocks().empty()) tb.touch(dword(lo, lo + 1));
    return g_.leaf(work, tb.blocks());
  }

  // Contribution of the split point `mid` to rows [ilo, ilo+s) and
  // points (jlo, jlo+s].
  Fragment seed(std::uint64_t ilo, std::uint64_t jlo, std::uint64_t s, std::uint64_t mid) {
    if (s > g_.leaf_size()) {
      const std::uint64_t h = s / 2;
      return g_.par({seed(ilo, jlo, h, mid), seed(ilo, jlo + h, h, mid), seed(ilo + h, jlo, h, mid),
                     seed(ilo + h, jlo + h, h, mid)});
    }
    detail::TraceBuilder tb(g_.block_words());
    for (std::uint64_t i = ilo; i < ilo + s; ++i) {
      for (std::uint64_t j = jlo + 1; j <= jlo + s; ++j) {
        tb.touch(dword(i, j));
        tb.touch(dword(i, mid));
        tb.touch(dword(mid, j));
        if (values()) dref(i, j) = std::min({d(i, j), d(i, mid) + d(mid, j) + w_(i, mid, j), kInf});
      }
    }
    return g_.leaf(s * s, tb.blocks());
  }

  // Rows I = [ilo, ilo+s), points J = (jlo, jlo+s]. Handles split points
  // k in (i, ilo+s) and (jlo, j); all others are already folded in.
  Fragment square(std::uint64_t ilo, std::uint64_t jlo, std::uint64_t s) {
    g_.begin("square", s);
    Fragment f;
    if (s <= g_.leaf_size()) {
      f = square_leaf(ilo, jlo, s);
    } else {
      const std::uint64_t h = s / 2;
      const detail::MatView& x = x_;
      const Fragment q10 = square(ilo + h, jlo, h);

      const Fragment m00 = g_.mm(x.sub(ilo, jlo, h), x.sub(ilo, ilo + h - 1, h), x.sub(ilo + h, jlo, h), false,
                                 {&w_, ilo, ilo + h, jlo + 1});
      const Fragment q00 = square(ilo, jlo, h);
      const Fragment m11 = g_.mm(x.sub(ilo + h, jlo + h, h), x.sub(ilo + h, jlo, h), x.sub(jlo + 1, jlo + h, h),
                                 false, {&w_, ilo + h, jlo + 1, jlo + h + 1});
      const Fragment q11 = square(ilo + h, jlo + h, h);
      const Fragment mid = g_.par({g_.builder().seq(m00, q00), g_.builder().seq(m11, q11)});

      const Fragment m01a = g_.mm(x.sub(ilo, jlo + h, h), x.sub(ilo, ilo + h - 1, h), x.sub(ilo + h, jlo + h, h),
                                  false, {&w_, ilo, ilo + h, jlo + h + 1});
      const Fragment m01b = g_.mm(x.sub(ilo, jlo + h, h), x.sub(ilo, jlo, h), x.sub(jlo + 1, jlo + h, h), false,
                                  {&w_, ilo, jlo + 1, jlo + h + 1});
      const Fragment q01 = square(ilo, jlo + h, h);
      f = g_.ser({q10, mid, m01a, m01b, q01});
    }
    g_.end();
    return f;
  }

  Fragment square_leaf(std::uint64_t ilo, std::uint64_t jlo, std::uint64_t s) {
    detail::TraceBuilder tb(g_.block_words());
    std::uint64_t work = 0;
    for (std::uint64_t i = ilo + s; i-- > ilo;) {
      for (std::uint64_t j = jlo + 1; j <= jlo + s; ++j) {
        Value v = values() ? d(i, j) : 0;
        tb.touch(dword(i, j));
        auto relax = [&](std::uint64_t k) {
          tb.touch(dword(i, k));
          tb.touch(dword(k, j));
          if (values()) v = std::min(v, d(i, k) + d(k, j) + w_(i, k, j));
          ++work;
        };
        for (std::uint64_t k = i + 1; k < ilo + s; ++k) relax(k);
        for (std::uint64_t k = jlo + 1; k < j; ++k) relax(k);
        if (values()) dref(i, j) = std::min(v, kInf);
      }
    }
    return g_.leaf(work, tb.blocks());
  }

  detail::Gen& g_;
  detail::MatView x_;
  const WeightOracle& w_;
};

}  // namespace

TableResult parenthesis(const ParenthesisInstance& inst, const KernelConfig& cfg) {
  const std::uint64_t n = inst.n;
  if (!is_pow2(n)) throw std::invalid_argument("parenthesis: n must be a power of two");
  if (inst.base.size() != n) throw std::invalid_argument("parenthesis: need n base values D_{i,i+1}");
  TableResult r{{}, {}, AddressSpace(cfg.block_words)};
  SemiringMatrix x(static_cast<std::uint32_t>(n));
  for (std::uint64_t i = 0; i < n; ++i) x.data()[morton_unchecked(i, i)] = inst.base[i];
  detail::Gen g(cfg, r.space);
  const auto vx = g.alloc_matrix("D", n, x.data().data());
  ParenGen pg(g, vx, inst.w);
  const Fragment f = pg.tri(0, n);
  r.dag = std::move(g).finish(f);
  r.value.assign(n + 1, std::vector<Value>(n + 1, kInf));
  for (std::uint64_t i = 0; i < n; ++i) {
    for (std::uint64_t j = i + 1; j <= n; ++j) r.value[i][j] = x.data()[morton_unchecked(i, j - 1)];
  }
  return r;
}

}  // namespace steal_lab
