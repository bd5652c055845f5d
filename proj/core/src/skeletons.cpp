#include <algorithm>
#include <stdexcept>
#include <string>

#include "gen.hpp"

namespace steal_lab {
namespace {

using detail::MatView;

// Trace-only recursions. Every primitive call expands into the real mm / mt
// / grid2d generator on a sub-region of the algorithm's arrays.
class SkeletonGen {
 public:
  explicit SkeletonGen(detail::Gen& g) : g_(g) {}

  Fragment gaussian(const MatView& x) {
    g_.begin("gaussian", x.size);
    Fragment f;
    if (x.size <= g_.leaf_size()) {
      f = g_.closure_leaf(x);
    } else {
      const MatView x00 = x.quad(0, 0), x01 = x.quad(0, 1), x10 = x.quad(1, 0), x11 = x.quad(1, 1);
      const Fragment r0 = gaussian(x00);
      const Fragment a = mm(x01, x00, x01);
      const Fragment b = mm(x10, x10, x00);
      const Fragment ab = g_.par({a, b});
      const Fragment c = mm(x11, x10, x01);
      const Fragment r1 = gaussian(x11);
      const Fragment d = mm(x00, x01, x10);
      f = g_.ser({r0, ab, c, r1, d});
    }
    g_.end();
    return f;
  }

  // Solves X against the triangular factor L: (T || T); (MM || MM); (T || T).
  Fragment trs(const MatView& x, const MatView& l) {
    g_.begin("trs", x.size);
    Fragment f;
    if (x.size <= g_.leaf_size()) {
      f = g_.mm_leaf(x, x, l, false, {});
    } else {
      const MatView l00 = l.quad(0, 0), l01 = l.quad(0, 1), l11 = l.quad(1, 1);
      const Fragment s0a = trs(x.quad(0, 0), l00);
      const Fragment s0b = trs(x.quad(1, 0), l00);
      const Fragment s0 = g_.par({s0a, s0b});
      const Fragment m0 = mm(x.quad(0, 1), x.quad(0, 0), l01);
      const Fragment m1 = mm(x.quad(1, 1), x.quad(1, 0), l01);
      const Fragment mm_pair = g_.par({m0, m1});
      const Fragment s1a = trs(x.quad(0, 1), l11);
      const Fragment s1b = trs(x.quad(1, 1), l11);
      const Fragment s1 = g_.par({s1a, s1b});
      f = g_.ser({s0, mm_pair, s1});
    }
    g_.end();
    return f;
  }

  Fragment cholesky(const MatView& a) {
    g_.begin("cholesky_lu", a.size);
    Fragment f;
    if (a.size <= g_.leaf_size()) {
      f = g_.closure_leaf(a);
    } else {
      const MatView a00 = a.quad(0, 0), a01 = a.quad(0, 1), a10 = a.quad(1, 0), a11 = a.quad(1, 1);
      const Fragment r0 = cholesky(a00);
      const Fragment t = trs(a10, a00);
      const Fragment u = mm(a11, a10, a01);
      const Fragment r1 = cholesky(a11);
      f = g_.ser({r0, t, u, r1});
    }
    g_.end();
    return f;
  }

  // Each quadrant receives row-wise grids from its left neighbour and
  // column-wise grids from the one above; columns are read through a
  // transposed copy.
  Fragment gap(const MatView& x) {
    g_.begin("gap", x.size);
    Fragment f;
    if (x.size <= g_.leaf_size()) {
      f = g_.closure_leaf(x);
    } else {
      const std::uint64_t h = x.size / 2;
      const MatView x00 = x.quad(0, 0), x01 = x.quad(0, 1), x10 = x.quad(1, 0), x11 = x.quad(1, 1);
      const MatView t = g_.scratch_matrix("gap:mt", h, false);

      const Fragment r00 = gap(x00);
      const Fragment t0 = g_.mt(x00, t);
      std::vector<Fragment> batch;
      for (std::uint64_t r = 0; r < h; ++r) batch.push_back(grid(detail::row_of(x00, r), detail::row_of(x01, r)));
      for (std::uint64_t c = 0; c < h; ++c) batch.push_back(grid(detail::row_of(t, c), detail::col_of(x10, c)));
      const Fragment g0 = g_.par(batch);

      const Fragment r01 = gap(x01);
      const Fragment r10 = gap(x10);
      const Fragment mid = g_.par({r01, r10});

      const Fragment t1 = g_.mt(x01, t);
      batch.clear();
      for (std::uint64_t c = 0; c < h; ++c) batch.push_back(grid(detail::row_of(t, c), detail::col_of(x11, c)));
      const Fragment g1 = g_.par(batch);
      batch.clear();
      for (std::uint64_t r = 0; r < h; ++r) batch.push_back(grid(detail::row_of(x10, r), detail::row_of(x11, r)));
      const Fragment g2 = g_.par(batch);

      const Fragment r11 = gap(x11);
      f = g_.ser({r00, t0, g0, mid, t1, g1, g2, r11});
    }
    g_.end();
    return f;
  }

  // One grid over all n^2 cells of the region, between the off-diagonal
  // quadrants and the last quadrant.
  Fragment rna(const MatView& x) {
    g_.begin("rna", x.size);
    Fragment f;
    if (x.size <= g_.leaf_size()) {
      f = g_.closure_leaf(x);
    } else {
      const Fragment r00 = rna(x.quad(0, 0));
      const Fragment r01 = rna(x.quad(0, 1));
      const Fragment r10 = rna(x.quad(1, 0));
      const Fragment mid = g_.par({r01, r10});
      const detail::VecView cells{nullptr, x.addr, detail::VecLayout::contiguous, 0, x.off(0, 0), x.size * x.size};
      const Fragment gr = grid(cells, cells);
      const Fragment r11 = rna(x.quad(1, 1));
      f = g_.ser({r00, mid, gr, r11});
    }
    g_.end();
    return f;
  }

  Fragment protein(const MatView& x) {
    g_.begin("protein", x.size);
    Fragment f;
    if (x.size <= g_.leaf_size()) {
      f = g_.closure_leaf(x);
    } else {
      const std::uint64_t h = x.size / 2;
      const MatView t = g_.scratch_matrix("protein:mt", h, false);
      const Fragment r0 = protein(x.quad(0, 0));
      const Fragment tr = g_.mt(x.quad(0, 0), t);
      std::vector<Fragment> batch;
      for (std::uint64_t r = 0; r < h; ++r) {
        batch.push_back(grid(detail::row_of(t, r), detail::row_of(x.quad(1, 1), r)));
      }
      const Fragment gs = g_.par(batch);
      const Fragment r1 = protein(x.quad(1, 1));
      f = g_.ser({r0, tr, gs, r1});
    }
    g_.end();
    return f;
  }

 private:
  Fragment mm(const MatView& c, const MatView& a, const MatView& b, bool overwrite = false) {
    return g_.mm(c, a, b, overwrite, {});
  }
  Fragment grid(const detail::VecView& in, const detail::VecView& out) { return g_.grid(in, out, false, {}); }

  detail::Gen& g_;
};

}  // namespace

KernelRun skeleton(const RecurrenceShape& shape, std::uint64_t n, std::string_view alg, const KernelConfig& cfg) {
  static constexpr std::string_view kSkeletons[] = {"gaussian", "trs", "cholesky_lu", "gap", "rna", "protein"};
  if (std::find(std::begin(kSkeletons), std::end(kSkeletons), alg) == std::end(kSkeletons)) {
    throw std::invalid_argument("unknown algorithm '" + std::string(alg) + "' for skeleton");
  }
  if (!(shape == registry_shape(alg))) {
    throw std::invalid_argument("shape " + to_string(shape) + " does not match registry entry for " +
                                std::string(alg));
  }
  if (!is_pow2(n)) throw std::invalid_argument("skeleton: n must be a power of two");
  KernelRun r{{}, AddressSpace(cfg.block_words)};
  detail::Gen g(cfg, r.space);
  SkeletonGen sg(g);
  const MatView x = g.alloc_matrix("X", n, nullptr);
  Fragment f;
  if (alg == "gaussian") {
    f = sg.gaussian(x);
  } else if (alg == "trs") {
    const MatView l = g.alloc_matrix("L", n, nullptr);
    f = sg.trs(x, l);
  } else if (alg == "cholesky_lu") {
    f = sg.cholesky(x);
  } else if (alg == "gap") {
    f = sg.gap(x);
  } else if (alg == "rna") {
    f = sg.rna(x);
  } else {
    f = sg.protein(x);
  }
  r.dag = std::move(g).finish(f);
  return r;
}

}  // namespace steal_lab
