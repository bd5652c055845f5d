#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "steal_lab/bound.hpp"
#include "steal_lab/shape.hpp"

namespace steal_lab {

/// Q(n) = alpha Q(n/beta) + terms; span is D(n), used only by the steal-term
/// refinement.
struct AlphaBetaRecurrence {
  std::int64_t alpha = 1;
  std::int64_t beta = 2;
  BoundExpr terms;
  BoundExpr span;

  Exponent critical() const { return Exponent::log(alpha, beta); }
};

/// Terms above the critical exponent pass through, terms at it gain a log
/// factor, terms below collapse to coef n^critical; the leaves contribute
/// n^critical. Throws std::invalid_argument on negative n or log powers.
BoundExpr solve(const AlphaBetaRecurrence& r);

using PrimitiveBounds = std::map<Primitive, BoundExpr>;

/// MM, MT and GRID2D parallel bounds.
const PrimitiveBounds& base_primitives();

/// Expands every call of `shape` with the primitive's bound at its argument
/// and multiplies by the call multiplier. Constants, including log(n/beta)
/// versus log n, are absorbed. Throws std::invalid_argument for a primitive
/// missing from `prims`.
AlphaBetaRecurrence substitute(const RecurrenceShape& shape, const PrimitiveBounds& prims, const BoundExpr& span);

/// Replaces each P n^l log^m n term that exceeds P D(n) by P D(n), using the
/// largest span term.
BoundExpr refine_steal_term(const BoundExpr& bound, const BoundExpr& span);

/// Span registry: n, n log n, n^{log_2(3)} or n log^2 n per algorithm.
BoundExpr span_of(std::string_view alg);

/// Literal expansion with Q(n <= 1) = 1 and unit coefficients.
double unroll(const AlphaBetaRecurrence& r, double n, double P, double M, double B);

struct ParsedRecurrence {
  RecurrenceShape shape;
  BoundExpr terms;                 // plain terms besides primitive calls
  std::optional<BoundExpr> span;   // from `; D(n) = ...`
};

/// `Q(n) = 2 Q(n/2) + 6 MM(n/2) + n^2/B; D(n) = n`. Throws
/// std::invalid_argument.
ParsedRecurrence parse_recurrence(std::string_view text);

struct Analysis {
  AlphaBetaRecurrence recurrence;
  BoundExpr solved;
  BoundExpr refined;  // equals solved when no span was given
};

/// Parse, substitute (TRS and SQUARE resolved through table1's bounds), solve
/// and refine.
Analysis analyze(std::string_view text);

}  // namespace steal_lab
