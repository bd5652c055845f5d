#include <algorithm>
#include <stdexcept>
#include <vector>

#include "steal_lab/recurrence.hpp"
#include "steal_lab/table1.hpp"

namespace steal_lab {

BoundExpr solve(const AlphaBetaRecurrence& r) {
  if (r.alpha < 1) throw std::invalid_argument("solve: alpha must be >= 1");
  if (r.beta < 2) throw std::invalid_argument("solve: beta must be >= 2");
  const Exponent crit = r.critical();
  std::vector<Term> out;
  for (const Term& t : r.terms.terms()) {
    if (cmp(t.l, 0) < 0 || t.m < 0) {
      throw std::invalid_argument("solve: negative exponent in term " + to_string(t));
    }
    const auto c = cmp(t.l, crit);
    if (c > 0) {
      out.push_back(t);
    } else if (c == 0) {
      Term u = t;
      u.m += 1;
      out.push_back(u);
    } else {
      out.push_back({t.coef, crit, 0});
    }
  }
  out.push_back({Monomial{}, crit, 0});
  return BoundExpr(std::move(out));
}

const PrimitiveBounds& base_primitives() {
  static const PrimitiveBounds prims = {
      {Primitive::mm, BoundExpr::parse("n^3/(B M^{1/2}) + P^{1/3} n^2 log^{2/3}(n)/B + P log^2(n)")},
      {Primitive::mt, BoundExpr::parse("n^2/B + P log^2(n)")},
      {Primitive::grid2d, BoundExpr::parse("n^2/(B M) + P^{1/2} n log(n)/B + P log^2(n)")},
  };
  return prims;
}

AlphaBetaRecurrence substitute(const RecurrenceShape& shape, const PrimitiveBounds& prims, const BoundExpr& span) {
  AlphaBetaRecurrence r;
  r.alpha = shape.alpha;
  r.beta = shape.beta;
  r.span = span;
  std::vector<Term> terms;
  for (const ShapeCall& c : shape.calls) {
    const auto it = prims.find(c.primitive);
    if (it == prims.end()) {
      throw std::invalid_argument(std::string("substitute: unknown primitive ") + to_string(c.primitive));
    }
    for (Term t : it->second.terms()) {
      if (c.arg.kind == CallArg::Kind::power) t.l = t.l * c.arg.p;
      t.l = t.l + Exponent(c.n_power);
      t.m += c.log_power;
      terms.push_back(t);
    }
  }
  r.terms = BoundExpr(std::move(terms));
  return r;
}

BoundExpr refine_steal_term(const BoundExpr& bound, const BoundExpr& span) {
  if (span.empty()) return bound;
  const Term* top = &span.terms().front();
  for (const Term& s : span.terms()) {
    const auto c = cmp(s.l, top->l);
    if (c > 0 || (c == 0 && s.m > top->m)) top = &s;
  }
  std::vector<Term> out;
  for (const Term& t : bound.terms()) {
    const auto c = cmp(t.l, top->l);
    if (t.pure_p() && (c > 0 || (c == 0 && t.m > top->m))) {
      out.push_back({Monomial{1, 0, 0}, top->l, top->m});
    } else {
      out.push_back(t);
    }
  }
  return BoundExpr(std::move(out));
}

BoundExpr span_of(std::string_view alg) {
  if (alg == "kleene" || alg == "gaussian" || alg == "trs" || alg == "lws") return BoundExpr::parse("n");
  if (alg == "cholesky_lu") return BoundExpr::parse("n log(n)");
  if (alg == "gap" || alg == "parenthesis" || alg == "square" || alg == "rna") {
    return BoundExpr::parse("n^{log_2(3)}");
  }
  if (alg == "protein") return BoundExpr::parse("n log^2(n)");
  throw std::invalid_argument("no span registered for '" + std::string(alg) + "'");
}

double unroll(const AlphaBetaRecurrence& r, double n, double P, double M, double B) {
  std::vector<double> sizes;
  for (double s = n; s > 1; s /= static_cast<double>(r.beta)) sizes.push_back(s);
  double q = 1;
  for (auto it = sizes.rbegin(); it != sizes.rend(); ++it) {
    q = static_cast<double>(r.alpha) * q + eval(r.terms, *it, P, M, B);
  }
  return q;
}

Analysis analyze(std::string_view text) {
  const ParsedRecurrence p = parse_recurrence(text);
  Analysis a;
  a.recurrence = substitute(p.shape, table1_primitives(), p.span.value_or(BoundExpr{}));
  a.recurrence.terms.add(p.terms);
  a.solved = solve(a.recurrence);
  a.refined = p.span ? refine_steal_term(a.solved, *p.span) : a.solved;
  return a;
}

}  // namespace steal_lab
