#include "steal_lab/table1.hpp"

#include <array>
#include <stdexcept>

namespace steal_lab {

namespace {

constexpr std::array<std::string_view, 9> kIds = {"kleene", "gaussian", "trs",         "cholesky_lu", "lws",
                                                   "gap",    "parenthesis", "rna",     "protein"};

// New bounds per algorithm.
constexpr std::array<std::string_view, 9> kExpected = {
    "n^3/(B M^{1/2}) + P^{1/3} n^2 log^{2/3}(n)/B + P n",
    "n^3/(B M^{1/2}) + P^{1/3} n^2 log^{2/3}(n)/B + P n",
    "n^3/(B M^{1/2}) + P^{1/3} n^2 log^{5/3}(n)/B + P n",
    "n^3/(B M^{1/2}) + P^{1/3} n^2 log^{5/3}(n)/B + P n log(n)",
    "n^2/(B M) + P^{1/2} n log^2(n)/B + P n",
    "n^3/(B M) + P^{1/2} n^2 log^2(n)/B + P n^{log_2(3)}",
    "n^3/(B M^{1/2}) + P^{1/3} n^2 log^{5/3}(n)/B + P n^{log_2(3)}",
    "n^4/(B M) + P^{1/2} n^2 log^2(n)/B + P n^{log_2(3)}",
    "n^3/(B M) + P^{1/2} n^2 log(n)/B + P n log^2(n)",
};

bool contains(const std::vector<Term>& v, const Term& t) {
  for (const auto& u : v) {
    if (u == t) return true;
  }
  return false;
}

}  // namespace

BoundExpr derive(std::string_view alg, const PrimitiveBounds& prims) {
  const BoundExpr span = span_of(alg);
  return refine_steal_term(solve(substitute(registry_shape(alg), prims, span)), span);
}

const PrimitiveBounds& table1_primitives() {
  static const PrimitiveBounds prims = [] {
    PrimitiveBounds p = base_primitives();
    p[Primitive::trs] = derive("trs", p);
    p[Primitive::square] = derive("square", p);
    return p;
  }();
  return prims;
}

BoundExpr derive(std::string_view alg) { return derive(alg, table1_primitives()); }

std::span<const std::string_view> table1_ids() { return kIds; }

std::vector<Table1Row> table1() {
  std::vector<Table1Row> rows;
  for (std::size_t i = 0; i < kIds.size(); ++i) {
    Table1Row row;
    row.alg = kIds[i];
    row.derived = derive(kIds[i]);
    row.expected = BoundExpr::parse(kExpected[i]);
    for (const auto& t : row.expected.terms()) {
      if (!contains(row.derived.terms(), t)) row.missing.push_back(t);
    }
    for (const auto& t : row.derived.terms()) {
      if (!contains(row.expected.terms(), t)) row.extra.push_back(t);
    }
    row.match = row.missing.empty() && row.extra.empty();
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace steal_lab
