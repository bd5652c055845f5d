#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "steal_lab/recurrence.hpp"

namespace steal_lab {

/// Base primitives plus the solved TRS and SQUARE bounds.
const PrimitiveBounds& table1_primitives();

/// substitute, solve and refine for a registry shape.
BoundExpr derive(std::string_view alg, const PrimitiveBounds& prims);
BoundExpr derive(std::string_view alg);

struct Table1Row {
  std::string alg;
  BoundExpr derived;
  BoundExpr expected;
  bool match = false;
  std::vector<Term> missing;  // expected but not derived
  std::vector<Term> extra;    // derived but not expected
};

/// kleene, gaussian, trs, cholesky_lu, lws, gap, parenthesis, rna, protein.
std::span<const std::string_view> table1_ids();
std::vector<Table1Row> table1();

}  // namespace steal_lab
