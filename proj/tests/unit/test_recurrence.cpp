#include <gtest/gtest.h>

#include <cmath>

#include "steal_lab/bound.hpp"
#include "steal_lab/exponent.hpp"
#include "steal_lab/recurrence.hpp"
#include "steal_lab/table1.hpp"

using namespace steal_lab;

namespace {

BoundExpr B(std::string_view s) { return BoundExpr::parse(s); }

AlphaBetaRecurrence rec(std::int64_t a, std::int64_t b, std::string_view terms) {
  AlphaBetaRecurrence r;
  r.alpha = a;
  r.beta = b;
  r.terms = B(terms);
  return r;
}

}  // namespace

TEST(Exponent, Normalizes) {
  EXPECT_TRUE(Exponent::log(4, 2).is_rational());
  EXPECT_EQ(Exponent::log(4, 2).rational_part(), 2);
  EXPECT_EQ(Exponent::log(8, 4).rational_part(), Rational(3, 2));
  EXPECT_EQ(Exponent::log(9, 4).to_string(), "log_2(3)");
  EXPECT_EQ(Exponent::log(3, 2).to_string(), "log_2(3)");
  EXPECT_EQ((Exponent(1) + Exponent::log(3, 2)).to_string(), "1 + log_2(3)");
}

TEST(Exponent, Compare) {
  EXPECT_EQ(cmp(Exponent::log(3, 2), Exponent(Rational(3, 2))), std::strong_ordering::greater);
  EXPECT_EQ(cmp(Exponent::log(3, 2), Exponent(Rational(8, 5))), std::strong_ordering::less);
  EXPECT_EQ(cmp(Exponent::log(3, 2), Exponent::log(9, 4)), std::strong_ordering::equal);
  EXPECT_EQ(cmp(Exponent::log(5, 2), Exponent::log(3, 2)), std::strong_ordering::greater);
}

TEST(Bound, ParseAndPrint) {
  const char* texts[] = {"n^3/(B M^{1/2}) + P^{1/3} n^2 log^{2/3}(n)/B + P n", "n^{log_2(3)}", "P n log^2(n)",
                         "n^4/(B M) + P^{1/2} n^2 log^2(n)/B + P n^{log_2(3)}"};
  for (const char* t : texts) EXPECT_EQ(B(t).to_string(), t);
}

TEST(Bound, ParseAlternateSpellings) {
  EXPECT_EQ(B("n^3 / (B * sqrt(M))"), B("n^3/(B M^{1/2})"));
  EXPECT_EQ(B("6 P n"), B("P n"));
  EXPECT_EQ(B("P^{1/3} n^2 log^{2/3} / B"), B("P^{1/3} n^2 log^{2/3}(n)/B"));
}

TEST(Bound, ParseErrorHasColumn) {
  try {
    B("n^3 + %");
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("column"), std::string::npos);
  }
}

TEST(Bound, DominatedTermsDrop) {
  EXPECT_EQ(B("P n + P n log(n)").to_string(), "P n log(n)");
  EXPECT_EQ(B("P^{1/3} n + P n").to_string(), "P n");
  // n does not absorb log^2(n) term by term
  EXPECT_EQ(B("P n + P log^2(n)").terms().size(), 2u);
  EXPECT_EQ(B("n^2/B + n^2/B").to_string(), "n^2/B");
  // different powers of B are incomparable
  EXPECT_EQ(B("n^2/B + n").terms().size(), 2u);
}

TEST(Bound, Eval) {
  EXPECT_DOUBLE_EQ(eval(B("P n log(n)"), 8, 2, 64, 4), 2 * 8 * 3);
  EXPECT_DOUBLE_EQ(eval(B("n^2/(B M^{1/2})"), 8, 2, 64, 4), 64.0 / (4 * 8));
}

TEST(Solve, Cases) {
  EXPECT_EQ(solve(rec(2, 2, "n^2")), B("n^2"));
  EXPECT_EQ(solve(rec(2, 2, "n")), B("n log(n)"));
  EXPECT_EQ(solve(rec(4, 2, "n")), B("n^2"));
  EXPECT_EQ(solve(rec(8, 2, "n^3 log(n)")), B("n^3 log^2(n)"));
  EXPECT_EQ(solve(rec(3, 2, "n")), B("n^{log_2(3)}"));
  EXPECT_EQ(solve(rec(2, 2, "P^{1/3} n^2/B")), B("P^{1/3} n^2/B + n"));
}

TEST(Solve, CoefficientClassPreserved) {
  const auto s = solve(rec(2, 2, "P^{1/3} n log^{2/3}(n)/B"));
  EXPECT_EQ(s, B("P^{1/3} n log^{5/3}(n)/B + n"));
}

TEST(Solve, NegativeLogPowerThrows) {
  AlphaBetaRecurrence r;
  r.terms = BoundExpr({Term{{}, Exponent(1), Rational(-1)}});
  EXPECT_THROW(solve(r), std::invalid_argument);
}

TEST(Refine, ReplacesExcessStealTerm) {
  EXPECT_EQ(refine_steal_term(B("n^3/B + P n log(n)"), B("n")), B("n^3/B + P n"));
  EXPECT_EQ(refine_steal_term(B("P n"), B("n log(n)")), B("P n"));
}

TEST(Substitute, KleeneExpands) {
  const auto r = substitute(registry_shape("kleene"), base_primitives(), B("n"));
  EXPECT_EQ(r.alpha, 2);
  EXPECT_EQ(r.beta, 2);
  EXPECT_EQ(r.terms, base_primitives().at(Primitive::mm));
}

TEST(Substitute, MissingPrimitiveThrows) {
  EXPECT_THROW(substitute(registry_shape("trs"), PrimitiveBounds{}, B("n")), std::invalid_argument);
}

TEST(Table1, AllRowsMatch) {
  for (const auto& row : table1()) EXPECT_TRUE(row.match) << row.alg << ": " << row.derived.to_string();
}

TEST(Analyze, ProteinString) {
  const auto a = analyze("Q(n) = 2 Q(n/2) + MT(n/2) + (n/2) GRID2D(n/2); D(n) = n log^2(n)");
  EXPECT_EQ(a.refined.to_string(), "n^3/(B M) + P^{1/2} n^2 log(n)/B + P n log^2(n)");
}

TEST(Analyze, PlainTerms) {
  const auto a = analyze("Q(n) = 2 Q(n/2) + n^2/B");
  EXPECT_EQ(a.solved, B("n^2/B + n"));
  EXPECT_EQ(a.refined, a.solved);
}

TEST(Analyze, ParseErrors) {
  EXPECT_THROW(analyze("Q(n) = 2 Q(n/2) + FOO(n/2)"), std::invalid_argument);
  EXPECT_THROW(analyze("Q(n) = "), std::invalid_argument);
  EXPECT_THROW(analyze("2 Q(n/2)"), std::invalid_argument);
}

TEST(Unroll, TracksSolvedBound) {
  const auto r = substitute(registry_shape("kleene"), base_primitives(), B("n"));
  const auto s = solve(r);
  for (double n = 64; n <= 4096; n *= 2) {
    const double ratio = unroll(r, n, 64, 1 << 20, 64) / eval(s, n, 64, 1 << 20, 64);
    EXPECT_GT(ratio, 1.0 / 16);
    EXPECT_LT(ratio, 16.0);
  }
}

TEST(Span, Registry) {
  EXPECT_EQ(span_of("cholesky_lu"), B("n log(n)"));
  EXPECT_EQ(span_of("gap"), B("n^{log_2(3)}"));
  EXPECT_THROW(span_of("nosuch"), std::invalid_argument);
}
