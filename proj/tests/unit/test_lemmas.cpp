#include <gtest/gtest.h>

#include <cmath>

#include "steal_lab/lemmas.hpp"

using namespace steal_lab;

TEST(Lemmas, Threshold) {
  EXPECT_NEAR(lemma_threshold(0.01, 20000), 0.01 + 3 * std::sqrt(0.01 / 20000), 1e-12);
}

TEST(Lemmas, Budgets) {
  EXPECT_EQ(lemma1_attempts(4, 16, 0.1), static_cast<std::uint64_t>(std::ceil(2.0 * 3 * (16 + std::log(10.0)))));
  EXPECT_EQ(lemma2_rounds(16, 0.1),
            static_cast<std::uint64_t>(std::ceil(2.0 * (16 + std::log(10.0)) / (1 - std::exp(-1.0)))));
}

TEST(Lemmas, Lemma1Passes) {
  const auto r = lemma1_mc(8, 32, 0.05, 5000, 1);
  EXPECT_TRUE(r.pass);
  EXPECT_LE(r.rate, r.threshold);
  EXPECT_EQ(r.budget, lemma1_attempts(8, 32, 0.05));
}

TEST(Lemmas, Lemma2Passes) {
  const auto r = lemma2_mc(16, 64, 0.01, 5000, 2);
  EXPECT_TRUE(r.pass);
}

TEST(Lemmas, HalvedBudgetFails) {
  EXPECT_FALSE(lemma1_mc(4, 64, 0.01, 5000, 3, true).pass);
}

TEST(Lemmas, RoundSuccessAtLeastOneMinusInverseE) {
  for (std::uint32_t P : {2u, 4u, 16u, 64u}) EXPECT_GE(lemma2_round_success(P, 100000, P), 1 - std::exp(-1.0) - 0.01);
}

TEST(Lemmas, Lemma3Schedules) {
  for (auto k : {ScheduleKind::single, ScheduleKind::round_robin, ScheduleKind::adversarial}) {
    const auto r = lemma3_mc(make_schedule(k, 8), 8, 32, 0.05, 3000, 4);
    EXPECT_TRUE(r.pass);
  }
}

TEST(Lemmas, ParseSchedule) {
  EXPECT_EQ(parse_schedule("round-robin"), ScheduleKind::round_robin);
  EXPECT_EQ(parse_schedule("round_robin"), ScheduleKind::round_robin);
  EXPECT_EQ(parse_schedule("single"), ScheduleKind::single);
  EXPECT_FALSE(parse_schedule("bogus").has_value());
}

TEST(Lemmas, StarvingScheduleThrows) {
  const TaskSchedule none = [](std::uint64_t, std::uint64_t) { return std::optional<std::uint32_t>{}; };
  EXPECT_THROW(lemma3_mc(none, 4, 8, 0.1, 10, 1), std::invalid_argument);
}

TEST(Lemmas, RejectsBadArguments) {
  EXPECT_THROW(lemma1_mc(1, 8, 0.1, 10, 1), std::invalid_argument);
  EXPECT_THROW(lemma1_mc(4, 0, 0.1, 10, 1), std::invalid_argument);
  EXPECT_THROW(lemma2_mc(4, 8, 1.0, 10, 1), std::invalid_argument);
  EXPECT_THROW(lemma2_mc(4, 8, 0.1, 0, 1), std::invalid_argument);
}

TEST(Lemmas, Deterministic) {
  const auto a = lemma2_mc(4, 16, 0.1, 2000, 77), b = lemma2_mc(4, 16, 0.1, 2000, 77);
  EXPECT_EQ(a.failures, b.failures);
}
