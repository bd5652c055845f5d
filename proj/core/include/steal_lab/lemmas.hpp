#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>

namespace steal_lab {

struct LemmaResult {
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  std::uint64_t budget = 0;  // attempts (lemma 1) or rounds (lemmas 2, 3) per trial
  double rate = 0.0;
  double threshold = 0.0;    // eps + 3 sqrt(eps / trials)
  bool pass = false;
};

/// Sampling slack used by every pass/fail decision.
double lemma_threshold(double eps, std::uint64_t trials);

/// ceil(2 (P-1) (D + ln(1/eps))).
std::uint64_t lemma1_attempts(std::uint32_t P, std::uint64_t D, double eps);
/// ceil(2 (D + ln(1/eps)) / (1 - 1/e)).
std::uint64_t lemma2_rounds(std::uint64_t D, double eps);

/// Independent uniform victim draws among P-1 processors; a trial fails when
/// fewer than D land on the designated victim. `halve` cuts the budget in
/// half (diagnostic).
LemmaResult lemma1_mc(std::uint32_t P, std::uint64_t D, double eps, std::uint64_t trials, std::uint64_t seed,
                      bool halve = false);

/// Rounds of P-1 simultaneous attempts on one victim; a round removes one
/// task iff some attempt hits. Fails when fewer than D rounds succeed.
LemmaResult lemma2_mc(std::uint32_t P, std::uint64_t D, double eps, std::uint64_t trials, std::uint64_t seed,
                      bool halve = false);

/// Fraction of rounds in which at least one of P-1 attempts hits the victim.
double lemma2_round_success(std::uint32_t P, std::uint64_t rounds, std::uint64_t seed);

/// Processor holding an available task at (round, tasks stolen so far);
/// nullopt means no task is available.
using TaskSchedule = std::function<std::optional<std::uint32_t>(std::uint64_t round, std::uint64_t stolen)>;

enum class ScheduleKind : std::uint8_t { single, round_robin, adversarial };
std::optional<ScheduleKind> parse_schedule(std::string_view s);
TaskSchedule make_schedule(ScheduleKind kind, std::uint32_t P);

/// Like lemma2_mc, but each round the P-1 processors other than the holder
/// attempt. Throws std::invalid_argument if the schedule starves.
LemmaResult lemma3_mc(const TaskSchedule& schedule, std::uint32_t P, std::uint64_t D, double eps,
                      std::uint64_t trials, std::uint64_t seed, bool halve = false);

}  // namespace steal_lab
