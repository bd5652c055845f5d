#include "steal_lab/lemmas.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace steal_lab {

namespace {

void check(std::uint32_t P, std::uint64_t D, double eps, std::uint64_t trials) {
  if (P < 2) throw std::invalid_argument("lemma: P must be >= 2");
  if (D < 1) throw std::invalid_argument("lemma: D must be >= 1");
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("lemma: eps must be in (0,1)");
  if (trials < 1) throw std::invalid_argument("lemma: trials must be >= 1");
}

LemmaResult finish(std::uint64_t failures, std::uint64_t trials, std::uint64_t budget, double eps) {
  LemmaResult r;
  r.trials = trials;
  r.failures = failures;
  r.budget = budget;
  r.rate = static_cast<double>(failures) / static_cast<double>(trials);
  r.threshold = lemma_threshold(eps, trials);
  r.pass = r.rate <= r.threshold;
  return r;
}

}  // namespace

double lemma_threshold(double eps, std::uint64_t trials) {
  return eps + 3.0 * std::sqrt(eps / static_cast<double>(trials));
}

std::uint64_t lemma1_attempts(std::uint32_t P, std::uint64_t D, double eps) {
  return static_cast<std::uint64_t>(std::ceil(2.0 * (P - 1) * (static_cast<double>(D) + std::log(1.0 / eps))));
}

std::uint64_t lemma2_rounds(std::uint64_t D, double eps) {
  return static_cast<std::uint64_t>(
      std::ceil(2.0 * (static_cast<double>(D) + std::log(1.0 / eps)) / (1.0 - 1.0 / std::numbers::e)));
}

LemmaResult lemma1_mc(std::uint32_t P, std::uint64_t D, double eps, std::uint64_t trials, std::uint64_t seed,
                      bool halve) {
  check(P, D, eps, trials);
  std::uint64_t t = lemma1_attempts(P, D, eps);
  if (halve) t /= 2;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> victim(0, P - 2);  // 0 is the designated victim
  std::uint64_t failures = 0;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    std::uint64_t hits = 0;
    for (std::uint64_t a = 0; a < t && hits < D; ++a) hits += victim(rng) == 0;
    failures += hits < D;
  }
  return finish(failures, trials, t, eps);
}

LemmaResult lemma2_mc(std::uint32_t P, std::uint64_t D, double eps, std::uint64_t trials, std::uint64_t seed,
                      bool halve) {
  check(P, D, eps, trials);
  std::uint64_t rounds = lemma2_rounds(D, eps);
  if (halve) rounds /= 2;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> victim(0, P - 2);
  std::uint64_t failures = 0;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    std::uint64_t stolen = 0;
    for (std::uint64_t r = 0; r < rounds && stolen < D; ++r) {
      for (std::uint32_t a = 0; a + 1 < P; ++a) {
        if (victim(rng) == 0) {
          ++stolen;
          break;
        }
      }
    }
    failures += stolen < D;
  }
  return finish(failures, trials, rounds, eps);
}

double lemma2_round_success(std::uint32_t P, std::uint64_t rounds, std::uint64_t seed) {
  if (P < 2) throw std::invalid_argument("lemma: P must be >= 2");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> victim(0, P - 2);
  std::uint64_t ok = 0;
  for (std::uint64_t r = 0; r < rounds; ++r) {
    for (std::uint32_t a = 0; a + 1 < P; ++a) {
      if (victim(rng) == 0) {
        ++ok;
        break;
      }
    }
  }
  return static_cast<double>(ok) / static_cast<double>(rounds);
}

std::optional<ScheduleKind> parse_schedule(std::string_view s) {
  if (s == "single") return ScheduleKind::single;
  if (s == "round-robin" || s == "round_robin") return ScheduleKind::round_robin;
  if (s == "adversarial") return ScheduleKind::adversarial;
  return std::nullopt;
}

TaskSchedule make_schedule(ScheduleKind kind, std::uint32_t P) {
  switch (kind) {
    case ScheduleKind::single:
      return [](std::uint64_t, std::uint64_t) -> std::optional<std::uint32_t> { return 0u; };
    case ScheduleKind::round_robin:
      // task i lives on processor i mod P and tasks go in order
      return [P](std::uint64_t, std::uint64_t stolen) -> std::optional<std::uint32_t> {
        return static_cast<std::uint32_t>(stolen % P);
      };
    case ScheduleKind::adversarial:
      return [P](std::uint64_t round, std::uint64_t) -> std::optional<std::uint32_t> {
        return static_cast<std::uint32_t>(round % P);
      };
  }
  throw std::invalid_argument("unknown schedule");
}

LemmaResult lemma3_mc(const TaskSchedule& schedule, std::uint32_t P, std::uint64_t D, double eps,
                      std::uint64_t trials, std::uint64_t seed, bool halve) {
  check(P, D, eps, trials);
  std::uint64_t rounds = lemma2_rounds(D, eps);
  if (halve) rounds /= 2;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> draw(0, P - 2);
  std::uint64_t failures = 0;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    std::uint64_t stolen = 0;
    for (std::uint64_t r = 0; r < rounds && stolen < D; ++r) {
      const auto holder = schedule(r, stolen);
      if (!holder) throw std::invalid_argument("schedule starves: no task available at round " + std::to_string(r));
      if (*holder >= P) throw std::invalid_argument("schedule names processor out of range");
      for (std::uint32_t a = 0; a < P; ++a) {
        if (a == *holder) continue;
        std::uint32_t v = draw(rng);
        if (v >= a) ++v;  // uniform over the other P-1 processors
        if (v == *holder) {
          ++stolen;
          break;
        }
      }
    }
    failures += stolen < D;
  }
  return finish(failures, trials, rounds, eps);
}

}  // namespace steal_lab
