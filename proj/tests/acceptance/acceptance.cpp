// Acceptance runner: prints one PASS/FAIL line per criterion.
// usage: steal_lab_acceptance <steal_lab cli> <property test binary>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "steal_lab/bench.hpp"
#include "steal_lab/fit.hpp"
#include "steal_lab/kernels.hpp"
#include "steal_lab/lemmas.hpp"
#include "steal_lab/recurrence.hpp"
#include "steal_lab/rws_sim.hpp"
#include "steal_lab/table1.hpp"

using namespace steal_lab;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Runs with P >= 2 feed the distributed-cache check.
struct SoundnessLog {
  std::uint64_t runs = 0;
  std::uint64_t violations = 0;
  std::string first;
  void check(const std::string& label, std::uint64_t q1, std::uint64_t qp, std::uint64_t S, const CacheConfig& c) {
    ++runs;
    const double lo = static_cast<double>(q1) * 0.99;
    const double hi = static_cast<double>(q1) + 2.0 * static_cast<double>(c.lines()) * static_cast<double>(S) +
                      2.0 * static_cast<double>(S);
    if (static_cast<double>(qp) < lo || static_cast<double>(qp) > hi) {
      if (violations++ == 0) {
        first = label + " q1=" + std::to_string(q1) + " qp=" + std::to_string(qp) + " S=" + std::to_string(S);
      }
    }
  }
};

SoundnessLog soundness;
const CacheConfig kCache{4096, 16};

// --- 1 ---------------------------------------------------------------------

Outcome table1_symbolic() {
  const std::map<std::string, std::string> expected = {
      {"kleene", "n^3/(B M^{1/2}) + P^{1/3} n^2 log^{2/3}(n)/B + P n"},
      {"gaussian", "n^3/(B M^{1/2}) + P^{1/3} n^2 log^{2/3}(n)/B + P n"},
      {"trs", "n^3/(B M^{1/2}) + P^{1/3} n^2 log^{5/3}(n)/B + P n"},
      {"cholesky_lu", "n^3/(B M^{1/2}) + P^{1/3} n^2 log^{5/3}(n)/B + P n log(n)"},
      {"lws", "n^2/(B M) + P^{1/2} n log^2(n)/B + P n"},
      {"gap", "n^3/(B M) + P^{1/2} n^2 log^2(n)/B + P n^{log_2(3)}"},
      {"parenthesis", "n^3/(B M^{1/2}) + P^{1/3} n^2 log^{5/3}(n)/B + P n^{log_2(3)}"},
      {"rna", "n^4/(B M) + P^{1/2} n^2 log^2(n)/B + P n^{log_2(3)}"},
      {"protein", "n^3/(B M) + P^{1/2} n^2 log(n)/B + P n log^2(n)"},
  };
  const auto t0 = Clock::now();
  int ok = 0;
  std::string bad;
  for (const auto& [alg, want] : expected) {
    const BoundExpr got = derive(alg);
    if (got == BoundExpr::parse(want)) {
      ++ok;
    } else {
      bad += " " + alg + "=[" + got.to_string() + "]";
    }
  }
  const double dt = seconds_since(t0);
  return {ok == 9 && dt < 1.0, std::to_string(ok) + "/9 rows exact, " + std::to_string(dt) + " s" + bad};
}

// --- 2 ---------------------------------------------------------------------

// Literal expansion of Q(n) = alpha Q(n/beta) + f(n) with Q(n <= 1) = 1.
double unroll_oracle(const AlphaBetaRecurrence& r, double n, double P, double M, double B) {
  if (n <= 1) return 1.0;
  return static_cast<double>(r.alpha) * unroll_oracle(r, n / static_cast<double>(r.beta), P, M, B) +
         eval(r.terms, n, P, M, B);
}

Outcome solver_oracle() {
  const auto t0 = Clock::now();
  double worst_lo = 1e300, worst_hi = 0;
  for (auto alg : {"kleene", "trs", "lws", "gap", "protein"}) {
    const auto r = substitute(registry_shape(alg), table1_primitives(), span_of(alg));
    const BoundExpr s = solve(r);
    for (int k = 6; k <= 12; ++k) {
      const double n = std::ldexp(1.0, k);
      const double ratio = unroll_oracle(r, n, 64, 1 << 20, 64) / eval(s, n, 64, 1 << 20, 64);
      worst_lo = std::min(worst_lo, ratio);
      worst_hi = std::max(worst_hi, ratio);
    }
  }
  const double dt = seconds_since(t0);
  std::ostringstream os;
  os << "ratio range [" << worst_lo << ", " << worst_hi << "], " << dt << " s";
  return {worst_lo >= 1.0 / 16 && worst_hi <= 16 && dt < 10, os.str()};
}

// --- 3 ---------------------------------------------------------------------

Outcome lemma_mc() {
  const auto t0 = Clock::now();
  int total = 0, passed = 0;
  std::string bad;
  std::uint64_t seed = 1;
  for (std::uint32_t P : {4u, 8u, 16u}) {
    for (std::uint64_t D : {16u, 32u, 64u}) {
      for (double eps : {0.1, 0.05, 0.01}) {
        const std::array<LemmaResult, 3> rs = {
            lemma1_mc(P, D, eps, 20000, seed++), lemma2_mc(P, D, eps, 20000, seed++),
            lemma3_mc(make_schedule(ScheduleKind::round_robin, P), P, D, eps, 20000, seed++)};
        for (int l = 0; l < 3; ++l) {
          ++total;
          if (rs[l].pass) {
            ++passed;
          } else {
            bad += " L" + std::to_string(l + 1) + "(P=" + std::to_string(P) + ",D=" + std::to_string(D) +
                   ",eps=" + std::to_string(eps) + ")";
          }
        }
      }
    }
  }
  const double dt = seconds_since(t0);
  return {passed == total && dt < 120,
          std::to_string(passed) + "/" + std::to_string(total) + " configurations, " + std::to_string(dt) + " s" + bad};
}

// --- 4 ---------------------------------------------------------------------

Outcome steal_bound() {
  const auto t0 = Clock::now();
  std::vector<std::pair<std::string, SPDag>> dags;
  for (std::uint64_t n = 16; n <= 1024; n *= 2) dags.emplace_back("fork_tree/" + std::to_string(n), fork_tree(n, static_cast<std::uint32_t>(n)));
  KernelConfig unit_leaf;
  unit_leaf.leaf = 1;
  for (std::uint64_t n : {4u, 8u, 16u}) dags.emplace_back("kleene/" + std::to_string(n), make_dag("kleene", n, n, unit_leaf));

  std::uint64_t runs = 0, within = 0;
  std::vector<std::pair<double, double>> points;  // (P D, mean S)
  std::uint64_t dmin = ~0ull, dmax = 0;
  for (const auto& [label, dag] : dags) {
    const WorkSpan ws = work_span(dag);
    dmin = std::min(dmin, ws.span);
    dmax = std::max(dmax, ws.span);
    const std::uint64_t q1 = sequential_q1(dag, kCache);
    for (std::uint32_t P : {2u, 4u, 8u}) {
      double sum = 0;
      for (std::uint64_t seed = 0; seed < 20; ++seed) {
        SchedulerConfig c;
        c.procs = P;
        c.seed = seed * 7919 + P;
        const SimReport rep = run(dag, c, kCache);
        ++runs;
        if (rep.successful_steals <= 8ull * P * ws.span) ++within;
        sum += static_cast<double>(rep.successful_steals);
        soundness.check(label + " P=" + std::to_string(P), q1, rep.q_p, rep.successful_steals, kCache);
      }
      points.emplace_back(static_cast<double>(P) * static_cast<double>(ws.span), std::max(sum / 20, 1e-9));
    }
  }
  const FitResult f = loglog_fit(points);
  const double frac = static_cast<double>(within) / static_cast<double>(runs);
  const double dt = seconds_since(t0);
  std::ostringstream os;
  os << within << "/" << runs << " runs with S <= 8PD, D in [" << dmin << ", " << dmax << "], slope of mean S vs PD "
     << f.slope << ", " << dt << " s";
  const bool spans_ok = dmin >= 16 && dmax <= 2048;
  return {frac >= 0.95 && f.slope <= 1.15 && spans_ok && dt < 300, os.str()};
}

// --- 5 ---------------------------------------------------------------------

Outcome kernel_oracles() {
  const auto t0 = Clock::now();
  int checks = 0, bad = 0;
  std::string where;
  auto expect = [&](bool ok, const std::string& what) {
    ++checks;
    if (!ok && bad++ == 0) where = " first mismatch: " + what;
  };
  for (int i = 0; i < 50; ++i) {
    const std::uint32_t n = 1u << (1 + i % 6);
    const auto a = random_digraph(n, 1000 + i, 0.1 + 0.05 * (i % 8));
    expect(kleene(a).value.to_rows() == oracle::floyd_warshall(a.to_rows()), "kleene n=" + std::to_string(n));
  }
  for (std::uint64_t n = 1; n <= 256; n *= 2) {
    const WeightOracle w(n + 17);
    expect(lws(LwsInstance{n, 3, w}).value == oracle::lws(n, 3, w), "lws n=" + std::to_string(n));
  }
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<Value> dist(0, kMaxWeight - 1);
  for (std::uint64_t n = 2; n <= 64; n *= 2) {
    ParenthesisInstance inst{n, std::vector<Value>(n), WeightOracle(n)};
    for (auto& v : inst.base) v = dist(rng);
    const auto got = parenthesis(inst).value;
    const auto want = oracle::parenthesis(n, inst.base, inst.w);
    bool same = true;
    for (std::uint64_t i = 0; i < n; ++i)
      for (std::uint64_t j = i + 1; j <= n; ++j) same = same && got[i][j] == want[i][j];
    expect(same, "parenthesis n=" + std::to_string(n));
  }
  for (std::uint32_t n = 1; n <= 64; n *= 2) {
    const auto a = random_matrix(n, 1), b = random_matrix(n, 2), c = random_matrix(n, 3);
    expect(mm(a, b, c).value.to_rows() == oracle::min_plus(a.to_rows(), b.to_rows(), c.to_rows()),
           "mm n=" + std::to_string(n));
    std::vector<Value> in(n), out(n);
    for (auto& v : in) v = dist(rng);
    for (auto& v : out) v = dist(rng) * 4;
    const WeightOracle w(n * 3);
    expect(grid2d(in, out, w).value == oracle::grid(in, out, w), "grid2d n=" + std::to_string(n));
  }
  const double dt = seconds_since(t0);
  return {bad == 0 && dt < 60, std::to_string(checks - bad) + "/" + std::to_string(checks) + " exact, " +
                                   std::to_string(dt) + " s" + where};
}

// --- 6 ---------------------------------------------------------------------

Outcome cache_scaling() {
  const auto t0 = Clock::now();
  struct Family {
    const char* alg;
    std::uint64_t lo, hi;
    double target;
  };
  const Family families[] = {{"mm", 64, 512, 3.0}, {"kleene", 64, 512, 3.0}, {"lws", 256, 2048, 2.0}};
  bool all = true;
  std::ostringstream os;
  os.precision(3);
  for (const auto& fam : families) {
    std::vector<std::pair<double, double>> pts;
    for (std::uint64_t n = fam.lo; n <= fam.hi; n *= 2) {
      const SPDag dag = make_dag(fam.alg, n, 1, {});
      const std::uint64_t q1 = sequential_q1(dag, kCache);
      pts.emplace_back(static_cast<double>(n), static_cast<double>(q1));
      if (n <= fam.hi / 2) {
        for (std::uint32_t P : {2u, 4u}) {
          SchedulerConfig c;
          c.procs = P;
          c.seed = n + P;
          const SimReport rep = run(dag, c, kCache);
          soundness.check(std::string(fam.alg) + "/" + std::to_string(n) + " P=" + std::to_string(P), q1, rep.q_p,
                          rep.successful_steals, kCache);
        }
      }
    }
    const double slope = loglog_fit(pts).slope;
    const bool ok = std::fabs(slope - fam.target) <= 0.3;
    all = all && ok;
    os << fam.alg << " exponent " << slope << " (target " << fam.target << ", q1";
    for (const auto& p : pts) os << ' ' << static_cast<std::uint64_t>(p.second);
    os << ")" << (ok ? "" : " OUT OF RANGE") << "; ";
  }
  const double dt = seconds_since(t0);
  os << dt << " s";
  return {all && dt < 180, os.str()};
}

// --- 7 ---------------------------------------------------------------------

Outcome cache_soundness() {
  std::string d = std::to_string(soundness.runs - soundness.violations) + "/" + std::to_string(soundness.runs) +
                  " runs within [0.99 q1, q1 + 2(M/B)S + 2S]";
  if (soundness.violations) d += "; first violation " + soundness.first;
  return {soundness.runs > 0 && soundness.violations == 0, d};
}

// --- 8 ---------------------------------------------------------------------

bool capture(const std::string& cmd, std::string& out) {
  FILE* f = popen(cmd.c_str(), "r");
  if (!f) return false;
  out.clear();
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), f)) > 0) out.append(buf.data(), got);
  return pclose(f) == 0;
}

Outcome cli_determinism(const std::string& cli) {
  const auto t0 = Clock::now();
  const std::array<std::string, 10> args = {
      "--alg mm --n 32 --procs 4 --seed 1",          "--alg kleene --n 16 --procs 8 --seed 2",
      "--alg lws --n 256 --procs 3 --seed 3",        "--alg parenthesis --n 32 --procs 2 --seed 4",
      "--alg gap --n 16 --procs 4 --seed 5",         "--alg fork_tree --n 128 --procs 8 --seed 6",
      "--alg protein --n 32 --procs 5 --seed 7",     "--alg trs --n 32 --procs 2 --seed 8 --m 1024",
      "--alg grid2d --n 64 --procs 6 --seed 9",      "--alg cholesky_lu --n 32 --procs 4 --seed 10 --b 8"};
  int same = 0;
  std::string bad;
  for (const auto& a : args) {
    std::string x, y;
    const std::string cmd = "\"" + cli + "\" simulate " + a + " 2>/dev/null";
    const bool ok = capture(cmd, x) && capture(cmd, y) && !x.empty() && x == y;
    if (ok) {
      ++same;
    } else if (bad.empty()) {
      bad = " first difference: " + a;
    }
  }
  const double dt = seconds_since(t0);
  return {same == 10 && dt < 10, std::to_string(same) + "/10 byte-identical, " + std::to_string(dt) + " s" + bad};
}

// --- 9 ---------------------------------------------------------------------

Outcome property_suites(const std::string& bin) {
  const auto t0 = Clock::now();
  const int rc = std::system(("\"" + bin + "\" --gtest_brief=1 > /dev/null 2>&1").c_str());
  const double dt = seconds_since(t0);
  return {rc == 0 && dt < 60, std::string(rc == 0 ? "all properties hold" : "property failures") + ", " +
                                  std::to_string(dt) + " s"};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: " << argv[0] << " <steal_lab cli> <property binary>\n";
    return 2;
  }
  const std::string cli = argv[1], props = argv[2];
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
      {1, table1_symbolic},
      {2, solver_oracle},
      {3, lemma_mc},
      {4, steal_bound},
      {5, kernel_oracles},
      {6, cache_scaling},
      {7, cache_soundness},
      {8, [&] { return cli_determinism(cli); }},
      {9, [&] { return property_suites(props); }},
  };
  int failed = 0;
  for (const auto& [id, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << " - " << o.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
