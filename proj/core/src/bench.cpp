#include "steal_lab/bench.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdio>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "steal_lab/morton.hpp"
#include "steal_lab/table1.hpp"

namespace steal_lab {

SPDag fork_tree(std::uint64_t leaves, std::uint32_t leaf_work) {
  if (leaves < 1 || leaf_work < 1) throw std::invalid_argument("fork_tree: need leaves >= 1 and leaf_work >= 1");
  DagBuilder b;
  std::vector<Fragment> parts;
  parts.reserve(leaves);
  for (std::uint64_t i = 0; i < leaves; ++i) {
    const BlockId blk = i;
    parts.push_back(b.leaf(leaf_work, std::span<const BlockId>(&blk, 1)));
  }
  return std::move(b).finish(b.parallel(parts));
}

std::span<const std::string_view> bench_algorithms() {
  static const std::vector<std::string_view> ids = [] {
    std::vector<std::string_view> v(algorithm_ids().begin(), algorithm_ids().end());
    v.push_back("fork_tree");
    return v;
  }();
  return ids;
}

SPDag make_dag(std::string_view alg, std::uint64_t n, std::uint64_t seed, const KernelConfig& cfg) {
  if (alg == "fork_tree") {
    if (!is_pow2(n)) throw std::invalid_argument("n=" + std::to_string(n) + " is not a power of two");
    return fork_tree(n, static_cast<std::uint32_t>(n));
  }
  return std::move(generate(alg, n, seed, cfg).dag);
}

SimulateResult simulate(const SPDag& dag, const SchedulerConfig& sched, const CacheConfig& cache) {
  SimulateResult r;
  r.report = run(dag, sched, cache);
  r.q_1 = sched.procs == 1 ? r.report.q_p : sequential_q1(dag, cache);
  r.work_span = work_span(dag);
  return r;
}

std::string simulate_json(const SimulateResult& r) {
  auto j = nlohmann::ordered_json::parse(r.report.to_json());
  j["q_1"] = r.q_1;
  return j.dump();
}

void SweepSpec::validate() const {
  const auto algs = bench_algorithms();
  if (std::find(algs.begin(), algs.end(), alg) == algs.end()) {
    throw std::invalid_argument("unknown algorithm '" + alg + "'");
  }
  if (sizes.empty() || procs.empty() || m_words.empty() || b_words.empty()) {
    throw std::invalid_argument("sweep: every list needs at least one value");
  }
  for (auto n : sizes) {
    if (!is_pow2(n)) throw std::invalid_argument("n=" + std::to_string(n) + " is not a power of two");
  }
  for (auto p : procs) {
    if (p < 1) throw std::invalid_argument("sweep: P must be >= 1");
  }
  for (auto m : m_words) {
    for (auto b : b_words) CacheConfig{m, b, false}.validate();
  }
  if (seeds < 1) throw std::invalid_argument("sweep: seeds must be >= 1");
  if (leaf < 1) throw std::invalid_argument("sweep: leaf must be >= 1");
}

namespace {

template <class F>
void run_parallel(std::size_t count, unsigned threads, F&& job) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          job(i);
        } catch (...) {
          std::lock_guard lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

std::vector<SweepRow> sweep(const SweepSpec& spec) {
  spec.validate();
  struct Point {
    std::size_t dag;
    std::uint64_t n, P, M, B, seed;
  };
  std::vector<SPDag> dags;
  std::vector<WorkSpan> ws;
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::size_t> dag_index;
  std::vector<Point> points;
  for (auto n : spec.sizes) {
    for (auto P : spec.procs) {
      for (auto M : spec.m_words) {
        for (auto B : spec.b_words) {
          auto [it, fresh] = dag_index.try_emplace({n, B}, dags.size());
          if (fresh) {
            KernelConfig kc;
            kc.block_words = B;
            kc.leaf = spec.leaf;
            dags.push_back(make_dag(spec.alg, n, spec.seed, kc));
            ws.push_back(work_span(dags.back()));
          }
          for (std::uint32_t s = 0; s < spec.seeds; ++s) points.push_back({it->second, n, P, M, B, spec.seed + s});
        }
      }
    }
  }
  // q1 depends only on (dag, M)
  std::map<std::pair<std::size_t, std::uint64_t>, std::uint64_t> q1;
  for (const auto& p : points) q1.try_emplace({p.dag, p.M}, 0);
  std::vector<std::pair<std::size_t, std::uint64_t>> q1_keys;
  for (const auto& [k, v] : q1) q1_keys.push_back(k);
  std::vector<std::uint64_t> q1_vals(q1_keys.size());
  run_parallel(q1_keys.size(), spec.threads, [&](std::size_t i) {
    const auto& [d, M] = q1_keys[i];
    std::uint64_t B = 0;
    for (const auto& [key, idx] : dag_index) {
      if (idx == d) B = key.second;
    }
    q1_vals[i] = sequential_q1(dags[d], CacheConfig{M, B, false});
  });
  for (std::size_t i = 0; i < q1_keys.size(); ++i) q1[q1_keys[i]] = q1_vals[i];

  std::vector<SweepRow> rows(points.size());
  run_parallel(points.size(), spec.threads, [&](std::size_t i) {
    const Point& p = points[i];
    SchedulerConfig sc;
    sc.procs = static_cast<std::uint32_t>(p.P);
    sc.steal_cost = spec.steal_cost;
    sc.asynchrony = spec.asynchrony;
    sc.jitter = spec.jitter;
    sc.seed = p.seed;
    const SimReport rep = run(dags[p.dag], sc, CacheConfig{p.M, p.B, false});
    SweepRow& r = rows[i];
    r.n = p.n;
    r.P = p.P;
    r.M = p.M;
    r.B = p.B;
    r.seed = p.seed;
    r.W = ws[p.dag].work;
    r.D = ws[p.dag].span;
    r.steal_attempts = rep.steal_attempts;
    r.S = rep.successful_steals;
    r.q1 = q1.at({p.dag, p.M});
    r.qp = rep.q_p;
    r.ticks = rep.ticks;
  });
  return rows;
}

void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows) {
  os << kSweepHeader << '\n';
  for (const auto& r : rows) {
    os << r.n << ',' << r.P << ',' << r.M << ',' << r.B << ',' << r.seed << ',' << r.W << ',' << r.D << ','
       << r.steal_attempts << ',' << r.S << ',' << r.q1 << ',' << r.qp << ',' << r.ticks << '\n';
  }
}

std::vector<SweepRow> read_sweep_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kSweepHeader) throw std::runtime_error("sweep csv: bad header");
  std::vector<SweepRow> rows;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::array<std::uint64_t, 12> v{};
    std::istringstream ls(line);
    for (std::size_t i = 0; i < v.size(); ++i) {
      std::string cell;
      if (!std::getline(ls, cell, ',')) throw std::runtime_error("sweep csv: short row at line " + std::to_string(lineno));
      try {
        std::size_t used = 0;
        v[i] = std::stoull(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw std::runtime_error("sweep csv: bad value '" + cell + "' at line " + std::to_string(lineno));
      }
    }
    rows.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8], v[9], v[10], v[11]});
  }
  return rows;
}

BoundExpr overhead_term(std::string_view alg) {
  BoundExpr full;
  if (alg == "mm") full = base_primitives().at(Primitive::mm);
  else if (alg == "mt") full = base_primitives().at(Primitive::mt);
  else if (alg == "grid2d") full = base_primitives().at(Primitive::grid2d);
  else if (std::find(table1_ids().begin(), table1_ids().end(), alg) != table1_ids().end()) full = derive(alg);
  else throw std::invalid_argument("no parallel bound for '" + std::string(alg) + "'");
  std::vector<Term> terms;
  for (const auto& t : full.terms()) {
    if (t.coef.p > 0) terms.push_back(t);
  }
  return BoundExpr(std::move(terms));
}

std::vector<OverheadRow> overhead(const SweepSpec& spec) {
  const BoundExpr term = overhead_term(spec.alg);
  const auto rows = sweep(spec);
  std::vector<OverheadRow> out;
  for (std::size_t i = 0; i < rows.size(); i += spec.seeds) {
    OverheadRow o;
    const SweepRow& r = rows[i];
    o.n = r.n;
    o.P = r.P;
    o.M = r.M;
    o.B = r.B;
    for (std::size_t k = i; k < i + spec.seeds; ++k) {
      o.mean_overhead += static_cast<double>(rows[k].qp) - static_cast<double>(rows[k].q1);
      o.mean_steals += static_cast<double>(rows[k].S);
    }
    o.mean_overhead /= spec.seeds;
    o.mean_steals /= spec.seeds;
    o.predicted = eval(term, static_cast<double>(r.n), static_cast<double>(r.P), static_cast<double>(r.M),
                       static_cast<double>(r.B));
    out.push_back(o);
  }
  return out;
}

void write_overhead_csv(std::ostream& os, std::span<const OverheadRow> rows) {
  os << kOverheadHeader << '\n';
  for (const auto& r : rows) {
    os << r.n << ',' << r.P << ',' << r.M << ',' << r.B << ',' << format_double(r.mean_overhead) << ','
       << format_double(r.mean_steals) << ',' << format_double(r.predicted) << '\n';
  }
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace steal_lab
