// steal_lab command-line front end.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "steal_lab/bench.hpp"
#include "steal_lab/fit.hpp"
#include "steal_lab/lemmas.hpp"
#include "steal_lab/table1.hpp"

namespace sl = steal_lab;
using json = nlohmann::ordered_json;

namespace {

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("STEAL_LAB_SEED"); env && *env) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("STEAL_LAB_SEED is not an integer: ") + env);
    }
  }
  std::random_device rd;
  const std::uint64_t s = (std::uint64_t{rd()} << 32) | rd();
  std::cerr << "seed: " << s << '\n';
  return s;
}

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw std::runtime_error("cannot open " + path + " for writing");
  }
  std::ostream& os() { return file_ ? *file_ : std::cout; }
  void close() {
    if (file_) {
      file_->close();
      if (!*file_) throw std::runtime_error("write failed");
    }
  }

 private:
  std::unique_ptr<std::ofstream> file_;
};

// Values from --config fill options the command line left unset.
void apply_config(CLI::App* sub, const std::string& path) {
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config " + path);
  for (const auto& item : CLI::ConfigINI().from_config(in)) {
    if (item.name == "++" || item.name == "--") continue;  // section markers
    const std::string key = item.fullname();
    CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (!opt) throw std::invalid_argument("config: unknown key '" + key + "' for " + sub->get_name());
    if (opt->count() > 0) continue;
    opt->add_result(item.inputs);
    opt->run_callback();
  }
}

struct Common {
  std::string alg;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format;
  std::string config;
  std::uint32_t leaf = 8;
  std::uint32_t steal_cost = 4;
  std::uint32_t k = 2;
  double jitter = 0.1;
};

void add_common(CLI::App* sub, Common& c, bool sched) {
  sub->add_option("--alg", c.alg, "algorithm id");
  sub->add_option("--seed", c.seed, "seed (falls back to STEAL_LAB_SEED)");
  sub->add_option("--out", c.out, "output file (default stdout)");
  sub->add_option("--config", c.config, "flat key=value file; command-line flags win");
  if (sched) {
    sub->add_option("--leaf", c.leaf, "kernel leaf tile size")->check(CLI::PositiveNumber);
    sub->add_option("--steal-cost", c.steal_cost, "ticks per steal attempt")->check(CLI::PositiveNumber);
    sub->add_option("--k", c.k, "asynchrony bound k")->check(CLI::PositiveNumber);
    sub->add_option("--jitter", c.jitter, "per-tick skip probability")->check(CLI::Range(0.0, 0.999999));
  }
}

void require_alg(const Common& c) {
  if (c.alg.empty()) throw std::invalid_argument("--alg is required");
}

int cmd_simulate(const Common& c, std::uint64_t n, std::uint32_t procs, std::uint64_t m, std::uint64_t b) {
  require_alg(c);
  sl::KernelConfig kc;
  kc.block_words = b;
  kc.leaf = c.leaf;
  const std::uint64_t seed = resolve_seed(c.seed);
  const sl::SPDag dag = sl::make_dag(c.alg, n, seed, kc);
  sl::SchedulerConfig sc;
  sc.procs = procs;
  sc.steal_cost = c.steal_cost;
  sc.asynchrony = c.k;
  sc.jitter = c.jitter;
  sc.seed = seed;
  const auto r = sl::simulate(dag, sc, sl::CacheConfig{m, b, false});
  Output out(c.out);
  out.os() << sl::simulate_json(r) << '\n';
  out.close();
  return 0;
}

sl::SweepSpec sweep_spec(const Common& c, const std::vector<std::uint64_t>& n, const std::vector<std::uint32_t>& procs,
                         const std::vector<std::uint64_t>& m, const std::vector<std::uint64_t>& b,
                         std::uint32_t seeds, unsigned threads) {
  require_alg(c);
  sl::SweepSpec s;
  s.alg = c.alg;
  s.sizes = n;
  s.procs = procs;
  s.m_words = m;
  s.b_words = b;
  s.seeds = seeds;
  s.seed = resolve_seed(c.seed);
  s.leaf = c.leaf;
  s.steal_cost = c.steal_cost;
  s.asynchrony = c.k;
  s.jitter = c.jitter;
  s.threads = threads;
  return s;
}

int cmd_sweep(const Common& c, const sl::SweepSpec& spec) {
  const auto rows = sl::sweep(spec);
  Output out(c.out);
  if (c.format == "json") {
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back({{"n", r.n}, {"P", r.P}, {"M", r.M}, {"B", r.B}, {"seed", r.seed}, {"W", r.W}, {"D", r.D},
                     {"steal_attempts", r.steal_attempts}, {"S", r.S}, {"q1", r.q1}, {"qp", r.qp},
                     {"ticks", r.ticks}});
    }
    out.os() << arr.dump() << '\n';
  } else {
    sl::write_sweep_csv(out.os(), rows);
  }
  out.close();
  return 0;
}

int cmd_overhead(const Common& c, const sl::SweepSpec& spec) {
  const auto rows = sl::overhead(spec);
  Output out(c.out);
  if (c.format == "json") {
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back({{"n", r.n}, {"P", r.P}, {"M", r.M}, {"B", r.B}, {"mean_overhead", r.mean_overhead},
                     {"mean_steals", r.mean_steals}, {"predicted", r.predicted}});
    }
    out.os() << arr.dump() << '\n';
  } else {
    sl::write_overhead_csv(out.os(), rows);
  }
  out.close();
  return 0;
}

struct LemmaArgs {
  int which = 1;
  std::uint32_t procs = 8;
  std::uint64_t d = 32;
  double eps = 0.05;
  std::uint64_t trials = 20000;
  std::string schedule = "single";
  bool halve = false;
};

int cmd_verify_lemma(const Common& c, const LemmaArgs& a) {
  const std::uint64_t seed = resolve_seed(c.seed);
  sl::LemmaResult r;
  if (a.which == 1) {
    r = sl::lemma1_mc(a.procs, a.d, a.eps, a.trials, seed, a.halve);
  } else if (a.which == 2) {
    r = sl::lemma2_mc(a.procs, a.d, a.eps, a.trials, seed, a.halve);
  } else {
    const auto kind = sl::parse_schedule(a.schedule);
    if (!kind) throw std::invalid_argument("unknown schedule '" + a.schedule + "'");
    r = sl::lemma3_mc(sl::make_schedule(*kind, a.procs), a.procs, a.d, a.eps, a.trials, seed, a.halve);
  }
  Output out(c.out);
  if (c.format == "json") {
    json j{{"lemma", a.which}, {"P", a.procs}, {"D", a.d},          {"eps", a.eps},
           {"trials", r.trials}, {"budget", r.budget}, {"failures", r.failures}, {"rate", r.rate},
           {"threshold", r.threshold}, {"pass", r.pass}, {"seed", seed}};
    out.os() << j.dump() << '\n';
  } else {
    out.os() << "lemma " << a.which << " P=" << a.procs << " D=" << a.d << " eps=" << sl::format_double(a.eps)
             << " trials=" << r.trials << " budget=" << r.budget << " rate=" << sl::format_double(r.rate)
             << " threshold=" << sl::format_double(r.threshold) << ' ' << (r.pass ? "PASS" : "FAIL") << '\n';
  }
  out.close();
  return r.pass ? 0 : 1;
}

int cmd_table1(const Common& c) {
  const auto rows = sl::table1();
  bool all = true;
  Output out(c.out);
  if (c.format == "json") {
    json arr = json::array();
    for (const auto& r : rows) {
      json missing = json::array(), extra = json::array();
      for (const auto& t : r.missing) missing.push_back(sl::to_string(t));
      for (const auto& t : r.extra) extra.push_back(sl::to_string(t));
      arr.push_back({{"algorithm", r.alg}, {"derived", r.derived.to_string()}, {"expected", r.expected.to_string()},
                     {"match", r.match}, {"missing", missing}, {"extra", extra}});
      all = all && r.match;
    }
    out.os() << arr.dump(2) << '\n';
  } else {
    for (const auto& r : rows) {
      out.os() << r.alg << '\n'
               << "  derived:  " << r.derived.to_string() << '\n'
               << "  expected: " << r.expected.to_string() << '\n'
               << "  match:    " << (r.match ? "true" : "false") << '\n';
      for (const auto& t : r.missing) out.os() << "  missing:  " << sl::to_string(t) << '\n';
      for (const auto& t : r.extra) out.os() << "  extra:    " << sl::to_string(t) << '\n';
      all = all && r.match;
    }
  }
  out.close();
  return all ? 0 : 1;
}

int cmd_analyze(const Common& c, const std::string& text) {
  const auto a = sl::analyze(text);
  Output out(c.out);
  if (c.format == "json") {
    json j{{"alpha", a.recurrence.alpha},
           {"beta", a.recurrence.beta},
           {"critical", a.recurrence.critical().to_string()},
           {"terms", a.recurrence.terms.to_string()},
           {"solved", a.solved.to_string()},
           {"bound", a.refined.to_string()}};
    out.os() << j.dump() << '\n';
  } else {
    out.os() << "alpha=" << a.recurrence.alpha << " beta=" << a.recurrence.beta
             << " critical=" << a.recurrence.critical().to_string() << '\n'
             << "terms:  " << a.recurrence.terms.to_string() << '\n'
             << "solved: " << a.solved.to_string() << '\n'
             << "bound:  " << a.refined.to_string() << '\n';
  }
  out.close();
  return 0;
}

std::uint64_t column(const sl::SweepRow& r, const std::string& name) {
  if (name == "n") return r.n;
  if (name == "P") return r.P;
  if (name == "M") return r.M;
  if (name == "B") return r.B;
  if (name == "W") return r.W;
  if (name == "D") return r.D;
  if (name == "steal_attempts") return r.steal_attempts;
  if (name == "S") return r.S;
  if (name == "q1") return r.q1;
  if (name == "qp") return r.qp;
  if (name == "ticks") return r.ticks;
  if (name == "PD") return r.P * r.D;
  throw std::invalid_argument("unknown column '" + name + "'");
}

int cmd_fit(const Common& c, const std::string& in_path, const std::string& x, const std::string& y) {
  std::ifstream in(in_path);
  if (!in) throw std::runtime_error("cannot read " + in_path);
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : sl::read_sweep_csv(in)) {
    pts.emplace_back(static_cast<double>(column(r, x)), static_cast<double>(column(r, y)));
  }
  const auto f = sl::loglog_fit(pts);
  Output out(c.out);
  if (c.format == "json") {
    out.os() << json{{"slope", f.slope}, {"intercept", f.intercept}, {"r2", f.r2}}.dump() << '\n';
  } else {
    out.os() << "slope,intercept,r2\n"
             << sl::format_double(f.slope) << ',' << sl::format_double(f.intercept) << ','
             << sl::format_double(f.r2) << '\n';
  }
  out.close();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized work-stealing and parallel cache complexity lab"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  Common c;
  std::uint64_t n1 = 64, m1 = 4096, b1 = 16;
  std::uint32_t p1 = 1;
  std::vector<std::uint64_t> ns, ms{4096}, bs{16};
  std::vector<std::uint32_t> ps{1};
  std::uint32_t seeds = 1;
  unsigned threads = 0;
  LemmaArgs la;
  std::string recurrence, fit_in, fit_x = "n", fit_y = "q1";

  auto* sim = app.add_subcommand("simulate", "run one scheduler simulation and print the report as JSON");
  add_common(sim, c, true);
  sim->add_option("--n", n1, "problem size (power of two)");
  sim->add_option("--procs", p1, "processors")->check(CLI::PositiveNumber);
  sim->add_option("--m", m1, "cache words");
  sim->add_option("--b", b1, "block words");
  sim->add_option("--format", c.format)->check(CLI::IsMember({"json"}));

  auto add_lists = [&](CLI::App* s) {
    add_common(s, c, true);
    s->add_option("--n", ns, "problem sizes")->delimiter(',');
    s->add_option("--procs", ps, "processor counts")->delimiter(',');
    s->add_option("--m", ms, "cache sizes in words")->delimiter(',');
    s->add_option("--b", bs, "block sizes in words")->delimiter(',');
    s->add_option("--seeds", seeds, "seeds per point")->check(CLI::PositiveNumber);
    s->add_option("--threads", threads, "worker threads (0 = all cores)");
    s->add_option("--format", c.format)->check(CLI::IsMember({"csv", "json"}));
  };
  auto* sw = app.add_subcommand("sweep", "simulate a grid of (n, P, M, B, seed) points; CSV rows");
  add_lists(sw);
  auto* ov = app.add_subcommand("overhead", "mean q_p - q_1 per point next to the predicted overhead term");
  add_lists(ov);

  auto* vl = app.add_subcommand("verify-lemma", "Monte Carlo check of a steal lemma");
  add_common(vl, c, false);
  vl->add_option("--lemma,--which", la.which, "1, 2 or 3")->check(CLI::IsMember({1, 2, 3}));
  vl->add_option("--procs", la.procs, "processors (>= 2)");
  vl->add_option("--d", la.d, "tasks to steal");
  vl->add_option("--eps", la.eps, "failure probability");
  vl->add_option("--trials", la.trials, "Monte Carlo trials");
  vl->add_option("--schedule", la.schedule, "lemma 3 task placement: single, round-robin, adversarial");
  vl->add_flag("--halve", la.halve, "halve the attempt budget (diagnostic)");
  vl->add_option("--format", c.format)->check(CLI::IsMember({"text", "json"}));

  auto* t1 = app.add_subcommand("table1", "derive every bound and compare with the expected ones");
  t1->add_option("--out", c.out);
  t1->add_option("--format", c.format)->check(CLI::IsMember({"text", "json"}));

  auto* an = app.add_subcommand("analyze", "solve a recurrence, e.g. 'Q(n) = 2 Q(n/2) + 6 MM(n/2); D(n) = n'");
  an->add_option("recurrence", recurrence)->required();
  an->add_option("--out", c.out);
  an->add_option("--format", c.format)->check(CLI::IsMember({"text", "json"}));

  auto* ft = app.add_subcommand("fit", "log-log least squares over two columns of a sweep CSV");
  ft->add_option("--in", fit_in, "sweep CSV")->required();
  ft->add_option("--x", fit_x, "x column (n, P, D, PD, ...)");
  ft->add_option("--y", fit_y, "y column (q1, qp, S, ...)");
  ft->add_option("--out", c.out);
  ft->add_option("--format", c.format)->check(CLI::IsMember({"csv", "json"}));

  CLI11_PARSE(app, argc, argv);

  try {
    for (CLI::App* s : {sim, sw, ov, vl}) {
      if (s->parsed()) apply_config(s, c.config);
    }
    if (sim->parsed()) return cmd_simulate(c, n1, p1, m1, b1);
    if (sw->parsed() || ov->parsed()) {
      if (ns.empty()) throw std::invalid_argument("--n is required");
      const auto spec = sweep_spec(c, ns, ps, ms, bs, seeds, threads);
      return sw->parsed() ? cmd_sweep(c, spec) : cmd_overhead(c, spec);
    }
    if (vl->parsed()) return cmd_verify_lemma(c, la);
    if (t1->parsed()) return cmd_table1(c);
    if (an->parsed()) return cmd_analyze(c, recurrence);
    if (ft->parsed()) return cmd_fit(c, fit_in, fit_x, fit_y);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
