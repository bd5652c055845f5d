#include <algorithm>
#include <array>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "steal_lab/kernels.hpp"
#include "steal_lab/morton.hpp"
#include "steal_lab/shape.hpp"

namespace steal_lab {

const char* to_string(Primitive p) {
  switch (p) {
    case Primitive::mm: return "MM";
    case Primitive::mt: return "MT";
    case Primitive::grid2d: return "GRID2D";
    case Primitive::trs: return "TRS";
    case Primitive::square: return "SQUARE";
  }
  return "?";
}

std::optional<Primitive> parse_primitive(std::string_view s) {
  std::string u(s);
  std::transform(u.begin(), u.end(), u.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (u == "MM") return Primitive::mm;
  if (u == "MT") return Primitive::mt;
  if (u == "GRID2D" || u == "2D") return Primitive::grid2d;
  if (u == "TRS") return Primitive::trs;
  if (u == "SQUARE") return Primitive::square;
  return std::nullopt;
}

namespace {

std::string multiplier(const ShapeCall& c) {
  std::string npart;
  if (c.n_power == 1) npart = "n";
  else if (c.n_power != 0) npart = "n^" + std::to_string(c.n_power);
  if (c.log_power == 1) npart += npart.empty() ? "log(n)" : " log(n)";
  else if (c.log_power != 0) npart += (npart.empty() ? "log^" : " log^") + std::to_string(c.log_power) + "(n)";
  if (npart.empty()) return c.coef == 1 ? "" : to_string(c.coef) + " ";
  if (c.coef == 1) return npart + " ";
  if (c.coef.denominator() == 1) return to_string(c.coef) + npart + " ";
  // (n/2) style
  if (c.coef.numerator() == 1 && c.n_power == 1 && c.log_power == 0) {
    return "(n/" + std::to_string(c.coef.denominator()) + ") ";
  }
  return "(" + to_string(c.coef) + ") " + npart + " ";
}

}  // namespace

std::string to_string(const RecurrenceShape& s) {
  std::ostringstream os;
  os << "Q(n) = ";
  if (s.alpha != 1) os << s.alpha << ' ';
  os << "Q(n/" << s.beta << ')';
  for (const auto& c : s.calls) {
    os << " + " << multiplier(c) << to_string(c.primitive) << '(';
    if (c.arg.kind == CallArg::Kind::divide) {
      os << "n/" << s.beta;
    } else if (c.arg.p.denominator() == 1) {
      os << "n^" << c.arg.p.numerator();
    } else {
      os << "n^{" << to_string(c.arg.p) << '}';
    }
    os << ')';
  }
  return os.str();
}

namespace {

ShapeCall call(Primitive p, Rational coef = 1, int n_power = 0) {
  ShapeCall c;
  c.coef = coef;
  c.n_power = n_power;
  c.primitive = p;
  return c;
}

const std::map<std::string_view, RecurrenceShape>& shapes() {
  static const std::map<std::string_view, RecurrenceShape> table = [] {
    std::map<std::string_view, RecurrenceShape> t;
    t["kleene"] = {2, 2, {call(Primitive::mm, 6)}, 1};
    t["gaussian"] = {2, 2, {call(Primitive::mm, 4)}, 1};
    t["trs"] = {4, 2, {call(Primitive::mm, 2)}, 1};
    t["cholesky_lu"] = {2, 2, {call(Primitive::trs), call(Primitive::mm)}, 1};
    t["lws"] = {2, 2, {call(Primitive::grid2d)}, 1};
    t["gap"] = {4, 2, {call(Primitive::grid2d, 2, 1), call(Primitive::mt, 2)}, 1};
    t["parenthesis"] = {2, 2, {call(Primitive::square)}, 1};
    t["square"] = {4, 2, {call(Primitive::mm, 4)}, 1};
    ShapeCall rna = call(Primitive::grid2d);
    rna.arg = {CallArg::Kind::power, 2};
    t["rna"] = {4, 2, {rna}, 1};
    t["protein"] = {2, 2, {call(Primitive::mt), call(Primitive::grid2d, Rational(1, 2), 1)}, 1};
    return t;
  }();
  return table;
}

constexpr std::array<std::string_view, 10> kShapeIds = {"kleene", "gaussian", "trs",    "cholesky_lu", "lws",
                                                         "gap",    "parenthesis", "square", "rna",         "protein"};
constexpr std::array<std::string_view, 12> kAlgIds = {"mm",  "mt",          "grid2d", "kleene", "lws", "parenthesis",
                                                       "gaussian", "trs", "cholesky_lu", "gap", "rna", "protein"};

}  // namespace

const RecurrenceShape& registry_shape(std::string_view alg) {
  const auto& t = shapes();
  const auto it = t.find(alg);
  if (it == t.end()) throw std::invalid_argument("unknown algorithm '" + std::string(alg) + "'");
  return it->second;
}

std::span<const std::string_view> shape_ids() { return kShapeIds; }
std::span<const std::string_view> algorithm_ids() { return kAlgIds; }

KernelRun generate(std::string_view alg, std::uint64_t n, std::uint64_t seed, const KernelConfig& cfg) {
  if (std::find(kAlgIds.begin(), kAlgIds.end(), alg) == kAlgIds.end()) {
    throw std::invalid_argument("unknown algorithm '" + std::string(alg) + "'");
  }
  if (!is_pow2(n)) throw std::invalid_argument("n=" + std::to_string(n) + " is not a power of two");
  const auto n32 = static_cast<std::uint32_t>(n);
  auto pack = [](auto&& r) { return KernelRun{std::move(r.dag), std::move(r.space)}; };
  if (alg == "mm") {
    return pack(mm(random_matrix(n32, seed), random_matrix(n32, seed + 1), random_matrix(n32, seed + 2), cfg));
  }
  if (alg == "mt") return pack(mt(random_matrix(n32, seed), cfg));
  if (alg == "grid2d") {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Value> dist(0, kMaxWeight - 1);
    std::vector<Value> in(n), out(n);
    for (auto& v : in) v = dist(rng);
    for (auto& v : out) v = dist(rng);
    return pack(grid2d(in, out, WeightOracle(seed), cfg));
  }
  if (alg == "kleene") return pack(kleene(random_digraph(n32, seed), cfg));
  if (alg == "lws") return pack(lws(LwsInstance{n, 0, WeightOracle(seed)}, cfg));
  if (alg == "parenthesis") {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Value> dist(0, kMaxWeight - 1);
    ParenthesisInstance inst{n, std::vector<Value>(n), WeightOracle(seed)};
    for (auto& v : inst.base) v = dist(rng);
    return pack(parenthesis(inst, cfg));
  }
  return skeleton(registry_shape(alg), n, alg, cfg);
}

}  // namespace steal_lab
