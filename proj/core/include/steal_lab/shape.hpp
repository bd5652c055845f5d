#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "steal_lab/rational.hpp"

namespace steal_lab {

/// Sub-computations a recurrence can call. TRS and SQUARE are themselves
/// solved recurrences that other shapes use as building blocks.
enum class Primitive : std::uint8_t { mm, mt, grid2d, trs, square };

const char* to_string(Primitive p);
std::optional<Primitive> parse_primitive(std::string_view s);

/// Argument of a call: n/beta (divide) or n^p (power).
struct CallArg {
  enum class Kind : std::uint8_t { divide, power };
  Kind kind = Kind::divide;
  Rational p = 1;
  friend bool operator==(const CallArg&, const CallArg&) = default;
};

/// coef * n^n_power * log^log_power(n) invocations of `primitive`.
struct ShapeCall {
  Rational coef = 1;
  int n_power = 0;
  int log_power = 0;
  Primitive primitive = Primitive::mm;
  CallArg arg;
  friend bool operator==(const ShapeCall&, const ShapeCall&) = default;
};

struct RecurrenceShape {
  std::int64_t alpha = 1;
  std::int64_t beta = 2;
  std::vector<ShapeCall> calls;
  std::uint64_t base_size = 1;
  friend bool operator==(const RecurrenceShape&, const RecurrenceShape&) = default;
};

/// `Q(n) = 2 Q(n/2) + 6 MM(n/2)`.
std::string to_string(const RecurrenceShape& s);

/// Shapes by algorithm id: kleene, gaussian, trs, cholesky_lu, lws, gap,
/// parenthesis, square, rna, protein. Throws std::invalid_argument.
const RecurrenceShape& registry_shape(std::string_view alg);
std::span<const std::string_view> shape_ids();

}  // namespace steal_lab
