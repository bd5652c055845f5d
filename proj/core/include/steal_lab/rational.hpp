#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

// boost::rational's mixed-type comparisons recurse under C++20 rewritten
// comparisons when the other operand is an int. These exact matches win
// overload resolution; they live in boost so that lookup from any
// namespace finds them.
namespace boost {

inline bool operator==(const rational<std::int64_t>& a, int b) { return a == rational<std::int64_t>(b); }
inline bool operator==(int a, const rational<std::int64_t>& b) { return rational<std::int64_t>(a) == b; }
inline bool operator!=(const rational<std::int64_t>& a, int b) { return !(a == rational<std::int64_t>(b)); }
inline bool operator!=(int a, const rational<std::int64_t>& b) { return !(rational<std::int64_t>(a) == b); }

}  // namespace boost

namespace steal_lab {

using Rational = boost::rational<std::int64_t>;

/// "3", "-1/2".
std::string to_string(const Rational& r);

}  // namespace steal_lab
