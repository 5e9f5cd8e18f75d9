#pragma once

// Certified rational enclosures of natural logarithms, for ceilings that must be exact.

#include <boost/multiprecision/cpp_int.hpp>

namespace knv {

using Rational = boost::multiprecision::cpp_rational;

/// lo < ln(x) <= hi, from the atanh series ln x = 2 atanh((x-1)/(x+1)) truncated after
/// `terms` terms; the tail is bounded by a geometric series.
struct LogEnclosure {
    Rational lo;
    Rational hi;
};

/// x >= 2, terms >= 1.
[[nodiscard]] LogEnclosure log_enclosure(long long x, int terms);

/// Exact ceil(c * ln x) for integers c >= 1, x >= 1. Refines the enclosure until both
/// ends fall in the same unit interval (ln x is irrational for x >= 2, so this terminates).
[[nodiscard]] long long ceil_scaled_log(long long c, long long x);

/// Exact ceil and floor of a rational.
[[nodiscard]] boost::multiprecision::cpp_int ceil(const Rational& q);
[[nodiscard]] boost::multiprecision::cpp_int floor(const Rational& q);

}  // namespace knv
