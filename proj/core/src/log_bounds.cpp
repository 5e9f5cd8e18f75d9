#include "knv/log_bounds.hpp"

#include <stdexcept>
#include <string>

namespace knv {

using boost::multiprecision::cpp_int;

cpp_int floor(const Rational& q) {
    const cpp_int num = boost::multiprecision::numerator(q);
    const cpp_int den = boost::multiprecision::denominator(q);
    cpp_int quotient = num / den;
    if (num % den != 0 && num < 0) {
        --quotient;
    }
    return quotient;
}

cpp_int ceil(const Rational& q) { return -floor(-q); }

LogEnclosure log_enclosure(long long x, int terms) {
    if (x < 2 || terms < 1) {
        throw std::invalid_argument("log_enclosure needs x >= 2 and terms >= 1");
    }
    const Rational y(cpp_int(x - 1), cpp_int(x + 1));
    const Rational y2 = y * y;
    Rational power = y;
    Rational sum = 0;
    for (int i = 0; i < terms; ++i) {
        sum += power / (2 * i + 1);
        power *= y2;
    }
    // power is now y^(2*terms+1); remaining terms are bounded by power/(2*terms+1) * 1/(1-y^2).
    const Rational tail = power / (2 * terms + 1) / (1 - y2);
    return {2 * sum, 2 * (sum + tail)};
}

long long ceil_scaled_log(long long c, long long x) {
    if (c < 1 || x < 1) {
        throw std::invalid_argument("ceil_scaled_log needs c >= 1 and x >= 1");
    }
    if (x == 1) {
        return 0;
    }
    for (int terms = 1; terms <= 4096; terms *= 2) {
        const LogEnclosure e = log_enclosure(x, terms);
        const Rational lo = c * e.lo;
        const Rational hi = c * e.hi;
        const cpp_int q = ceil(hi);
        // c ln x lies in (lo, hi] and hi <= q; if lo >= q - 1 the ceiling is q.
        if (lo >= Rational(q - 1)) {
            return static_cast<long long>(q);
        }
    }
    throw std::runtime_error("ceil_scaled_log did not converge for c=" + std::to_string(c) +
                             ", x=" + std::to_string(x));
}

}  // namespace knv
