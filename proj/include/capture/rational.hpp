#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "capture/errors.hpp"

namespace capture {

// Arbitrary-precision exact arithmetic.  cpp_rational keeps values in lowest
// terms with a positive denominator and renormalizes after every operation,
// so the canonical-form invariant holds structurally.  No floating point is
// involved anywhere; conversion to double is the explicit operation below.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Construct p/q with sign normalization (cpp_rational itself rejects q < 0).
inline Rational make_rational(Int num, Int den) {
    if (den == 0) throw InvalidArgumentError("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(std::move(num), std::move(den));
}

// Serialized form: "p/q", or just "p" when q == 1.
inline std::string to_string(const Rational& r) {
    Int num = numerator(r);
    Int den = denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

inline Rational parse_rational(const std::string& s) {
    try {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rational(Int(s));
        return make_rational(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    } catch (const std::exception& e) {
        throw InvalidArgumentError("cannot parse rational '" + s + "': " + e.what());
    }
}

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }

// Fixed-point decimal rendering with `digits` places, rounding half away
// from zero.  Exact: the only approximation is the final rounding.
inline std::string to_decimal_string(const Rational& r, int digits) {
    if (digits < 0) throw InvalidArgumentError("negative digit count");
    Int num = numerator(r);
    Int den = denominator(r);
    bool negative = num < 0;
    if (negative) num = -num;
    Int scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    // round(|r| * scale) with ties away from zero
    Int scaled = num * scale;
    Int q = scaled / den;
    Int rem = scaled % den;
    if (2 * rem >= den) ++q;
    Int ipart = q / scale;
    Int fpart = q % scale;
    std::string out = negative && q != 0 ? "-" : "";
    out += ipart.str();
    if (digits > 0) {
        std::string f = fpart.str();
        out += "." + std::string(digits - f.size(), '0') + f;
    }
    return out;
}

inline Rational rational_pow(Rational base, unsigned exp) {
    Rational result = 1;
    while (exp > 0) {
        if (exp & 1u) result *= base;
        base *= base;
        exp >>= 1u;
    }
    return result;
}

inline Int factorial(unsigned n) {
    Int f = 1;
    for (unsigned k = 2; k <= n; ++k) f *= k;
    return f;
}

inline Int binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    Int b = 1;
    for (unsigned i = 0; i < k; ++i) {
        b *= n - i;
        b /= i + 1;  // exact at every step
    }
    return b;
}

}  // namespace capture
