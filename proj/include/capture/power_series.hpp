#pragma once

#include <string>
#include <vector>

#include "capture/errors.hpp"
#include "capture/rational.hpp"

namespace capture {

// Truncated formal power series in one indeterminate with exact rational
// coefficients.  Coefficient k is the coefficient of the k-th power; the
// truncation order N means coefficients beyond N are *unknown*, not zero.
// Every operation states the order it can prove for its result and never
// claims more.
class PowerSeries {
public:
    // Zero series of the given truncation order.
    explicit PowerSeries(int truncation_order)
        : coeffs_(static_cast<size_t>(check_order(truncation_order)) + 1) {}

    explicit PowerSeries(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) throw InvalidArgumentError("power series needs a constant term");
    }

    static PowerSeries constant(const Rational& c, int truncation_order) {
        PowerSeries s(truncation_order);
        s.coeffs_[0] = c;
        return s;
    }

    int truncation_order() const { return static_cast<int>(coeffs_.size()) - 1; }

    const Rational& operator[](size_t k) const { return coeffs_.at(k); }
    Rational& operator[](size_t k) { return coeffs_.at(k); }

    const std::vector<Rational>& coefficients() const { return coeffs_; }

    bool operator==(const PowerSeries& other) const = default;

private:
    static int check_order(int n) {
        if (n < 0) throw InvalidArgumentError("negative truncation order");
        return n;
    }

    std::vector<Rational> coeffs_;  // size == truncation_order + 1
};

// Coefficient-wise sum; result order = min of the input orders.
inline PowerSeries series_add(const PowerSeries& a, const PowerSeries& b) {
    int n = std::min(a.truncation_order(), b.truncation_order());
    PowerSeries out(n);
    for (int k = 0; k <= n; ++k) out[k] = a[k] + b[k];
    return out;
}

inline PowerSeries series_sub(const PowerSeries& a, const PowerSeries& b) {
    int n = std::min(a.truncation_order(), b.truncation_order());
    PowerSeries out(n);
    for (int k = 0; k <= n; ++k) out[k] = a[k] - b[k];
    return out;
}

inline PowerSeries series_scale(const PowerSeries& a, const Rational& c) {
    PowerSeries out = a;
    for (int k = 0; k <= a.truncation_order(); ++k) out[k] *= c;
    return out;
}

// Cauchy product truncated at the min of the input orders.
inline PowerSeries series_mul(const PowerSeries& a, const PowerSeries& b) {
    int n = std::min(a.truncation_order(), b.truncation_order());
    PowerSeries out(n);
    for (int i = 0; i <= n; ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; i + j <= n; ++j) {
            if (b[j].is_zero()) continue;
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

// Keep only coefficients 0..m (m must not exceed the known order: extending
// would claim unknown coefficients are zero).
inline PowerSeries series_truncate(const PowerSeries& s, int m) {
    if (m > s.truncation_order())
        throw InvalidArgumentError("cannot extend a series past its known order");
    PowerSeries out(m);
    for (int k = 0; k <= m; ++k) out[k] = s[k];
    return out;
}

// Multiply by the k-th power of the indeterminate.  The low k coefficients
// of the result are exactly zero, so the provable order grows by k.
inline PowerSeries series_shift_up(const PowerSeries& s, int k) {
    if (k < 0) throw InvalidArgumentError("negative shift");
    PowerSeries out(s.truncation_order() + k);
    for (int i = 0; i <= s.truncation_order(); ++i) out[i + k] = s[i];
    return out;
}

// outer(inner(x)) truncated at the common order.  Requires inner(0) == 0;
// coefficient m of the result then depends only on coefficients 0..m of
// outer and 1..m of inner, so the common order is provable.
inline PowerSeries series_compose(const PowerSeries& outer, const PowerSeries& inner) {
    if (!inner[0].is_zero())
        throw CompositionError("series composition requires zero inner constant term");
    int n = std::min(outer.truncation_order(), inner.truncation_order());
    // Horner: result = (..(c_n * inner + c_{n-1}) * inner + ..) + c_0
    PowerSeries result = PowerSeries::constant(outer[n], n);
    PowerSeries in = series_truncate(inner, n);
    for (int k = n - 1; k >= 0; --k) {
        result = series_mul(result, in);
        result[0] += outer[k];
    }
    return result;
}

// log(1 + s) for s with zero constant term, via the alternating expansion
// sum_{k>=1} (-1)^{k+1} s^k / k.  Exact.
inline PowerSeries series_log1p(const PowerSeries& s) {
    if (!s[0].is_zero())
        throw CompositionError("series_log1p requires zero constant term");
    int n = s.truncation_order();
    PowerSeries out(n);
    PowerSeries power = s;  // s^k
    for (int k = 1; k <= n; ++k) {
        Rational c{(k % 2 == 1) ? 1 : -1, k};
        for (int i = k; i <= n; ++i) out[i] += c * power[i];
        if (k < n) power = series_mul(power, s);
    }
    return out;
}

// Evaluate the truncation as a polynomial (Horner).  Exact.
inline Rational eval_polynomial(const PowerSeries& s, const Rational& x) {
    Rational acc = s[static_cast<size_t>(s.truncation_order())];
    for (int k = s.truncation_order() - 1; k >= 0; --k) acc = acc * x + s[k];
    return acc;
}

// Serialized form: array of "p/q" strings, lowest order first.
inline std::vector<std::string> series_to_strings(const PowerSeries& s) {
    std::vector<std::string> out;
    out.reserve(static_cast<size_t>(s.truncation_order()) + 1);
    for (const auto& c : s.coefficients()) out.push_back(to_string(c));
    return out;
}

}  // namespace capture
