#include "capture/separatrix.hpp"

#include "capture/errors.hpp"

namespace capture {

SeparatrixExpansion make_separatrix(CoefficientTable table, Rational epsilon, int order) {
    if (order < 0) throw InvalidArgumentError("separatrix: negative order");
    if (order > table.max_order)
        throw InvalidArgumentError("separatrix: order exceeds coefficient table");
    return SeparatrixExpansion{std::move(table), std::move(epsilon), order};
}

Rational eval_x(const SeparatrixExpansion& exp, const Rational& z) {
    // Horner in w = -eps z:  x = z (B_0 + w (B_1 + w (...)))
    Rational w = -exp.epsilon * z;
    Rational acc = exp.table.B[static_cast<size_t>(exp.order)];
    for (int n = exp.order - 1; n >= 0; --n) acc = acc * w + exp.table.B[n];
    return z * acc;
}

Rational eval_u(const SeparatrixExpansion& exp, const Rational& z) {
    Rational w = -exp.epsilon * z;
    Rational acc = Rational(exp.order + 1) * exp.table.B[static_cast<size_t>(exp.order)];
    for (int n = exp.order - 1; n >= 0; --n) acc = acc * w + Rational(n + 1) * exp.table.B[n];
    return -z * acc;
}

double eval_x_f64(const SeparatrixExpansion& exp, double z) {
    return to_double(eval_x(exp, Rational(z)));
}

double eval_u_f64(const SeparatrixExpansion& exp, double z) {
    return to_double(eval_u(exp, Rational(z)));
}

PowerSeries x_series(const SeparatrixExpansion& exp) {
    PowerSeries s(exp.order + 1);
    Rational sign = 1;  // (-eps)^n
    for (int n = 0; n <= exp.order; ++n) {
        s[n + 1] = exp.table.B[n] * sign;
        sign *= -exp.epsilon;
    }
    return s;
}

PowerSeries square_via_recurrence(const SeparatrixExpansion& exp) {
    if (exp.order < 1) throw InvalidArgumentError("square_via_recurrence needs order >= 1");
    int N = exp.order;
    PowerSeries s(N + 1);
    Rational sign = 1;
    for (int n = 0; n + 1 <= N; ++n) {
        s[n + 2] = Rational((n + 1) * (n + 2)) * exp.table.B[n + 1] * sign;
        sign *= -exp.epsilon;
    }
    return s;
}

PowerSeries ode_residual(const SeparatrixExpansion& exp) {
    int N = exp.order;
    int out_order = 2 * N + 2;
    // The truncation is a polynomial of degree N+1 in z; widen it so the
    // Cauchy self-product is exact through z^{2N+2}.
    PowerSeries x(out_order);
    {
        PowerSeries base = x_series(exp);
        for (int k = 0; k <= base.truncation_order(); ++k) x[k] = base[k];
    }
    PowerSeries residual = series_scale(series_mul(x, x), exp.epsilon);
    // xdd + xd = sum_m m(m-1) c_m z^m, since d/dt = -z d/dz.
    for (int m = 0; m <= out_order; ++m) residual[m] += Rational(m) * Rational(m - 1) * x[m];
    for (int m = 1; m <= N + 1; ++m)
        if (!residual[m].is_zero())
            throw InternalInconsistencyError("ode residual nonzero at z^" + std::to_string(m) +
                                             " for order " + std::to_string(N));
    return residual;
}

}  // namespace capture
