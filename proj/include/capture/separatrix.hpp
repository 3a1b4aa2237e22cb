#pragma once

#include "capture/coefficients.hpp"
#include "capture/power_series.hpp"

namespace capture {

// Degree-N truncation of the critical trajectory
//   x(t) = z sum_{n=0}^{N} B_n (-eps z)^n,   z = e^{-t},
// with z in (0,1] covering t in [0,inf).  Time enters only through z; callers
// wanting t supply z = exp(-t) through the float wrappers.
struct SeparatrixExpansion {
    CoefficientTable table;
    Rational epsilon{1};
    int order = 0;  // N; requires table.max_order >= N
};

SeparatrixExpansion make_separatrix(CoefficientTable table, Rational epsilon, int order);

// Exact partial sum x_N(z).  Every term carries a factor z, so z = 0 gives 0.
Rational eval_x(const SeparatrixExpansion& exp, const Rational& z);

// Exact u = dx/dt = -z sum (n+1) B_n (-eps z)^n, using dz/dt = -z.
Rational eval_u(const SeparatrixExpansion& exp, const Rational& z);

// Convenience wrappers: the double z is converted to an exact dyadic
// rational, the sum is evaluated exactly, and only the result is rounded.
double eval_x_f64(const SeparatrixExpansion& exp, double z);
double eval_u_f64(const SeparatrixExpansion& exp, double z);

// The z-power series of the truncation x_N (coefficients z^0 .. z^{N+1}).
PowerSeries x_series(const SeparatrixExpansion& exp);

// x^2 as a z-series via the single-sum identity
//   x^2 = z^2 sum_n (n+1)(n+2) B_{n+1} (-eps z)^n,
// which follows from the defining recurrence.  With B_0..B_N available the
// identity is provable through z^{N+1}, matching the Cauchy self-product of
// x_series to that order.  Requires N >= 1.
PowerSeries square_via_recurrence(const SeparatrixExpansion& exp);

// The z-series of xdd + xd + eps x^2 for the degree-N truncation, through
// z^{2N+2}.  Coefficients of z^1 .. z^{N+1} must vanish identically; a
// nonzero one throws InternalInconsistencyError.
PowerSeries ode_residual(const SeparatrixExpansion& exp);

}  // namespace capture
