#pragma once

#include <vector>

#include "capture/coefficients.hpp"
#include "capture/power_series.hpp"

namespace capture {

// Power series in the bookkeeping parameter theta for the nullcline
// intersection of the separatrix:  eps*z_c = sum_{n>=1} a_n theta^n and the
// induced eps*x_c series.  Index n of `a`/`xc` holds the theta^n coefficient
// (index 0 is structurally zero).  Setting theta = 1 gives the physical
// values, so partial sums are plain cumulative sums of coefficients.
struct CriticalSeries {
    std::vector<Rational> a;
    std::vector<Rational> xc;
    int order = 0;
};

// Solve theta * sum (n+1) B_n (-w)^n = -sum n(n+1) B_n (-w)^n for
// w(theta) = eps*z_c order by order: each power of theta yields one linear
// equation in the newest coefficient (pivot -2 B_1).  The solve works with
// the product w = eps*z_c directly; eps drops out.  Requires B_0..B_N.
CriticalSeries solve_zc(int N, const CoefficientTable& table);

// eps*x_c(theta) = w(theta) * sum B_n (-w(theta))^n, composed exactly.
// Returns a copy of `cs` with the xc coefficients filled in.
CriticalSeries xc_from_zc(const CriticalSeries& cs, const CoefficientTable& table);

struct CriticalTableRow {
    int n = 0;
    Rational zc_sum, zc_term, xc_sum, xc_term;  // partial sums and n-th terms at theta = 1
};

// Partial-sum table at theta = 1 for the requested rows (1-based, <= order).
std::vector<CriticalTableRow> partial_sum_table(const CriticalSeries& cs,
                                                const std::vector<int>& rows);

// d'Alembert ratio data |a_n / a_{n-1}| for both series, n = 2..order.
// A ratio is undefined where the previous term vanishes (a_2 = 0).
struct TermRatioRow {
    int n = 0;
    bool zc_defined = false, xc_defined = false;
    double zc_ratio = 0.0, xc_ratio = 0.0;
};
std::vector<TermRatioRow> term_ratios(const CriticalSeries& cs);

// Exact residual of the intersection condition L(w) + R(w) at theta = 1 for
// a candidate value w, summing the series through table.max_order.
Rational intersection_residual(const Rational& w, const CoefficientTable& table);

}  // namespace capture
