#include "capture/critical_series.hpp"

#include <algorithm>

#include "capture/errors.hpp"

namespace capture {

namespace {

// Outer series of the intersection condition in powers of w:
//   L(w) = sum_{n=0}^{N} (n+1) B_n (-w)^n      (the theta side)
//   R(w) = sum_{n=1}^{N} n(n+1) B_n (-w)^n     (the x^2 side)
PowerSeries left_side(const CoefficientTable& table, int N) {
    PowerSeries L(N);
    Rational sign = 1;
    for (int n = 0; n <= N; ++n) {
        L[n] = Rational(n + 1) * table.B[n] * sign;
        sign = -sign;
    }
    return L;
}

PowerSeries right_side(const CoefficientTable& table, int N) {
    PowerSeries R(N);
    Rational sign = -1;
    for (int n = 1; n <= N; ++n) {
        R[n] = Rational(n) * Rational(n + 1) * table.B[n] * sign;
        sign = -sign;
    }
    return R;
}

}  // namespace

CriticalSeries solve_zc(int N, const CoefficientTable& table) {
    if (N < 1) throw InvalidArgumentError("solve_zc: order must be positive");
    if (table.max_order < N) throw InvalidArgumentError("solve_zc: table too short for order");

    PowerSeries L = left_side(table, N);
    PowerSeries R = right_side(table, N);
    const Rational pivot = R[1];  // = -2 B_1; multiplies the newest unknown
    if (pivot.is_zero()) throw SolverDegenerateError("zero pivot in theta-order solve");

    std::vector<Rational> a(static_cast<size_t>(N) + 1);
    for (int m = 1; m <= N; ++m) {
        // With w known through theta^{m-1}, the theta^m coefficient of
        // theta*L(w) + R(w) is F_m + pivot*a_m where F_m uses only known
        // coefficients; solve F_m + pivot*a_m = 0.
        PowerSeries w(m);
        for (int k = 1; k < m; ++k) w[k] = a[k];
        PowerSeries Lw = series_compose(L, w);
        PowerSeries Rw = series_compose(R, w);
        Rational Fm = Lw[m - 1] + Rw[m];
        a[m] = -Fm / pivot;
    }
    return CriticalSeries{std::move(a), {}, N};
}

CriticalSeries xc_from_zc(const CriticalSeries& cs, const CoefficientTable& table) {
    int N = cs.order;
    if (table.max_order < N) throw InvalidArgumentError("xc_from_zc: table too short");
    PowerSeries S(N);  // sum B_n (-y)^n
    Rational sign = 1;
    for (int n = 0; n <= N; ++n) {
        S[n] = table.B[n] * sign;
        sign = -sign;
    }
    PowerSeries w(N);
    for (int k = 1; k <= N; ++k) w[k] = cs.a[k];
    PowerSeries xc = series_mul(w, series_compose(S, w));
    CriticalSeries out = cs;
    out.xc.assign(xc.coefficients().begin(), xc.coefficients().end());
    return out;
}

std::vector<CriticalTableRow> partial_sum_table(const CriticalSeries& cs,
                                                const std::vector<int>& rows) {
    if (cs.xc.empty()) throw InvalidArgumentError("partial_sum_table: xc series not computed");
    for (int n : rows)
        if (n < 1 || n > cs.order)
            throw InvalidArgumentError("partial_sum_table: row " + std::to_string(n) +
                                       " out of range 1.." + std::to_string(cs.order));
    std::vector<CriticalTableRow> out;
    out.reserve(rows.size());
    Rational zc_sum = 0, xc_sum = 0;
    size_t next = 0;
    std::vector<int> sorted = rows;  // rows may come unsorted from the CLI
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (int n = 1; n <= cs.order && next < sorted.size(); ++n) {
        zc_sum += cs.a[n];
        xc_sum += cs.xc[n];
        if (n == sorted[next]) {
            out.push_back({n, zc_sum, cs.a[n], xc_sum, cs.xc[n]});
            ++next;
        }
    }
    return out;
}

std::vector<TermRatioRow> term_ratios(const CriticalSeries& cs) {
    if (cs.xc.empty()) throw InvalidArgumentError("term_ratios: xc series not computed");
    std::vector<TermRatioRow> out;
    for (int n = 2; n <= cs.order; ++n) {
        TermRatioRow row;
        row.n = n;
        if (!cs.a[n - 1].is_zero()) {
            row.zc_defined = true;
            row.zc_ratio = to_double(abs(cs.a[n] / cs.a[n - 1]));
        }
        if (!cs.xc[n - 1].is_zero()) {
            row.xc_defined = true;
            row.xc_ratio = to_double(abs(cs.xc[n] / cs.xc[n - 1]));
        }
        out.push_back(row);
    }
    return out;
}

Rational intersection_residual(const Rational& w, const CoefficientTable& table) {
    PowerSeries L = left_side(table, table.max_order);
    PowerSeries R = right_side(table, table.max_order);
    return eval_polynomial(L, w) + eval_polynomial(R, w);
}

}  // namespace capture
