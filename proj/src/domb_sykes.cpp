#include "capture/domb_sykes.hpp"

#include <cmath>
#include <string>

#include "capture/errors.hpp"

namespace capture {

namespace {

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
    LineFit fit;
    size_t n = xs.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double det = n * sxx - sx * sx;
    if (det == 0.0) throw DegenerateFitError("singular normal equations in line fit");
    fit.slope = (n * sxy - sx * sy) / det;
    fit.intercept = (sxx * sy - sx * sxy) / det;
    fit.points_used = static_cast<int>(n);
    for (size_t i = 0; i < n; ++i)
        fit.max_residual =
            std::max(fit.max_residual, std::abs(ys[i] - (fit.slope * xs[i] + fit.intercept)));
    return fit;
}

void check_window(FitWindow w, int n_min, int n_max, const char* who) {
    if (w.lo < n_min || w.hi > n_max || w.hi - w.lo < 5)
        throw InvalidArgumentError(std::string(who) + ": window [" + std::to_string(w.lo) + "," +
                                   std::to_string(w.hi) + "] must lie in [" +
                                   std::to_string(n_min) + "," + std::to_string(n_max) +
                                   "] with width >= 5");
}

}  // namespace

std::vector<RatioPoint> ds_ratios(const CoefficientTable& table) {
    if (table.max_order < 2)
        throw InsufficientDataError("ds_ratios needs at least B_0..B_2");
    std::vector<RatioPoint> out;
    out.reserve(static_cast<size_t>(table.max_order));
    for (int n = 1; n <= table.max_order; ++n)
        out.push_back({n, to_double(table.B[n - 1] / table.B[n])});
    return out;
}

std::pair<double, LineFit> estimate_offset(const CoefficientTable& table, FitWindow window) {
    check_window(window, 1, table.max_order - 1, "estimate_offset");
    std::vector<double> xs, ys;
    std::vector<int> excluded;
    for (int n = window.lo; n <= window.hi; ++n) {
        // radicand computed exactly before the one float conversion
        Rational rad = 1 - table.B[n - 1] * table.B[n + 1] / (table.B[n] * table.B[n]);
        if (rad <= 0) {
            excluded.push_back(n);
            continue;
        }
        xs.push_back(n);
        ys.push_back(1.0 / std::sqrt(to_double(rad)));
    }
    if (xs.empty())
        throw DegenerateFitError("estimate_offset: every point in the window was excluded "
                                 "(geometric coefficient law has no offset)");
    if (xs.size() < 2) throw DegenerateFitError("estimate_offset: fewer than two usable points");
    LineFit fit = fit_line(xs, ys);
    fit.excluded = std::move(excluded);
    if (fit.slope == 0.0) throw DegenerateFitError("estimate_offset: zero slope, offset undefined");
    return {-fit.intercept / fit.slope, fit};
}

std::pair<double, LineFit> estimate_growth(const CoefficientTable& table, double delta,
                                           FitWindow window) {
    check_window(window, 1, table.max_order, "estimate_growth");
    std::vector<double> xs, ys;
    for (int n = window.lo; n <= window.hi; ++n) {
        xs.push_back(1.0 / (n - delta));
        ys.push_back(to_double(table.B[n - 1] / table.B[n]));
    }
    LineFit fit = fit_line(xs, ys);
    return {fit.intercept, fit};
}

FitWindow default_window(const CoefficientTable& table) {
    int hi = table.max_order - 1;  // s_n needs B_{n+1}
    int lo = std::max(1, hi - std::max(10, hi / 2) + 1);
    if (hi - lo < 5) lo = std::max(1, hi - 5);
    return {lo, hi};
}

DombSykesReport domb_sykes_report(const CoefficientTable& table, std::optional<FitWindow> window,
                                  std::optional<double> delta_override) {
    DombSykesReport report;
    report.ratios = ds_ratios(table);
    for (int n = 1; n + 1 <= table.max_order; ++n) {
        Rational rad = 1 - table.B[n - 1] * table.B[n + 1] / (table.B[n] * table.B[n]);
        if (rad <= 0) continue;
        report.s_values.push_back({n, 1.0 / std::sqrt(to_double(rad))});
    }
    report.fit_window = window.value_or(default_window(table));
    auto [delta, offset_fit] = estimate_offset(table, report.fit_window);
    report.delta = delta;
    report.offset_fit = offset_fit;
    double growth_delta = delta_override.value_or(delta);
    auto [growth, growth_fit] = estimate_growth(table, growth_delta, report.fit_window);
    report.growth = growth;
    report.growth_fit = growth_fit;
    return report;
}

}  // namespace capture
