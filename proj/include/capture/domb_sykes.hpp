#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "capture/coefficients.hpp"

namespace capture {

struct RatioPoint {
    int n = 0;
    double value = 0.0;
};

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double max_residual = 0.0;
    int points_used = 0;
    std::vector<int> excluded;  // indices dropped for a non-positive radicand
};

struct FitWindow {
    int lo = 0, hi = 0;  // inclusive index range in n
};

// Coefficient-growth analysis assuming B_n ~ (n - delta) a^{-n}.
struct DombSykesReport {
    std::vector<RatioPoint> ratios;    // (n, B_{n-1}/B_n), n = 1..N
    std::vector<RatioPoint> s_values;  // (n, s_n), s_n = (1 - B_{n-1}B_{n+1}/B_n^2)^{-1/2}
    double delta = 0.0;                // offset estimate
    double growth = 0.0;               // limiting ratio a
    FitWindow fit_window;
    LineFit offset_fit;
    LineFit growth_fit;
};

// Exact ratios B_{n-1}/B_n rendered to float.  Requires N >= 2.
std::vector<RatioPoint> ds_ratios(const CoefficientTable& table);

// Least-squares line through (n, s_n) over the window; the offset is the
// root delta = -intercept/slope.  Points with a non-positive radicand are
// excluded and reported; everything excluded (a pure geometric sequence
// makes every s_n diverge) is a degenerate fit.
std::pair<double, LineFit> estimate_offset(const CoefficientTable& table, FitWindow window);

// Least-squares line through (1/(n - delta), B_{n-1}/B_n) over the window;
// the intercept at 0 is the growth constant a.
std::pair<double, LineFit> estimate_growth(const CoefficientTable& table, double delta,
                                           FitWindow window);

// Last half of the usable indices, widened to at least 10 where possible.
FitWindow default_window(const CoefficientTable& table);

// Full report; `window` defaults to default_window and `delta_override`
// replaces the fitted offset in the growth extrapolation when given.
DombSykesReport domb_sykes_report(const CoefficientTable& table,
                                  std::optional<FitWindow> window = std::nullopt,
                                  std::optional<double> delta_override = std::nullopt);

}  // namespace capture
