#include "capture/ode_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "capture/errors.hpp"

namespace capture {

const char* fate_name(Fate f) {
    switch (f) {
        case Fate::capture: return "capture";
        case Fate::escape: return "escape";
        case Fate::undecided: return "undecided";
    }
    return "undecided";
}

void IntegratorConfig::validate() const {
    if (!(rel_tol > 0 && abs_tol > 0 && t_max > 0 && x_blowup > 0 && attractor_tol > 0))
        throw InvalidArgumentError("integrator config: all tolerances must be positive");
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double C2 = 1.0 / 5, C3 = 3.0 / 10, C4 = 4.0 / 5, C5 = 8.0 / 9;
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
                 A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247, A64 = 49.0 / 176,
                 A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192, B5 = -2187.0 / 6784,
                 B6 = 11.0 / 84;
// 5th-order minus embedded 4th-order weights.
constexpr double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920,
                 E5 = -17253.0 / 339200, E6 = 22.0 / 525, E7 = -1.0 / 40;

struct Deriv {
    double x, u;
};

// dir = +1 integrates t forward, dir = -1 runs the clock s = -t.
inline Deriv rhs(double x, double u, double dir) {
    return {dir * u, dir * (-u - x * x)};
}

// One accepted step, with endpoint derivatives for dense output.
struct StepRecord {
    double s0, x0, u0, fx0, fu0;
    double s1, x1, u1, fx1, fu1;
};

inline void hermite(const StepRecord& st, double theta, double& x, double& u) {
    double h = st.s1 - st.s0;
    double t2 = theta * theta, t3 = t2 * theta;
    double h00 = 2 * t3 - 3 * t2 + 1;
    double h10 = t3 - 2 * t2 + theta;
    double h01 = -2 * t3 + 3 * t2;
    double h11 = t3 - t2;
    x = h00 * st.x0 + h10 * h * st.fx0 + h01 * st.x1 + h11 * h * st.fx1;
    u = h00 * st.u0 + h10 * h * st.fu0 + h01 * st.u1 + h11 * h * st.fu1;
}

// Locate a sign change of g along the step interpolant.  Assumes
// g(0) and g(1) straddle zero; returns theta of the crossing.
double refine_crossing(const StepRecord& st, const std::function<double(double, double)>& g) {
    double lo = 0.0, hi = 1.0;
    double x, u;
    hermite(st, lo, x, u);
    double glo = g(x, u);
    for (int i = 0; i < 60; ++i) {
        double mid = 0.5 * (lo + hi);
        hermite(st, mid, x, u);
        double gm = g(x, u);
        if ((glo <= 0.0) == (gm <= 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

enum class StepAction { go_on, stop };

// Core adaptive loop.  Calls on_step after every accepted step; stops when
// the callback says so, at the blowup guard, or when the clock reaches
// s_end.  The clock s increases from 0 regardless of direction.
StopReason integrate_core(double x0, double u0, double s_end, double dir,
                          const IntegratorConfig& cfg,
                          const std::function<StepAction(const StepRecord&)>& on_step,
                          double& s_out, double& x_out, double& u_out) {
    double s = 0.0, x = x0, u = u0;
    Deriv f1 = rhs(x, u, dir);
    double h = std::min(1e-3, s_end);
    double facold = 1e-4;
    StopReason reason = StopReason::reached_t_max;

    while (s < s_end) {
        if (h < 1e-14 * std::max(1.0, std::abs(s)))
            throw StiffnessError("step size underflow at s = " + std::to_string(s), s, x, u);
        double hs = std::min(h, s_end - s);

        Deriv k1 = f1;
        Deriv k2 = rhs(x + hs * A21 * k1.x, u + hs * A21 * k1.u, dir);
        Deriv k3 = rhs(x + hs * (A31 * k1.x + A32 * k2.x), u + hs * (A31 * k1.u + A32 * k2.u), dir);
        Deriv k4 = rhs(x + hs * (A41 * k1.x + A42 * k2.x + A43 * k3.x),
                       u + hs * (A41 * k1.u + A42 * k2.u + A43 * k3.u), dir);
        Deriv k5 = rhs(x + hs * (A51 * k1.x + A52 * k2.x + A53 * k3.x + A54 * k4.x),
                       u + hs * (A51 * k1.u + A52 * k2.u + A53 * k3.u + A54 * k4.u), dir);
        Deriv k6 = rhs(x + hs * (A61 * k1.x + A62 * k2.x + A63 * k3.x + A64 * k4.x + A65 * k5.x),
                       u + hs * (A61 * k1.u + A62 * k2.u + A63 * k3.u + A64 * k4.u + A65 * k5.u),
                       dir);
        double x1 = x + hs * (B1 * k1.x + B3 * k3.x + B4 * k4.x + B5 * k5.x + B6 * k6.x);
        double u1 = u + hs * (B1 * k1.u + B3 * k3.u + B4 * k4.u + B5 * k5.u + B6 * k6.u);
        Deriv k7 = rhs(x1, u1, dir);

        double ex = hs * (E1 * k1.x + E3 * k3.x + E4 * k4.x + E5 * k5.x + E6 * k6.x + E7 * k7.x);
        double eu = hs * (E1 * k1.u + E3 * k3.u + E4 * k4.u + E5 * k5.u + E6 * k6.u + E7 * k7.u);
        double skx = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(x), std::abs(x1));
        double sku = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(u), std::abs(u1));
        double rx = ex / skx, ru = eu / sku;
        double err = std::sqrt(0.5 * (rx * rx + ru * ru));

        if (err <= 1.0) {
            StepRecord rec{s, x, u, k1.x, k1.u, s + hs, x1, u1, k7.x, k7.u};
            s += hs;
            x = x1;
            u = u1;
            f1 = k7;  // FSAL
            // PI controller (accepted branch)
            double fac11 = std::pow(err, 0.17);
            double fac = fac11 / std::pow(facold, 0.04);
            fac = std::max(0.1, std::min(5.0, fac / 0.9));
            h = hs / fac;
            facold = std::max(err, 1e-4);

            if (on_step(rec) == StepAction::stop) {
                reason = StopReason::event;
                break;
            }
            if (std::abs(x) > cfg.x_blowup || std::abs(u) > cfg.x_blowup) {
                reason = StopReason::blowup;
                break;
            }
        } else {
            double fac11 = std::pow(err, 0.17);
            h = hs / std::min(5.0, std::max(1.0, fac11 / 0.9));
        }
    }
    s_out = s;
    x_out = x;
    u_out = u;
    return reason;
}

bool in_escape_region(double x, double u) {
    return x > 0.0 && x <= 0.25 && u <= 0.0 && u >= -0.5 * x;
}

bool in_attractor_ball(double x, double u, double tol) {
    return x >= 0.0 && std::sqrt(x * x + u * u) < tol;
}

}  // namespace

Trajectory integrate(const PhaseState& start, const IntegratorConfig& cfg, Direction dir) {
    cfg.validate();
    double d = dir == Direction::forward ? 1.0 : -1.0;
    Trajectory traj;
    traj.points.push_back(start);

    auto to_physical = [&](double s) { return start.t + d * s; };
    StepRecord crossing{};
    bool crossed = false;

    auto on_step = [&](const StepRecord& rec) {
        traj.points.push_back({to_physical(rec.s1), rec.x1, rec.u1});
        if (rec.x0 > 0.0 && rec.x1 <= 0.0) {
            crossing = rec;
            crossed = true;
            return StepAction::stop;
        }
        return StepAction::go_on;
    };

    double s, x, u;
    StopReason reason =
        integrate_core(start.x, start.u, cfg.t_max, d, cfg, on_step, s, x, u);
    if (crossed) {
        double theta = refine_crossing(crossing, [](double cx, double) { return cx; });
        double xs, us;
        hermite(crossing, theta, xs, us);
        double sc = crossing.s0 + theta * (crossing.s1 - crossing.s0);
        traj.points.back() = {to_physical(sc), xs, us};
    }
    traj.reason = reason;
    traj.last = traj.points.back();
    return traj;
}

FateResult classify_fate(const InitialConditions& ic, const IntegratorConfig& cfg) {
    cfg.validate();
    FateResult res;
    auto record = [&](const PhaseState& p) {
        if (cfg.record_trajectory) res.trajectory.push_back(p);
    };
    record({0.0, ic.x0, ic.u0});

    if (in_attractor_ball(ic.x0, ic.u0, cfg.attractor_tol) || in_escape_region(ic.x0, ic.u0)) {
        res.fate = Fate::escape;
        res.t_event = 0.0;
        return res;
    }
    if (ic.x0 < 0.0 || (ic.x0 == 0.0 && ic.u0 < 0.0)) {
        res.fate = Fate::capture;
        res.t_event = 0.0;
        return res;
    }

    StepRecord crossing{};
    bool crossed = false;
    double t_escape = 0.0;
    bool escaped = false;

    auto on_step = [&](const StepRecord& rec) {
        record({rec.s1, rec.x1, rec.u1});
        if (rec.x0 > 0.0 && rec.x1 <= 0.0) {
            crossing = rec;
            crossed = true;
            return StepAction::stop;
        }
        if (in_escape_region(rec.x1, rec.u1) ||
            in_attractor_ball(rec.x1, rec.u1, cfg.attractor_tol)) {
            t_escape = rec.s1;
            escaped = true;
            return StepAction::stop;
        }
        return StepAction::go_on;
    };

    double s, x, u;
    StopReason reason = integrate_core(ic.x0, ic.u0, cfg.t_max, 1.0, cfg, on_step, s, x, u);

    if (crossed) {
        double theta = refine_crossing(crossing, [](double cx, double) { return cx; });
        double xs, us;
        hermite(crossing, theta, xs, us);
        res.fate = Fate::capture;
        res.t_event = crossing.s0 + theta * (crossing.s1 - crossing.s0);
        if (cfg.record_trajectory) res.trajectory.back() = {res.t_event, xs, us};
        return res;
    }
    if (escaped) {
        res.fate = Fate::escape;
        res.t_event = t_escape;
        return res;
    }
    if (reason == StopReason::blowup && x < 0.0) {
        // Crossed and diverged within one step; the guard caught it first.
        res.fate = Fate::capture;
        res.t_event = s;
        return res;
    }
    res.fate = Fate::undecided;
    res.t_event = cfg.t_max;
    return res;
}

SeparatrixTrace trace_separatrix(double delta, const IntegratorConfig& cfg) {
    cfg.validate();
    if (!(delta > 0.0 && delta <= 1e-3))
        throw InvalidArgumentError("trace_separatrix: delta must lie in (0, 1e-3]");

    // Two-term series seed; the time origin fixes z = e^{-t} = delta here.
    double x0 = delta - 0.5 * delta * delta;
    double u0 = -delta + delta * delta;
    double t_seed = -std::log(delta);

    SeparatrixTrace trace;
    trace.polyline.push_back({t_seed, x0, u0});

    auto g = [](double x, double u) { return u + x * x; };
    StepRecord crossing{};
    bool crossed = false;

    auto on_step = [&](const StepRecord& rec) {
        trace.polyline.push_back({t_seed - rec.s1, rec.x1, rec.u1});
        if (g(rec.x0, rec.u0) < 0.0 && g(rec.x1, rec.u1) >= 0.0) {
            crossing = rec;
            crossed = true;
            return StepAction::stop;
        }
        return StepAction::go_on;
    };

    double s, x, u;
    integrate_core(x0, u0, cfg.t_max, -1.0, cfg, on_step, s, x, u);
    if (!crossed)
        throw TraceIncompleteError("no nullcline crossing within backward budget t_max = " +
                                   std::to_string(cfg.t_max));

    double theta = refine_crossing(crossing, g);
    double xs, us;
    hermite(crossing, theta, xs, us);
    double sc = crossing.s0 + theta * (crossing.s1 - crossing.s0);
    trace.polyline.back() = {t_seed - sc, xs, us};
    trace.xc_estimate = xs;
    trace.backward_time = sc;
    trace.zc_estimate = delta * std::exp(sc);
    // Budget: accumulated truncation at rel_tol over the trace plus the
    // O(delta^2) imprint of the seeding error on the crossing point.
    trace.error_estimate = 200.0 * cfg.rel_tol + delta * delta;
    return trace;
}

BisectionResult find_xc_bisection(const IntegratorConfig& cfg, double tol) {
    cfg.validate();
    if (!(tol > 0.0)) throw InvalidArgumentError("find_xc_bisection: tol must be positive");
    IntegratorConfig probe_cfg = cfg;
    probe_cfg.record_trajectory = false;

    auto fate_at = [&](double x0) {
        return classify_fate({x0, -x0 * x0}, probe_cfg).fate;
    };

    double lo = 0.0, hi = 1.0;
    BisectionResult result;
    Fate flo = fate_at(lo);
    Fate fhi = fate_at(hi);
    result.probes = 2;
    if (flo != Fate::escape || fhi != Fate::capture)
        throw BracketError("bracket endpoints are not escape/capture: x0=0 -> " +
                           std::string(fate_name(flo)) + ", x0=1 -> " + fate_name(fhi));

    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        Fate fm = fate_at(mid);
        ++result.probes;
        if (fm == Fate::capture)
            hi = mid;
        else if (fm == Fate::escape)
            lo = mid;
        else
            throw BracketError("undecided fate at probe x0 = " + std::to_string(mid) +
                               "; increase t_max");
    }
    result.x_c = 0.5 * (lo + hi);
    result.bracket_width = hi - lo;
    return result;
}

std::vector<PortraitCell> phase_portrait(double x_lo, double x_hi, int nx, double u_lo,
                                         double u_hi, int nu, const IntegratorConfig& cfg) {
    cfg.validate();
    if (nx < 1 || nu < 1) throw InvalidArgumentError("phase_portrait: grid must be >= 1x1");
    IntegratorConfig cell_cfg = cfg;
    cell_cfg.record_trajectory = false;

    std::vector<PortraitCell> cells;
    cells.reserve(static_cast<size_t>(nx) * static_cast<size_t>(nu));
    for (int i = 0; i < nx; ++i) {
        double x0 = nx == 1 ? x_lo : x_lo + (x_hi - x_lo) * i / (nx - 1);
        for (int j = 0; j < nu; ++j) {
            double u0 = nu == 1 ? u_lo : u_lo + (u_hi - u_lo) * j / (nu - 1);
            FateResult fr = classify_fate({x0, u0}, cell_cfg);
            cells.push_back({x0, u0, fr.fate, fr.t_event});
        }
    }
    return cells;
}

}  // namespace capture
