#pragma once

#include <vector>

#include "capture/closed_form.hpp"

namespace capture {

// State of the full ODE  dx/dt = u,  du/dt = -u - x^2  (working units eps = 1;
// general eps is absorbed by the rescaling x -> eps x).
struct PhaseState {
    double t = 0.0;
    double x = 0.0;
    double u = 0.0;
};

enum class Fate { capture, escape, undecided };
const char* fate_name(Fate f);

struct FateResult {
    Fate fate = Fate::undecided;
    // Zero-crossing time for capture; censoring time (escape declared /
    // budget exhausted) otherwise.
    double t_event = 0.0;
    std::vector<PhaseState> trajectory;  // filled when cfg.record_trajectory
};

struct IntegratorConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double t_max = 200.0;       // censoring horizon (time budget per trajectory)
    double x_blowup = 1e6;      // divergence guard on |x|, |u|
    double attractor_tol = 1e-9;  // small-norm threshold for escape declaration
    bool record_trajectory = false;

    void validate() const;  // throws InvalidArgumentError unless all positive
};

enum class Direction { forward, backward };

enum class StopReason { reached_t_max, event, blowup };

struct Trajectory {
    std::vector<PhaseState> points;
    StopReason reason = StopReason::reached_t_max;
    PhaseState last;
};

// Adaptive Dormand-Prince 5(4) integration with PI step-size control and
// cubic-Hermite dense output for event location.  Forward integration stops
// at the capture event (x crossing zero from above), the blowup guard, or
// t_max; backward integration stops at the guard or the time budget.
// Step-size underflow throws StiffnessError carrying the last good state.
Trajectory integrate(const PhaseState& start, const IntegratorConfig& cfg, Direction dir);

// Trajectory fate classification.
//
// Capture: x reaches 0 from above in finite time (event time refined by
// interpolation).  x0 < 0, or x0 = 0 with u0 < 0, counts as capture at t = 0
// (the particle starts at or past the collector plane).
//
// Escape: the trajectory enters the attractor ball |(x,u)| < attractor_tol
// with x >= 0, or enters the region
//     E = { 0 < x <= 1/4,  -x/2 <= u <= 0 },
// which is forward-invariant (on u = 0 the flow has du/dt = -x^2 < 0; on
// u = -x/2 it has d(u + x/2)/dt = x/4 - x^2 > 0 for x < 1/4; x is
// non-increasing inside) and inside E the bound dx/dt >= -x/2 keeps x
// positive forever while x -> 0, so entry certifies escape.  The attractor
// ball alone is unreachable within any practical horizon: escaping
// trajectories approach the origin algebraically (x ~ 1/t along the slow
// manifold), so a proximity-only rule would leave generic escapes undecided.
//
// Undecided: budget t_max exhausted with neither certificate met.
FateResult classify_fate(const InitialConditions& ic, const IntegratorConfig& cfg);

struct SeparatrixTrace {
    std::vector<PhaseState> polyline;  // physical (t, x, u) from the seed backward
    double xc_estimate = 0.0;    // x at the nullcline crossing
    double zc_estimate = 0.0;    // e^{-t} at the crossing (= delta * e^{backward_time})
    double backward_time = 0.0;  // elapsed backward time to the crossing
    double error_estimate = 0.0;
};

// Backward trace of the critical trajectory.  Seeds at the two-term series
// point x = delta - delta^2/2, u = -delta + delta^2 (seeding error O(delta^3)),
// integrates backward and records the crossing of the nullcline u = -x^2 by
// event interpolation.  Requires 0 < delta <= 1e-3; throws
// TraceIncompleteError if the crossing is not reached within the budget.
SeparatrixTrace trace_separatrix(double delta, const IntegratorConfig& cfg);

struct BisectionResult {
    double x_c = 0.0;
    double bracket_width = 0.0;
    int probes = 0;
};

// Bisection on x0 in (0,1) with zero-acceleration initial data u0 = -x0^2,
// classifying the fate at each probe.  Throws BracketError if the endpoints
// do not straddle the transition or a probe comes back undecided.
BisectionResult find_xc_bisection(const IntegratorConfig& cfg, double tol);

struct PortraitCell {
    double x0 = 0.0, u0 = 0.0;
    Fate fate = Fate::undecided;
    double t_event = 0.0;
};

// Fate classification over a rectangular grid of initial conditions
// (undecided cells flagged, never an error).
std::vector<PortraitCell> phase_portrait(double x_lo, double x_hi, int nx,
                                         double u_lo, double u_hi, int nu,
                                         const IntegratorConfig& cfg);

}  // namespace capture
