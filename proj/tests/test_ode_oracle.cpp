#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "capture/errors.hpp"
#include "capture/ode_oracle.hpp"

using namespace capture;

TEST_CASE("the origin is a fixed point") {
    IntegratorConfig cfg;
    Trajectory traj = integrate({0.0, 0.0, 0.0}, cfg, Direction::forward);
    for (const auto& p : traj.points) {
        CHECK(p.x == 0.0);
        CHECK(p.u == 0.0);
    }
    FateResult fr = classify_fate({0.0, 0.0}, cfg);
    CHECK(fr.fate == Fate::escape);
    CHECK(fr.t_event == 0.0);
}

TEST_CASE("nullcline release below the threshold decays monotonically") {
    IntegratorConfig cfg;
    cfg.record_trajectory = true;
    Trajectory traj = integrate({0.0, 0.5, -0.25}, cfg, Direction::forward);
    for (size_t i = 1; i < traj.points.size(); ++i)
        CHECK(traj.points[i].x <= traj.points[i - 1].x);
    CHECK(traj.last.x < 0.01);
    CHECK(traj.last.x > 0.0);
}

TEST_CASE("fate classification brackets the threshold") {
    IntegratorConfig cfg;
    CHECK(classify_fate({0.5, -0.25}, cfg).fate == Fate::escape);
    CHECK(classify_fate({0.7, -0.49}, cfg).fate == Fate::capture);
}

TEST_CASE("capture event time is refined to the crossing") {
    IntegratorConfig cfg;
    cfg.record_trajectory = true;
    FateResult fr = classify_fate({0.7, -0.49}, cfg);
    CHECK(fr.fate == Fate::capture);
    CHECK(fr.t_event > 0.0);
    CHECK(fr.t_event < 50.0);
    const PhaseState& last = fr.trajectory.back();
    CHECK(std::abs(last.x) < 1e-9);
    CHECK(last.u < 0.0);
    CHECK(last.t == doctest::Approx(fr.t_event));
}

TEST_CASE("degenerate starts") {
    IntegratorConfig cfg;
    CHECK(classify_fate({-0.2, 0.0}, cfg).fate == Fate::capture);
    CHECK(classify_fate({0.0, -0.1}, cfg).fate == Fate::capture);
    CHECK(classify_fate({0.0, 1e-12}, cfg).fate == Fate::escape);  // inside the attractor ball
}

TEST_CASE("escape trajectories become monotone after the initial transient") {
    IntegratorConfig cfg;
    cfg.record_trajectory = true;
    FateResult fr = classify_fate({0.1, 0.2}, cfg);  // released upward, falls back
    CHECK(fr.fate == Fate::escape);
    auto peak = std::max_element(fr.trajectory.begin(), fr.trajectory.end(),
                                 [](const PhaseState& a, const PhaseState& b) { return a.x < b.x; });
    for (auto it = peak; it + 1 != fr.trajectory.end(); ++it) CHECK(it[1].x <= it[0].x);
}

TEST_CASE("backward separatrix trace lands on the known critical point") {
    IntegratorConfig cfg;
    SeparatrixTrace trace = trace_separatrix(1e-6, cfg);
    CHECK(trace.xc_estimate == doctest::Approx(0.597777).epsilon(2e-6 / 0.597777));
    CHECK(trace.zc_estimate == doctest::Approx(0.917452).epsilon(3e-6 / 0.917452));
    CHECK(trace.backward_time > 0.0);
    CHECK(trace.polyline.size() > 3);
    // the trace runs backward from the seed near the origin: x grows
    CHECK(trace.polyline.front().x < trace.polyline.back().x);
}

TEST_CASE("halving delta moves the trace estimate by less than 1e-9") {
    IntegratorConfig cfg;
    cfg.rel_tol = 1e-12;
    cfg.abs_tol = 1e-14;
    double a = trace_separatrix(1e-6, cfg).xc_estimate;
    double b = trace_separatrix(5e-7, cfg).xc_estimate;
    CHECK(std::abs(a - b) < 1e-9);
}

TEST_CASE("tightening tolerances moves the estimate by less than the reported error") {
    IntegratorConfig loose;
    SeparatrixTrace t1 = trace_separatrix(1e-6, loose);
    IntegratorConfig tight = loose;
    tight.rel_tol = loose.rel_tol / 10.0;
    tight.abs_tol = loose.abs_tol / 10.0;
    SeparatrixTrace t2 = trace_separatrix(1e-6, tight);
    CHECK(std::abs(t1.xc_estimate - t2.xc_estimate) < t1.error_estimate);
}

TEST_CASE("trace argument and budget validation") {
    IntegratorConfig cfg;
    CHECK_THROWS_AS(trace_separatrix(0.0, cfg), InvalidArgumentError);
    CHECK_THROWS_AS(trace_separatrix(2e-3, cfg), InvalidArgumentError);
    IntegratorConfig tiny = cfg;
    tiny.t_max = 1.0;  // not enough backward time to reach the nullcline
    CHECK_THROWS_AS(trace_separatrix(1e-6, tiny), TraceIncompleteError);
}

TEST_CASE("bisection pins down x_c") {
    IntegratorConfig cfg;
    BisectionResult r = find_xc_bisection(cfg, 1e-7);
    CHECK(r.x_c == doctest::Approx(0.5977767).epsilon(2e-6 / 0.5977767));
    CHECK(r.bracket_width <= 1e-7);
    CHECK(r.probes >= 20);

    SeparatrixTrace trace = trace_separatrix(1e-6, cfg);
    CHECK(std::abs(r.x_c - trace.xc_estimate) < 2e-6);
}

TEST_CASE("even a coarse bisection lands inside (0.5, 0.7)") {
    IntegratorConfig cfg;
    BisectionResult r = find_xc_bisection(cfg, 0.1);
    CHECK(r.x_c > 0.5);
    CHECK(r.x_c < 0.7);
}

TEST_CASE("bisection errors") {
    IntegratorConfig cfg;
    CHECK_THROWS_AS(find_xc_bisection(cfg, 0.0), InvalidArgumentError);
    IntegratorConfig tiny = cfg;
    tiny.t_max = 1e-3;  // probes cannot decide anything this fast
    CHECK_THROWS_AS(find_xc_bisection(tiny, 0.1), BracketError);
}

TEST_CASE("fate is monotone along the zero-acceleration locus") {
    IntegratorConfig cfg;
    int transitions = 0;
    Fate prev = Fate::escape;
    for (int i = 0; i < 50; ++i) {
        double x0 = 0.02 + (0.98 - 0.02) * i / 49.0;
        Fate f = classify_fate({x0, -x0 * x0}, cfg).fate;
        CHECK(f != Fate::undecided);
        if (f != prev) {
            ++transitions;
            CHECK(f == Fate::capture);  // once capturing, always capturing
        }
        prev = f;
    }
    CHECK(transitions == 1);
}

TEST_CASE("phase portrait classifies the known cells") {
    IntegratorConfig cfg;
    auto cells = phase_portrait(0.0, 1.0, 3, -1.0, 0.0, 3, cfg);
    CHECK(cells.size() == 9);
    auto cell = [&](double x0, double u0) {
        for (const auto& c : cells)
            if (std::abs(c.x0 - x0) < 1e-12 && std::abs(c.u0 - u0) < 1e-12) return c;
        REQUIRE(false);
        return cells[0];
    };
    CHECK(cell(0.0, 0.0).fate == Fate::escape);     // fixed point
    CHECK(cell(0.5, 0.0).fate == Fate::escape);     // deep in the basin
    CHECK(cell(1.0, -1.0).fate == Fate::capture);   // below the separatrix
    CHECK(cell(0.5, -1.0).fate == Fate::capture);
}

TEST_CASE("separate grid point off the nullcline escapes") {
    IntegratorConfig cfg;
    CHECK(classify_fate({0.3, 0.0}, cfg).fate == Fate::escape);
}

TEST_CASE("an exhausted budget flags cells undecided instead of failing") {
    IntegratorConfig cfg;
    cfg.t_max = 0.5;
    auto cells = phase_portrait(0.55, 0.65, 3, -0.42, -0.3, 3, cfg);
    int undecided = 0;
    for (const auto& c : cells) undecided += c.fate == Fate::undecided;
    CHECK(undecided > 0);
}

TEST_CASE("blowup guard reports capture once x is negative") {
    IntegratorConfig cfg;
    cfg.record_trajectory = true;
    FateResult fr = classify_fate({2.0, -3.0}, cfg);
    CHECK(fr.fate == Fate::capture);
}

TEST_CASE("step-size underflow raises a stiffness error") {
    IntegratorConfig cfg;
    cfg.rel_tol = 1e-300;
    cfg.abs_tol = 1e-320;
    CHECK_THROWS_AS(integrate({0.0, 0.5, -0.25}, cfg, Direction::forward), StiffnessError);
}

TEST_CASE("config validation") {
    IntegratorConfig cfg;
    cfg.t_max = -1.0;
    CHECK_THROWS_AS(classify_fate({0.5, -0.25}, cfg), InvalidArgumentError);
    IntegratorConfig cfg2;
    cfg2.attractor_tol = 0.0;
    CHECK_THROWS_AS(classify_fate({0.5, -0.25}, cfg2), InvalidArgumentError);
}
