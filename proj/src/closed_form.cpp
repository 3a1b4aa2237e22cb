#include "capture/closed_form.hpp"

#include <cmath>
#include <string>

#include "capture/errors.hpp"

namespace capture {

namespace {

// 1 - eps t invC, the factor (eps t - C)/(-C) that stays finite on the
// separatrix.  Zero exactly at the pole eps t = C.
double pole_factor(const SolutionConstants& c, double t, const char* who) {
    double g = 1.0 - c.epsilon * t * c.invC;
    if (g == 0.0) throw PoleError(std::string(who) + ": evaluation at the pole eps*t = C");
    return g;
}

}  // namespace

SolutionConstants constants_from_ic(const InitialConditions& ic, double epsilon,
                                    RootBranch branch) {
    if (!(epsilon > 0.0)) throw InvalidArgumentError("constants_from_ic: epsilon must be > 0");
    double disc = 1.0 - 4.0 * ic.x0 - 4.0 * ic.u0;
    if (disc < 0.0)
        throw BreakdownError("no real solution: u0 > (1 - 4 x0)/4 violates the dominant "
                             "balance (u0 = " + std::to_string(ic.u0) + ", limit = " +
                             std::to_string((1.0 - 4.0 * ic.x0) / 4.0) + ")");
    double s = std::sqrt(disc);
    SolutionConstants c;
    c.epsilon = epsilon;
    if (branch == RootBranch::plus) {
        // q = (-1 + s)/2 rationalized: q = -2(x0+u0)/(1+s), regular at x0+u0 = 0.
        c.invC = -2.0 * (ic.x0 + ic.u0) / (epsilon * (1.0 + s));
    } else {
        c.invC = (-1.0 - s) / (2.0 * epsilon);
    }
    c.B = ic.x0 / epsilon + c.invC;
    c.D = c.B * c.invC * c.invC;
    return c;
}

double matched_eval(const SolutionConstants& c, double t) {
    double g = pole_factor(c, t, "matched_eval");
    return -c.epsilon * c.invC / g + c.epsilon * c.B * std::exp(-t);
}

double matched_velocity(const SolutionConstants& c, double t) {
    double g = pole_factor(c, t, "matched_velocity");
    double ei = c.epsilon * c.invC;
    return -ei * ei / (g * g) - c.epsilon * c.B * std::exp(-t);
}

double rg_eval(const SolutionConstants& c, double t) {
    double g = pole_factor(c, t, "rg_eval");
    double e1 = std::exp(-t);
    double outer = -c.epsilon * c.invC / g;
    double g2 = g * g;
    return outer + c.epsilon * c.B * g2 * e1 -
           0.5 * c.epsilon * c.epsilon * c.B * c.B * g2 * g2 * e1 * e1;
}

double rg_velocity(const SolutionConstants& c, double t) {
    double g = pole_factor(c, t, "rg_velocity");
    double e1 = std::exp(-t);
    double ei = c.epsilon * c.invC;
    double g2 = g * g;
    double d_outer = -ei * ei / g2;
    double d_mid = c.epsilon * c.B * e1 * (-2.0 * ei * g - g2);
    double d_sub = -0.5 * c.epsilon * c.epsilon * c.B * c.B * e1 * e1 *
                   (-4.0 * ei * g * g2 - 2.0 * g2 * g2);
    return d_outer + d_mid + d_sub;
}

Amplitudes rg_amplitudes(const SolutionConstants& c, double t) {
    double g = pole_factor(c, t, "rg_amplitudes");
    return {-c.invC / g, c.B * g * g};
}

}  // namespace capture
