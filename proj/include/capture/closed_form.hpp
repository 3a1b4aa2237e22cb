#pragma once

namespace capture {

// Initial data x(0), x'(0) in the outer scaling.  The zero-acceleration
// release locus is u0 = -x0^2.
struct InitialConditions {
    double x0 = 0.0;
    double u0 = 0.0;
};

// Integration constants of the leading-order solutions.  Everything is
// parameterized by invC = 1/C, the variable that stays regular on the
// separatrix (invC = 0).  B is the e^{-t} amplitude from the x0 relation
// x0/eps = -1/C + B; D carries the leading identification B = D C^2.
struct SolutionConstants {
    double invC = 0.0;
    double B = 0.0;
    double D = 0.0;
    double epsilon = 1.0;
};

enum class RootBranch { plus, minus };

// Determine constants from initial conditions by solving the quadratic
// q^2 + q + (x0 + u0) = 0 for q = eps/C.  `plus` selects the root matching
// the printed closed formula C/eps = -(1 + sqrt(1-4x0-4u0))/(2(x0+u0)); it
// is evaluated in the rationalized form invC = -2(x0+u0)/(eps(1+sqrt(...)))
// so that x0 + u0 = 0 lands exactly on invC = 0, the separatrix.
// Throws BreakdownError when u0 > (1 - 4 x0)/4 (negative discriminant).
SolutionConstants constants_from_ic(const InitialConditions& ic, double epsilon,
                                    RootBranch branch = RootBranch::plus);

// Composite matched-asymptotics solution x(t) = eps/(eps t - C) + eps B e^{-t}.
// Throws PoleError at eps t = C.
double matched_eval(const SolutionConstants& c, double t);
double matched_velocity(const SolutionConstants& c, double t);

// RG solution
//   x(t) = eps/(eps t - C) + eps D (eps t - C)^2 e^{-t}
//        - eps^2 (D^2/2) (eps t - C)^4 e^{-2t},
// evaluated through the amplitude D C^2 = B so the separatrix limit
// invC -> 0 is regular: there x(t) = eps B e^{-t} - eps^2 (B^2/2) e^{-2t}.
double rg_eval(const SolutionConstants& c, double t);
double rg_velocity(const SolutionConstants& c, double t);

// Slowly varying amplitudes Atilde = 1/(eps t - C), Btilde = (eps t - C)^2 D
// solving the RG equations A'/A = -eps A, B'/B = 2 eps A.
struct Amplitudes {
    double Atilde = 0.0;
    double Btilde = 0.0;
};
Amplitudes rg_amplitudes(const SolutionConstants& c, double t);

}  // namespace capture
