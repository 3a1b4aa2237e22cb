#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace capture {

// Base class for all library errors.  `code()` is a stable machine-readable
// tag; the CLI maps it onto the structured JSON error output.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

// Composition/log of a series whose inner constant term is nonzero.
struct CompositionError : Error {
    explicit CompositionError(const std::string& w) : Error("composition-undefined", w) {}
};

// A quantity that is an integer by theorem failed to be one, or a residual
// that must vanish did not.  Signals a bug, not bad input.
struct InternalInconsistencyError : Error {
    explicit InternalInconsistencyError(const std::string& w) : Error("internal-inconsistency", w) {}
};

// Zero pivot in the order-by-order linear solve.
struct SolverDegenerateError : Error {
    explicit SolverDegenerateError(const std::string& w) : Error("solver-degenerate", w) {}
};

// Initial conditions outside the validity region of the leading-order
// closed-form solutions (negative discriminant).
struct BreakdownError : Error {
    explicit BreakdownError(const std::string& w) : Error("breakdown", w) {}
};

// Evaluation of a closed-form solution at its pole.
struct PoleError : Error {
    explicit PoleError(const std::string& w) : Error("pole", w) {}
};

// Adaptive step size underflow.
struct StiffnessError : Error {
    StiffnessError(const std::string& w, double t, double x, double u)
        : Error("stiffness", w), t(t), x(x), u(u) {}
    double t, x, u;  // last good state
};

// Backward separatrix trace ran out of time budget before the nullcline.
struct TraceIncompleteError : Error {
    explicit TraceIncompleteError(const std::string& w) : Error("trace-incomplete", w) {}
};

// Bisection bracket invalid (same fate at both ends, or undecidable probe).
struct BracketError : Error {
    explicit BracketError(const std::string& w) : Error("bracket", w) {}
};

struct InsufficientDataError : Error {
    explicit InsufficientDataError(const std::string& w) : Error("insufficient-data", w) {}
};

// Ratio-plot fit could not be performed (all points excluded, zero slope).
struct DegenerateFitError : Error {
    explicit DegenerateFitError(const std::string& w) : Error("degenerate-fit", w) {}
};

struct InvalidArgumentError : Error {
    explicit InvalidArgumentError(const std::string& w) : Error("invalid-argument", w) {}
};

}  // namespace capture
