// errors.hpp — failure modes surfaced by the solvers and the quantum oracle

#pragma once

#include <stdexcept>
#include <string>

namespace becspec {

// Newton/continuation failed to reach the residual tolerance. Signals a
// parameter regime outside the method's validity rather than a bug.
struct NoConvergenceError : std::runtime_error {
    explicit NoConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// Steady state found but linearly unstable; spectrum evaluation refuses it.
struct UnstableSteadyStateError : std::runtime_error {
    explicit UnstableSteadyStateError(const std::string& what) : std::runtime_error(what) {}
};

// Degenerate or ill-conditioned Liouvillian solve. Usually means the Fock
// truncation is too small for the drive, or the regime is unstable.
struct SingularSolveError : std::runtime_error {
    explicit SingularSolveError(const std::string& what) : std::runtime_error(what) {}
};

// Oracle observables did not converge in the truncation cross-check.
struct TruncationError : std::runtime_error {
    explicit TruncationError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace becspec
