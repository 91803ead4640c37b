// steady_state.hpp — mean-field steady states of the driven, damped condensate mode
//
// The undeformed (Bogolubov-limit) amplitude has a closed form; the deformed
// steady state is the root of a complex quadratic equation, selected as the
// branch continuously connected to the undeformed limit via homotopy
// continuation in the deformation parameter.

#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "becspec/params.hpp"

namespace becspec {

using Complex = std::complex<double>;

// Closed-form steady state of the undeformed (linear) mode.
Complex beta_infinity(const ModelParams& p);

// Left-hand side of the deformed steady-state equation at a trial amplitude.
// The solver drives this to zero. The eta overload supports continuation and
// the eta->0 consistency checks; the two-argument form uses eta = 1/N.
Complex deformed_residual(const ModelParams& p, Complex beta, double eta);
Complex deformed_residual(const ModelParams& p, Complex beta);

struct SteadyState {
    Complex beta;          // mean-field amplitude, dimensionless
    double residual_norm;  // |residual| at beta
    bool stable;           // Re lambda1 < 0 and Re lambda2 < 0
    Complex lambda1;       // drift eigenvalues of the linearized dynamics
    Complex lambda2;
};

// Damped-Newton homotopy continuation from the undeformed root.
// tol is scale-free: convergence requires |residual| <= tol * (g sqrt(N) + Gamma|beta| + 1).
// max_iter bounds Newton iterations per continuation step.
// Throws NoConvergenceError; an unstable root is returned with stable=false.
SteadyState solve_deformed_steady_state(const ModelParams& p, double tol = 1e-12,
                                        int max_iter = 50);
SteadyState solve_deformed_steady_state(const ModelParams& p, double eta_target,
                                        double tol, int max_iter);

// Fixed-step RK4 integration of the noise-free mean-field equation,
// d(beta)/dt = deformed_residual(beta). Returns the sampled trajectory.
// Throws std::overflow_error if the trajectory diverges.
std::vector<std::pair<double, Complex>> mean_field_relax(const ModelParams& p,
                                                         Complex beta0, double t_final,
                                                         double dt);
std::vector<std::pair<double, Complex>> mean_field_relax(const ModelParams& p,
                                                         Complex beta0, double t_final,
                                                         double dt, double eta);

} // namespace becspec
