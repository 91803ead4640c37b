// fluctuations.hpp — linearized fluctuation dynamics and the scattered-light spectrum

#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "becspec/params.hpp"
#include "becspec/steady_state.hpp"

namespace becspec {

// Coefficients of the linearized fluctuation equation
//   d(db)/dt = A db + B db^dag + noise
// evaluated at a mean-field amplitude beta.
struct FluctuationCoeffs {
    Complex a_coef;
    Complex b_coef;
};

FluctuationCoeffs fluctuation_coeffs(const ModelParams& p, Complex beta, double eta);
FluctuationCoeffs fluctuation_coeffs(const ModelParams& p, Complex beta);

// Eigenvalues of the 2x2 drift matrix [[A, B], [B*, A*]]:
//   lambda = Re A ± sqrt(|B|^2 - (Im A)^2)   (principal square root).
std::pair<Complex, Complex> drift_eigenvalues(const FluctuationCoeffs& c);

// Spectral denominator Xi(w) = |A|^2 - |B|^2 - w^2 - i w (A + A*).
// Satisfies Xi(w) = (lambda1 - iw)(lambda2 - iw) and Xi(-w) = Xi(w)*.
Complex xi(const FluctuationCoeffs& c, double omega);

// `paper` is the verbatim closed form |B|^2 / |Xi|^2; `physical` carries the
// input-noise prefactor 2*Gamma dropped by the former. `oracle` tags tables
// produced by the regression oracle, whose normalization is measured rather
// than asserted (see the oracle-compare subcommand).
enum class SpectrumVariant { paper, physical, oracle };

const char* to_string(SpectrumVariant v);
SpectrumVariant spectrum_variant_from_string(const std::string& s);

// Spectrum from precomputed coefficients (no solve, no stability gate).
double spectrum_value(const FluctuationCoeffs& c, double big_gamma, double omega,
                      SpectrumVariant variant);

// Solves the deformed steady state, gates on stability, then evaluates.
// Throws NoConvergenceError / UnstableSteadyStateError.
double spectrum_at(const ModelParams& p, double omega, SpectrumVariant variant);

struct SpectrumTable {
    std::vector<double> omega_grid;
    std::vector<double> values;
    SpectrumVariant variant{SpectrumVariant::paper};
};

SpectrumTable spectrum_table(const ModelParams& p, const std::vector<double>& omega_grid,
                             SpectrumVariant variant);

// Stationary second moments of the linearized system with vacuum input,
// from the 2x2 Lyapunov equation M V + V M^T + N = 0 solved as a 4x4
// linear system. occupation = <db^dag db>, squeeze = <db db>.
struct StationaryMoments {
    double occupation;
    Complex squeeze;
};

StationaryMoments stationary_moments(const FluctuationCoeffs& c, double big_gamma);

} // namespace becspec
