// steady_state.cpp — closed-form undeformed amplitude, deformed-root continuation, RK4 relaxation

#include "becspec/steady_state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "becspec/errors.hpp"
#include "becspec/fluctuations.hpp"

namespace becspec {

namespace {

constexpr Complex kI{0.0, 1.0};

double residual_scale(const ModelParams& p, Complex beta) {
    const DerivedParams d = derive_params(p);
    return p.g * std::sqrt(p.n_atoms) + d.big_gamma * std::abs(beta) + 1.0;
}

// One full Newton step on (Re R, Im R) as functions of (Re beta, Im beta),
// via the Wirtinger derivatives dR/dbeta and dR/dbeta*.
Complex newton_step(const ModelParams& p, Complex beta, double eta, Complex r) {
    const DerivedParams d = derive_params(p);
    const double nonlin = std::sqrt(p.n_atoms) * p.g * eta * 0.5;
    const Complex dr_dbeta =
        kI * nonlin * (2.0 * beta + 2.0 * std::conj(beta)) - kI * p.delta - d.big_gamma;
    const Complex dr_dconj = kI * nonlin * 2.0 * beta;

    // 2x2 real Jacobian from the Wirtinger pair.
    const Complex sum = dr_dbeta + dr_dconj;
    const Complex dif = dr_dbeta - dr_dconj;
    const double j11 = sum.real();
    const double j12 = -dif.imag();
    const double j21 = sum.imag();
    const double j22 = dif.real();

    const double det = j11 * j22 - j12 * j21;
    if (!std::isfinite(det) || std::abs(det) < 1e-300) {
        throw NoConvergenceError("solve_deformed_steady_state: singular Jacobian");
    }
    const double rx = -r.real();
    const double ry = -r.imag();
    const double dx = (j22 * rx - j12 * ry) / det;
    const double dy = (-j21 * rx + j11 * ry) / det;
    return Complex(dx, dy);
}

// Damped Newton at fixed eta. Polishes past the tolerance while the raw
// residual keeps shrinking, so large-N roots reach the float noise floor.
Complex newton_solve(const ModelParams& p, Complex beta, double eta, double tol,
                     int max_iter, int continuation_step) {
    Complex best = beta;
    double best_res = std::abs(deformed_residual(p, beta, eta));

    bool converged = best_res <= tol * residual_scale(p, beta);
    int polish_left = 2;

    for (int it = 0; it < max_iter || (converged && polish_left > 0); ++it) {
        if (converged) {
            if (polish_left-- <= 0) break;
        }
        const Complex r = deformed_residual(p, best, eta);
        const Complex step = newton_step(p, best, eta, r);
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) {
            throw NoConvergenceError("solve_deformed_steady_state: non-finite Newton step");
        }

        double damping = 1.0;
        Complex candidate = best + step;
        double cand_res = std::abs(deformed_residual(p, candidate, eta));
        int halvings = 0;
        while (cand_res >= best_res && halvings < 40 &&
               std::abs(step) * damping > 1e-17 * (1.0 + std::abs(best))) {
            damping *= 0.5;
            ++halvings;
            candidate = best + damping * step;
            cand_res = std::abs(deformed_residual(p, candidate, eta));
        }
        if (cand_res >= best_res) {
            // Stagnated at the floating-point floor.
            if (converged || best_res <= tol * residual_scale(p, best)) break;
            continue;
        }
        best = candidate;
        best_res = cand_res;
        if (!converged && best_res <= tol * residual_scale(p, best)) converged = true;
    }

    if (!converged && best_res > tol * residual_scale(p, best)) {
        throw NoConvergenceError(
            "solve_deformed_steady_state: Newton failed at continuation step " +
            std::to_string(continuation_step) + " (eta=" + std::to_string(eta) +
            ", residual=" + std::to_string(best_res) + ")");
    }
    return best;
}

SteadyState finish_state(const ModelParams& p, Complex beta, double eta) {
    SteadyState s;
    s.beta = beta;
    s.residual_norm = std::abs(deformed_residual(p, beta, eta));
    const FluctuationCoeffs c = fluctuation_coeffs(p, beta, eta);
    const auto [l1, l2] = drift_eigenvalues(c);
    s.lambda1 = l1;
    s.lambda2 = l2;
    s.stable = l1.real() < 0.0 && l2.real() < 0.0;
    return s;
}

} // namespace

Complex beta_infinity(const ModelParams& p) {
    const DerivedParams d = derive_params(p);
    const double drive = p.g * std::sqrt(p.n_atoms);
    return -kI * drive / Complex(d.big_gamma, p.delta);
}

Complex deformed_residual(const ModelParams& p, Complex beta, double eta) {
    const DerivedParams d = derive_params(p);
    const double root_n = std::sqrt(p.n_atoms);
    const double nonlin = root_n * p.g * eta * 0.5;
    return kI * nonlin * (beta * beta + 2.0 * std::norm(beta)) - kI * p.delta * beta -
           kI * p.g * root_n - d.big_gamma * beta;
}

Complex deformed_residual(const ModelParams& p, Complex beta) {
    return deformed_residual(p, beta, derive_params(p).eta);
}

SteadyState solve_deformed_steady_state(const ModelParams& p, double tol, int max_iter) {
    return solve_deformed_steady_state(p, derive_params(p).eta, tol, max_iter);
}

SteadyState solve_deformed_steady_state(const ModelParams& p, double eta_target,
                                        double tol, int max_iter) {
    if (!(tol > 0.0)) throw std::domain_error("solve_deformed_steady_state: tol must be > 0");
    if (eta_target < 0.0) {
        throw std::domain_error("solve_deformed_steady_state: eta must be >= 0");
    }

    // Undriven mode: beta = 0 exactly, no iteration.
    if (p.g == 0.0) return finish_state(p, Complex(0.0, 0.0), eta_target);

    Complex beta = beta_infinity(p);  // exact root at eta = 0
    if (eta_target == 0.0) return finish_state(p, beta, 0.0);

    // Geometric homotopy eta_target/2^(m-1), ..., eta_target/2, eta_target,
    // tracking the branch connected to the undeformed limit.
    constexpr int kSteps = 10;
    for (int j = kSteps - 1; j >= 0; --j) {
        const double eta_j = eta_target * std::ldexp(1.0, -j);
        beta = newton_solve(p, beta, eta_j, tol, max_iter, kSteps - j);
    }
    return finish_state(p, beta, eta_target);
}

std::vector<std::pair<double, Complex>> mean_field_relax(const ModelParams& p,
                                                         Complex beta0, double t_final,
                                                         double dt) {
    return mean_field_relax(p, beta0, t_final, dt, derive_params(p).eta);
}

std::vector<std::pair<double, Complex>> mean_field_relax(const ModelParams& p,
                                                         Complex beta0, double t_final,
                                                         double dt, double eta) {
    if (!(dt > 0.0)) throw std::domain_error("mean_field_relax: dt must be > 0");
    if (!(t_final >= dt)) throw std::domain_error("mean_field_relax: t_final must be >= dt");

    const auto drift = [&](Complex b) { return deformed_residual(p, b, eta); };
    const auto n_steps = static_cast<std::size_t>(std::llround(t_final / dt));

    std::vector<std::pair<double, Complex>> trajectory;
    trajectory.reserve(n_steps + 1);
    Complex b = beta0;
    trajectory.emplace_back(0.0, b);
    for (std::size_t i = 1; i <= n_steps; ++i) {
        const Complex k1 = drift(b);
        const Complex k2 = drift(b + 0.5 * dt * k1);
        const Complex k3 = drift(b + 0.5 * dt * k2);
        const Complex k4 = drift(b + dt * k3);
        b += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!std::isfinite(b.real()) || !std::isfinite(b.imag()) || std::abs(b) > 1e12) {
            throw std::overflow_error(
                "mean_field_relax: trajectory diverged (unstable regime or dt too large)");
        }
        trajectory.emplace_back(static_cast<double>(i) * dt, b);
    }
    return trajectory;
}

} // namespace becspec
