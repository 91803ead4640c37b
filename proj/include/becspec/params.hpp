// params.hpp — physical inputs of one condensate/laser configuration

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace becspec {

// All rates are expressed in units of the one-atom linewidth gamma; the
// gamma field only exists so unit-scaling invariance can be exercised.
struct ModelParams {
    double delta;    // detuning, laser vs atomic transition
    double g;        // drive amplitude, >= 0
    double gamma;    // one-atom linewidth, the rate unit, > 0
    double n_atoms;  // total particle number N, >= 2 (treated as continuous)

    ModelParams(double delta_, double g_, double gamma_, double n_atoms_)
        : delta(delta_), g(g_), gamma(gamma_), n_atoms(n_atoms_) {
        if (!std::isfinite(delta) || !std::isfinite(g) || !std::isfinite(gamma) ||
            !std::isfinite(n_atoms)) {
            throw std::domain_error("ModelParams: non-finite input");
        }
        if (gamma <= 0.0) throw std::domain_error("ModelParams: gamma must be > 0");
        if (g < 0.0) throw std::domain_error("ModelParams: g must be >= 0");
        if (n_atoms < 2.0) {
            // eta >= 0.5 breaks the small-deformation expansion
            throw std::domain_error("ModelParams: n_atoms must be >= 2, got " +
                                    std::to_string(n_atoms));
        }
    }

    ModelParams with_n(double n) const { return ModelParams(delta, g, gamma, n); }
};

struct DerivedParams {
    double big_gamma;  // collective damping rate, gamma * sqrt(N)
    double eta;        // deformation parameter, 1/N
};

inline DerivedParams derive_params(const ModelParams& p) {
    return DerivedParams{p.gamma * std::sqrt(p.n_atoms), 1.0 / p.n_atoms};
}

} // namespace becspec
