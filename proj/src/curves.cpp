// curves.cpp — N sweeps for the deviation curve and the spectrum surface

#include "becspec/curves.hpp"

#include <cmath>
#include <exception>
#include <limits>

#include "becspec/errors.hpp"

namespace becspec {

std::vector<DeviationRow> deviation_curve(const ModelParams& p_base,
                                          const std::vector<double>& n_list) {
    std::vector<DeviationRow> rows;
    rows.reserve(n_list.size());
    for (double n : n_list) {
        DeviationRow row;
        row.n_atoms = n;
        try {
            const ModelParams p = p_base.with_n(n);
            const SteadyState ss = solve_deformed_steady_state(p);
            row.abs_beta = std::abs(ss.beta);
            row.abs_beta_inf = std::abs(beta_infinity(p));
            row.deviation = std::abs(row.abs_beta - row.abs_beta_inf);
        } catch (const std::exception& e) {
            row.ok = false;
            row.error = e.what();
            row.abs_beta = row.abs_beta_inf = row.deviation =
                std::numeric_limits<double>::quiet_NaN();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<SurfaceRow> spectrum_surface(const ModelParams& p_base,
                                         const std::vector<double>& n_list,
                                         const std::vector<double>& omega_grid,
                                         SpectrumVariant variant) {
    std::vector<SurfaceRow> rows;
    rows.reserve(n_list.size() * omega_grid.size());
    for (double n : n_list) {
        bool row_ok = true;
        std::string row_error;
        FluctuationCoeffs coeffs{};
        double big_gamma = 0.0;
        try {
            const ModelParams p = p_base.with_n(n);
            const SteadyState ss = solve_deformed_steady_state(p);
            if (!ss.stable) {
                throw UnstableSteadyStateError("spectrum_surface: unstable steady state");
            }
            coeffs = fluctuation_coeffs(p, ss.beta);
            big_gamma = derive_params(p).big_gamma;
        } catch (const std::exception& e) {
            row_ok = false;
            row_error = e.what();
        }
        for (double w : omega_grid) {
            SurfaceRow row;
            row.n_atoms = n;
            row.omega = w;
            if (row_ok) {
                row.s = spectrum_value(coeffs, big_gamma, w, variant);
            } else {
                row.s = std::numeric_limits<double>::quiet_NaN();
                row.ok = false;
                row.error = row_error;
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

} // namespace becspec
