// curves.hpp — figure-data generators: deviation-vs-N curve and the (N, omega) spectrum surface

#pragma once

#include <string>
#include <vector>

#include "becspec/fluctuations.hpp"
#include "becspec/params.hpp"

namespace becspec {

struct DeviationRow {
    double n_atoms;
    double abs_beta;      // |beta| of the deformed root
    double abs_beta_inf;  // |beta| of the undeformed closed form
    double deviation;     // | |beta| - |beta_inf| |
    bool ok{true};
    std::string error;    // set when the row's solve failed; row flagged, not fatal
};

// Per-N deviation of the deformed steady state from the undeformed one.
// delta/g/gamma come from p_base; n_atoms is swept over n_list.
std::vector<DeviationRow> deviation_curve(const ModelParams& p_base,
                                          const std::vector<double>& n_list);

struct SurfaceRow {
    double n_atoms;
    double omega;
    double s;
    bool ok{true};
    std::string error;
};

// Spectrum on the (N, omega) grid; one steady-state solve per N.
std::vector<SurfaceRow> spectrum_surface(const ModelParams& p_base,
                                         const std::vector<double>& n_list,
                                         const std::vector<double>& omega_grid,
                                         SpectrumVariant variant);

} // namespace becspec
