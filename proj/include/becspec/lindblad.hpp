// lindblad.hpp — nonperturbative master-equation oracle for the driven deformed mode
//
// Builds the effective Hamiltonian on a truncated Fock space, the vectorized
// Liouvillian with vacuum damping on the bare mode, its exact steady state,
// and the normally ordered fluctuation spectrum via the quantum regression
// theorem. Used to validate the semiclassical amplitude and to adjudicate the
// spectrum normalization.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <memory>
#include <vector>

#include "becspec/fluctuations.hpp"
#include "becspec/params.hpp"

namespace becspec::lindblad {

using Complex = std::complex<double>;

// System Hamiltonian in the rotating frame (bath handled by the dissipator):
//   H = Delta b^dag b + sqrt(N) g (b^dag + b) - (sqrt(N) g eta / 2)(b^dag b^2 + b^dag^2 b)
Eigen::MatrixXcd effective_hamiltonian(const ModelParams& p, int n_cut, double eta);
Eigen::MatrixXcd effective_hamiltonian(const ModelParams& p, int n_cut);

// Vectorized generator, column-major convention:
//   L[rho] = -i[H, rho] + Gamma (2 b rho b^dag - b^dag b rho - rho b^dag b)
Eigen::MatrixXcd liouvillian(const ModelParams& p, int n_cut, double eta);
Eigen::MatrixXcd liouvillian(const ModelParams& p, int n_cut);

// Unique trace-one null state of the Liouvillian. Throws SingularSolveError
// when the solve is degenerate or the result violates state invariants.
Eigen::MatrixXcd steady_density(const ModelParams& p, int n_cut, double eta);
Eigen::MatrixXcd steady_density(const ModelParams& p, int n_cut);

std::complex<double> mean_amplitude(const Eigen::MatrixXcd& rho);
double mean_occupation(const Eigen::MatrixXcd& rho);

// Trace/Hermiticity/positivity gate; throws SingularSolveError on violation.
void validate_density(const Eigen::MatrixXcd& rho);

// Truncation heuristic from the semiclassical amplitude.
int default_truncation(const ModelParams& p);

// Normally ordered fluctuation spectrum by quantum regression,
//   S(w) = (1/pi) Re tr[b^dag X(w)],  (L + i w) X(w) = -(b - <b>) rho_ss,
// computed over the grid from one Schur factorization of the trace-deflated
// generator. Throws SingularSolveError near ill-conditioned shifts.
SpectrumTable regression_spectrum(const ModelParams& p, int n_cut,
                                  const std::vector<double>& omega_grid, double eta);
SpectrumTable regression_spectrum(const ModelParams& p, int n_cut,
                                  const std::vector<double>& omega_grid);

struct TruncationRow {
    int n_cut;
    Complex mean_b;
    double mean_n;
};

struct TruncationReport {
    std::vector<TruncationRow> rows;
    bool converged{false};
    int converged_at{-1};  // first n_cut whose predecessor step changed < 1e-8
};

TruncationReport truncation_convergence(const ModelParams& p,
                                        const std::vector<int>& n_cuts);

// Shared workspace: one Liouvillian build, one deflation, factorizations
// reused across steady-state and spectrum queries.
class Oracle {
  public:
    Oracle(const ModelParams& p, int n_cut, double eta);
    Oracle(const ModelParams& p, int n_cut);
    ~Oracle();
    Oracle(Oracle&&) noexcept;
    Oracle& operator=(Oracle&&) noexcept;

    int n_cut() const;
    const Eigen::MatrixXcd& hamiltonian() const;
    const Eigen::MatrixXcd& generator() const;
    const Eigen::MatrixXcd& steady_state();
    Complex mean_b();
    double mean_n();
    double spectrum_value(double omega);
    SpectrumTable spectrum(const std::vector<double>& omega_grid);

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace becspec::lindblad
