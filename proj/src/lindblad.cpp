// lindblad.cpp — master-equation oracle: Liouvillian assembly, trace-deflated
// steady state, and the regression spectrum via one reusable Schur factorization

#include "becspec/lindblad.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "becspec/errors.hpp"
#include "becspec/fock.hpp"
#include "becspec/linalg.hpp"

namespace becspec::lindblad {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_n_cut(int n_cut) {
    if (n_cut < 2) throw std::domain_error("lindblad: n_cut must be >= 2");
}

// tr(A^dag X) without forming the product.
Complex adjoint_trace(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& x) {
    return (a.conjugate().cwiseProduct(x)).sum();
}

} // namespace

Eigen::MatrixXcd effective_hamiltonian(const ModelParams& p, int n_cut, double eta) {
    require_n_cut(n_cut);
    const Eigen::MatrixXcd b = fock::annihilator(n_cut);
    const Eigen::MatrixXcd bd = b.adjoint();
    const double drive = std::sqrt(p.n_atoms) * p.g;
    Eigen::MatrixXcd h = p.delta * fock::number_operator(n_cut) + drive * (bd + b);
    if (eta != 0.0) {
        h -= (drive * eta * 0.5) * (bd * b * b + bd * bd * b);
    }
    return h;
}

Eigen::MatrixXcd effective_hamiltonian(const ModelParams& p, int n_cut) {
    return effective_hamiltonian(p, n_cut, derive_params(p).eta);
}

Eigen::MatrixXcd liouvillian(const ModelParams& p, int n_cut, double eta) {
    const Eigen::MatrixXcd h = effective_hamiltonian(p, n_cut, eta);
    const Eigen::MatrixXcd b = fock::annihilator(n_cut);
    const Eigen::MatrixXcd bd = b.adjoint();
    const Eigen::MatrixXcd nd = bd * b;
    const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(n_cut + 1, n_cut + 1);
    const double big_gamma = derive_params(p).big_gamma;

    using linalg::kron;
    Eigen::MatrixXcd l = -kI * (kron(eye, h) - kron(h.transpose(), eye));
    l += big_gamma * (2.0 * kron(bd.transpose(), b) - kron(eye, nd) - kron(nd.transpose(), eye));
    return l;
}

Eigen::MatrixXcd liouvillian(const ModelParams& p, int n_cut) {
    return liouvillian(p, n_cut, derive_params(p).eta);
}

std::complex<double> mean_amplitude(const Eigen::MatrixXcd& rho) {
    const int n_cut = static_cast<int>(rho.rows()) - 1;
    return (fock::annihilator(n_cut) * rho).trace();
}

double mean_occupation(const Eigen::MatrixXcd& rho) {
    const int n_cut = static_cast<int>(rho.rows()) - 1;
    return (fock::number_operator(n_cut) * rho).trace().real();
}

void validate_density(const Eigen::MatrixXcd& rho) {
    if (rho.rows() != rho.cols() || rho.rows() < 2) {
        throw SingularSolveError("density: expected a square matrix of dim >= 2");
    }
    const double trace_err = std::abs(rho.trace() - Complex(1.0, 0.0));
    if (trace_err > 1e-10) {
        throw SingularSolveError("density: trace deviates from 1 by " +
                                 std::to_string(trace_err));
    }
    const double herm_err = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    if (herm_err > 1e-10) {
        throw SingularSolveError("density: non-Hermitian by " + std::to_string(herm_err));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (rho + rho.adjoint()),
                                                       Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() < -1e-8) {
        throw SingularSolveError("density: negative eigenvalue (under-truncated solve?)");
    }
}

int default_truncation(const ModelParams& p) {
    const SteadyState ss = solve_deformed_steady_state(p);
    const double n_mean = std::norm(ss.beta);
    const double cand = std::ceil(n_mean + 8.0 * std::sqrt(n_mean + 1.0) + 10.0);
    const double cap = std::floor(p.n_atoms + 1.0);
    return std::max(2, static_cast<int>(std::min(cand, cap)));
}

// ---------------------------------------------------------------------------
// Oracle workspace
// ---------------------------------------------------------------------------

struct Oracle::Impl {
    ModelParams params;
    int n_cut;
    double eta;
    int dim;        // Fock dimension n_cut + 1
    int super_dim;  // dim^2

    Eigen::MatrixXcd h;
    Eigen::MatrixXcd gen;       // Liouvillian, super_dim x super_dim
    Eigen::MatrixXcd b;
    Eigen::VectorXcd reflector; // scaled Householder vector; Q = I - reflector reflector^T
    Eigen::MatrixXcd defl;      // trace-deflated block, (super_dim-1)^2
    Eigen::VectorXcd coupling;  // first column of Q L Q below the diagonal

    std::optional<Eigen::PartialPivLU<Eigen::MatrixXcd>> lu;
    std::optional<Eigen::ComplexSchur<Eigen::MatrixXcd>> schur;
    std::optional<Eigen::VectorXcd> spectrum_rhs;  // -U^H (Q source)[1:]
    std::optional<Eigen::MatrixXcd> rho;
    std::optional<Eigen::VectorXcd> fluct_source;  // vec((b - <b>) rho_ss)

    Impl(const ModelParams& p, int nc, double eta_)
        : params(p), n_cut(nc), eta(eta_), dim(nc + 1), super_dim((nc + 1) * (nc + 1)) {
        require_n_cut(nc);

        // Stability gate from the semiclassical module (the oracle assumes a
        // relaxing generator).
        const SteadyState ss = solve_deformed_steady_state(p, eta, 1e-12, 50);
        if (!ss.stable) {
            throw UnstableSteadyStateError(
                "lindblad: semiclassical steady state unstable; oracle not applicable");
        }

        h = effective_hamiltonian(p, nc, eta);
        gen = liouvillian(p, nc, eta);
        b = fock::annihilator(nc);

        // Householder reflection Q (real, symmetric, involutive) sending e1 to
        // t_hat = vec(I)/sqrt(dim). Trace preservation zeroes the first row of
        // Q L Q, so the lower-right block carries exactly the decaying modes
        // and stays nonsingular for every shift i*omega, including omega = 0.
        Eigen::VectorXd t_hat = Eigen::VectorXd::Zero(super_dim);
        for (int k = 0; k < dim; ++k) t_hat(k * dim + k) = 1.0 / std::sqrt(double(dim));
        Eigen::VectorXd u = t_hat;
        u(0) -= 1.0;
        reflector = (u * std::sqrt(2.0 / u.squaredNorm())).cast<Complex>();

        // Q L Q via rank-1 updates.
        const Eigen::RowVectorXcd ut_l = reflector.transpose() * gen;
        const Eigen::VectorXcd l_u = gen * reflector;
        const Complex ut_l_u = ut_l * reflector;
        Eigen::MatrixXcd m = gen;
        m.noalias() -= reflector * ut_l;
        m.noalias() -= l_u * reflector.transpose();
        m.noalias() += ut_l_u * (reflector * reflector.transpose());

        defl = m.bottomRightCorner(super_dim - 1, super_dim - 1);
        coupling = m.block(1, 0, super_dim - 1, 1);
    }

    // Q v = v - reflector (reflector^T v); Q^H = Q (real symmetric).
    Eigen::VectorXcd apply_q(const Eigen::VectorXcd& v) const {
        return v - reflector * (reflector.transpose() * v);
    }

    const Eigen::PartialPivLU<Eigen::MatrixXcd>& lu_factor() {
        if (!lu) lu.emplace(defl);
        return *lu;
    }

    const Eigen::ComplexSchur<Eigen::MatrixXcd>& schur_factor() {
        if (!schur) {
            schur.emplace(defl, /*computeU=*/true);
            if (schur->info() != Eigen::Success) {
                throw SingularSolveError("lindblad: Schur factorization failed");
            }
        }
        return *schur;
    }

    const Eigen::MatrixXcd& steady() {
        if (rho) return *rho;
        const double root_dim = std::sqrt(static_cast<double>(dim));
        const Eigen::VectorXcd x_defl = lu_factor().solve(-coupling / root_dim);

        Eigen::VectorXcd full(super_dim);
        full(0) = 1.0 / root_dim;
        full.tail(super_dim - 1) = x_defl;
        const Eigen::VectorXcd rho_vec = apply_q(full);

        const double residual = (gen * rho_vec).norm();
        if (!std::isfinite(residual) || residual > 1e-9) {
            throw SingularSolveError(
                "lindblad: steady-state residual " + std::to_string(residual) +
                " exceeds 1e-9 (degenerate null space or under-truncation)");
        }
        Eigen::MatrixXcd r = linalg::unvec(rho_vec, dim);
        validate_density(r);
        rho = 0.5 * (r + r.adjoint());
        return *rho;
    }

    const Eigen::VectorXcd& source() {
        if (!fluct_source) {
            const Eigen::MatrixXcd& r = steady();
            const Complex beta_mean = (b * r).trace();
            const Eigen::MatrixXcd x0 =
                (b - beta_mean * Eigen::MatrixXcd::Identity(dim, dim)) * r;
            fluct_source = linalg::vec(x0);
        }
        return *fluct_source;
    }

    // Solve (T + i w) x = rhs by back substitution, T upper triangular.
    Eigen::VectorXcd shifted_solve(const Eigen::MatrixXcd& t, double omega,
                                   const Eigen::VectorXcd& rhs) const {
        const Eigen::Index n = t.rows();
        const double floor_mag =
            1e-12 * std::max(1.0, t.diagonal().cwiseAbs().maxCoeff() + std::abs(omega));
        Eigen::VectorXcd x(n);
        const Complex shift(0.0, omega);
        for (Eigen::Index i = n - 1; i >= 0; --i) {
            Complex acc = rhs(i);
            if (i + 1 < n) acc -= (t.row(i).segment(i + 1, n - 1 - i) * x.segment(i + 1, n - 1 - i))(0);
            const Complex diag = t(i, i) + shift;
            if (std::abs(diag) < floor_mag) {
                throw SingularSolveError(
                    "lindblad: resolvent ill-conditioned at omega=" + std::to_string(omega));
            }
            x(i) = acc / diag;
        }
        return x;
    }

    double spectrum_point(double omega) {
        const auto& sch = schur_factor();
        if (!spectrum_rhs) {
            const Eigen::VectorXcd y = apply_q(source());
            spectrum_rhs = -sch.matrixU().adjoint() * y.tail(super_dim - 1);
        }
        const Eigen::VectorXcd w = shifted_solve(sch.matrixT(), omega, *spectrum_rhs);

        Eigen::VectorXcd full(super_dim);
        full(0) = 0.0;  // solution is traceless
        full.tail(super_dim - 1) = sch.matrixU() * w;
        const Eigen::MatrixXcd x = linalg::unvec(apply_q(full), dim);
        return adjoint_trace(b, x).real() / std::numbers::pi;
    }
};

Oracle::Oracle(const ModelParams& p, int n_cut, double eta)
    : impl_(std::make_unique<Impl>(p, n_cut, eta)) {}

Oracle::Oracle(const ModelParams& p, int n_cut)
    : Oracle(p, n_cut, derive_params(p).eta) {}

Oracle::~Oracle() = default;
Oracle::Oracle(Oracle&&) noexcept = default;
Oracle& Oracle::operator=(Oracle&&) noexcept = default;

int Oracle::n_cut() const { return impl_->n_cut; }
const Eigen::MatrixXcd& Oracle::hamiltonian() const { return impl_->h; }
const Eigen::MatrixXcd& Oracle::generator() const { return impl_->gen; }
const Eigen::MatrixXcd& Oracle::steady_state() { return impl_->steady(); }
Complex Oracle::mean_b() { return mean_amplitude(impl_->steady()); }
double Oracle::mean_n() { return mean_occupation(impl_->steady()); }
double Oracle::spectrum_value(double omega) { return impl_->spectrum_point(omega); }

SpectrumTable Oracle::spectrum(const std::vector<double>& omega_grid) {
    SpectrumTable table;
    table.variant = SpectrumVariant::oracle;
    table.omega_grid = omega_grid;
    table.values.reserve(omega_grid.size());
    for (double w : omega_grid) table.values.push_back(impl_->spectrum_point(w));
    return table;
}

// ---------------------------------------------------------------------------
// Free-function wrappers
// ---------------------------------------------------------------------------

Eigen::MatrixXcd steady_density(const ModelParams& p, int n_cut, double eta) {
    Oracle oracle(p, n_cut, eta);
    return oracle.steady_state();
}

Eigen::MatrixXcd steady_density(const ModelParams& p, int n_cut) {
    return steady_density(p, n_cut, derive_params(p).eta);
}

SpectrumTable regression_spectrum(const ModelParams& p, int n_cut,
                                  const std::vector<double>& omega_grid, double eta) {
    Oracle oracle(p, n_cut, eta);
    return oracle.spectrum(omega_grid);
}

SpectrumTable regression_spectrum(const ModelParams& p, int n_cut,
                                  const std::vector<double>& omega_grid) {
    return regression_spectrum(p, n_cut, omega_grid, derive_params(p).eta);
}

TruncationReport truncation_convergence(const ModelParams& p,
                                        const std::vector<int>& n_cuts) {
    if (n_cuts.size() < 2) {
        throw std::domain_error("truncation_convergence: need at least 2 truncations");
    }
    TruncationReport report;
    report.rows.reserve(n_cuts.size());
    for (int nc : n_cuts) {
        Oracle oracle(p, nc);
        report.rows.push_back({nc, oracle.mean_b(), oracle.mean_n()});
    }
    for (std::size_t i = 1; i < report.rows.size(); ++i) {
        const double diff =
            std::max(std::abs(report.rows[i].mean_b - report.rows[i - 1].mean_b),
                     std::abs(report.rows[i].mean_n - report.rows[i - 1].mean_n));
        if (diff < 1e-8) {
            report.converged = true;
            report.converged_at = report.rows[i].n_cut;
            break;
        }
    }
    return report;
}

} // namespace becspec::lindblad
