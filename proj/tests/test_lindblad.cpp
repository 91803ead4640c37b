// test_lindblad.cpp — Hamiltonian identities, Liouvillian structure, steady state,
// regression spectrum, truncation diagnostics

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "becspec/errors.hpp"
#include "becspec/fock.hpp"
#include "becspec/fluctuations.hpp"
#include "becspec/linalg.hpp"
#include "becspec/lindblad.hpp"
#include "becspec/steady_state.hpp"
#include "oracles.hpp"

using namespace becspec;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

namespace {

constexpr Complex kI{0.0, 1.0};

// Direct matrix action of the generator, bypassing the vectorized build.
MatrixXcd generator_action(const ModelParams& p, double eta, const MatrixXcd& rho) {
    const int n_cut = static_cast<int>(rho.rows()) - 1;
    const MatrixXcd h = lindblad::effective_hamiltonian(p, n_cut, eta);
    const MatrixXcd b = fock::annihilator(n_cut);
    const MatrixXcd bd = b.adjoint();
    const MatrixXcd nd = bd * b;
    const double gamma_big = derive_params(p).big_gamma;
    return -kI * (h * rho - rho * h) +
           gamma_big * (2.0 * b * rho * bd - nd * rho - rho * nd);
}

// Right-hand side of the mean-field equation with unfactorized expectations.
Complex drift_expectation(const ModelParams& p, double eta, const MatrixXcd& rho) {
    const int n_cut = static_cast<int>(rho.rows()) - 1;
    const MatrixXcd b = fock::annihilator(n_cut);
    const double root_n = std::sqrt(p.n_atoms);
    const Complex b_mean = (b * rho).trace();
    const Complex b2_mean = (b * b * rho).trace();
    const Complex n_mean = (b.adjoint() * b * rho).trace();
    return kI * (root_n * p.g * eta / 2.0) * (b2_mean + 2.0 * n_mean) -
           kI * p.delta * b_mean - kI * p.g * root_n - derive_params(p).big_gamma * b_mean;
}

} // namespace

TEST_CASE("effective Hamiltonian") {
    SUBCASE("undriven limit is the bare number operator") {
        const ModelParams p(1.7, 0.0, 1.0, 25.0);
        const MatrixXcd h = lindblad::effective_hamiltonian(p, 6);
        MatrixXcd expected = 1.7 * fock::number_operator(6);
        CHECK((h - expected).cwiseAbs().maxCoeff() < 1e-14);
    }

    SUBCASE("hermitian for random parameters") {
        std::mt19937 rng(3);
        for (int i = 0; i < 10; ++i) {
            const auto rp = oracles::sample_params(rng);
            const ModelParams p(rp.delta, rp.g, 1.0, rp.n);
            const MatrixXcd h = lindblad::effective_hamiltonian(p, 14);
            CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
        }
    }

    SUBCASE("commutators that fix the mean-field drift") {
        // [b, b^dag b^2] = b^2 and [b, b^dag^2 b] = 2 b^dag b away from the boundary.
        const int n_cut = 14;
        const MatrixXcd b = fock::annihilator(n_cut);
        const MatrixXcd bd = b.adjoint();
        const MatrixXcd c1 = b * (bd * b * b) - (bd * b * b) * b - b * b;
        const MatrixXcd c2 = b * (bd * bd * b) - (bd * bd * b) * b - 2.0 * bd * b;
        CHECK(c1.topLeftCorner(n_cut - 2, n_cut - 2).cwiseAbs().maxCoeff() < 1e-13);
        CHECK(c2.topLeftCorner(n_cut - 2, n_cut - 2).cwiseAbs().maxCoeff() < 1e-13);
    }

    SUBCASE("coherent-state Ehrenfest drift at n_cut = 40") {
        const ModelParams p(0.4, 0.5, 1.0, 25.0);
        const double eta = derive_params(p).eta;
        const int n_cut = 40;
        const Complex alpha(0.53, -0.41);
        const VectorXcd psi = oracles::coherent_state(n_cut, alpha);
        const MatrixXcd rho = psi * psi.adjoint();

        const MatrixXcd b = fock::annihilator(n_cut);
        const Complex from_generator = (b * generator_action(p, eta, rho)).trace();
        // Coherent states factorize: <b^2> = alpha^2, <b^dag b> = |alpha|^2.
        const double root_n = std::sqrt(p.n_atoms);
        const Complex expected = kI * (root_n * p.g * eta / 2.0) *
                                     (alpha * alpha + 2.0 * std::norm(alpha)) -
                                 kI * p.delta * alpha - kI * p.g * root_n -
                                 derive_params(p).big_gamma * alpha;
        CHECK(std::abs(from_generator - expected) < 1e-10);
    }

    SUBCASE("truncation guard") {
        const ModelParams p(0.0, 1.0, 1.0, 25.0);
        CHECK_THROWS_AS((void)lindblad::effective_hamiltonian(p, 1), std::domain_error);
    }
}

TEST_CASE("vectorized Liouvillian") {
    const ModelParams p(0.8, 0.9, 1.0, 36.0);
    const double eta = derive_params(p).eta;
    const int n_cut = 9;
    const MatrixXcd l = lindblad::liouvillian(p, n_cut);
    const int dim = n_cut + 1;

    SUBCASE("matches the direct matrix action") {
        std::mt19937 rng(41);
        for (int i = 0; i < 5; ++i) {
            const MatrixXcd rho = oracles::random_density(n_cut, dim, rng);
            const MatrixXcd via_kron = linalg::unvec(VectorXcd(l * linalg::vec(rho)), dim);
            const MatrixXcd direct = generator_action(p, eta, rho);
            CHECK((via_kron - direct).cwiseAbs().maxCoeff() < 1e-12);
        }
    }

    SUBCASE("preserves the trace") {
        VectorXcd trace_vec = VectorXcd::Zero(dim * dim);
        for (int k = 0; k < dim; ++k) trace_vec(k * dim + k) = 1.0;
        const VectorXcd left = l.transpose() * trace_vec;
        CHECK(left.cwiseAbs().maxCoeff() < 1e-12 * l.cwiseAbs().maxCoeff());
    }

    SUBCASE("vacuum is stationary without drive") {
        const ModelParams p0(0.8, 0.0, 1.0, 36.0);
        const MatrixXcd l0 = lindblad::liouvillian(p0, 5);
        MatrixXcd vacuum = MatrixXcd::Zero(6, 6);
        vacuum(0, 0) = 1.0;
        CHECK((l0 * linalg::vec(vacuum)).cwiseAbs().maxCoeff() < 1e-14);
    }

    SUBCASE("Ehrenfest identity on interior-supported random states") {
        // Exact algebraic identity when the state cannot feel the truncation.
        std::mt19937 rng(43);
        const int big_cut = 12;
        const MatrixXcd l_big = lindblad::liouvillian(p, big_cut);
        const MatrixXcd b = fock::annihilator(big_cut);
        for (int i = 0; i < 8; ++i) {
            const MatrixXcd rho = oracles::random_density(big_cut, 10, rng);
            const VectorXcd drho = l_big * linalg::vec(rho);
            const Complex lhs = (b * linalg::unvec(drho, big_cut + 1)).trace();
            const Complex rhs = drift_expectation(p, eta, rho);
            CHECK(std::abs(lhs - rhs) < 1e-10);
        }
    }
}

TEST_CASE("steady density matrix") {
    SUBCASE("vacuum without drive") {
        const ModelParams p(1.0, 0.0, 1.0, 25.0);
        const MatrixXcd rho = lindblad::steady_density(p, 8);
        CHECK(std::abs(rho(0, 0) - 1.0) < 1e-12);
        CHECK(rho.cwiseAbs().sum() == doctest::Approx(1.0).epsilon(1e-10));
    }

    SUBCASE("eta = 0 gives the exact coherent state") {
        const ModelParams p(0.0, 0.5, 1.0, 25.0);
        const MatrixXcd rho = lindblad::steady_density(p, 15, 0.0);
        const Complex expected(0.0, -0.5);  // beta_inf = -i g sqrt(N) / Gamma
        CHECK(std::abs(lindblad::mean_amplitude(rho) - expected) < 1e-6);

        const VectorXcd alpha_state = oracles::coherent_state(15, expected);
        const double fidelity = (alpha_state.adjoint() * rho * alpha_state)(0).real();
        CHECK(fidelity == doctest::Approx(1.0).epsilon(1e-8));
    }

    SUBCASE("deformed amplitude lands near the semiclassical branch") {
        const ModelParams p(0.0, 0.5, 1.0, 25.0);
        const MatrixXcd rho = lindblad::steady_density(p, 15);
        const Complex b_mean = lindblad::mean_amplitude(rho);
        const double y = oracles::delta0_branch_y(25.0, 0.5);  // -0.497524691...
        CHECK(std::abs(b_mean - Complex(0.0, y)) / std::abs(y) < 0.05);
        CHECK(std::abs(b_mean.real()) < 1e-8);
    }

    SUBCASE("state invariants hold and the density validates") {
        const ModelParams p(0.3, 0.6, 1.0, 49.0);
        const MatrixXcd rho = lindblad::steady_density(p, 14);
        CHECK_NOTHROW(lindblad::validate_density(rho));
        CHECK(std::abs(rho.trace() - Complex(1.0, 0.0)) < 1e-12);
        // adjoint pairing of means
        const MatrixXcd bd = fock::creator(14);
        CHECK(std::abs((bd * rho).trace() - std::conj(lindblad::mean_amplitude(rho))) <
              1e-13);
    }

    SUBCASE("validate_density rejects tampered states") {
        MatrixXcd bad = MatrixXcd::Zero(4, 4);
        bad(0, 0) = 1.2;  // trace off
        CHECK_THROWS_AS(lindblad::validate_density(bad), SingularSolveError);
        bad(0, 0) = 1.0;
        bad(0, 1) = 0.5;  // not Hermitian
        CHECK_THROWS_AS(lindblad::validate_density(bad), SingularSolveError);
        MatrixXcd indefinite = MatrixXcd::Zero(4, 4);
        indefinite(0, 0) = 1.5;
        indefinite(1, 1) = -0.5;  // negative eigenvalue
        CHECK_THROWS_AS(lindblad::validate_density(indefinite), SingularSolveError);
    }

    SUBCASE("unstable regime is refused up front") {
        CHECK_THROWS_AS(lindblad::Oracle(ModelParams(0.0, 10.0, 1.0, 4.0), 10),
                        UnstableSteadyStateError);
    }
}

TEST_CASE("mean amplitude") {
    SUBCASE("vacuum") {
        MatrixXcd vac = MatrixXcd::Zero(6, 6);
        vac(0, 0) = 1.0;
        CHECK(std::abs(lindblad::mean_amplitude(vac)) == 0.0);
    }
    SUBCASE("coherent state") {
        const Complex alpha(0.4, 0.3);
        const VectorXcd psi = oracles::coherent_state(25, alpha);
        const MatrixXcd rho = psi * psi.adjoint();
        CHECK(std::abs(lindblad::mean_amplitude(rho) - alpha) < 1e-10);
        CHECK(lindblad::mean_occupation(rho) == doctest::Approx(std::norm(alpha)).epsilon(1e-10));
    }
}

TEST_CASE("regression spectrum") {
    const ModelParams p(0.0, 0.5, 1.0, 25.0);
    std::vector<double> grid;
    for (int i = -12; i <= 12; ++i) grid.push_back(0.5 * i);

    SUBCASE("linear limit is zero everywhere") {
        const auto table = lindblad::regression_spectrum(p, 15, grid, 0.0);
        for (double v : table.values) CHECK(std::abs(v) < 1e-10);
    }

    SUBCASE("deformed case peaks at zero frequency with even parity") {
        const auto table = lindblad::regression_spectrum(p, 15, grid);
        const std::size_t m = table.values.size();
        std::size_t argmax = 0;
        for (std::size_t i = 1; i < m; ++i) {
            if (table.values[i] > table.values[argmax]) argmax = i;
        }
        CHECK(table.omega_grid[argmax] == 0.0);
        CHECK(table.variant == SpectrumVariant::oracle);
        for (std::size_t i = 0; i < m; ++i) {
            CHECK(table.values[i] > -1e-10);
            const double mirror = table.values[m - 1 - i];
            CHECK(table.values[i] == doctest::Approx(mirror).epsilon(1e-8));
        }
    }

    SUBCASE("matches an independent dense resolvent solve") {
        const int n_cut = 12;
        const int dim = n_cut + 1;
        lindblad::Oracle oracle(p, n_cut);

        const MatrixXcd l = lindblad::liouvillian(p, n_cut);
        const MatrixXcd rho = lindblad::steady_density(p, n_cut);
        const MatrixXcd b = fock::annihilator(n_cut);
        const Complex b_mean = (b * rho).trace();
        const MatrixXcd x0 = (b - b_mean * MatrixXcd::Identity(dim, dim)) * rho;

        VectorXcd trace_vec = VectorXcd::Zero(dim * dim);
        for (int k = 0; k < dim; ++k) trace_vec(k * dim + k) = 1.0;

        for (double w : {0.0, 0.5, -1.5, 3.0}) {
            // bordered least-squares [L + iw; tr] x = [-x0; 0]
            MatrixXcd bordered(dim * dim + 1, dim * dim);
            bordered.topRows(dim * dim) =
                l + Complex(0.0, w) * MatrixXcd::Identity(dim * dim, dim * dim);
            bordered.bottomRows(1) = trace_vec.transpose();
            VectorXcd rhs = VectorXcd::Zero(dim * dim + 1);
            rhs.head(dim * dim) = -linalg::vec(x0);
            const VectorXcd x = bordered.colPivHouseholderQr().solve(rhs);
            const double s_ref =
                (b.conjugate().cwiseProduct(linalg::unvec(x, dim))).sum().real() /
                std::numbers::pi;
            CHECK(oracle.spectrum_value(w) == doctest::Approx(s_ref).epsilon(1e-8));
        }
    }
}

TEST_CASE("truncation diagnostics") {
    SUBCASE("undriven case converges immediately") {
        const ModelParams p(0.5, 0.0, 1.0, 25.0);
        const auto report = lindblad::truncation_convergence(p, {4, 6, 8});
        CHECK(report.converged);
        CHECK(report.converged_at == 6);
        for (const auto& row : report.rows) CHECK(std::abs(row.mean_b) < 1e-12);
    }

    SUBCASE("weak drive converges by n_cut = 15 with a shrinking tail") {
        const ModelParams p(0.0, 0.5, 1.0, 25.0);
        const auto report = lindblad::truncation_convergence(p, {8, 12, 15, 20});
        CHECK(report.converged);
        CHECK(report.converged_at <= 15);
        const double d1 = std::abs(report.rows[1].mean_b - report.rows[0].mean_b);
        const double d2 = std::abs(report.rows[2].mean_b - report.rows[1].mean_b);
        const double d3 = std::abs(report.rows[3].mean_b - report.rows[2].mean_b);
        CHECK(d2 < d1);
        CHECK(d3 < d2);
    }

    SUBCASE("needs at least two truncations") {
        const ModelParams p(0.0, 0.5, 1.0, 25.0);
        CHECK_THROWS_AS((void)lindblad::truncation_convergence(p, {10}), std::domain_error);
    }

    SUBCASE("default truncation for the weak-drive oracle point") {
        CHECK(lindblad::default_truncation(ModelParams(0.0, 0.5, 1.0, 25.0)) == 20);
    }
}
