// fluctuations.cpp — linearization coefficients, drift eigenvalues, Xi, spectrum variants

#include "becspec/fluctuations.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "becspec/errors.hpp"

namespace becspec {

namespace {
constexpr Complex kI{0.0, 1.0};
}

FluctuationCoeffs fluctuation_coeffs(const ModelParams& p, Complex beta, double eta) {
    const DerivedParams d = derive_params(p);
    const double coupling = std::sqrt(p.n_atoms) * p.g * eta;  // = g/sqrt(N) at eta=1/N
    FluctuationCoeffs c;
    c.a_coef = -kI * p.delta - d.big_gamma + kI * coupling * (beta + std::conj(beta));
    c.b_coef = kI * coupling * beta;
    return c;
}

FluctuationCoeffs fluctuation_coeffs(const ModelParams& p, Complex beta) {
    return fluctuation_coeffs(p, beta, derive_params(p).eta);
}

std::pair<Complex, Complex> drift_eigenvalues(const FluctuationCoeffs& c) {
    const double re_a = c.a_coef.real();
    const double im_a = c.a_coef.imag();
    const double disc = std::norm(c.b_coef) - im_a * im_a;
    const Complex root = std::sqrt(Complex(disc, 0.0));
    return {re_a + root, re_a - root};
}

Complex xi(const FluctuationCoeffs& c, double omega) {
    const double re_part = std::norm(c.a_coef) - std::norm(c.b_coef) - omega * omega;
    const double im_part = -omega * 2.0 * c.a_coef.real();  // -i w (A + A*)
    return Complex(re_part, im_part);
}

const char* to_string(SpectrumVariant v) {
    switch (v) {
        case SpectrumVariant::paper: return "paper";
        case SpectrumVariant::physical: return "physical";
        case SpectrumVariant::oracle: return "oracle";
    }
    return "paper";
}

SpectrumVariant spectrum_variant_from_string(const std::string& s) {
    if (s == "paper") return SpectrumVariant::paper;
    if (s == "physical") return SpectrumVariant::physical;
    throw std::domain_error("unknown spectrum variant: " + s);
}

double spectrum_value(const FluctuationCoeffs& c, double big_gamma, double omega,
                      SpectrumVariant variant) {
    const double numerator = std::norm(c.b_coef);
    const double denominator = std::norm(xi(c, omega));
    const double s = numerator / denominator;
    return variant == SpectrumVariant::physical ? 2.0 * big_gamma * s : s;
}

double spectrum_at(const ModelParams& p, double omega, SpectrumVariant variant) {
    const SteadyState ss = solve_deformed_steady_state(p);
    if (!ss.stable) {
        throw UnstableSteadyStateError(
            "spectrum_at: steady state is linearly unstable at these parameters");
    }
    const FluctuationCoeffs c = fluctuation_coeffs(p, ss.beta);
    return spectrum_value(c, derive_params(p).big_gamma, omega, variant);
}

SpectrumTable spectrum_table(const ModelParams& p, const std::vector<double>& omega_grid,
                             SpectrumVariant variant) {
    const SteadyState ss = solve_deformed_steady_state(p);
    if (!ss.stable) {
        throw UnstableSteadyStateError(
            "spectrum_table: steady state is linearly unstable at these parameters");
    }
    const FluctuationCoeffs c = fluctuation_coeffs(p, ss.beta);
    const double big_gamma = derive_params(p).big_gamma;

    SpectrumTable table;
    table.variant = variant;
    table.omega_grid = omega_grid;
    table.values.reserve(omega_grid.size());
    for (double w : omega_grid) {
        table.values.push_back(spectrum_value(c, big_gamma, w, variant));
    }
    return table;
}

StationaryMoments stationary_moments(const FluctuationCoeffs& c, double big_gamma) {
    // v = (db, db^dag), dv/dt = M v + noise with vacuum statistics; the
    // second-moment matrix V_ij = <v_i v_j> obeys M V + V M^T + N = 0 with
    // N = [[0, 2 Gamma], [0, 0]]. Solved via vec(V): (I kron M + M kron I) v = -vec(N).
    const Complex a = c.a_coef;
    const Complex b = c.b_coef;
    Eigen::Matrix2cd m;
    m << a, b, std::conj(b), std::conj(a);

    Eigen::Matrix2cd noise = Eigen::Matrix2cd::Zero();
    noise(0, 1) = 2.0 * big_gamma;

    Eigen::Matrix4cd lhs = Eigen::Matrix4cd::Zero();
    const Eigen::Matrix2cd eye = Eigen::Matrix2cd::Identity();
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            lhs.block<2, 2>(2 * i, 2 * j) += m(i, j) * eye;       // M kron I (col-major vec)
            lhs.block<2, 2>(2 * i, 2 * j) += eye(i, j) * m;       // I kron M
        }
    }
    // Column-major vec of V and N.
    Eigen::Vector4cd rhs;
    rhs << -noise(0, 0), -noise(1, 0), -noise(0, 1), -noise(1, 1);
    const Eigen::Vector4cd v = lhs.partialPivLu().solve(rhs);

    StationaryMoments out;
    out.squeeze = v(0);          // V11 = <db db>
    out.occupation = v(1).real();  // V21 = <db^dag db>
    return out;
}

} // namespace becspec
