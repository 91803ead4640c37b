// test_fock.cpp — ladder operators, deformation function, commutator identities

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "becspec/fock.hpp"
#include "oracles.hpp"

using namespace becspec;
using Eigen::MatrixXcd;

TEST_CASE("annihilator ladder elements") {
    const MatrixXcd b1 = fock::annihilator(1);
    CHECK(b1.rows() == 2);
    CHECK(b1(0, 1).real() == doctest::Approx(1.0));
    CHECK(std::abs(b1(1, 0)) == 0.0);
    CHECK(std::abs(b1(0, 0)) == 0.0);

    const MatrixXcd b = fock::annihilator(5);
    CHECK(b(2, 3).real() == doctest::Approx(std::sqrt(3.0)));

    // number operator diagonal 0..n_cut
    const MatrixXcd nd = fock::creator(5) * b;
    for (int n = 0; n <= 4; ++n) CHECK(nd(n, n).real() == doctest::Approx(double(n)));
    CHECK((nd - fock::number_operator(5)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("truncated [b, b\\dag] has the classic defect only at the top level") {
    const int n_cut = 7;
    const MatrixXcd b = fock::annihilator(n_cut);
    const MatrixXcd comm = b * b.adjoint() - b.adjoint() * b;
    for (int n = 0; n < n_cut; ++n) CHECK(comm(n, n).real() == doctest::Approx(1.0));
    CHECK(comm(n_cut, n_cut).real() == doctest::Approx(-double(n_cut)));
    // off-diagonals vanish
    MatrixXcd off = comm;
    off.diagonal().setZero();
    CHECK(off.cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("deformation function values and domain") {
    CHECK(fock::deformation_function(1, 0.3) == doctest::Approx(1.0));
    CHECK(fock::deformation_function(1, 0.0) == doctest::Approx(1.0));
    CHECK(fock::deformation_function(3, 0.1) == doctest::Approx(std::sqrt(0.8)).epsilon(1e-12));
    // closure at n = N + 1
    CHECK(std::abs(fock::deformation_function(11, 0.1)) < 1e-7);
    CHECK_THROWS_AS((void)fock::deformation_function(13, 0.1), std::domain_error);
}

TEST_CASE("deformed annihilator matrix elements") {
    SUBCASE("eta = 0 reduces to the bare operator") {
        const MatrixXcd plain = fock::annihilator(12);
        const MatrixXcd ex = fock::deformed_annihilator(12, 0.0, fock::DeformationOrder::exact);
        const MatrixXcd fo = fock::deformed_annihilator(12, 0.0, fock::DeformationOrder::first);
        CHECK((ex - plain).cwiseAbs().maxCoeff() == 0.0);
        CHECK((fo - plain).cwiseAbs().maxCoeff() == 0.0);
    }

    SUBCASE("closure element vanishes at eta = 1/N") {
        const int n_phys = 10;
        const MatrixXcd ex =
            fock::deformed_annihilator(n_phys + 1, 1.0 / n_phys, fock::DeformationOrder::exact);
        CHECK(std::abs(ex(n_phys, n_phys + 1)) < 1e-7);
    }

    SUBCASE("domain error above closure") {
        CHECK_THROWS_AS(
            (void)fock::deformed_annihilator(13, 0.1, fock::DeformationOrder::exact),
            std::domain_error);
    }

    SUBCASE("element-wise Lagrange sandwich for the first-order error") {
        // e(x) = sqrt(1-x) - 1 + x/2 obeys x^2/8 <= |e| <= (x^2/8)(1-x)^{-3/2}.
        const int n_cut = 15;
        const double eta = 0.03;
        const MatrixXcd ex = fock::deformed_annihilator(n_cut, eta, fock::DeformationOrder::exact);
        const MatrixXcd fo = fock::deformed_annihilator(n_cut, eta, fock::DeformationOrder::first);
        for (int n = 2; n <= n_cut; ++n) {  // n=1 has x=0, error exactly 0
            const double x = eta * (n - 1);
            const double err = std::abs(ex(n - 1, n) - fo(n - 1, n));
            const double lo = std::sqrt(double(n)) * x * x / 8.0;
            const double hi = lo * std::pow(1.0 - x, -1.5);
            CHECK(err >= lo * (1.0 - 1e-9));
            CHECK(err <= hi * (1.0 + 1e-9));
        }
    }

    SUBCASE("order of accuracy: halving eta quarters the max error") {
        const int n_cut = 20;
        const double eta = 0.002;
        const auto max_err = [&](double e) {
            const MatrixXcd ex = fock::deformed_annihilator(n_cut, e, fock::DeformationOrder::exact);
            const MatrixXcd fo = fock::deformed_annihilator(n_cut, e, fock::DeformationOrder::first);
            return (ex - fo).cwiseAbs().maxCoeff();
        };
        const double ratio = max_err(eta) / max_err(eta / 2.0);
        CHECK(ratio == doctest::Approx(4.0).epsilon(0.025));
    }
}

TEST_CASE("hermiticity pairing of creator and annihilator") {
    for (auto order : {fock::DeformationOrder::exact, fock::DeformationOrder::first}) {
        const MatrixXcd b = fock::deformed_annihilator(9, 0.05, order);
        const MatrixXcd bd = fock::deformed_creator(9, 0.05, order);
        CHECK((bd - b.adjoint()).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("commutator defect table") {
    SUBCASE("closed-form diagonal at n_cut=5, eta=0.01") {
        const auto rows = fock::commutator_defect(5, 0.01);
        REQUIRE(rows.size() == 6);
        for (int n = 0; n <= 3; ++n) {
            CHECK(rows[n].commutator_diag == doctest::Approx(1.0 - 0.02 * n).epsilon(1e-13));
            CHECK(std::abs(rows[n].defect) < 1e-13);
            CHECK_FALSE(rows[n].boundary);
        }
        CHECK(rows[4].boundary);
        CHECK(rows[5].boundary);
    }

    SUBCASE("eta = 0 keeps interior defects at zero") {
        for (const auto& row : fock::commutator_defect(12, 0.0)) {
            if (!row.boundary) CHECK(std::abs(row.defect) < 1e-14);
        }
    }

    SUBCASE("off-diagonal entries of the commutator vanish") {
        const MatrixXcd b = fock::deformed_annihilator(8, 0.05, fock::DeformationOrder::exact);
        MatrixXcd comm = b * b.adjoint() - b.adjoint() * b;
        comm.diagonal().setZero();
        CHECK(comm.cwiseAbs().maxCoeff() < 1e-14);
    }

    SUBCASE("interior exactness over random truncations and deformations") {
        std::mt19937 rng(20240811);
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        for (int trial = 0; trial < 50; ++trial) {
            const double eta = 0.002 + 0.498 * u01(rng);
            const int cap = static_cast<int>(std::floor(1.0 / eta + 1.0));
            const int hi = std::min(200, cap);
            const int n_cut = 2 + static_cast<int>(u01(rng) * (hi - 2 + 1));
            for (const auto& row : fock::commutator_defect(std::min(n_cut, hi), eta)) {
                if (!row.boundary) CHECK(std::abs(row.defect) < 1e-13);
            }
        }
    }
}
