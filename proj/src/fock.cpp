// fock.cpp — truncated Fock-space operators, undeformed and deformed

#include "becspec/fock.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace becspec::fock {

namespace {

void require_n_cut(int n_cut, int min_val) {
    if (n_cut < min_val) {
        throw std::domain_error("fock: n_cut must be >= " + std::to_string(min_val) +
                                ", got " + std::to_string(n_cut));
    }
}

} // namespace

Eigen::MatrixXcd annihilator(int n_cut) {
    require_n_cut(n_cut, 1);
    Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(n_cut + 1, n_cut + 1);
    for (int n = 1; n <= n_cut; ++n) {
        b(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return b;
}

Eigen::MatrixXcd creator(int n_cut) { return annihilator(n_cut).adjoint(); }

Eigen::MatrixXcd number_operator(int n_cut) {
    require_n_cut(n_cut, 1);
    Eigen::MatrixXcd nop = Eigen::MatrixXcd::Zero(n_cut + 1, n_cut + 1);
    for (int n = 0; n <= n_cut; ++n) nop(n, n) = static_cast<double>(n);
    return nop;
}

double deformation_function(int n, double eta) {
    const double x = eta * (n - 1);
    const double arg = 1.0 - x;
    // Allow a rounding-level excursion below zero at the closure level.
    if (arg < -1e-12 * std::max(1.0, std::abs(x))) {
        throw std::domain_error("deformation_function: level n=" + std::to_string(n) +
                                " lies above the deformed-space closure N+1");
    }
    return std::sqrt(std::max(arg, 0.0));
}

Eigen::MatrixXcd deformed_annihilator(int n_cut, double eta, DeformationOrder order) {
    require_n_cut(n_cut, 1);
    if (eta < 0.0) throw std::domain_error("deformed_annihilator: eta must be >= 0");
    Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(n_cut + 1, n_cut + 1);
    for (int n = 1; n <= n_cut; ++n) {
        const double root_n = std::sqrt(static_cast<double>(n));
        const double dress = order == DeformationOrder::exact
                                 ? deformation_function(n, eta)
                                 : 1.0 - 0.5 * eta * (n - 1);
        b(n - 1, n) = root_n * dress;
    }
    return b;
}

Eigen::MatrixXcd deformed_creator(int n_cut, double eta, DeformationOrder order) {
    return deformed_annihilator(n_cut, eta, order).adjoint();
}

std::vector<CommutatorDefectRow> commutator_defect(int n_cut, double eta) {
    const Eigen::MatrixXcd b = deformed_annihilator(n_cut, eta, DeformationOrder::exact);
    const Eigen::MatrixXcd bd = b.adjoint();
    const Eigen::MatrixXcd comm = b * bd - bd * b;

    std::vector<CommutatorDefectRow> rows;
    rows.reserve(n_cut + 1);
    for (int n = 0; n <= n_cut; ++n) {
        CommutatorDefectRow row;
        row.n = n;
        row.commutator_diag = comm(n, n).real();
        row.expected = 1.0 - 2.0 * eta * n;
        row.defect = row.commutator_diag - row.expected;
        row.boundary = n >= n_cut - 1;
        rows.push_back(row);
    }
    return rows;
}

} // namespace becspec::fock
