// fock.hpp — ladder operators and their deformed variants on a truncated Fock space

#pragma once

#include <Eigen/Dense>
#include <vector>

namespace becspec::fock {

// Matrices act on states |0>..|n_cut>, dimension n_cut+1.
Eigen::MatrixXcd annihilator(int n_cut);
Eigen::MatrixXcd creator(int n_cut);
Eigen::MatrixXcd number_operator(int n_cut);

// f(n) = sqrt(1 - eta (n - 1)). Throws std::domain_error once the deformed
// space closes (n > N + 1 with N = 1/eta).
double deformation_function(int n, double eta);

enum class DeformationOrder { exact, first };

// Deformed annihilator B: <n-1|B|n> = sqrt(n) f(n) (exact) or
// sqrt(n) (1 - eta (n-1)/2) (first order in eta).
Eigen::MatrixXcd deformed_annihilator(int n_cut, double eta, DeformationOrder order);
Eigen::MatrixXcd deformed_creator(int n_cut, double eta, DeformationOrder order);

struct CommutatorDefectRow {
    int n;
    double commutator_diag;  // <n|[B,B^dag]|n>
    double expected;         // 1 - 2 eta n
    double defect;           // difference
    bool boundary;           // top two levels carry the truncation artifact
};

// Diagonal of [B, B^dag] against the closed form 1 - 2 eta n, level by level.
std::vector<CommutatorDefectRow> commutator_defect(int n_cut, double eta);

} // namespace becspec::fock
