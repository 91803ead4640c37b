// linalg.hpp — small dense helpers shared by the oracle and its tests

#pragma once

#include <Eigen/Dense>

namespace becspec::linalg {

// Kronecker product, column-major convention: vec(A X B) = (B^T ⊗ A) vec(X).
inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

inline Eigen::VectorXcd vec(const Eigen::MatrixXcd& m) {
    return Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size());
}

inline Eigen::MatrixXcd unvec(const Eigen::VectorXcd& v, Eigen::Index dim) {
    return Eigen::Map<const Eigen::MatrixXcd>(v.data(), dim, dim);
}

} // namespace becspec::linalg
