#pragma once

#include <complex>
#include <string_view>

#include <Eigen/Dense>

namespace xstates {

using Complex = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;
using Matrix4 = Eigen::Matrix4cd;
using Vector4 = Eigen::Vector4cd;
using MatrixX = Eigen::MatrixXcd;

inline constexpr Complex kI{0.0, 1.0};

// sigma_0 = I, sigma_1 = X, sigma_2 = Y, sigma_3 = diag(+1, -1) on (|0>, |1>).
Matrix2 pauli(int index);

Matrix4 kron(const Matrix2& lhs, const Matrix2& rhs);

// sigma_mu (x) sigma_nu; qubit A is the left factor.
Matrix4 pauli_product(int mu, int nu);

// Two-letter label over {I,X,Y,Z}, e.g. "ZI" = sigma_3 (x) I.
Matrix4 pauli_string(std::string_view label);
std::string_view pauli_label(int mu, int nu);

// Tr(A^dagger B)
Complex hs_inner(const MatrixX& lhs, const MatrixX& rhs);

double hermiticity_defect(const MatrixX& m);

}  // namespace xstates
