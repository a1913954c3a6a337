#pragma once

#include <cstddef>
#include <vector>

namespace okse {

/// Dense square-capable row-major matrix of doubles. Dimensions here are
/// small (key dimension M, typically 10), so everything is plain loops.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  static Matrix identity(std::size_t n);

  bool operator==(const Matrix&) const = default;
};

Matrix multiply(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);

/// y = x * K (row vector times matrix); x.size() == K.rows.
std::vector<double> row_times(const std::vector<double>& x, const Matrix& k);

/// y = x * K^T; x.size() == K.cols.
std::vector<double> row_times_transpose(const std::vector<double>& x, const Matrix& k);

/// y = K^T * e (column vector convention); e.size() == K.rows.
std::vector<double> transpose_times_col(const Matrix& k, const std::vector<double>& e);

/// Orthonormal Q factor of the Householder QR of a, with each column
/// scaled by the sign of the corresponding diagonal entry of R. For a
/// with i.i.d. standard-normal entries this yields a Haar-distributed
/// orthogonal matrix.
Matrix qr_orthonormal(Matrix a);

/// Determinant via LU factorization with partial pivoting.
double lu_determinant(Matrix a);

/// max |A*A^T - I| over all entries.
double orthogonality_defect(const Matrix& a);

}  // namespace okse
