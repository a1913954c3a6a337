#include "okse/linalg.hpp"

#include <cmath>

#include "okse/errors.hpp"

namespace okse {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m.at(i, i) = 1.0;
  }
  return m;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols != b.rows) {
    throw InvalidParameterError("multiply: inner dimensions differ");
  }
  Matrix out(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t k = 0; k < a.cols; ++k) {
      double aik = a.at(i, k);
      for (std::size_t j = 0; j < b.cols; ++j) {
        out.at(i, j) += aik * b.at(k, j);
      }
    }
  }
  return out;
}

Matrix transpose(const Matrix& a) {
  Matrix out(a.cols, a.rows);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = 0; j < a.cols; ++j) {
      out.at(j, i) = a.at(i, j);
    }
  }
  return out;
}

std::vector<double> row_times(const std::vector<double>& x, const Matrix& k) {
  if (x.size() != k.rows) {
    throw InvalidParameterError("row_times: vector length does not match matrix rows");
  }
  std::vector<double> y(k.cols, 0.0);
  for (std::size_t j = 0; j < k.cols; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < k.rows; ++i) {
      acc += x[i] * k.at(i, j);
    }
    y[j] = acc;
  }
  return y;
}

std::vector<double> row_times_transpose(const std::vector<double>& x, const Matrix& k) {
  if (x.size() != k.cols) {
    throw InvalidParameterError("row_times_transpose: vector length does not match matrix cols");
  }
  std::vector<double> y(k.rows, 0.0);
  for (std::size_t j = 0; j < k.rows; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < k.cols; ++i) {
      acc += x[i] * k.at(j, i);
    }
    y[j] = acc;
  }
  return y;
}

std::vector<double> transpose_times_col(const Matrix& k, const std::vector<double>& e) {
  if (e.size() != k.rows) {
    throw InvalidParameterError("transpose_times_col: vector length does not match matrix rows");
  }
  std::vector<double> y(k.cols, 0.0);
  for (std::size_t j = 0; j < k.cols; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < k.rows; ++i) {
      acc += k.at(i, j) * e[i];
    }
    y[j] = acc;
  }
  return y;
}

Matrix qr_orthonormal(Matrix a) {
  if (a.rows != a.cols || a.rows == 0) {
    throw InvalidParameterError("qr_orthonormal: square non-empty matrix required");
  }
  const std::size_t n = a.rows;

  // Householder reflectors, stored column by column.
  std::vector<std::vector<double>> reflectors(n);
  std::vector<double> r_diag(n, 0.0);

  for (std::size_t k = 0; k < n; ++k) {
    double norm = 0.0;
    for (std::size_t i = k; i < n; ++i) {
      norm += a.at(i, k) * a.at(i, k);
    }
    norm = std::sqrt(norm);
    double x0 = a.at(k, k);
    double alpha = (x0 >= 0.0) ? -norm : norm;

    std::vector<double> v(n - k, 0.0);
    v[0] = x0 - alpha;
    for (std::size_t i = k + 1; i < n; ++i) {
      v[i - k] = a.at(i, k);
    }
    double vnorm2 = 0.0;
    for (double t : v) {
      vnorm2 += t * t;
    }
    if (vnorm2 > 0.0) {
      // Apply H = I - 2 v v^T / (v^T v) to the trailing block.
      for (std::size_t j = k; j < n; ++j) {
        double dot = 0.0;
        for (std::size_t i = k; i < n; ++i) {
          dot += v[i - k] * a.at(i, j);
        }
        double c = 2.0 * dot / vnorm2;
        for (std::size_t i = k; i < n; ++i) {
          a.at(i, j) -= c * v[i - k];
        }
      }
    }
    reflectors[k] = std::move(v);
    r_diag[k] = a.at(k, k);
  }

  // Accumulate Q = H_0 H_1 ... H_{n-1} applied to the identity.
  Matrix q = Matrix::identity(n);
  for (std::size_t k = n; k-- > 0;) {
    const auto& v = reflectors[k];
    double vnorm2 = 0.0;
    for (double t : v) {
      vnorm2 += t * t;
    }
    if (vnorm2 == 0.0) {
      continue;
    }
    for (std::size_t j = 0; j < n; ++j) {
      double dot = 0.0;
      for (std::size_t i = k; i < n; ++i) {
        dot += v[i - k] * q.at(i, j);
      }
      double c = 2.0 * dot / vnorm2;
      for (std::size_t i = k; i < n; ++i) {
        q.at(i, j) -= c * v[i - k];
      }
    }
  }

  // Sign correction: scale column k of Q by sign(R_kk).
  for (std::size_t k = 0; k < n; ++k) {
    if (r_diag[k] < 0.0) {
      for (std::size_t i = 0; i < n; ++i) {
        q.at(i, k) = -q.at(i, k);
      }
    }
  }
  return q;
}

double lu_determinant(Matrix a) {
  if (a.rows != a.cols || a.rows == 0) {
    throw InvalidParameterError("lu_determinant: square non-empty matrix required");
  }
  const std::size_t n = a.rows;
  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    double best = std::fabs(a.at(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      double m = std::fabs(a.at(i, k));
      if (m > best) {
        best = m;
        pivot = i;
      }
    }
    if (best == 0.0) {
      return 0.0;
    }
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a.at(k, j), a.at(pivot, j));
      }
      det = -det;
    }
    det *= a.at(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      double f = a.at(i, k) / a.at(k, k);
      for (std::size_t j = k + 1; j < n; ++j) {
        a.at(i, j) -= f * a.at(k, j);
      }
    }
  }
  return det;
}

double orthogonality_defect(const Matrix& a) {
  Matrix prod = multiply(a, transpose(a));
  double worst = 0.0;
  for (std::size_t i = 0; i < prod.rows; ++i) {
    for (std::size_t j = 0; j < prod.cols; ++j) {
      double target = (i == j) ? 1.0 : 0.0;
      worst = std::max(worst, std::fabs(prod.at(i, j) - target));
    }
  }
  return worst;
}

}  // namespace okse
