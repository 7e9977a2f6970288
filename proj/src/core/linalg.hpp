#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "core/error.hpp"

namespace lef {

using Vec = std::vector<double>;

double dot(std::span<const double> a, std::span<const double> b);

// Dense row-major matrix. Dimensions here are small (d <= ~50), so all
// routines are straightforward O(n^3)-or-less loops.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);
  static Matrix diag(const Vec& d);
  static Matrix outer(const Vec& u, const Vec& v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  const double* data() const { return a_.data(); }
  double* data() { return a_.data(); }

  Matrix transposed() const;
  Vec operator*(const Vec& x) const;
  Matrix operator*(const Matrix& b) const;
  Matrix& operator+=(const Matrix& b);
  Matrix& operator*=(double s);
  Matrix operator+(const Matrix& b) const;
  Matrix operator-(const Matrix& b) const;
  Matrix operator*(double s) const;

  void symmetrize();
  double trace() const;
  double max_abs_asymmetry() const;
  double frobenius_norm() const;

private:
  std::size_t rows_ = 0, cols_ = 0;
  Vec a_;
};

// Frobenius inner product <A, B> = sum_ij A_ij B_ij.
double frobenius_dot(const Matrix& a, const Matrix& b);

// Symmetric positive definite matrix stored through its lower Cholesky
// factor L (M = L L^T).  One factorization serves solves, log-determinants,
// quadratic forms, and sampling transforms.
class SpdMatrix {
public:
  SpdMatrix() = default;

  // Factors a symmetric matrix.  Throws errc::not_positive_definite with the
  // failing pivot index when M is not PD.
  static SpdMatrix factor(const Matrix& m);
  static std::optional<SpdMatrix> try_factor(const Matrix& m, std::size_t* bad_pivot = nullptr);
  static SpdMatrix identity(std::size_t n);
  static SpdMatrix from_cholesky(Matrix lower);

  std::size_t dim() const { return l_.rows(); }
  const Matrix& cholesky() const { return l_; }
  Matrix dense() const;      // L L^T
  Matrix inverse() const;

  double logdet() const;     // 2 sum_i log L_ii
  Vec solve(const Vec& b) const;             // M^{-1} b
  double quad_form(const Vec& v) const;      // v^T M^{-1} v  (>= 0)
  Vec lower_times(const Vec& z) const;       // L z, the sampling transform
  double trace_solve(const Matrix& b) const; // tr(M^{-1} B)

private:
  Matrix l_;
};

Vec solve_lower(const Matrix& l, const Vec& b);            // L y = b
Vec solve_lower_transposed(const Matrix& l, const Vec& b); // L^T x = y

// QR via Householder reflections; returns Q with R's diagonal normalized to
// be positive, so that Q is Haar-distributed when m has iid N(0,1) entries.
Matrix orthonormal_q(const Matrix& m);

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
// Diagnostic-grade: used for error reporting and condition-number checks.
Vec sym_eigenvalues(Matrix m, int max_sweeps = 64);

}  // namespace lef
