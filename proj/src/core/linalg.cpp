#include "core/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lef {

double dot(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), errc::dimension_mismatch, "dot: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diag(const Vec& d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::outer(const Vec& u, const Vec& v) {
  Matrix m(u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * v[j];
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Vec Matrix::operator*(const Vec& x) const {
  require(x.size() == cols_, errc::dimension_mismatch, "matvec: size mismatch");
  Vec y(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

Matrix Matrix::operator*(const Matrix& b) const {
  require(cols_ == b.rows_, errc::dimension_mismatch, "matmul: size mismatch");
  Matrix c(rows_, b.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const double aik = (*this)(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Matrix& Matrix::operator+=(const Matrix& b) {
  require(rows_ == b.rows_ && cols_ == b.cols_, errc::dimension_mismatch, "mat add");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += b.a_[i];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& v : a_) v *= s;
  return *this;
}

Matrix Matrix::operator+(const Matrix& b) const {
  Matrix c = *this;
  c += b;
  return c;
}

Matrix Matrix::operator-(const Matrix& b) const {
  Matrix c = *this;
  require(rows_ == b.rows_ && cols_ == b.cols_, errc::dimension_mismatch, "mat sub");
  for (std::size_t i = 0; i < a_.size(); ++i) c.a_[i] -= b.a_[i];
  return c;
}

Matrix Matrix::operator*(double s) const {
  Matrix c = *this;
  c *= s;
  return c;
}

void Matrix::symmetrize() {
  require(rows_ == cols_, errc::invalid_argument, "symmetrize: not square");
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j) {
      const double v = 0.5 * ((*this)(i, j) + (*this)(j, i));
      (*this)(i, j) = v;
      (*this)(j, i) = v;
    }
}

double Matrix::trace() const {
  double s = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
  return s;
}

double Matrix::max_abs_asymmetry() const {
  double m = 0.0;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      m = std::max(m, std::abs((*this)(i, j) - (*this)(j, i)));
  return m;
}

double Matrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : a_) s += v * v;
  return std::sqrt(s);
}

double frobenius_dot(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), errc::dimension_mismatch, "frobenius_dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * b(i, j);
  return s;
}

SpdMatrix SpdMatrix::factor(const Matrix& m) {
  std::size_t bad = 0;
  auto f = try_factor(m, &bad);
  if (!f)
    fail(errc::not_positive_definite,
         "matrix is not positive definite (pivot " + std::to_string(bad) + ")");
  return *f;
}

std::optional<SpdMatrix> SpdMatrix::try_factor(const Matrix& m, std::size_t* bad_pivot) {
  require(m.rows() == m.cols(), errc::invalid_argument, "cholesky: not square");
  const std::size_t n = m.rows();
  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double diag = m(j, j);
    for (std::size_t k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
    if (!(diag > 0.0) || !std::isfinite(diag)) {
      if (bad_pivot) *bad_pivot = j;
      return std::nullopt;
    }
    const double ljj = std::sqrt(diag);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = m(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / ljj;
    }
  }
  SpdMatrix out;
  out.l_ = std::move(l);
  return out;
}

SpdMatrix SpdMatrix::identity(std::size_t n) {
  SpdMatrix s;
  s.l_ = Matrix::identity(n);
  return s;
}

SpdMatrix SpdMatrix::from_cholesky(Matrix lower) {
  require(lower.rows() == lower.cols(), errc::invalid_argument, "from_cholesky: not square");
  for (std::size_t i = 0; i < lower.rows(); ++i)
    require(lower(i, i) > 0.0, errc::not_positive_definite, "from_cholesky: nonpositive diagonal");
  SpdMatrix s;
  s.l_ = std::move(lower);
  return s;
}

Matrix SpdMatrix::dense() const {
  const std::size_t n = dim();
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k <= j; ++k) s += l_(i, k) * l_(j, k);
      m(i, j) = s;
      m(j, i) = s;
    }
  return m;
}

Matrix SpdMatrix::inverse() const {
  const std::size_t n = dim();
  Matrix inv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    Vec e(n, 0.0);
    e[j] = 1.0;
    Vec x = solve(e);
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = x[i];
  }
  inv.symmetrize();
  return inv;
}

double SpdMatrix::logdet() const {
  double s = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) s += std::log(l_(i, i));
  return 2.0 * s;
}

Vec solve_lower(const Matrix& l, const Vec& b) {
  const std::size_t n = l.rows();
  require(b.size() == n, errc::dimension_mismatch, "solve_lower");
  Vec y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * y[k];
    y[i] = s / l(i, i);
  }
  return y;
}

Vec solve_lower_transposed(const Matrix& l, const Vec& b) {
  const std::size_t n = l.rows();
  require(b.size() == n, errc::dimension_mismatch, "solve_lower_transposed");
  Vec x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = b[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= l(k, ii) * x[k];
    x[ii] = s / l(ii, ii);
  }
  return x;
}

Vec SpdMatrix::solve(const Vec& b) const {
  return solve_lower_transposed(l_, solve_lower(l_, b));
}

double SpdMatrix::quad_form(const Vec& v) const {
  Vec y = solve_lower(l_, v);
  double s = 0.0;
  for (double t : y) s += t * t;
  return s;
}

Vec SpdMatrix::lower_times(const Vec& z) const {
  const std::size_t n = dim();
  require(z.size() == n, errc::dimension_mismatch, "lower_times");
  Vec y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k <= i; ++k) s += l_(i, k) * z[k];
    y[i] = s;
  }
  return y;
}

double SpdMatrix::trace_solve(const Matrix& b) const {
  require(b.rows() == dim() && b.cols() == dim(), errc::dimension_mismatch, "trace_solve");
  double s = 0.0;
  for (std::size_t j = 0; j < dim(); ++j) {
    Vec col(dim());
    for (std::size_t i = 0; i < dim(); ++i) col[i] = b(i, j);
    Vec x = solve(col);
    s += x[j];
  }
  return s;
}

Matrix orthonormal_q(const Matrix& m) {
  require(m.rows() == m.cols(), errc::invalid_argument, "orthonormal_q: not square");
  const std::size_t n = m.rows();
  Matrix r = m;
  Matrix q = Matrix::identity(n);
  // Householder triangularization, accumulating Q.
  for (std::size_t k = 0; k < n; ++k) {
    double norm = 0.0;
    for (std::size_t i = k; i < n; ++i) norm += r(i, k) * r(i, k);
    norm = std::sqrt(norm);
    if (norm == 0.0) continue;
    const double alpha = r(k, k) >= 0.0 ? -norm : norm;
    Vec v(n, 0.0);
    v[k] = r(k, k) - alpha;
    for (std::size_t i = k + 1; i < n; ++i) v[i] = r(i, k);
    double vtv = 0.0;
    for (std::size_t i = k; i < n; ++i) vtv += v[i] * v[i];
    if (vtv == 0.0) continue;
    auto reflect = [&](Matrix& a) {
      for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = k; i < n; ++i) s += v[i] * a(i, j);
        const double c = 2.0 * s / vtv;
        for (std::size_t i = k; i < n; ++i) a(i, j) -= c * v[i];
      }
    };
    reflect(r);
    reflect(q);
  }
  // q now holds H_{n-1}...H_0, i.e. Q^T.  Fix signs so R has positive diagonal.
  Matrix qt = q.transposed();
  for (std::size_t j = 0; j < n; ++j) {
    if (r(j, j) < 0.0)
      for (std::size_t i = 0; i < n; ++i) qt(i, j) = -qt(i, j);
  }
  return qt;
}

Vec sym_eigenvalues(Matrix m, int max_sweeps) {
  require(m.rows() == m.cols(), errc::invalid_argument, "sym_eigenvalues: not square");
  const std::size_t n = m.rows();
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += m(p, q) * m(p, q);
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = m(p, q);
        if (apq == 0.0) continue;
        const double theta = (m(q, q) - m(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = m(k, p);
          const double akq = m(k, q);
          m(k, p) = c * akp - s * akq;
          m(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = m(p, k);
          const double aqk = m(q, k);
          m(p, k) = c * apk - s * aqk;
          m(q, k) = s * apk + c * aqk;
        }
      }
  }
  Vec ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = m(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace lef
