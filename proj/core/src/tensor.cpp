#include "sparsent/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sparsent/error.hpp"

namespace sparsent {
namespace {

std::string shape(const DenseMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void scale(std::span<double> v, double s) {
  for (double& x : v) x *= s;
}

// mᵀ(m v)
DenseVector gram_apply(const DenseMatrix& m, std::span<const double> v) {
  return matvec_transposed(m, matvec(m, v));
}

// Flips signs so that the first nonzero entry of v is positive.
void canonical_sign(DenseVector& u, DenseVector& v) {
  for (double x : v) {
    if (x > 0.0) return;
    if (x < 0.0) {
      scale(u, -1.0);
      scale(v, -1.0);
      return;
    }
  }
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    throw DimensionError("matrix data has " + std::to_string(data_.size()) +
                         " entries, expected " + std::to_string(rows) + "x" +
                         std::to_string(cols));
  }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

void DenseMatrix::fill(double v) { std::fill(data_.begin(), data_.end(), v); }

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw DimensionError("dot: lengths " + std::to_string(a.size()) + " and " +
                         std::to_string(b.size()));
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) {
  double s = 0.0;
  for (double x : a) s += x * x;
  return std::sqrt(s);
}

DenseMatrix transpose(const DenseMatrix& m) {
  DenseMatrix t(m.cols(), m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) t(c, r) = m(r, c);
  }
  return t;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matmul: cannot multiply " + shape(a) + " by " + shape(b));
  }
  DenseMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto out_row = out.row(i);
    for (std::size_t p = 0; p < a.cols(); ++p) {
      const double aip = a(i, p);
      auto b_row = b.row(p);
      for (std::size_t j = 0; j < b.cols(); ++j) out_row[j] += aip * b_row[j];
    }
  }
  return out;
}

DenseVector matvec(const DenseMatrix& m, std::span<const double> x) {
  if (m.cols() != x.size()) {
    throw DimensionError("matvec: " + shape(m) + " by vector of length " +
                         std::to_string(x.size()));
  }
  DenseVector y(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.row(r);
    double s = 0.0;
    for (std::size_t c = 0; c < row.size(); ++c) s += row[c] * x[c];
    y[r] = s;
  }
  return y;
}

DenseVector matvec_transposed(const DenseMatrix& m, std::span<const double> x) {
  if (m.rows() != x.size()) {
    throw DimensionError("matvec_transposed: " + shape(m) + "ᵀ by vector of length " +
                         std::to_string(x.size()));
  }
  DenseVector y(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.row(r);
    const double xr = x[r];
    for (std::size_t c = 0; c < row.size(); ++c) y[c] += row[c] * xr;
  }
  return y;
}

DenseMatrix outer(std::span<const double> x, std::span<const double> y) {
  DenseMatrix m(x.size(), y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) m(i, j) = x[i] * y[j];
  }
  return m;
}

double frobenius_norm(const DenseMatrix& m) { return norm2(m.data()); }

double frobenius_distance(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("frobenius_distance: shapes " + shape(a) + " and " + shape(b));
  }
  double s = 0.0;
  auto da = a.data();
  auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) {
    const double d = da[i] - db[i];
    s += d * d;
  }
  return std::sqrt(s);
}

DenseMatrix l2_normalize_rows(const DenseMatrix& m) {
  DenseMatrix out = m;
  for (std::size_t r = 0; r < out.rows(); ++r) {
    auto row = out.row(r);
    const double n = norm2(row);
    if (n > 0.0) scale(row, 1.0 / n);
  }
  return out;
}

bool all_finite(std::span<const double> values) {
  return std::all_of(values.begin(), values.end(), [](double x) { return std::isfinite(x); });
}

Rank1 rank1_approx(const DenseMatrix& m, std::size_t max_iters, double tol,
                   std::span<const double> start) {
  if (m.empty()) throw DimensionError("rank1_approx: empty matrix");
  if (max_iters == 0) throw DimensionError("rank1_approx: max_iters must be >= 1");

  Rank1 out;
  out.u.assign(m.rows(), 0.0);
  out.v.assign(m.cols(), 0.0);

  const double fro = frobenius_norm(m);
  if (fro == 0.0) {
    out.u[0] = 1.0;
    out.v[0] = 1.0;
    return out;
  }

  DenseVector v(m.cols(), 1.0 / std::sqrt(static_cast<double>(m.cols())));
  if (!start.empty()) {
    if (start.size() != m.cols()) {
      throw DimensionError("rank1_approx: start vector length " +
                           std::to_string(start.size()) + " for " + shape(m));
    }
    const double sn = norm2(start);
    if (sn > 0.0) {
      v.assign(start.begin(), start.end());
      scale(v, 1.0 / sn);
    }
  }
  DenseVector w = gram_apply(m, v);
  // A start vector orthogonal to the row space would stall; restart from
  // the largest row, which has nonzero overlap with it.
  if (norm2(w) <= 1e-12 * fro * fro) {
    std::size_t best = 0;
    double best_norm = -1.0;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      const double n = norm2(m.row(r));
      if (n > best_norm) {
        best_norm = n;
        best = r;
      }
    }
    auto row = m.row(best);
    v.assign(row.begin(), row.end());
    scale(v, 1.0 / best_norm);
    w = gram_apply(m, v);
  }

  for (std::size_t it = 0; it < max_iters; ++it) {
    const double wn = norm2(w);
    if (wn == 0.0) break;
    scale(w, 1.0 / wn);
    double diff = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double d = w[i] - v[i];
      diff += d * d;
    }
    v.swap(w);
    if (std::sqrt(diff) <= tol) break;
    w = gram_apply(m, v);
  }

  DenseVector mv = matvec(m, v);
  out.sigma = norm2(mv);
  out.v = std::move(v);
  if (out.sigma > 0.0) {
    scale(mv, 1.0 / out.sigma);
    out.u = std::move(mv);
  } else {
    out.u.assign(m.rows(), 0.0);
    out.u[0] = 1.0;
  }
  canonical_sign(out.u, out.v);
  return out;
}

}  // namespace sparsent
