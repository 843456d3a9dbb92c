#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sparsent {

using DenseVector = std::vector<double>;

// Row-major matrix of doubles.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  // Throws DimensionError unless data.size() == rows * cols.
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  void fill(double v);

  bool operator==(const DenseMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

DenseMatrix transpose(const DenseMatrix& m);

// Sequential summation per output cell, so results do not depend on
// parallel scheduling.
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);

// y = m x
DenseVector matvec(const DenseMatrix& m, std::span<const double> x);
// y = mᵀ x
DenseVector matvec_transposed(const DenseMatrix& m, std::span<const double> x);

DenseMatrix outer(std::span<const double> x, std::span<const double> y);

double frobenius_norm(const DenseMatrix& m);
// ||a - b||_F; shapes must match.
double frobenius_distance(const DenseMatrix& a, const DenseMatrix& b);

// Rows with nonzero norm are scaled to unit length; zero rows stay zero.
DenseMatrix l2_normalize_rows(const DenseMatrix& m);

bool all_finite(std::span<const double> values);

struct Rank1 {
  DenseVector u;  // length rows, unit norm
  double sigma = 0.0;
  DenseVector v;  // length cols, unit norm, first nonzero entry positive
};

inline constexpr std::size_t kRank1DefaultMaxIters = 500;
inline constexpr double kRank1DefaultTol = 1e-10;

// Leading singular triple by power iteration on mᵀm from the normalized
// all-ones vector, or from `start` when given (length cols, nonzero). An
// all-zero matrix yields sigma = 0 and u = v = e₁.
Rank1 rank1_approx(const DenseMatrix& m, std::size_t max_iters = kRank1DefaultMaxIters,
                   double tol = kRank1DefaultTol, std::span<const double> start = {});

}  // namespace sparsent
