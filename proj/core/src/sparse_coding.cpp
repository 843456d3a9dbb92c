#include "sparsent/sparse_coding.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "sparsent/error.hpp"
#include "sparsent/parallel.hpp"
#include "sparsent/rng.hpp"

namespace sparsent {
namespace {

// Pivot below which a new atom is treated as linearly dependent on the
// current support.
constexpr double kRankTol = 1e-10;

void check_sparsity(std::size_t k, std::size_t num_atoms) {
  if (k == 0 || k > num_atoms) {
    throw DimensionError("sparsity k = " + std::to_string(k) + " must lie in [1, " +
                         std::to_string(num_atoms) + "]");
  }
}

// Lower-triangular Cholesky factor of the support Gram matrix, grown one
// row at a time.
class GrowingCholesky {
 public:
  // Returns false (leaving the factor unchanged) if the new column makes
  // the matrix numerically singular.
  bool append(std::span<const double> cross, double self) {
    const std::size_t n = rows_.size();
    std::vector<double> row(n + 1);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = cross[i];
      for (std::size_t p = 0; p < i; ++p) s -= rows_[i][p] * row[p];
      row[i] = s / rows_[i][i];
      ss += row[i] * row[i];
    }
    const double pivot = self - ss;
    if (!(pivot > kRankTol)) return false;
    row[n] = std::sqrt(pivot);
    rows_.push_back(std::move(row));
    return true;
  }

  // Solves L Lᵀ x = b.
  std::vector<double> solve(std::span<const double> b) const {
    const std::size_t n = rows_.size();
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      double s = b[i];
      for (std::size_t p = 0; p < i; ++p) s -= rows_[i][p] * y[p];
      y[i] = s / rows_[i][i];
    }
    for (std::size_t i = n; i-- > 0;) {
      double s = y[i];
      for (std::size_t p = i + 1; p < n; ++p) s -= rows_[p][i] * y[p];
      y[i] = s / rows_[i][i];
    }
    return y;
  }

 private:
  std::vector<std::vector<double>> rows_;
};

DenseMatrix residuals(const SparseCodeMatrix& codes, const Dictionary& dict,
                      const DenseMatrix& z) {
  DenseMatrix r = z;
  for (std::size_t i = 0; i < codes.rows(); ++i) {
    auto ri = r.row(i);
    for (const auto& e : codes.row(i)) {
      auto atom = dict.atom(e.index);
      for (std::size_t c = 0; c < ri.size(); ++c) ri[c] -= e.value * atom[c];
    }
  }
  return r;
}

Dictionary initial_dictionary(const DenseMatrix& z, std::size_t num_atoms, Rng& rng) {
  DenseMatrix atoms(num_atoms, z.cols());
  const auto picks = rng.sample_without_replacement(z.rows(), std::min(z.rows(), num_atoms));
  std::size_t filled = 0;
  for (std::size_t i : picks) {
    if (norm2(z.row(i)) == 0.0) continue;
    auto src = z.row(i);
    std::copy(src.begin(), src.end(), atoms.row(filled).begin());
    ++filled;
  }
  for (; filled < num_atoms; ++filled) {
    auto row = atoms.row(filled);
    do {
      for (double& x : row) x = rng.normal();
    } while (norm2(row) == 0.0);
  }
  return Dictionary(std::move(atoms));
}

}  // namespace

Dictionary::Dictionary(DenseMatrix atoms) : atoms_(std::move(atoms)) {
  for (std::size_t j = 0; j < atoms_.rows(); ++j) {
    auto row = atoms_.row(j);
    const double n = norm2(row);
    if (n == 0.0) {
      throw DegenerateInputError("dictionary atom " + std::to_string(j) + " is zero");
    }
    for (double& x : row) x /= n;
  }
}

void Dictionary::set_atom(std::size_t j, std::span<const double> direction) {
  if (direction.size() != atoms_.cols()) {
    throw DimensionError("atom length " + std::to_string(direction.size()) + ", expected " +
                         std::to_string(atoms_.cols()));
  }
  const double n = norm2(direction);
  if (n == 0.0) throw DegenerateInputError("cannot set a zero atom");
  auto row = atoms_.row(j);
  for (std::size_t c = 0; c < row.size(); ++c) row[c] = direction[c] / n;
}

OmpResult omp_encode_detailed(std::span<const double> z, const Dictionary& dict,
                              std::size_t k, double residual_tol) {
  if (z.size() != dict.atom_dim()) {
    throw DimensionError("omp_encode: vector length " + std::to_string(z.size()) +
                         ", atoms have length " + std::to_string(dict.atom_dim()));
  }
  check_sparsity(k, dict.num_atoms());

  OmpResult out;
  std::vector<double> residual(z.begin(), z.end());
  out.residual_norm = norm2(residual);
  if (out.residual_norm <= residual_tol) return out;

  std::vector<char> selected(dict.num_atoms(), 0);
  std::vector<std::uint32_t>& support = out.selection_order;
  std::vector<double> rhs;  // u_s . z for s in support
  std::vector<double> coeffs;
  GrowingCholesky chol;

  while (support.size() < k) {
    std::size_t best = dict.num_atoms();
    double best_corr = 0.0;
    for (std::size_t j = 0; j < dict.num_atoms(); ++j) {
      if (selected[j]) continue;
      const double c = std::abs(dot(dict.atom(j), residual));
      if (c > best_corr) {
        best_corr = c;
        best = j;
      }
    }
    if (best == dict.num_atoms()) break;  // residual orthogonal to every atom

    std::vector<double> cross(support.size());
    for (std::size_t i = 0; i < support.size(); ++i) {
      cross[i] = dot(dict.atom(support[i]), dict.atom(best));
    }
    if (!chol.append(cross, dot(dict.atom(best), dict.atom(best)))) break;

    selected[best] = 1;
    support.push_back(static_cast<std::uint32_t>(best));
    rhs.push_back(dot(dict.atom(best), z));
    coeffs = chol.solve(rhs);

    residual.assign(z.begin(), z.end());
    for (std::size_t i = 0; i < support.size(); ++i) {
      auto atom = dict.atom(support[i]);
      for (std::size_t c = 0; c < residual.size(); ++c) residual[c] -= coeffs[i] * atom[c];
    }
    out.residual_norm = norm2(residual);
    if (out.residual_norm <= residual_tol) break;
  }

  for (std::size_t i = 0; i < support.size(); ++i) {
    if (coeffs[i] != 0.0) out.code.push_back({support[i], coeffs[i]});
  }
  std::sort(out.code.begin(), out.code.end(),
            [](const SparseEntry& a, const SparseEntry& b) { return a.index < b.index; });
  return out;
}

SparseRow omp_encode(std::span<const double> z, const Dictionary& dict, std::size_t k,
                     double residual_tol) {
  return omp_encode_detailed(z, dict, k, residual_tol).code;
}

KsvdResult ksvd_fit(const DenseMatrix& z, const KsvdOptions& options) {
  if (z.rows() == 0) throw DimensionError("ksvd_fit: no samples");
  if (z.cols() == 0 || frobenius_norm(z) == 0.0) {
    throw DegenerateInputError("degenerate input: Z is empty or all zero");
  }
  if (!all_finite(z.data())) throw DegenerateInputError("degenerate input: non-finite Z");
  if (options.num_atoms == 0) throw DimensionError("ksvd_fit: num_atoms must be >= 1");
  check_sparsity(options.sparsity, options.num_atoms);
  if (options.iterations == 0) throw DimensionError("ksvd_fit: iterations must be >= 1");

  const std::size_t n = z.rows();
  const std::size_t width = z.cols();
  const std::size_t num_atoms = options.num_atoms;

  Rng rng(options.seed);
  KsvdResult result;
  result.dictionary = initial_dictionary(z, num_atoms, rng);
  Dictionary& dict = result.dictionary;

  struct Use {
    std::size_t sample;
    std::size_t slot;  // position inside the sample's code row
  };

  std::vector<SparseRow> rows(n);
  for (std::size_t it = 0; it < options.iterations; ++it) {
    parallel_for(n, options.threads, [&](std::size_t i) {
      rows[i] = omp_encode(z.row(i), dict, options.sparsity, options.residual_tol);
    });

    KsvdIterationTrace trace;
    {
      SparseCodeMatrix coded(n, num_atoms);
      for (std::size_t i = 0; i < n; ++i) coded.set_row(i, rows[i]);
      trace.objective_after_coding = reconstruction_objective(coded, dict, z);
    }

    // residual(i) = z_i - Σ_d e_{i,d} u_d, kept current through the sweep.
    DenseMatrix residual = z;
    std::vector<std::vector<Use>> users(num_atoms);
    for (std::size_t i = 0; i < n; ++i) {
      auto ri = residual.row(i);
      for (std::size_t s = 0; s < rows[i].size(); ++s) {
        const auto& e = rows[i][s];
        auto atom = dict.atom(e.index);
        for (std::size_t c = 0; c < width; ++c) ri[c] -= e.value * atom[c];
        users[e.index].push_back({i, s});
      }
    }

    std::vector<char> reseeded_from(n, 0);
    for (std::size_t j = 0; j < num_atoms; ++j) {
      const auto& used = users[j];
      if (used.empty()) {
        std::size_t worst = n;
        double worst_err = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          if (reseeded_from[i]) continue;
          const double err = norm2(residual.row(i));
          if (err > worst_err) {
            worst_err = err;
            worst = i;
          }
        }
        if (worst < n && norm2(z.row(worst)) > 0.0) {
          dict.set_atom(j, z.row(worst));
          reseeded_from[worst] = 1;
          ++trace.dead_atoms;
        }
        continue;
      }

      // Restricted residual with atom j's contribution added back.
      auto atom = dict.atom(j);
      DenseMatrix restricted(used.size(), width);
      for (std::size_t u = 0; u < used.size(); ++u) {
        const double coef = rows[used[u].sample][used[u].slot].value;
        auto src = residual.row(used[u].sample);
        auto dst = restricted.row(u);
        for (std::size_t c = 0; c < width; ++c) dst[c] = src[c] + coef * atom[c];
      }

      // Warm start from the current atom: power iteration never lowers
      // the Rayleigh quotient, so the sweep objective cannot increase.
      const Rank1 best = rank1_approx(restricted, kRank1DefaultMaxIters, kRank1DefaultTol, atom);
      if (best.sigma > 0.0) dict.set_atom(j, best.v);
      auto new_atom = dict.atom(j);
      for (std::size_t u = 0; u < used.size(); ++u) {
        const double coef = best.sigma * best.u[u];
        rows[used[u].sample][used[u].slot].value = coef;
        auto src = restricted.row(u);
        auto dst = residual.row(used[u].sample);
        for (std::size_t c = 0; c < width; ++c) dst[c] = src[c] - coef * new_atom[c];
      }
    }

    SparseCodeMatrix swept(n, num_atoms);
    for (std::size_t i = 0; i < n; ++i) {
      SparseRow& row = rows[i];
      std::erase_if(row, [](const SparseEntry& e) { return e.value == 0.0; });
      swept.set_row(i, row);
    }
    trace.objective_after_sweep = reconstruction_objective(swept, dict, z);
    result.trace.push_back(trace);
    if (it + 1 == options.iterations) result.codes = std::move(swept);
  }
  return result;
}

DenseMatrix reconstruct(const SparseCodeMatrix& codes, const Dictionary& dict) {
  if (codes.cols() != dict.num_atoms()) {
    throw DimensionError("reconstruct: codes have width " + std::to_string(codes.cols()) +
                         ", dictionary has " + std::to_string(dict.num_atoms()) + " atoms");
  }
  DenseMatrix out(codes.rows(), dict.atom_dim());
  for (std::size_t i = 0; i < codes.rows(); ++i) {
    auto dst = out.row(i);
    for (const auto& e : codes.row(i)) {
      auto atom = dict.atom(e.index);
      for (std::size_t c = 0; c < dst.size(); ++c) dst[c] += e.value * atom[c];
    }
  }
  return out;
}

double reconstruction_objective(const SparseCodeMatrix& codes, const Dictionary& dict,
                                const DenseMatrix& z) {
  if (codes.rows() != z.rows() || dict.atom_dim() != z.cols() ||
      codes.cols() != dict.num_atoms()) {
    throw DimensionError("reconstruction error: codes " + std::to_string(codes.rows()) + "x" +
                         std::to_string(codes.cols()) + ", dictionary " +
                         std::to_string(dict.num_atoms()) + "x" +
                         std::to_string(dict.atom_dim()) + ", Z " +
                         std::to_string(z.rows()) + "x" + std::to_string(z.cols()));
  }
  const double r = frobenius_norm(residuals(codes, dict, z));
  return r * r;
}

double relative_reconstruction_error(const SparseCodeMatrix& codes, const Dictionary& dict,
                                     const DenseMatrix& z) {
  const double err = std::sqrt(reconstruction_objective(codes, dict, z));
  const double base = frobenius_norm(z);
  if (base == 0.0) return err == 0.0 ? 0.0 : INFINITY;
  return err / base;
}

}  // namespace sparsent
