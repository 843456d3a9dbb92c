#pragma once

// Sparse dictionary learning: find codes E (N x D, at most k nonzeros per
// row) and unit-norm atoms U (D x D') minimizing ||E U - Z||_F^2.
// Coding uses Orthogonal Matching Pursuit, dictionary updates use k-SVD.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sparsent/sparse_codes.hpp"
#include "sparsent/tensor.hpp"

namespace sparsent {

// Atoms stored as rows, each with unit L2 norm.
class Dictionary {
 public:
  Dictionary() = default;
  // Normalizes every row; throws DegenerateInputError on a zero row.
  explicit Dictionary(DenseMatrix atoms);

  std::size_t num_atoms() const noexcept { return atoms_.rows(); }
  std::size_t atom_dim() const noexcept { return atoms_.cols(); }
  std::span<const double> atom(std::size_t j) const { return atoms_.row(j); }
  const DenseMatrix& atoms() const noexcept { return atoms_; }

  // Replaces atom j with `direction` normalized. Zero directions are rejected.
  void set_atom(std::size_t j, std::span<const double> direction);

 private:
  DenseMatrix atoms_;
};

inline constexpr double kDefaultResidualTol = 1e-7;

struct OmpResult {
  SparseRow code;                            // sorted by atom index
  std::vector<std::uint32_t> selection_order;  // atoms in the order chosen
  double residual_norm = 0.0;
};

// Greedy OMP. At each step picks the atom maximizing |u_j . r| among atoms
// not yet selected (lowest index on ties), then refits least squares on
// the whole support. Stops after k atoms, when ||r|| <= residual_tol, or
// when the new atom makes the support Gram matrix singular (the newest
// atom is then dropped).
OmpResult omp_encode_detailed(std::span<const double> z, const Dictionary& dict,
                              std::size_t k, double residual_tol = kDefaultResidualTol);

SparseRow omp_encode(std::span<const double> z, const Dictionary& dict, std::size_t k,
                     double residual_tol = kDefaultResidualTol);

struct KsvdOptions {
  std::size_t num_atoms = 2000;
  std::size_t sparsity = 15;
  std::size_t iterations = 30;
  std::uint64_t seed = 0;
  double residual_tol = kDefaultResidualTol;
  std::size_t threads = 1;  // parallelism of the coding step
};

struct KsvdIterationTrace {
  double objective_after_coding = 0.0;  // ||E U - Z||_F^2 after OMP
  double objective_after_sweep = 0.0;   // after the dictionary update
  std::size_t dead_atoms = 0;           // atoms re-seeded this iteration
};

struct KsvdResult {
  SparseCodeMatrix codes;
  Dictionary dictionary;
  std::vector<KsvdIterationTrace> trace;
};

// Throws DegenerateInputError when Z has zero columns or is all zero, and
// DimensionError on invalid options.
KsvdResult ksvd_fit(const DenseMatrix& z, const KsvdOptions& options);

// E U via sparse row expansion.
DenseMatrix reconstruct(const SparseCodeMatrix& codes, const Dictionary& dict);

// ||E U - Z||_F / ||Z||_F (0 when Z is all zero and the reconstruction is exact).
double relative_reconstruction_error(const SparseCodeMatrix& codes, const Dictionary& dict,
                                     const DenseMatrix& z);

// ||E U - Z||_F^2
double reconstruction_objective(const SparseCodeMatrix& codes, const Dictionary& dict,
                                const DenseMatrix& z);

}  // namespace sparsent
