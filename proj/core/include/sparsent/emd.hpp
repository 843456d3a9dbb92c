#pragma once

#include <span>

#include "sparsent/tensor.hpp"

namespace sparsent {

// Exact earth mover's distance between histograms p (supply) and q
// (demand) under ground cost `cost` (p.size() x q.size()), solved as a
// min-cost flow by successive shortest paths. Weights must be nonnegative
// with sums equal to 1 within 1e-6 of each other (Error otherwise).
double emd(std::span<const double> p, std::span<const double> q, const DenseMatrix& cost);

}  // namespace sparsent
