#pragma once

// Exact Wasserstein-2 between equal-size uniform empirical measures via the
// linear assignment problem (shortest augmenting paths with a column-reduction
// warm start, O(N³) worst case), the mean/variance lower bound, and sampled
// estimates against Gaussian references. A sliced estimator is included as a
// fast preview only — never used where exactness matters.

#include <cstddef>
#include <vector>

#include "landau/errors.hpp"
#include "landau/kernels.hpp"
#include "landau/rng.hpp"
#include "landau/vecmat.hpp"

namespace landau {

struct AssignmentResult {
    double cost;                           // N^{-1} Σ |x_i − y_{π(i)}|²
    std::vector<std::size_t> permutation;  // π(i): index into Y matched to x_i
};

// Exact optimum of the squared-Euclidean assignment problem. Equal sizes
// required; N > 8192 is rejected rather than silently approximated.
AssignmentResult w2sq_empirical(const EmpiricalMeasure& x, const EmpiricalMeasure& y);

// (√V_X − √V_Y)² + |m_X − m_Y|² from empirical means/variances; a lower
// bound for W2² whenever sizes match (sizes may differ here).
double w2sq_lower_bound(const EmpiricalMeasure& x, const EmpiricalMeasure& y);

// W2² against a matched-size iid draw from N(0, cov). Positive bias of order
// N^{-1/2} from the sampling error of the reference; see w2sq_gaussian_floor.
double w2sq_vs_gaussian(const EmpiricalMeasure& x, const Sym3& cov, std::size_t n_ref,
                        Rng& rng);

// Self-distance of two fresh iid N(0, cov) samples of size n: the sampling
// floor that w2sq_vs_gaussian cannot go below (bias reference).
double w2sq_gaussian_floor(std::size_t n, const Sym3& cov, Rng& rng);

// Sliced-W2² preview: average of 1D W2² over random directions. Fast, biased
// low; for dashboards only, never for slope estimates.
double w2sq_sliced(const EmpiricalMeasure& x, const EmpiricalMeasure& y,
                   std::size_t n_directions, Rng& rng);

} // namespace landau
