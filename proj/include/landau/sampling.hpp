#pragma once

// Initial-condition samplers. Base Gaussian variance is 1/3 per axis
// throughout, so m₂ = 1 matches the sphere normalization and the equilibrium
// is N(0, I/3). The sphere S_N = {Σv_i = 0, N^{-1}Σ|v_i|² = 1} is sampled by
// centering and rescaling an iid Gaussian cloud, which gives exactly the
// uniform law on S_N.

#include <cstdint>
#include <string>

#include "landau/kernels.hpp"
#include "landau/rng.hpp"
#include "landau/vecmat.hpp"

namespace landau {

struct InitialCondition {
    enum class Kind { gaussian, uniform_sphere, anisotropic_sphere, two_bumps, file };

    Kind kind = Kind::uniform_sphere;
    Vec3 mean{};                                    // gaussian
    Sym3 cov{1.0 / 3, 0, 0, 1.0 / 3, 0, 1.0 / 3};   // gaussian
    Vec3 axis_weights{1, 1, 1};                     // anisotropic_sphere
    double offset = 1.0;                            // two_bumps: separation along x
    std::string path;                               // file: snapshot CSV (restart)
};

EmpiricalMeasure sample_gaussian(std::size_t n, Vec3 mean, const Sym3& cov, Rng& rng);

// X_i = E_N^{-1/2}(Y_i − m_N), Y_i iid N(0, I/3): uniform on S_N.
// Constraints Σ X_i = 0 and N^{-1}Σ|X_i|² = 1 hold to 1e-12; a zero-energy
// draw (probability zero) is resampled.
EmpiricalMeasure sample_uniform_sphere(std::size_t n, Rng& rng);

// Same centering/rescaling applied to N(0, diag(axis_weights)) draws: an
// anisotropic S_N law whose centered covariance has the prescribed axis ratios.
EmpiricalMeasure sample_anisotropic_sphere(std::size_t n, Vec3 axis_weights, Rng& rng);

// Equal mixture of N(±(offset/2)e₁, I/3).
EmpiricalMeasure sample_two_bumps(std::size_t n, double offset, Rng& rng);

// Dispatch on kind; `file` reads the last recorded step of a snapshot CSV and
// requires n to match the stored particle count.
EmpiricalMeasure sample_initial(const InitialCondition& ic, std::size_t n, Rng& rng);

// λ_max of the uncentered second-moment matrix divided by m₂; in (0,1],
// equal to 1 iff all atoms are colinear through the origin.
double spectral_radius_cov(const EmpiricalMeasure& x);

} // namespace landau
