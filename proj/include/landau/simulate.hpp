#pragma once

// Euler–Maruyama integrators for the interacting velocity systems.
//
// Conservative system: dV_i = (1/N)Σ_j b(V_i−V_j)dt + (1/√N)Σ_j σ(V_i−V_j)dB^{ij}
// with antisymmetric pairwise noise B^{ij} = −B^{ji}: total momentum is
// conserved pathwise (b odd, σ even, increments cancel in exact pairs) and
// the energy noise vanishes pathwise because xᵀσ(x) = 0; what remains is the
// O(dt²)-per-step Itô mismatch of the explicit scheme.
//
// Nonconservative variant: identical drift/diffusion with fully independent
// ordered-pair noise — conservation holds in expectation only.
//
// Coupled pair: the V-side runs the conservative system; the W-side rides the
// same pairwise increments through the pairing matrix A(ΔV, ΔW), plus
// ε-scaled independent per-particle noise on both sides.
//
// Nonlinear walker: dW = b(f,W)dt + a^{1/2}(f,W)dB against a supplied field.

#include <cstdint>
#include <optional>
#include <vector>

#include "landau/coupling.hpp"
#include "landau/errors.hpp"
#include "landau/kernels.hpp"
#include "landau/rng.hpp"
#include "landau/vecmat.hpp"

namespace landau {

struct ParticleEnsemble {
    std::vector<Vec3> velocities;
    Gamma gamma;
    std::size_t step_index = 0;
    double t = 0.0;
    Vec3 ref_momentum{};   // Σ v_i at construction
    double ref_energy = 0; // Σ |v_i|² at construction
};

// Captures the conservation references; N ≥ 2 required.
ParticleEnsemble make_ensemble(std::vector<Vec3> velocities, Gamma gamma);

struct PairedEnsemble {
    ParticleEnsemble v_side;
    ParticleEnsemble w_side;
    double eps = 0.0;
};

// Validates matching N and γ on the two sides; ε ≥ 0.
PairedEnsemble make_paired(ParticleEnsemble v, ParticleEnsemble w, double eps);

// Deterministic map (seed, step, i, j) → 3 standard Gaussians over keyed
// counter streams. pairwise() is exactly antisymmetric (the (j,i) value is
// the bitwise negation of (i,j)) with plan(i,i) = 0; distinct unordered pairs
// use independent streams. ordered() has no symmetry (nonconservative noise);
// per_particle() serves the ε-auxiliary and nonlinear channels.
struct NoisePlan {
    std::uint64_t seed;
    bool enabled = true;
    // optional relabeling of particle indices before keying; lets tests drive
    // the exchangeability property (permute particles and plan together)
    std::vector<std::uint32_t> relabel;

    explicit NoisePlan(std::uint64_t seed_);
    static NoisePlan silent();

    Vec3 pairwise(std::size_t step, std::size_t i, std::size_t j) const;
    Vec3 ordered(std::size_t step, std::size_t i, std::size_t j) const;
    Vec3 per_particle(std::size_t step, std::size_t i, unsigned channel) const;

    std::uint64_t key_pair, key_ord, key_part;

  private:
    std::uint64_t map(std::size_t i) const {
        return relabel.empty() ? std::uint64_t(i) : std::uint64_t(relabel[i]);
    }
    friend struct NoisePlanAccess;
};

// Per-particle auxiliary channels.
inline constexpr unsigned kChanAuxV = 1;
inline constexpr unsigned kChanAuxW = 2;
inline constexpr unsigned kChanNonlinear = 3;

// One explicit step; advances step_index and t in place. Throws BlowUp when a
// velocity leaves the sanity envelope (|V| > 1e6 or non-finite).
void step_conservative(ParticleEnsemble& ens, double dt, const NoisePlan& noise);
void step_nonconservative(ParticleEnsemble& ens, double dt, const NoisePlan& noise);

// Mean-shift then radial rescale about the mean: restores Σv and Σ|v|² to the
// stored references exactly (the W2-minimal affine repair). Throws
// DegenerateProjection when all velocities coincide.
void project_conservation(ParticleEnsemble& ens);

// Single nonlinear walker step against a frozen field.
Vec3 step_nonlinear(Vec3 w, const EmpiricalMeasure& field, Gamma g, double dt, Vec3 xi);

// Coupled step (γ = 0 only; the pairing matrix is a Maxwell-molecule object).
// Returns the predicted decrement of (1/N)Σ|V_i−W_i|²:
//     Δ_pred = (2dt/N²) Σ_{ij} [ |ΔV_ij||ΔW_ij| − ΔV_ij·ΔW_ij ] − 6ε²dt.
double step_coupled_pair(PairedEnsemble& p, double dt, const NoisePlan& noise);

// Straight-line reference implementations: same maps, naive loops, matrix
// kernels via kernel_sigma/pair_rotation. Used to validate the optimized
// steppers and as the benchmark baseline.
namespace serial {
void step_conservative(ParticleEnsemble& ens, double dt, const NoisePlan& noise);
void step_nonconservative(ParticleEnsemble& ens, double dt, const NoisePlan& noise);
double step_coupled_pair(PairedEnsemble& p, double dt, const NoisePlan& noise);
} // namespace serial

// Diagnostics row; mirrors the CSV schema
// step,t,m2,m4,m6,expmom_alpha,mom_res,energy_res,cov_*,w2_ref.
// Residuals are relative: |Σv − ref_p|/(1+Σ|v_i|) and |Σ|v|² − ref_E|/(1+ref_E).
// expmom is +inf when the exponent clamp was hit; w2_ref is NaN when disabled.
struct DiagRow {
    std::size_t step;
    double t;
    double m2, m4, m6;
    double expmom;
    double mom_res, energy_res;
    Sym3 cov;
    double w2_ref;
};

DiagRow diagnose(const ParticleEnsemble& ens, double expmom_alpha);

struct Snapshot {
    std::size_t step;
    double t;
    std::vector<Vec3> velocities;
};

} // namespace landau
