#pragma once

// Coupling machinery for contraction estimates: the optimal Gaussian
// rotation U(Σ₁,Σ₂) = Σ₂^{-1/2}Σ₁^{-1/2}(Σ₁^{1/2}Σ₂Σ₁^{1/2})^{1/2} and its
// ε-regularization, the closed-form centered-Gaussian W2² cost, the explicit
// pairing matrix A(x,y) with AA* = a(y), and the coupling functionals Γ_ε(R)
// and D(R).

#include <utility>
#include <vector>

#include "landau/errors.hpp"
#include "landau/kernels.hpp"
#include "landau/vecmat.hpp"

namespace landau {

// Uniform-weight coupling N^{-1} Σ δ_{(v_i, w_i)}; marginals by projection.
struct EmpiricalCoupling {
    std::vector<std::pair<Vec3, Vec3>> pairs;

    explicit EmpiricalCoupling(std::vector<std::pair<Vec3, Vec3>> p) : pairs(std::move(p)) {
        if (pairs.empty()) throw InvalidArgument("empirical coupling needs at least one pair");
        for (const auto& [v, w] : pairs)
            if (!finite(v) || !finite(w)) throw InvalidArgument("coupling atom not finite");
    }
    std::size_t size() const { return pairs.size(); }
    EmpiricalMeasure first_marginal() const;
    EmpiricalMeasure second_marginal() const;
};

// Optimal rotation between centered Gaussians. Requires both inputs strictly
// PD (min eigenvalue > 1e-12·(1+tr)); throws SingularInput otherwise.
// UᵀU = I to 1e-9 and Σ₂^{1/2}U realizes min_Q ‖Σ₁^{1/2}−Σ₂^{1/2}Q‖².
Mat3 gs_rotation(const Sym3& sigma1, const Sym3& sigma2);

// U(Σ₁+εI, Σ₂+εI): defined for merely PSD inputs, ε ∈ (0,1).
Mat3 gs_rotation_eps(const Sym3& sigma1, const Sym3& sigma2, double eps);

// W2²(N(0,Σ₁), N(0,Σ₂)) = tr Σ₁ + tr Σ₂ − 2 tr (Σ₁^{1/2}Σ₂Σ₁^{1/2})^{1/2}.
double gaussian_w2_cost(const Sym3& sigma1, const Sym3& sigma2);

// Pairing matrix of the two-particle coupling (Maxwell molecules):
//   A(x,y) = −(y·e₂) e₁e₂ᵀ + (y·e₁) e₂e₂ᵀ + |y| e₃e₃ᵀ
// on the deterministic basis e₁ = x/|x|, e₂ ⊥ e₁ in span{x,y} (canonical
// axis fallback when y ∥ x), e₃ = e₁×e₂. Satisfies AAᵀ = a(y),
// ⟨⟨σ(x),A⟩⟩ = |x||y| + x·y, (σ(x)−Aᵀ)(x−y) = 0. Parity A(−x,−y) = A(x,y)
// is exact: the construction runs on the representative of (x,y) whose first
// nonzero x-component is positive. x = 0 returns σ(y).
Mat3 pair_rotation(Vec3 x, Vec3 y);

// Which covariance enters the rotation's second slot in gamma_eps: the
// g-field at the paired point w (as in the contraction proof) or at v.
enum class GammaEpsArg { g_field_at_w, g_field_at_v };

// Central coupling functional:
//   Γ_ε(R) = ∫ [ ‖a^{1/2}(f,v) − a^{1/2}(g,w) U_ε(a(f,v), a(g,·))‖²
//              + 2(v−w)·(b(f,v) − b(g,w)) ] R(dv,dw),
// f, g the marginals of R. ε = 0 uses the unregularized rotation and
// requires a(f,v), a(g,w) PD at every atom (SingularInput otherwise).
double gamma_eps(const EmpiricalCoupling& r, Gamma g, double eps,
                 GammaEpsArg arg = GammaEpsArg::g_field_at_w);

// D(R) = ∫∫ [ |v−x||w−y| − (v−x)·(w−y) ] R(dv,dw) R(dx,dy) ≥ 0.
// Thread-partitioned over rows with a fixed reduction order: results are
// identical across thread counts.
double rousset_d(const EmpiricalCoupling& r);

} // namespace landau
