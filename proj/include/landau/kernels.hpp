#pragma once

// Landau collision kernel for Maxwell molecules and hard potentials:
//   a(v) = |v|^{2+γ} Π_{v⊥},  b(v) = div a(v) = −2|v|^γ v,
//   σ(v) = a(v)^{1/2} = |v|^{1+γ/2} Π_{v⊥},
// empirical-measure field averages, the weak-form generator
//   Lφ(v,v*) = ½ Σ a_{kl}(v−v*) ∂²_{kl}φ(v) + Σ b_k(v−v*) ∂_kφ(v),
// and moment functionals m_q, ℰ_α, centered covariance.

#include <functional>
#include <vector>

#include "landau/errors.hpp"
#include "landau/vecmat.hpp"

namespace landau {

// Interaction exponent. 0 = Maxwell molecules, (0,1] = hard potentials.
struct Gamma {
    double value;
    explicit Gamma(double g) : value(g) {
        if (!(g >= 0.0 && g <= 1.0))
            throw InvalidArgument("gamma must lie in [0,1]");
    }
};

// Uniform-weight atomic measure N^{-1} Σ δ_{v_i}.
struct EmpiricalMeasure {
    std::vector<Vec3> atoms;

    explicit EmpiricalMeasure(std::vector<Vec3> a) : atoms(std::move(a)) {
        if (atoms.empty()) throw InvalidArgument("empirical measure needs at least one atom");
        for (const Vec3& v : atoms)
            if (!finite(v)) throw InvalidArgument("empirical measure atom not finite");
    }
    std::size_t size() const { return atoms.size(); }
};

// Caller-supplied C²_b test function; derivative consistency is the caller's
// contract (checked by finite differences in the test suite).
struct TestFunction {
    std::function<double(Vec3)> value;
    std::function<Vec3(Vec3)> gradient;
    std::function<Sym3(Vec3)> hessian;
};

// I − vvᵀ/|v|². Throws SingularInput when |v| ≤ 1e-300.
Sym3 proj_perp(Vec3 v);

// All three return exactly zero at v = 0 (the kernel's removable singularity).
Sym3 kernel_a(Vec3 v, Gamma g);
Vec3 kernel_b(Vec3 v, Gamma g);
Sym3 kernel_sigma(Vec3 v, Gamma g); // closed form, no eigensolver

// Averages over μ: b(μ,v) = ∫ b(v−w) μ(dw), same for a; a^{1/2}(μ,v) is the
// matrix square root of the average, never the average of square roots.
Vec3 field_b(const EmpiricalMeasure& mu, Vec3 v, Gamma g);
Sym3 field_a(const EmpiricalMeasure& mu, Vec3 v, Gamma g);
Sym3 field_a_sqrt(const EmpiricalMeasure& mu, Vec3 v, Gamma g);

double weak_generator(const TestFunction& phi, Vec3 v, Vec3 vstar, Gamma g);

// m_q(μ) = ∫|v|^q dμ
double moment(const EmpiricalMeasure& mu, double q);

// ℰ_α(μ) = ∫ exp(|v|^α) dμ with the exponent clamped at 700
struct ExpMoment {
    double value;
    bool saturated; // true when any atom hit the clamp
};
ExpMoment exp_moment(const EmpiricalMeasure& mu, double alpha);

Sym3 centered_cov(const EmpiricalMeasure& mu);

// Frobenius inner product restricted to symmetric operands.
inline double frob_inner(const Sym3& a, const Sym3& b) {
    return a.xx * b.xx + a.yy * b.yy + a.zz * b.zz +
           2.0 * (a.xy * b.xy + a.xz * b.xz + a.yz * b.yz);
}

// |v|^γ as a function of |v|², with the exact-exponent fast paths.
inline double pow_gamma(double r2, double gamma) {
    if (gamma == 0.0) return 1.0;
    if (gamma == 1.0) return std::sqrt(r2);
    return std::pow(r2, 0.5 * gamma);
}

} // namespace landau
