#include "landau/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace landau {

Sym3 proj_perp(Vec3 v) {
    // scale by the max component so |v| near the underflow edge still works
    const double m = std::max({std::abs(v.x), std::abs(v.y), std::abs(v.z)});
    if (!(m > 0.0)) throw SingularInput("proj_perp: zero vector");
    const Vec3 u = (1.0 / m) * v;
    const double n2 = norm2(u); // in [1,3]
    if (!(m * std::sqrt(n2) > 1e-300)) throw SingularInput("proj_perp: |v| below 1e-300");
    return Sym3::identity() - (1.0 / n2) * sym_outer(u);
}

Sym3 kernel_a(Vec3 v, Gamma g) {
    const double r2 = norm2(v);
    if (r2 == 0.0) return Sym3{};
    // |v|^{2+γ} Π = |v|^γ (|v|² I − vvᵀ)
    const double w = pow_gamma(r2, g.value);
    return w * (r2 * Sym3::identity() - sym_outer(v));
}

Vec3 kernel_b(Vec3 v, Gamma g) {
    const double r2 = norm2(v);
    if (r2 == 0.0) return Vec3{};
    return (-2.0 * pow_gamma(r2, g.value)) * v;
}

Sym3 kernel_sigma(Vec3 v, Gamma g) {
    const double r2 = norm2(v);
    if (r2 == 0.0) return Sym3{};
    // |v|^{1+γ/2} Π = s I − (s/|v|²) vvᵀ
    const double s = std::sqrt(r2) * std::sqrt(pow_gamma(r2, g.value));
    return s * Sym3::identity() - (s / r2) * sym_outer(v);
}

Vec3 field_b(const EmpiricalMeasure& mu, Vec3 v, Gamma g) {
    Vec3 acc{};
    for (const Vec3& w : mu.atoms) acc += kernel_b(v - w, g);
    return (1.0 / double(mu.size())) * acc;
}

Sym3 field_a(const EmpiricalMeasure& mu, Vec3 v, Gamma g) {
    Sym3 acc{};
    for (const Vec3& w : mu.atoms) acc = acc + kernel_a(v - w, g);
    return (1.0 / double(mu.size())) * acc;
}

Sym3 field_a_sqrt(const EmpiricalMeasure& mu, Vec3 v, Gamma g) {
    return sym3_sqrt(field_a(mu, v, g));
}

double weak_generator(const TestFunction& phi, Vec3 v, Vec3 vstar, Gamma g) {
    const Vec3 d = v - vstar;
    return 0.5 * frob_inner(kernel_a(d, g), phi.hessian(v)) +
           dot(kernel_b(d, g), phi.gradient(v));
}

double moment(const EmpiricalMeasure& mu, double q) {
    if (!(q >= 0.0)) throw InvalidArgument("moment: q must be >= 0");
    double acc = 0.0;
    for (const Vec3& v : mu.atoms) {
        const double r2 = norm2(v);
        if (q == 0.0) acc += 1.0;
        else if (q == 2.0) acc += r2;
        else if (q == 4.0) acc += r2 * r2;
        else if (q == 6.0) acc += r2 * r2 * r2;
        else acc += std::pow(r2, 0.5 * q);
    }
    return acc / double(mu.size());
}

ExpMoment exp_moment(const EmpiricalMeasure& mu, double alpha) {
    if (!(alpha > 0.0 && alpha < 2.0))
        throw InvalidArgument("exp_moment: alpha must lie in (0,2)");
    ExpMoment out{0.0, false};
    for (const Vec3& v : mu.atoms) {
        double e = std::pow(norm2(v), 0.5 * alpha);
        if (e > 700.0) {
            e = 700.0;
            out.saturated = true;
        }
        out.value += std::exp(e);
    }
    out.value /= double(mu.size());
    return out;
}

Sym3 centered_cov(const EmpiricalMeasure& mu) {
    const double inv_n = 1.0 / double(mu.size());
    Vec3 mean{};
    for (const Vec3& v : mu.atoms) mean += v;
    mean = inv_n * mean;
    Sym3 acc{};
    for (const Vec3& v : mu.atoms) acc = acc + sym_outer(v - mean);
    return inv_n * acc;
}

} // namespace landau
