#include "landau/coupling.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace landau {

EmpiricalMeasure EmpiricalCoupling::first_marginal() const {
    std::vector<Vec3> a;
    a.reserve(pairs.size());
    for (const auto& p : pairs) a.push_back(p.first);
    return EmpiricalMeasure(std::move(a));
}

EmpiricalMeasure EmpiricalCoupling::second_marginal() const {
    std::vector<Vec3> a;
    a.reserve(pairs.size());
    for (const auto& p : pairs) a.push_back(p.second);
    return EmpiricalMeasure(std::move(a));
}

// V diag(1/√λ) Vᵀ for strictly PD input (caller has checked).
static Mat3 inv_sqrt_pd(const Sym3& s) {
    const EigDecomp e = sym3_eigh(s);
    Mat3 out;
    for (int k = 0; k < 3; ++k) {
        const double w = 1.0 / std::sqrt(e.lambda[k]);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                out.m[i][j] += w * e.vectors.m[i][k] * e.vectors.m[j][k];
    }
    return out;
}

static void require_pd(const Sym3& s, const char* who) {
    const EigDecomp e = sym3_eigh(s);
    if (!(e.lambda[0] > 1e-12 * (1.0 + std::abs(trace(s)))))
        throw SingularInput(std::string(who) + ": matrix not strictly PD");
}

Mat3 gs_rotation(const Sym3& sigma1, const Sym3& sigma2) {
    require_pd(sigma1, "gs_rotation");
    require_pd(sigma2, "gs_rotation");

    const Sym3 s1 = sym3_sqrt(sigma1);
    // Σ₁^{1/2} Σ₂ Σ₁^{1/2}, symmetric up to rounding
    const Mat3 mid = to_mat(s1) * to_mat(sigma2) * to_mat(s1);
    const Sym3 mid_sqrt = sym3_sqrt(sym_part(mid));
    Mat3 u = inv_sqrt_pd(sigma2) * inv_sqrt_pd(sigma1) * to_mat(mid_sqrt);

    // Newton–Schulz polish toward the polar factor: the exact U is orthogonal,
    // this strips the rounding drift from the triple product without moving
    // the rotation itself beyond O(drift).
    for (int it = 0; it < 4; ++it) {
        const Mat3 gram = transpose(u) * u;
        const Mat3 defect = gram - Mat3::identity();
        if (frob2(defect) < 1e-26) break;
        u = 1.5 * u - 0.5 * (u * gram);
    }
    return u;
}

Mat3 gs_rotation_eps(const Sym3& sigma1, const Sym3& sigma2, double eps) {
    if (!(eps > 0.0 && eps < 1.0))
        throw InvalidArgument("gs_rotation_eps: eps must lie in (0,1)");
    const Sym3 eye = Sym3::identity();
    return gs_rotation(sigma1 + eps * eye, sigma2 + eps * eye);
}

double gaussian_w2_cost(const Sym3& sigma1, const Sym3& sigma2) {
    const Sym3 s1 = sym3_sqrt(sigma1);
    const Mat3 mid = to_mat(s1) * to_mat(sigma2) * to_mat(s1);
    const Sym3 mid_sqrt = sym3_sqrt(sym_part(mid), 1e-10);
    const double cost = trace(sigma1) + trace(sigma2) - 2.0 * trace(mid_sqrt);
    return cost > 0.0 ? cost : 0.0;
}

Mat3 pair_rotation(Vec3 x, Vec3 y) {
    // canonical representative: first nonzero component of x positive, so
    // (x,y) and (−x,−y) run through bitwise-identical arithmetic
    double lead = x.x != 0.0 ? x.x : (x.y != 0.0 ? x.y : x.z);
    if (lead < 0.0) {
        x = -x;
        y = -y;
    }

    const double x2 = norm2(x);
    if (x2 == 0.0) return to_mat(kernel_sigma(y, Gamma(0.0)));

    const double xn = std::sqrt(x2);
    const Vec3 e1 = (1.0 / xn) * x;

    const double yn = std::sqrt(norm2(y));
    const Vec3 resid = y - dot(y, e1) * e1;
    const double rn = std::sqrt(norm2(resid));
    Vec3 e2;
    if (rn > 1e-12 * yn) {
        e2 = (1.0 / rn) * resid;
    } else {
        // y parallel to x (or zero): take the axis least aligned with e₁
        const double ax = std::abs(e1.x), ay = std::abs(e1.y), az = std::abs(e1.z);
        Vec3 axis = (ax <= ay && ax <= az) ? Vec3{1, 0, 0}
                   : (ay <= az)            ? Vec3{0, 1, 0}
                                           : Vec3{0, 0, 1};
        const Vec3 g = axis - dot(axis, e1) * e1;
        e2 = (1.0 / std::sqrt(norm2(g))) * g;
    }
    const Vec3 e3 = cross(e1, e2);

    // A = −(y·e₂) e₁e₂ᵀ + (y·e₁) e₂e₂ᵀ + |y| e₃e₃ᵀ
    const double ye1 = dot(y, e1), ye2 = dot(y, e2);
    Mat3 a;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            a.m[i][j] = -ye2 * e1[i] * e2[j] + ye1 * e2[i] * e2[j] + yn * e3[i] * e3[j];
    return a;
}

double gamma_eps(const EmpiricalCoupling& r, Gamma g, double eps, GammaEpsArg arg) {
    if (eps < 0.0) throw InvalidArgument("gamma_eps: eps must be >= 0");
    const EmpiricalMeasure f_marg = r.first_marginal();
    const EmpiricalMeasure g_marg = r.second_marginal();

    double acc = 0.0;
    for (const auto& [v, w] : r.pairs) {
        const Sym3 af = field_a(f_marg, v, g);
        const Sym3 ag_w = field_a(g_marg, w, g);
        const Sym3 ag_rot = arg == GammaEpsArg::g_field_at_w ? ag_w : field_a(g_marg, v, g);

        Mat3 u;
        if (eps > 0.0) {
            u = gs_rotation_eps(af, ag_rot, eps);
        } else {
            require_pd(af, "gamma_eps");   // a(f,v) at this atom
            require_pd(ag_w, "gamma_eps"); // a(g,w) at this atom
            u = gs_rotation(af, ag_rot);
        }

        const Mat3 diff = to_mat(sym3_sqrt(af)) - to_mat(sym3_sqrt(ag_w)) * u;
        const Vec3 db = field_b(f_marg, v, g) - field_b(g_marg, w, g);
        acc += frob2(diff) + 2.0 * dot(v - w, db);
    }
    return acc / double(r.size());
}

double rousset_d(const EmpiricalCoupling& r) {
    const std::size_t n = r.size();
    const auto& pairs = r.pairs;
    // per-row partial sums in a fixed j order, reduced sequentially over i:
    // result is independent of the number of threads
    std::vector<double> row(n, 0.0);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(n); ++i) {
        double s = 0.0;
        const Vec3 v = pairs[i].first, w = pairs[i].second;
        for (std::size_t j = 0; j < n; ++j) {
            const Vec3 dv = v - pairs[j].first;
            const Vec3 dw = w - pairs[j].second;
            s += std::sqrt(norm2(dv) * norm2(dw)) - dot(dv, dw);
        }
        row[i] = s;
    }
    double total = 0.0;
    for (double s : row) total += s;
    return total / (double(n) * double(n));
}

} // namespace landau
