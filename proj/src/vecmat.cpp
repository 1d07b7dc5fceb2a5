#include "landau/vecmat.hpp"

#include <algorithm>
#include <cmath>

namespace landau {

Mat3 operator+(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.m[i][j] = a.m[i][j] + b.m[i][j];
    return r;
}

Mat3 operator-(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.m[i][j] = a.m[i][j] - b.m[i][j];
    return r;
}

Mat3 operator*(double s, const Mat3& a) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.m[i][j] = s * a.m[i][j];
    return r;
}

Mat3 operator*(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            r.m[i][j] = a.m[i][0] * b.m[0][j] + a.m[i][1] * b.m[1][j] + a.m[i][2] * b.m[2][j];
    return r;
}

Vec3 operator*(const Mat3& a, Vec3 v) {
    return {a.m[0][0] * v.x + a.m[0][1] * v.y + a.m[0][2] * v.z,
            a.m[1][0] * v.x + a.m[1][1] * v.y + a.m[1][2] * v.z,
            a.m[2][0] * v.x + a.m[2][1] * v.y + a.m[2][2] * v.z};
}

Mat3 transpose(const Mat3& a) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.m[i][j] = a.m[j][i];
    return r;
}

Mat3 outer(Vec3 u, Vec3 v) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.m[i][j] = u[i] * v[j];
    return r;
}

double trace(const Mat3& a) { return a.m[0][0] + a.m[1][1] + a.m[2][2]; }

double frob2(const Mat3& a) {
    double s = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s += a.m[i][j] * a.m[i][j];
    return s;
}

double frob_inner(const Mat3& a, const Mat3& b) {
    double s = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s += a.m[i][j] * b.m[i][j];
    return s;
}

bool finite(const Mat3& a) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (!std::isfinite(a.m[i][j])) return false;
    return true;
}

Sym3 operator+(const Sym3& a, const Sym3& b) {
    return {a.xx + b.xx, a.xy + b.xy, a.xz + b.xz, a.yy + b.yy, a.yz + b.yz, a.zz + b.zz};
}

Sym3 operator-(const Sym3& a, const Sym3& b) {
    return {a.xx - b.xx, a.xy - b.xy, a.xz - b.xz, a.yy - b.yy, a.yz - b.yz, a.zz - b.zz};
}

Sym3 operator*(double s, const Sym3& a) {
    return {s * a.xx, s * a.xy, s * a.xz, s * a.yy, s * a.yz, s * a.zz};
}

Vec3 operator*(const Sym3& a, Vec3 v) {
    return {a.xx * v.x + a.xy * v.y + a.xz * v.z,
            a.xy * v.x + a.yy * v.y + a.yz * v.z,
            a.xz * v.x + a.yz * v.y + a.zz * v.z};
}

Sym3 sym_outer(Vec3 v) {
    return {v.x * v.x, v.x * v.y, v.x * v.z, v.y * v.y, v.y * v.z, v.z * v.z};
}

Mat3 to_mat(const Sym3& s) {
    Mat3 r;
    r.m[0][0] = s.xx; r.m[0][1] = s.xy; r.m[0][2] = s.xz;
    r.m[1][0] = s.xy; r.m[1][1] = s.yy; r.m[1][2] = s.yz;
    r.m[2][0] = s.xz; r.m[2][1] = s.yz; r.m[2][2] = s.zz;
    return r;
}

Sym3 sym_part(const Mat3& a) {
    return {a.m[0][0], 0.5 * (a.m[0][1] + a.m[1][0]), 0.5 * (a.m[0][2] + a.m[2][0]),
            a.m[1][1], 0.5 * (a.m[1][2] + a.m[2][1]), a.m[2][2]};
}

double trace(const Sym3& s) { return s.xx + s.yy + s.zz; }

double frob2(const Sym3& s) {
    return s.xx * s.xx + s.yy * s.yy + s.zz * s.zz +
           2.0 * (s.xy * s.xy + s.xz * s.xz + s.yz * s.yz);
}

bool finite(const Sym3& s) {
    return std::isfinite(s.xx) && std::isfinite(s.xy) && std::isfinite(s.xz) &&
           std::isfinite(s.yy) && std::isfinite(s.yz) && std::isfinite(s.zz);
}

EigDecomp sym3_eigh(const Sym3& s) {
    if (!finite(s)) throw InvalidArgument("sym3_eigh: non-finite input");

    double a[3][3] = {{s.xx, s.xy, s.xz}, {s.xy, s.yy, s.yz}, {s.xz, s.yz, s.zz}};
    double v[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};

    // Cyclic Jacobi: quadratic convergence, a handful of sweeps suffices for 3x3.
    const double scale = frob2(s);
    const double stop = 1e-30 * (1.0 + scale);
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
        if (off <= stop) break;
        for (int p = 0; p < 2; ++p) {
            for (int q = p + 1; q < 3; ++q) {
                const double apq = a[p][q];
                if (apq == 0.0) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                const double tau = sn / (1.0 + c);

                const double app = a[p][p], aqq = a[q][q];
                a[p][p] = app - t * apq;
                a[q][q] = aqq + t * apq;
                a[p][q] = a[q][p] = 0.0;
                const int r = 3 - p - q; // the remaining index
                const double arp = a[r][p], arq = a[r][q];
                a[r][p] = a[p][r] = arp - sn * (arq + tau * arp);
                a[r][q] = a[q][r] = arq + sn * (arp - tau * arq);
                for (int k = 0; k < 3; ++k) {
                    const double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = vkp - sn * (vkq + tau * vkp);
                    v[k][q] = vkq + sn * (vkp - tau * vkq);
                }
            }
        }
    }

    int order[3] = {0, 1, 2};
    std::sort(order, order + 3, [&](int i, int j) { return a[i][i] < a[j][j]; });

    EigDecomp out;
    for (int c = 0; c < 3; ++c) {
        out.lambda[c] = a[order[c]][order[c]];
        for (int r = 0; r < 3; ++r) out.vectors.m[r][c] = v[r][order[c]];
    }
    return out;
}

// Rebuild V·diag(d)·Vᵀ, symmetric by construction.
static Sym3 reassemble(const Mat3& vcols, const std::array<double, 3>& d) {
    Sym3 out{};
    for (int k = 0; k < 3; ++k) {
        const Vec3 e{vcols.m[0][k], vcols.m[1][k], vcols.m[2][k]};
        out = out + d[k] * sym_outer(e);
    }
    return out;
}

Sym3 sym3_sqrt(const Sym3& s, double clip) {
    EigDecomp eig = sym3_eigh(s);
    const double floor_neg = -clip * (1.0 + std::abs(trace(s)));
    std::array<double, 3> d;
    for (int k = 0; k < 3; ++k) {
        double lam = eig.lambda[k];
        if (lam < floor_neg)
            throw NotPsd("sym3_sqrt: eigenvalue below -clip*(1+tr)");
        d[k] = lam > 0.0 ? std::sqrt(lam) : 0.0;
    }
    return reassemble(eig.vectors, d);
}

Mat3 pinv_sqrt_apply(const Sym3& m, const Mat3& a, double tol) {
    if (!finite(a)) throw InvalidArgument("pinv_sqrt_apply: non-finite A");
    EigDecomp eig = sym3_eigh(m);
    const double tau = 1e-12 * (1.0 + std::abs(trace(m)));
    if (eig.lambda[0] < -tau) throw NotPsd("pinv_sqrt_apply: M not PSD");

    const double a_scale = 1.0 + std::sqrt(frob2(a));
    Mat3 b; // accumulates Σ λ^{-1/2} e eᵀ A + Σ_ker e eᵀ
    for (int k = 0; k < 3; ++k) {
        const Vec3 e{eig.vectors.m[0][k], eig.vectors.m[1][k], eig.vectors.m[2][k]};
        if (eig.lambda[k] <= tau) {
            // eᵀA must vanish for M^{1/2}B = A to be solvable
            const Vec3 row{e.x * a.m[0][0] + e.y * a.m[1][0] + e.z * a.m[2][0],
                           e.x * a.m[0][1] + e.y * a.m[1][1] + e.z * a.m[2][1],
                           e.x * a.m[0][2] + e.y * a.m[1][2] + e.z * a.m[2][2]};
            if (norm(row) > tol * a_scale)
                throw InconsistentRange("pinv_sqrt_apply: A has mass on ker(M)");
            b = b + outer(e, e);
        } else {
            const double inv_sqrt = 1.0 / std::sqrt(eig.lambda[k]);
            // λ^{-1/2} e (eᵀ A)
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    b.m[i][j] += inv_sqrt * e[i] *
                                 (e.x * a.m[0][j] + e.y * a.m[1][j] + e.z * a.m[2][j]);
        }
    }
    return b;
}

} // namespace landau
