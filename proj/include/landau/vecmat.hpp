#pragma once

// 3-vector / symmetric-3x3 / general-3x3 linear algebra used everywhere:
// eigendecomposition (cyclic Jacobi), PSD square root, and the generalized
// inverse-sqrt application B = M^{-1/2}A that acts as the identity on ker M.

#include <array>
#include <cmath>

#include "landau/errors.hpp"

namespace landau {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    double& operator[](int i) { return (&x)[i]; }
    double operator[](int i) const { return (&x)[i]; }
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator-(Vec3 a) { return {-a.x, -a.y, -a.z}; }
inline Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
inline Vec3& operator+=(Vec3& a, Vec3 b) { a = a + b; return a; }
inline Vec3& operator-=(Vec3& a, Vec3 b) { a = a - b; return a; }

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm2(Vec3 a) { return dot(a, a); }
inline double norm(Vec3 a) { return std::sqrt(norm2(a)); }
inline bool finite(Vec3 a) {
    return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

// Row-major general 3x3.
struct Mat3 {
    double m[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};

    double* operator[](int r) { return m[r]; }
    const double* operator[](int r) const { return m[r]; }

    static Mat3 identity() {
        Mat3 r;
        r.m[0][0] = r.m[1][1] = r.m[2][2] = 1.0;
        return r;
    }
};

Mat3 operator+(const Mat3& a, const Mat3& b);
Mat3 operator-(const Mat3& a, const Mat3& b);
Mat3 operator*(double s, const Mat3& a);
Mat3 operator*(const Mat3& a, const Mat3& b);
Vec3 operator*(const Mat3& a, Vec3 v);
Mat3 transpose(const Mat3& a);
// outer(u,v) = u v^T
Mat3 outer(Vec3 u, Vec3 v);
double trace(const Mat3& a);
// ‖A‖² = tr(A Aᵀ), the Frobenius square used in all matrix norms here.
double frob2(const Mat3& a);
// ⟨⟨A,B⟩⟩ = tr(A Bᵀ)
double frob_inner(const Mat3& a, const Mat3& b);
bool finite(const Mat3& a);

// Symmetric 3x3, unique entries only.
struct Sym3 {
    double xx = 0, xy = 0, xz = 0, yy = 0, yz = 0, zz = 0;

    static Sym3 identity() { return {1, 0, 0, 1, 0, 1}; }
};

Sym3 operator+(const Sym3& a, const Sym3& b);
Sym3 operator-(const Sym3& a, const Sym3& b);
Sym3 operator*(double s, const Sym3& a);
Vec3 operator*(const Sym3& a, Vec3 v);
// vvᵀ as a Sym3
Sym3 sym_outer(Vec3 v);
Mat3 to_mat(const Sym3& s);
// (A+Aᵀ)/2; used to re-symmetrize products that are symmetric in exact arithmetic
Sym3 sym_part(const Mat3& a);
double trace(const Sym3& s);
double frob2(const Sym3& s);
bool finite(const Sym3& s);

struct EigDecomp {
    std::array<double, 3> lambda; // ascending
    Mat3 vectors;                 // columns are the matching eigenvectors
};

// Cyclic Jacobi sweeps; rotation orthogonal, V·diag(λ)·Vᵀ = S to 1e-12 relative.
// Throws InvalidArgument on non-finite input.
EigDecomp sym3_eigh(const Sym3& s);

// PSD square root via eigh. Eigenvalues in [−clip·(1+tr S), 0) clamp to 0;
// anything lower throws NotPsd.
Sym3 sym3_sqrt(const Sym3& s, double clip = 1e-12);

// Generalized B = M^{-1/2} A with ker(M) directions acting as the identity:
// B = Σ_{λ_k>τ} λ_k^{-1/2} e_k e_kᵀ A + Σ_{λ_k≤τ} e_k e_kᵀ, τ = 1e-12·(1+tr M).
// Requires A to annihilate ker(M): ‖e_kᵀA‖ ≤ tol·(1+‖A‖) on every kernel
// eigenvector, else InconsistentRange. Then sym3_sqrt(M)·B = A.
Mat3 pinv_sqrt_apply(const Sym3& m, const Mat3& a, double tol = 1e-9);

} // namespace landau
