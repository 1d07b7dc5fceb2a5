#include "landau/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace landau {

ParticleEnsemble make_ensemble(std::vector<Vec3> velocities, Gamma gamma) {
    if (velocities.size() < 2) throw InvalidArgument("ensemble needs N >= 2");
    ParticleEnsemble ens{std::move(velocities), gamma};
    for (const Vec3& v : ens.velocities) {
        if (!finite(v)) throw InvalidArgument("ensemble velocity not finite");
        ens.ref_momentum += v;
        ens.ref_energy += norm2(v);
    }
    return ens;
}

PairedEnsemble make_paired(ParticleEnsemble v, ParticleEnsemble w, double eps) {
    if (v.velocities.size() != w.velocities.size())
        throw InvalidArgument("paired ensemble sides must have equal N");
    if (v.gamma.value != w.gamma.value)
        throw InvalidArgument("paired ensemble sides must share gamma");
    if (!(eps >= 0.0)) throw InvalidArgument("paired ensemble eps must be >= 0");
    return PairedEnsemble{std::move(v), std::move(w), eps};
}

NoisePlan::NoisePlan(std::uint64_t seed_)
    : seed(seed_),
      key_pair(mix64(seed_ ^ 0x70616972ull)),
      key_ord(mix64(seed_ ^ 0x6f726472ull)),
      key_part(mix64(seed_ ^ 0x70617274ull)) {}

NoisePlan NoisePlan::silent() {
    NoisePlan p(0);
    p.enabled = false;
    return p;
}

// counter layout: pairwise/ordered pack (step, i, j); per-particle packs the
// channel high so the three families plus distinct keys can never collide
static std::uint64_t pack_pair(std::size_t step, std::uint64_t a, std::uint64_t b) {
    return (std::uint64_t(step) << 32) | (a << 16) | b;
}

Vec3 NoisePlan::pairwise(std::size_t step, std::size_t i, std::size_t j) const {
    if (!enabled || i == j) return Vec3{};
    const std::uint64_t a = map(i), b = map(j);
    const std::uint64_t lo = a < b ? a : b, hi = a < b ? b : a;
    CtrStream s(key_pair, pack_pair(step, lo, hi));
    const Vec3 g = s.next_normal3();
    return a < b ? g : -g;
}

Vec3 NoisePlan::ordered(std::size_t step, std::size_t i, std::size_t j) const {
    if (!enabled || i == j) return Vec3{};
    CtrStream s(key_ord, pack_pair(step, map(i), map(j)));
    return s.next_normal3();
}

Vec3 NoisePlan::per_particle(std::size_t step, std::size_t i, unsigned channel) const {
    if (!enabled) return Vec3{};
    CtrStream s(key_part, (std::uint64_t(channel) << 56) |
                              (std::uint64_t(step) << 16) | map(i));
    return s.next_normal3();
}

static void check_envelope(const std::vector<Vec3>& v, std::size_t step) {
    for (const Vec3& w : v)
        if (!(norm2(w) <= 1e12))
            throw BlowUp(step, "velocity left the sanity envelope (|V| > 1e6 or non-finite) at step " +
                                   std::to_string(step));
}

// Row-oriented pair sweep: particle i accumulates over all j in ascending
// order, so each row's sum has a fixed floating-point evaluation order and
// the result is independent of the thread count. GK selects the γ fast path.
template <int GK>
static void pair_sweep(const double* x, const double* y, const double* z,
                       const double* nx, const double* ny, const double* nz,
                       std::size_t n, double gamma, double bscale, double sscale,
                       const NoisePlan* plan, std::size_t step, bool antisym,
                       std::vector<Vec3>& out) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t ip = 0; ip < std::ptrdiff_t(n); ++ip) {
        const std::size_t i = std::size_t(ip);
        const double xi = x[i], yi = y[i], zi = z[i];
        double ax = 0.0, ay = 0.0, az = 0.0;
        const double* rnx = nx ? nx + i * n : nullptr;
        const double* rny = ny ? ny + i * n : nullptr;
        const double* rnz = nz ? nz + i * n : nullptr;
        for (std::size_t j = 0; j < n; ++j) {
            const double dx = xi - x[j], dy = yi - y[j], dz = zi - z[j];
            const double r2 = dx * dx + dy * dy + dz * dz;
            const double inv = r2 > 0.0 ? 1.0 / r2 : 0.0;
            double w, s; // w = |Δ|^γ, s = |Δ|^{1+γ/2}
            if constexpr (GK == 0) {
                w = 1.0;
                s = std::sqrt(r2);
            } else if constexpr (GK == 1) {
                const double r = std::sqrt(r2);
                w = r;
                s = r * std::sqrt(r);
            } else {
                w = std::pow(r2, 0.5 * gamma);
                s = std::sqrt(r2 * w);
            }
            double gx, gy, gz;
            if (rnx) {
                gx = rnx[j];
                gy = rny[j];
                gz = rnz[j];
            } else if (plan) {
                const Vec3 g = antisym ? plan->pairwise(step, i, j)
                                       : plan->ordered(step, i, j);
                gx = g.x;
                gy = g.y;
                gz = g.z;
            } else {
                gx = gy = gz = 0.0;
            }
            // drift (dt/N)b(Δ) = bscale·w·Δ; diffusion σ(Δ)ξ = s·ξ − (s/r²)(Δ·ξ)Δ
            const double d = dx * gx + dy * gy + dz * gz;
            const double cd = bscale * w - sscale * s * inv * d;
            const double cn = sscale * s;
            ax += cd * dx + cn * gx;
            ay += cd * dy + cn * gy;
            az += cd * dz + cn * gz;
        }
        out[i].x += ax;
        out[i].y += ay;
        out[i].z += az;
    }
}

static void step_engine(ParticleEnsemble& ens, double dt, const NoisePlan& noise,
                        bool antisym) {
    if (!(dt > 0.0)) throw InvalidArgument("step: dt must be > 0");
    const std::size_t n = ens.velocities.size();
    const double g = ens.gamma.value;
    const std::size_t step = ens.step_index;

    std::vector<double> x(n), y(n), z(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = ens.velocities[i].x;
        y[i] = ens.velocities[i].y;
        z[i] = ens.velocities[i].z;
    }

    // N×N increment planes keep the inner loop branch-free and contiguous;
    // above the memory threshold increments are regenerated per row instead
    // (keyed draws are pure, so both rows of a pair see identical values)
    const bool cache = noise.enabled && n <= 1024;
    std::vector<double> nx, ny, nz;
    if (cache) {
        nx.assign(n * n, 0.0);
        ny.assign(n * n, 0.0);
        nz.assign(n * n, 0.0);
        if (antisym) {
#pragma omp parallel for schedule(dynamic, 16)
            for (std::ptrdiff_t ip = 0; ip < std::ptrdiff_t(n); ++ip) {
                const std::size_t i = std::size_t(ip);
                for (std::size_t j = i + 1; j < n; ++j) {
                    const Vec3 gv = noise.pairwise(step, i, j);
                    nx[i * n + j] = gv.x;
                    ny[i * n + j] = gv.y;
                    nz[i * n + j] = gv.z;
                    nx[j * n + i] = -gv.x;
                    ny[j * n + i] = -gv.y;
                    nz[j * n + i] = -gv.z;
                }
            }
        } else {
#pragma omp parallel for schedule(static)
            for (std::ptrdiff_t ip = 0; ip < std::ptrdiff_t(n); ++ip) {
                const std::size_t i = std::size_t(ip);
                for (std::size_t j = 0; j < n; ++j) {
                    if (i == j) continue;
                    const Vec3 gv = noise.ordered(step, i, j);
                    nx[i * n + j] = gv.x;
                    ny[i * n + j] = gv.y;
                    nz[i * n + j] = gv.z;
                }
            }
        }
    }

    std::vector<Vec3> out = ens.velocities;
    const double bscale = -2.0 * dt / double(n);
    const double sscale = std::sqrt(dt / double(n));
    const double* pnx = cache ? nx.data() : nullptr;
    const double* pny = cache ? ny.data() : nullptr;
    const double* pnz = cache ? nz.data() : nullptr;
    const NoisePlan* plan = (!cache && noise.enabled) ? &noise : nullptr;

    if (g == 0.0)
        pair_sweep<0>(x.data(), y.data(), z.data(), pnx, pny, pnz, n, g, bscale,
                      sscale, plan, step, antisym, out);
    else if (g == 1.0)
        pair_sweep<1>(x.data(), y.data(), z.data(), pnx, pny, pnz, n, g, bscale,
                      sscale, plan, step, antisym, out);
    else
        pair_sweep<2>(x.data(), y.data(), z.data(), pnx, pny, pnz, n, g, bscale,
                      sscale, plan, step, antisym, out);

    check_envelope(out, step + 1);
    ens.velocities = std::move(out);
    ens.step_index += 1;
    ens.t += dt;
}

void step_conservative(ParticleEnsemble& ens, double dt, const NoisePlan& noise) {
    step_engine(ens, dt, noise, true);
}

void step_nonconservative(ParticleEnsemble& ens, double dt, const NoisePlan& noise) {
    step_engine(ens, dt, noise, false);
}

void project_conservation(ParticleEnsemble& ens) {
    const std::size_t n = ens.velocities.size();
    const Vec3 target_mean = (1.0 / double(n)) * ens.ref_momentum;

    Vec3 mean{};
    for (const Vec3& v : ens.velocities) mean += v;
    mean = (1.0 / double(n)) * mean;
    for (Vec3& v : ens.velocities) v += target_mean - mean;

    // Σ|v|² = Σ|v−m|² + N|m|²: rescale the centered part onto the reference
    double centered = 0.0;
    for (const Vec3& v : ens.velocities) centered += norm2(v - target_mean);
    const double target_centered =
        ens.ref_energy - double(n) * norm2(target_mean);
    if (!(centered > 0.0) || !(target_centered > 0.0))
        throw DegenerateProjection("project_conservation: zero centered energy");
    const double scale = std::sqrt(target_centered / centered);
    for (Vec3& v : ens.velocities) v = target_mean + scale * (v - target_mean);
}

Vec3 step_nonlinear(Vec3 w, const EmpiricalMeasure& field, Gamma g, double dt, Vec3 xi) {
    if (!(dt > 0.0)) throw InvalidArgument("step_nonlinear: dt must be > 0");
    const Vec3 drift = field_b(field, w, g);
    const Sym3 diff = field_a_sqrt(field, w, g);
    return w + dt * drift + std::sqrt(dt) * (diff * xi);
}

double step_coupled_pair(PairedEnsemble& p, double dt, const NoisePlan& noise) {
    if (!(dt > 0.0)) throw InvalidArgument("step_coupled_pair: dt must be > 0");
    if (p.v_side.gamma.value != 0.0)
        throw InvalidArgument("step_coupled_pair: pairing matrix requires gamma = 0");
    const std::size_t n = p.v_side.velocities.size();
    const std::size_t step = p.v_side.step_index;
    const auto& v = p.v_side.velocities;
    const auto& w = p.w_side.velocities;

    std::vector<Vec3> accv(n), accw(n);
    const double bscale = dt / double(n);
    const double sscale = std::sqrt(dt / double(n));
    double dist_sum = 0.0; // Σ_{i<j} [ |ΔV||ΔW| − ΔV·ΔW ]

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Vec3 dv = v[i] - v[j];
            const Vec3 dw = w[i] - w[j];
            const Vec3 xi = noise.pairwise(step, i, j);

            // V-side: b(ΔV) = −2ΔV, σ(ΔV)ξ = |ΔV|ξ − (|ΔV|/r²)(ΔV·ξ)ΔV
            const double r2 = norm2(dv);
            const double s = std::sqrt(r2);
            const Vec3 sig_xi =
                r2 > 0.0 ? s * xi - (s / r2) * dot(dv, xi) * dv : Vec3{};
            const Vec3 dvi = (-2.0 * bscale) * dv + sscale * sig_xi;
            accv[i] += dvi;
            accv[j] -= dvi;

            // W-side rides the same increment through the pairing matrix
            const Mat3 a = pair_rotation(dv, dw);
            const Vec3 a_xi = a * xi;
            const Vec3 dwi = (-2.0 * bscale) * dw + sscale * a_xi;
            accw[i] += dwi;
            accw[j] -= dwi;

            dist_sum += std::sqrt(norm2(dv) * norm2(dw)) - dot(dv, dw);
        }
    }

    if (p.eps > 0.0) {
        const double es = p.eps * std::sqrt(dt);
        for (std::size_t i = 0; i < n; ++i) {
            accv[i] += es * noise.per_particle(step, i, kChanAuxV);
            accw[i] += es * noise.per_particle(step, i, kChanAuxW);
        }
    }

    std::vector<Vec3> nv(n), nw(n);
    for (std::size_t i = 0; i < n; ++i) {
        nv[i] = v[i] + accv[i];
        nw[i] = w[i] + accw[i];
    }
    check_envelope(nv, step + 1);
    check_envelope(nw, step + 1);
    p.v_side.velocities = std::move(nv);
    p.w_side.velocities = std::move(nw);
    p.v_side.step_index += 1;
    p.w_side.step_index += 1;
    p.v_side.t += dt;
    p.w_side.t += dt;

    // discrete analogue of the distance identity: predicted decrement of
    // (1/N)Σ|V_i−W_i|² over this step
    return (2.0 * dt / (double(n) * double(n))) * (2.0 * dist_sum) -
           6.0 * p.eps * p.eps * dt;
}

namespace serial {

void step_conservative(ParticleEnsemble& ens, double dt, const NoisePlan& noise) {
    const std::size_t n = ens.velocities.size();
    const std::size_t step = ens.step_index;
    const Gamma g = ens.gamma;
    std::vector<Vec3> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        Vec3 drift{}, diff{};
        for (std::size_t j = 0; j < n; ++j) {
            const Vec3 d = ens.velocities[i] - ens.velocities[j];
            drift += kernel_b(d, g);
            diff += kernel_sigma(d, g) * noise.pairwise(step, i, j);
        }
        out[i] = ens.velocities[i] + (dt / double(n)) * drift +
                 std::sqrt(dt / double(n)) * diff;
    }
    check_envelope(out, step + 1);
    ens.velocities = std::move(out);
    ens.step_index += 1;
    ens.t += dt;
}

void step_nonconservative(ParticleEnsemble& ens, double dt, const NoisePlan& noise) {
    const std::size_t n = ens.velocities.size();
    const std::size_t step = ens.step_index;
    const Gamma g = ens.gamma;
    std::vector<Vec3> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        Vec3 drift{}, diff{};
        for (std::size_t j = 0; j < n; ++j) {
            const Vec3 d = ens.velocities[i] - ens.velocities[j];
            drift += kernel_b(d, g);
            diff += kernel_sigma(d, g) * noise.ordered(step, i, j);
        }
        out[i] = ens.velocities[i] + (dt / double(n)) * drift +
                 std::sqrt(dt / double(n)) * diff;
    }
    check_envelope(out, step + 1);
    ens.velocities = std::move(out);
    ens.step_index += 1;
    ens.t += dt;
}

double step_coupled_pair(PairedEnsemble& p, double dt, const NoisePlan& noise) {
    if (p.v_side.gamma.value != 0.0)
        throw InvalidArgument("step_coupled_pair: pairing matrix requires gamma = 0");
    const std::size_t n = p.v_side.velocities.size();
    const std::size_t step = p.v_side.step_index;
    const Gamma g = p.v_side.gamma;
    const auto& v = p.v_side.velocities;
    const auto& w = p.w_side.velocities;

    std::vector<Vec3> nv(n), nw(n);
    double dist_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        Vec3 driftv{}, diffv{}, driftw{}, diffw{};
        for (std::size_t j = 0; j < n; ++j) {
            const Vec3 dv = v[i] - v[j];
            const Vec3 dw = w[i] - w[j];
            const Vec3 xi = noise.pairwise(step, i, j);
            driftv += kernel_b(dv, g);
            diffv += kernel_sigma(dv, g) * xi;
            driftw += kernel_b(dw, g);
            diffw += pair_rotation(dv, dw) * xi;
            dist_sum += std::sqrt(norm2(dv) * norm2(dw)) - dot(dv, dw);
        }
        nv[i] = v[i] + (dt / double(n)) * driftv + std::sqrt(dt / double(n)) * diffv;
        nw[i] = w[i] + (dt / double(n)) * driftw + std::sqrt(dt / double(n)) * diffw;
        if (p.eps > 0.0) {
            const double es = p.eps * std::sqrt(dt);
            nv[i] += es * noise.per_particle(step, i, kChanAuxV);
            nw[i] += es * noise.per_particle(step, i, kChanAuxW);
        }
    }
    check_envelope(nv, step + 1);
    check_envelope(nw, step + 1);
    p.v_side.velocities = std::move(nv);
    p.w_side.velocities = std::move(nw);
    p.v_side.step_index += 1;
    p.w_side.step_index += 1;
    p.v_side.t += dt;
    p.w_side.t += dt;
    return (2.0 * dt / (double(n) * double(n))) * dist_sum -
           6.0 * p.eps * p.eps * dt;
}

} // namespace serial

DiagRow diagnose(const ParticleEnsemble& ens, double expmom_alpha) {
    const EmpiricalMeasure mu(ens.velocities);
    DiagRow row{};
    row.step = ens.step_index;
    row.t = ens.t;
    row.m2 = moment(mu, 2.0);
    row.m4 = moment(mu, 4.0);
    row.m6 = moment(mu, 6.0);
    const ExpMoment em = exp_moment(mu, expmom_alpha);
    row.expmom = em.saturated ? std::numeric_limits<double>::infinity() : em.value;

    Vec3 total{};
    double energy = 0.0, abs_sum = 0.0;
    for (const Vec3& v : ens.velocities) {
        total += v;
        energy += norm2(v);
        abs_sum += norm(v);
    }
    row.mom_res = norm(total - ens.ref_momentum) / (1.0 + abs_sum);
    row.energy_res = std::abs(energy - ens.ref_energy) / (1.0 + ens.ref_energy);
    row.cov = centered_cov(mu);
    row.w2_ref = std::numeric_limits<double>::quiet_NaN();
    return row;
}

} // namespace landau
