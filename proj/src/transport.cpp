#include "landau/transport.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

namespace landau {

// Dense linear assignment, exact. Column-reduction warm start (assigns a
// large fraction of rows up front on geometric instances), then one shortest
// augmenting path per remaining free row, Dijkstra with a dense candidate
// scan. Returns π with col4row[i] = matched column of row i.
static std::vector<std::size_t> solve_assignment(const std::vector<double>& cost,
                                                 std::size_t n) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n, 0.0), v(n, 0.0);
    std::vector<std::ptrdiff_t> col4row(n, -1), row4col(n, -1);

    // column reduction, reverse column order: v[j] = min_i C(i,j), assign the
    // argmin row if still free; duals stay feasible, matched arcs stay tight
    for (std::ptrdiff_t j = std::ptrdiff_t(n) - 1; j >= 0; --j) {
        double best = cost[std::size_t(j)];
        std::size_t bi = 0;
        for (std::size_t i = 1; i < n; ++i) {
            const double c = cost[i * n + std::size_t(j)];
            if (c < best) {
                best = c;
                bi = i;
            }
        }
        v[std::size_t(j)] = best;
        if (col4row[bi] == -1) {
            col4row[bi] = j;
            row4col[std::size_t(j)] = std::ptrdiff_t(bi);
        }
    }

    std::vector<double> shortest(n);
    std::vector<std::size_t> remaining(n), scanned_cols, scanned_rows, path(n);
    scanned_cols.reserve(n);
    scanned_rows.reserve(n);

    for (std::size_t cur = 0; cur < n; ++cur) {
        if (col4row[cur] != -1) continue;

        std::fill(shortest.begin(), shortest.end(), inf);
        for (std::size_t k = 0; k < n; ++k) remaining[k] = k;
        std::size_t n_remaining = n;
        scanned_cols.clear();
        scanned_rows.clear();

        double min_val = 0.0;
        std::ptrdiff_t sink = -1;
        std::size_t i = cur;
        while (sink == -1) {
            scanned_rows.push_back(i);
            const double* row = cost.data() + i * n;
            const double ui = u[i];
            double lowest = inf;
            std::size_t index = 0;
            for (std::size_t it = 0; it < n_remaining; ++it) {
                const std::size_t j = remaining[it];
                const double r = min_val + row[j] - ui - v[j];
                if (r < shortest[j]) {
                    path[j] = i;
                    shortest[j] = r;
                }
                if (shortest[j] < lowest ||
                    (shortest[j] == lowest && row4col[j] == -1)) {
                    lowest = shortest[j];
                    index = it;
                }
            }
            min_val = lowest;
            const std::size_t jstar = remaining[index];
            if (row4col[jstar] == -1)
                sink = std::ptrdiff_t(jstar);
            else
                i = std::size_t(row4col[jstar]);
            scanned_cols.push_back(jstar);
            remaining[index] = remaining[--n_remaining];
        }

        u[cur] += min_val;
        for (const std::size_t r : scanned_rows)
            if (r != cur) u[r] += min_val - shortest[std::size_t(col4row[r])];
        for (const std::size_t j : scanned_cols) v[j] -= min_val - shortest[j];

        // flip the alternating path back to cur
        std::size_t j = std::size_t(sink);
        for (;;) {
            const std::size_t pi = path[j];
            row4col[j] = std::ptrdiff_t(pi);
            const std::ptrdiff_t prev = col4row[pi];
            col4row[pi] = std::ptrdiff_t(j);
            if (pi == cur) break;
            j = std::size_t(prev);
        }
    }

    std::vector<std::size_t> out(n);
    for (std::size_t r = 0; r < n; ++r) out[r] = std::size_t(col4row[r]);
    return out;
}

AssignmentResult w2sq_empirical(const EmpiricalMeasure& x, const EmpiricalMeasure& y) {
    const std::size_t n = x.size();
    if (y.size() != n) throw InvalidArgument("w2sq_empirical: size mismatch");
    if (n > 8192) throw InvalidArgument("w2sq_empirical: N > 8192 unsupported (exactness envelope)");

    std::vector<double> cost(n * n);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(n); ++i) {
        const Vec3 xi = x.atoms[std::size_t(i)];
        double* row = cost.data() + std::size_t(i) * n;
        for (std::size_t j = 0; j < n; ++j) row[j] = norm2(xi - y.atoms[j]);
    }

    AssignmentResult res;
    res.permutation = solve_assignment(cost, n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += cost[i * n + res.permutation[i]];
    res.cost = total / double(n);
    return res;
}

double w2sq_lower_bound(const EmpiricalMeasure& x, const EmpiricalMeasure& y) {
    auto stats = [](const EmpiricalMeasure& m) {
        Vec3 mean{};
        for (const Vec3& v : m.atoms) mean += v;
        mean = (1.0 / double(m.size())) * mean;
        double var = 0.0;
        for (const Vec3& v : m.atoms) var += norm2(v - mean);
        return std::pair<Vec3, double>(mean, var / double(m.size()));
    };
    const auto [mx, vx] = stats(x);
    const auto [my, vy] = stats(y);
    const double dv = std::sqrt(vx) - std::sqrt(vy);
    return dv * dv + norm2(mx - my);
}

static EmpiricalMeasure gaussian_sample(std::size_t n, const Sym3& sqrt_cov, Rng& rng) {
    std::vector<Vec3> atoms(n);
    for (Vec3& a : atoms) a = sqrt_cov * rng.normal3();
    return EmpiricalMeasure(std::move(atoms));
}

double w2sq_vs_gaussian(const EmpiricalMeasure& x, const Sym3& cov, std::size_t n_ref,
                        Rng& rng) {
    if (n_ref != x.size())
        throw InvalidArgument("w2sq_vs_gaussian: matched sizes required (n_ref = |X|)");
    const Sym3 s = sym3_sqrt(cov);
    return w2sq_empirical(x, gaussian_sample(n_ref, s, rng)).cost;
}

double w2sq_gaussian_floor(std::size_t n, const Sym3& cov, Rng& rng) {
    const Sym3 s = sym3_sqrt(cov);
    const EmpiricalMeasure a = gaussian_sample(n, s, rng);
    const EmpiricalMeasure b = gaussian_sample(n, s, rng);
    return w2sq_empirical(a, b).cost;
}

double w2sq_sliced(const EmpiricalMeasure& x, const EmpiricalMeasure& y,
                   std::size_t n_directions, Rng& rng) {
    const std::size_t n = x.size();
    if (y.size() != n) throw InvalidArgument("w2sq_sliced: size mismatch");
    if (n_directions == 0) throw InvalidArgument("w2sq_sliced: need directions");

    std::vector<double> px(n), py(n);
    double acc = 0.0;
    for (std::size_t d = 0; d < n_directions; ++d) {
        Vec3 dir = rng.normal3();
        double dn = norm(dir);
        while (!(dn > 0.0)) {
            dir = rng.normal3();
            dn = norm(dir);
        }
        dir = (1.0 / dn) * dir;
        for (std::size_t i = 0; i < n; ++i) {
            px[i] = dot(x.atoms[i], dir);
            py[i] = dot(y.atoms[i], dir);
        }
        std::sort(px.begin(), px.end());
        std::sort(py.begin(), py.end());
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double diff = px[i] - py[i];
            s += diff * diff;
        }
        acc += s / double(n);
    }
    // one random direction carries 1/3 of the squared norm in expectation
    return 3.0 * acc / double(n_directions);
}

} // namespace landau
