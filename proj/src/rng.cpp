#include "landau/rng.hpp"

#include <stdexcept>

namespace landau::detail {

// Equal-area slab construction for the standard normal half-density
// f(x) = exp(-x²/2). r is the canonical 256-layer tail start; the slab area v
// follows from r, so the recursion closes at the peak by itself.
const ZigTables& zig_tables() {
    static const ZigTables tables = [] {
        ZigTables t{};
        const double r = 3.6541528853610088;
        auto f = [](double x) { return std::exp(-0.5 * x * x); };
        const double v =
            r * f(r) + std::sqrt(1.5707963267948966) * std::erfc(r / std::sqrt(2.0));

        t.r = r;
        t.inv_r = 1.0 / r;
        t.X[0] = v / f(r); // virtual width: base rectangle area comes out to exactly v
        t.X[1] = r;
        t.Y[0] = 0.0;
        t.Y[1] = f(r);
        for (int i = 1; i < 256; ++i) {
            double y_next = t.Y[i] + v / t.X[i];
            if (y_next >= 1.0) y_next = 1.0;
            t.Y[i + 1] = y_next;
            t.X[i + 1] = y_next >= 1.0 ? 0.0 : std::sqrt(-2.0 * std::log(y_next));
        }
        t.X[256] = 0.0;
        t.Y[256] = 1.0;
        for (int i = 0; i < 256; ++i) t.ratio[i] = t.X[i + 1] / t.X[i];

        // the recursion must consume the whole area: top slab ends at the peak
        if (t.Y[255] < 0.9 || t.X[255] <= 0.0)
            throw std::logic_error("ziggurat table construction failed");
        return t;
    }();
    return tables;
}

} // namespace landau::detail
