#pragma once

// Randomized batteries for the exact frame identities: the lift of the
// (lambda, mu) family into R x R^2, the cyclic sum, and the frame
// decomposition of the isotropic reaction term.

#include "conditions.hpp"
#include "flow.hpp"

#include <cstdint>
#include <string>
#include <string_view>

namespace curvlab {

enum class IdentitySuite { lift, cyclic, decomposition };

inline double identity_tolerance(IdentitySuite s) {
    switch (s) {
        case IdentitySuite::lift: return 1e-12;
        case IdentitySuite::cyclic: return 1e-11;
        case IdentitySuite::decomposition: return 1e-10;
    }
    return 0.0;
}

inline std::string_view to_string(IdentitySuite s) {
    switch (s) {
        case IdentitySuite::lift: return "lift";
        case IdentitySuite::cyclic: return "cyclic";
        case IdentitySuite::decomposition: return "decomposition";
    }
    return "?";
}

struct BatteryResult {
    IdentitySuite suite = IdentitySuite::lift;
    int trials = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

/// Trial i draws n in {4..8}, R = random_tensor, F = random_frame and
/// weights uniform on [-1, 1]^2, all from streams derived from (seed, i).
inline BatteryResult run_identity_battery(IdentitySuite suite, int trials, std::uint64_t seed) {
    if (trials < 1) throw Error(Errc::invalid_argument, "trials must be >= 1");
    BatteryResult out{suite, trials, 0.0, identity_tolerance(suite), false};
    for (int i = 0; i < trials; ++i) {
        const auto s = derive_seed(seed, static_cast<std::uint64_t>(i));
        Rng rng = make_rng(s, 1);
        const int n = 4 + static_cast<int>(std::uniform_int_distribution<int>(0, 4)(rng));
        const Weights w = Weights::make(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0));
        const CurvatureTensor r = random_tensor(derive_seed(s, 2), n);
        const Frame4 f = random_frame(derive_seed(s, 3), n);
        double res = 0.0;
        switch (suite) {
            case IdentitySuite::lift: res = lift_identity_check(r, f, w); break;
            case IdentitySuite::cyclic: res = cyclic_sum_check(r, f, w).residual; break;
            case IdentitySuite::decomposition: res = decomposition_check(r, f).residual; break;
        }
        out.max_residual = std::max(out.max_residual, res);
    }
    out.pass = out.max_residual < out.tolerance;
    return out;
}

} // namespace curvlab
