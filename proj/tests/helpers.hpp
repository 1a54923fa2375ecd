#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

#include "b3b/masses.hpp"
#include "b3b/shape.hpp"

namespace testutil {

inline double rel_err(double got, double want) {
    if (want == 0.0) return std::abs(got);
    return std::abs(got - want) / std::abs(want);
}

/// Centered difference with one Richardson step.
inline double deriv(const std::function<double(double)>& f, double x, double h) {
    const double d1 = (f(x + h) - f(x - h)) / (2.0 * h);
    const double d2 = (f(x + h / 2) - f(x - h / 2)) / h;
    return (4.0 * d2 - d1) / 3.0;
}

/// Count sign changes of f over a dense log grid on (lo, hi); crude and
/// independent of any bracketing logic in the library.
inline int dense_sign_scan_roots(const std::function<double(double)>& f,
                                 double lo, double hi, int points) {
    int count = 0;
    double pf = f(lo);
    for (int i = 1; i <= points; ++i) {
        const double x = lo * std::pow(hi / lo, double(i) / points);
        const double fx = f(x);
        if ((fx > 0.0) != (pf > 0.0)) ++count;
        pf = fx;
    }
    return count;
}

/// Unique positive root of the collinear three-body quintic for the order
/// 1,2,3 with chi = r23/r12:
///   (m1+m2) x^5 + (3m1+2m2) x^4 + (3m1+m2) x^3
///     - (m2+3m3) x^2 - (2m2+3m3) x - (m2+m3) = 0
inline double euler_quintic_root(const b3b::MassTriple& m) {
    auto q = [&](double x) {
        return ((((m.m1 + m.m2) * x + (3 * m.m1 + 2 * m.m2)) * x + (3 * m.m1 + m.m2)) * x
                - (m.m2 + 3 * m.m3)) * x * x
               - (2 * m.m2 + 3 * m.m3) * x - (m.m2 + m.m3);
    };
    double lo = 1e-9, hi = 1e9;
    if (q(lo) >= 0.0 || q(hi) <= 0.0) throw std::runtime_error("quintic not bracketed");
    for (int it = 0; it < 400; ++it) {
        const double mid = std::sqrt(lo * hi);
        (q(mid) < 0.0 ? lo : hi) = mid;
        if (hi - lo < 1e-15 * hi) break;
    }
    return 0.5 * (lo + hi);
}

inline std::mt19937_64 rng(std::uint64_t seed = 0x5eed3b0d4ull) {
    return std::mt19937_64(seed);
}

inline b3b::MassTriple random_masses(std::mt19937_64& g, double lo = 0.1, double hi = 3.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    return b3b::symmetric_mass_functions(u(g), u(g), u(g));
}

} // namespace testutil
