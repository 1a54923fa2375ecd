#pragma once

#include <cmath>
#include <stdexcept>

namespace b3b {

/// Three positive point masses (units with G = 1) together with the
/// symmetric functions M = m1+m2+m3, M2 = m1m2+m2m3+m3m1, M3 = m1m2m3.
/// The symmetric functions are always recomputed from the masses.
struct MassTriple {
    double m1, m2, m3;
    double M, M2, M3;

    double operator[](int i) const { return i == 0 ? m1 : (i == 1 ? m2 : m3); }
};

inline MassTriple symmetric_mass_functions(double m1, double m2, double m3) {
    if (!(std::isfinite(m1) && std::isfinite(m2) && std::isfinite(m3)))
        throw std::domain_error("symmetric_mass_functions: masses must be finite");
    if (!(m1 > 0.0 && m2 > 0.0 && m3 > 0.0))
        throw std::domain_error("symmetric_mass_functions: masses must be positive");
    return MassTriple{m1, m2, m3,
                      m1 + m2 + m3,
                      m1 * m2 + m2 * m3 + m3 * m1,
                      m1 * m2 * m3};
}

} // namespace b3b
