#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "b3b/balance.hpp"
#include "b3b/shape.hpp"

namespace b3b {

enum class FamilyId { Long = 0, Short1 = 1, Short2 = 2 };

/// Analytic straight-line families that appear when two masses coincide,
/// written in the sorted-mass frame at c = 1.
enum class IsoLine { None, DiagAB, VertB1, HorizA1 };

struct FamilySample {
    double b, a;
    double area2;
    bool euler = false;  // sits on the flat-triangle ellipse
};

/// One curve of balanced configurations traced over the extended triangle
/// of shapes at c = 1, samples ordered by the varying coordinate.
struct FamilyCurve {
    FamilyId id = FamilyId::Long;
    bool analytic = false;
    IsoLine line = IsoLine::None;
    int vary = 0;  // 0: parametrized by b; 1: by a (vertical isosceles line)
    std::vector<FamilySample> samples;
    std::vector<std::size_t> euler_indices;
};

inline Shape family_shape(const FamilySample& s) { return Shape{s.a, s.b, 1.0}; }

inline double family_param(const FamilyCurve& f, std::size_t i) {
    return std::log(f.vary == 0 ? f.samples[i].b : f.samples[i].a);
}

struct TraceGrid {
    double b_min = 1e-4;
    double b_max = 1e4;
    int samples = 257;  // log-spaced nodes; b = 1 is always inserted
};

struct TraceResult {
    std::array<FamilyCurve, 3> families;   // Long, Short1, Short2
    std::array<int, 3> permutation;        // sorted slot -> input body index
    MassTriple sorted;                     // masses in descending order
    bool pair12 = false, pair23 = false;   // equal pairs in the sorted frame
};

/// Newton continuation of a segment root from a nearby guess; empty if the
/// iteration leaves the trust region or no longer converges to a root.
inline std::optional<double> continue_root(const MassTriple& m, double b, double c,
                                           double guess) {
    double a = guess;
    for (int it = 0; it < 80; ++it) {
        const Shape s{a, b, c};
        const double f = balance_determinant(m, s);
        const double df = balance_gradient(m, s)[0];
        if (df == 0.0) return std::nullopt;
        double an = a - f / df;
        if (an <= 0.0) an = 0.5 * a;
        if (an > 8.0 * guess || an < guess / 8.0) return std::nullopt;
        const bool done = std::abs(an - a) <= 1e-15 * a;
        a = an;
        if (done) break;
    }
    if (std::abs(balance_determinant(m, Shape{a, b, c}))
        > 1e-12 * balance_scale(m, Shape{a, b, c}))
        return std::nullopt;
    return a;
}

namespace detail {

struct NodeRoots {
    double b;
    std::vector<double> roots;
    bool degenerate = false;
};

/// Blind continuation through the log-b node list, starting after `start`
/// in direction `dir`. Steps subdivide whenever the matched root jumps by
/// more than 5 percent, down to a relative floor of 1e-6; the branch ends
/// when even the floor step loses the root or `a` leaves (1e-7, 1e7).
inline std::vector<FamilySample> walk_nodes(const MassTriple& m,
                                            const std::vector<double>& lnb,
                                            std::size_t start, int dir, double a_start,
                                            const std::vector<NodeRoots>& node_roots) {
    constexpr double kJump = 0.05;
    constexpr double kFloor = 1e-6;
    constexpr double kALo = 1e-7, kAHi = 1e7;

    std::vector<FamilySample> out;
    double t_cur = lnb[start];
    double la_cur = std::log(a_start);
    double slope = 0.0;

    std::size_t node = start;
    while (true) {
        if (dir > 0 ? node + 1 >= lnb.size() : node == 0) break;
        const std::size_t next = dir > 0 ? node + 1 : node - 1;
        if (node_roots[next].degenerate) {  // hop over the identically-zero segment
            node = next;
            continue;
        }
        const double t_node = lnb[next];

        bool reached = false;
        double t_try = t_node;
        while (true) {
            const double la_pred = la_cur + slope * (t_try - t_cur);
            const auto root = continue_root(m, std::exp(t_try), 1.0, std::exp(la_pred));
            const bool ok = root && std::abs(std::log(*root) - la_cur) <= std::log1p(kJump);
            if (ok) {
                const double la_new = std::log(*root);
                slope = (la_new - la_cur) / (t_try - t_cur);
                t_cur = t_try;
                la_cur = la_new;
                const double b = std::exp(t_cur), a = *root;
                out.push_back({b, a, squared_area(Shape{a, b, 1.0}), false});
                if (!(a > kALo && a < kAHi)) return out;
                if (t_try == t_node) {
                    reached = true;
                    break;
                }
                t_try = t_node;
            } else {
                if (std::abs(t_try - t_cur) <= kFloor) return out;
                t_try = 0.5 * (t_try + t_cur);
            }
        }
        if (!reached) break;
        node = next;
    }
    return out;
}

inline FamilyCurve chain_to_curve(std::vector<FamilySample> down,
                                  FamilySample seed,
                                  std::vector<FamilySample> up) {
    FamilyCurve f;
    f.samples.reserve(down.size() + up.size() + 1);
    for (auto it = down.rbegin(); it != down.rend(); ++it) f.samples.push_back(*it);
    f.samples.push_back(seed);
    for (const auto& s : up) f.samples.push_back(s);
    return f;
}

/// Locate A^2 sign changes along a traced curve and insert a polished
/// sample at each crossing (the Euler configurations of Corollary form).
inline void mark_euler_crossings(const MassTriple& m, FamilyCurve& f) {
    if (f.analytic) {
        // straight lines have closed-form crossings
        double bE = 0.0, aE = 0.0;
        switch (f.line) {
            case IsoLine::DiagAB: bE = 0.25; aE = 0.25; break;
            case IsoLine::VertB1: bE = 1.0; aE = 4.0; break;
            case IsoLine::HorizA1: bE = 4.0; aE = 1.0; break;
            default: return;
        }
        const double key = f.vary == 0 ? bE : aE;
        auto pos = std::lower_bound(f.samples.begin(), f.samples.end(), key,
                                    [&](const FamilySample& s, double v) {
                                        return (f.vary == 0 ? s.b : s.a) < v;
                                    });
        if (pos == f.samples.begin() || pos == f.samples.end()) return;
        pos = f.samples.insert(pos, FamilySample{bE, aE, 0.0, true});
        f.euler_indices.push_back(std::size_t(pos - f.samples.begin()));
        return;
    }

    std::vector<FamilySample> extra;
    for (std::size_t i = 0; i + 1 < f.samples.size(); ++i) {
        const auto& s1 = f.samples[i];
        const auto& s2 = f.samples[i + 1];
        if ((s1.area2 > 0.0) == (s2.area2 > 0.0)) continue;
        double tlo = std::log(s1.b), thi = std::log(s2.b);
        double alo = s1.a;
        double flo = s1.area2;
        for (int it = 0; it < 80 && std::abs(thi - tlo) > 1e-13; ++it) {
            const double tm = 0.5 * (tlo + thi);
            const auto root = continue_root(m, std::exp(tm), 1.0, alo);
            if (!root) break;
            const double f2 = squared_area(Shape{*root, std::exp(tm), 1.0});
            if ((f2 > 0.0) == (flo > 0.0)) {
                tlo = tm;
                alo = *root;
                flo = f2;
            } else {
                thi = tm;
            }
        }
        const double bE = std::exp(0.5 * (tlo + thi));
        const auto aE = continue_root(m, bE, 1.0, alo);
        if (aE)
            extra.push_back({bE, *aE, squared_area(Shape{*aE, bE, 1.0}), true});
    }
    for (const auto& e : extra) {
        auto pos = std::lower_bound(f.samples.begin(), f.samples.end(), e.b,
                                    [](const FamilySample& s, double v) { return s.b < v; });
        f.samples.insert(pos, e);
    }
    for (std::size_t i = 0; i < f.samples.size(); ++i)
        if (f.samples[i].euler) f.euler_indices.push_back(i);
}

inline FamilyCurve analytic_line(IsoLine line, const std::vector<double>& lnb) {
    FamilyCurve f;
    f.analytic = true;
    f.line = line;
    f.vary = (line == IsoLine::VertB1) ? 1 : 0;
    for (double t : lnb) {
        const double v = std::exp(t);
        FamilySample s{};
        switch (line) {
            case IsoLine::DiagAB: s = {v, v, 0.0, false}; break;
            case IsoLine::VertB1: s = {1.0, v, 0.0, false}; break;
            default: s = {v, 1.0, 0.0, false}; break;
        }
        s.area2 = squared_area(family_shape(s));
        f.samples.push_back(s);
    }
    return f;
}

} // namespace detail

/// Trace the three smooth families of balanced configurations at c = 1.
/// Masses are sorted descending internally (the permutation is recorded);
/// families with an equal mass pair degenerate to straight isosceles lines
/// and are emitted analytically. Short1 is the traced short family with the
/// larger median b.
inline TraceResult trace_families(const MassTriple& m_in, const TraceGrid& grid = {}) {
    if (!(grid.b_min > 0.0 && grid.b_max > grid.b_min && grid.samples >= 16))
        throw std::domain_error("trace_families: invalid grid");

    TraceResult out;
    std::array<int, 3> perm{0, 1, 2};
    std::sort(perm.begin(), perm.end(),
              [&](int i, int j) { return m_in[i] > m_in[j]; });
    out.permutation = perm;
    const MassTriple m = symmetric_mass_functions(m_in[perm[0]], m_in[perm[1]], m_in[perm[2]]);
    out.sorted = m;
    out.pair12 = std::abs(m.m1 - m.m2) <= 1e-9 * m.M;
    out.pair23 = std::abs(m.m2 - m.m3) <= 1e-9 * m.M;

    // log grid with b = 1 inserted exactly
    std::vector<double> lnb;
    lnb.reserve(grid.samples + 1);
    const double t0 = std::log(grid.b_min), t1 = std::log(grid.b_max);
    for (int i = 0; i < grid.samples; ++i)
        lnb.push_back(t0 + (t1 - t0) * i / (grid.samples - 1));
    if (t0 < 0.0 && t1 > 0.0) lnb.push_back(0.0);
    std::sort(lnb.begin(), lnb.end());
    lnb.erase(std::unique(lnb.begin(), lnb.end(),
                          [](double u, double v) { return std::abs(u - v) < 1e-12; }),
              lnb.end());
    const std::size_t node_one =
        std::size_t(std::lower_bound(lnb.begin(), lnb.end(), -1e-12) - lnb.begin());

    if (out.pair12 && out.pair23) {  // all masses equal: three straight lines
        out.families[0] = detail::analytic_line(IsoLine::DiagAB, lnb);
        out.families[1] = detail::analytic_line(IsoLine::VertB1, lnb);
        out.families[2] = detail::analytic_line(IsoLine::HorizA1, lnb);
        out.families[0].id = FamilyId::Long;
        out.families[1].id = FamilyId::Short1;
        out.families[2].id = FamilyId::Short2;
        for (auto& f : out.families) detail::mark_euler_crossings(m, f);
        return out;
    }

    // per-node segment roots, used for discovering the short families
    std::vector<detail::NodeRoots> node_roots(lnb.size());
    for (std::size_t i = 0; i < lnb.size(); ++i) {
        node_roots[i].b = std::exp(lnb[i]);
        const auto seg = roots_on_a_segment(m, node_roots[i].b, 1.0);
        node_roots[i].degenerate = seg.identically_zero;
        node_roots[i].roots = seg.roots;
    }

    // the long family: through the Lagrange point, or an analytic line
    FamilyCurve longf;
    if (out.pair12) {
        longf = detail::analytic_line(IsoLine::DiagAB, lnb);
    } else if (out.pair23) {
        longf = detail::analytic_line(IsoLine::VertB1, lnb);
    } else {
        auto down = detail::walk_nodes(m, lnb, node_one, -1, 1.0, node_roots);
        auto up = detail::walk_nodes(m, lnb, node_one, +1, 1.0, node_roots);
        longf = detail::chain_to_curve(std::move(down),
                                       FamilySample{1.0, 1.0, squared_area({1, 1, 1}), false},
                                       std::move(up));
    }
    longf.id = FamilyId::Long;

    // leftover roots not claimed by the long family seed the short chains
    auto claimed_by = [](const FamilyCurve& f, double b, double a) {
        for (const auto& s : f.samples)
            if (std::abs(std::log(s.b / b)) < 1e-10 && std::abs(std::log(s.a / a)) < 1e-5)
                return true;
        return false;
    };

    std::vector<FamilyCurve> shorts;
    for (std::size_t i = 0; i < lnb.size(); ++i) {
        if (node_roots[i].degenerate) continue;
        for (double a : node_roots[i].roots) {
            const double b = node_roots[i].b;
            if (out.pair12 && std::abs(std::log(a / b)) < 1e-6) continue;  // isosceles line
            if (!out.pair12 && !out.pair23 && claimed_by(longf, b, a)) continue;
            bool taken = false;
            for (const auto& sf : shorts)
                if (claimed_by(sf, b, a)) {
                    taken = true;
                    break;
                }
            if (taken) continue;

            auto down = detail::walk_nodes(m, lnb, i, -1, a, node_roots);
            auto up = detail::walk_nodes(m, lnb, i, +1, a, node_roots);
            FamilyCurve f = detail::chain_to_curve(
                std::move(down), FamilySample{b, a, squared_area(Shape{a, b, 1.0}), false},
                std::move(up));
            if (f.samples.size() >= 3) shorts.push_back(std::move(f));
        }
    }
    if (shorts.size() > 2) {
        std::sort(shorts.begin(), shorts.end(), [](const FamilyCurve& x, const FamilyCurve& y) {
            return x.samples.size() > y.samples.size();
        });
        shorts.resize(2);
    }
    if (shorts.size() != 2)
        throw std::runtime_error("trace_families: expected two short families, found "
                                 + std::to_string(shorts.size()));

    auto median_b = [](const FamilyCurve& f) {
        std::vector<double> bs;
        bs.reserve(f.samples.size());
        for (const auto& s : f.samples) bs.push_back(s.b);
        std::nth_element(bs.begin(), bs.begin() + bs.size() / 2, bs.end());
        return bs[bs.size() / 2];
    };
    if (median_b(shorts[0]) < median_b(shorts[1])) std::swap(shorts[0], shorts[1]);
    shorts[0].id = FamilyId::Short1;
    shorts[1].id = FamilyId::Short2;

    out.families[0] = std::move(longf);
    out.families[1] = std::move(shorts[0]);
    out.families[2] = std::move(shorts[1]);
    for (auto& f : out.families) detail::mark_euler_crossings(m, f);
    return out;
}

} // namespace b3b
