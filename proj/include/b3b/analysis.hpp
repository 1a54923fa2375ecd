#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "b3b/equilibrium.hpp"
#include "b3b/families.hpp"

namespace b3b {

/// One lifted point of a family: axis-paired (theta_i, omega_i, mu_i) kept
/// continuous along the curve (no per-sample reordering), the scaled
/// energy-momentum pair and its parameter derivatives.
struct LiftedSample {
    double param = 0.0;  // ln b, or ln a on a vertical line
    Shape shape{1, 1, 1};
    double area2 = 0.0;
    double theta1 = 0.0, theta2 = 0.0;
    double omega1 = 0.0, omega2 = 0.0;
    double mu1 = 0.0, mu2 = 0.0;
    double H = 0.0, h = 0.0, k = 0.0;
    double C = std::numeric_limits<double>::quiet_NaN();
    double hprime = std::numeric_limits<double>::quiet_NaN();
    double kprime = std::numeric_limits<double>::quiet_NaN();
    double slope = std::numeric_limits<double>::quiet_NaN();
    bool euler = false;
    bool acute = false;
    bool cusp_flag = false;      // nearest sample to a detected cusp
    bool kquarter_flag = false;  // nearest sample to a detected k = 1/4 touch
};

struct CuspPoint {
    double param;
    double h, k;
};

struct KQuarterPoint {
    double param;
    double h;
    bool cusp;  // C = 0 as well (cusp at k = 1/4)
};

struct LiftedFamily {
    FamilyId id = FamilyId::Long;
    bool analytic = false;
    std::vector<LiftedSample> samples;  // the contiguous physical run
    std::vector<CuspPoint> cusps;
    std::vector<KQuarterPoint> kquarter;
};

namespace detail {

inline void swap_axes(BalancedEquilibrium& eq) {
    eq.planar.x.swap(eq.planar.y);
    std::swap(eq.planar.theta1, eq.planar.theta2);
    std::swap(eq.omega1, eq.omega2);
    std::swap(eq.mu1, eq.mu2);
}

/// Choose the axis pairing of `eq` that tracks the reference values.
inline void match_pairing(BalancedEquilibrium& eq, double th1_ref, double om1_ref,
                          double th2_ref, double om2_ref) {
    const double ths = th1_ref + th2_ref;
    const double oms = om1_ref + om2_ref;
    auto dist = [&](double t1, double o1, double t2, double o2) {
        return std::abs(t1 - th1_ref) / ths + std::abs(t2 - th2_ref) / ths
               + std::abs(o1 - om1_ref) / oms + std::abs(o2 - om2_ref) / oms;
    };
    if (dist(eq.planar.theta2, eq.omega2, eq.planar.theta1, eq.omega1)
        < dist(eq.planar.theta1, eq.omega1, eq.planar.theta2, eq.omega2))
        swap_axes(eq);
}

/// Derivative on a non-uniform three-point stencil.
inline double centered3(double fm, double f0, double fp, double hm, double hp) {
    return (hm * hm * fp - hp * hp * fm + (hp * hp - hm * hm) * f0)
           / (hm * hp * (hm + hp));
}

} // namespace detail

/// Evaluate a traced family at an arbitrary parameter value: shapes by root
/// continuation from the nearest stored samples (closed form on analytic
/// lines), lifts with axis pairing matched to a reference sample.
class FamilyEvaluator {
  public:
    FamilyEvaluator(const MassTriple& m, const FamilyCurve& curve)
        : m_(m), curve_(curve) {}

    Shape shape_at(double param) const {
        const double v = std::exp(param);
        if (curve_.analytic) {
            switch (curve_.line) {
                case IsoLine::DiagAB: return Shape{v, v, 1.0};
                case IsoLine::VertB1: return Shape{v, 1.0, 1.0};
                case IsoLine::HorizA1: return Shape{v, 1.0, 1.0};
                default: break;
            }
        }
        // nearest samples bracketing the parameter
        const auto& ss = curve_.samples;
        if (ss.size() < 2) throw std::domain_error("FamilyEvaluator: curve too short");
        std::size_t hi = 1;
        while (hi + 1 < ss.size() && family_param(curve_, hi) < param) ++hi;
        const std::size_t lo = hi - 1;
        const double t0 = family_param(curve_, lo), t1 = family_param(curve_, hi);
        const double la0 = std::log(ss[lo].a), la1 = std::log(ss[hi].a);
        const double la = la0 + (la1 - la0) * (param - t0) / (t1 - t0);
        const auto root = continue_root(m_, v, 1.0, std::exp(la));
        if (!root)
            throw std::runtime_error("FamilyEvaluator: root continuation failed");
        return Shape{*root, v, 1.0};
    }

    BalancedEquilibrium lift_at(double param, const LiftedSample* ref = nullptr) const {
        BalancedEquilibrium eq = lift(m_, shape_at(param));
        if (ref)
            detail::match_pairing(eq, ref->theta1, ref->omega1, ref->theta2, ref->omega2);
        return eq;
    }

    /// (H, mu1, mu2) on the cone (family parameter, log length scale).
    void cone_point(double param, double sigma, const LiftedSample& ref,
                    double& H, double& mu1, double& mu2) const {
        BalancedEquilibrium eq = lift(m_, shape_at(param), std::exp(sigma));
        detail::match_pairing(eq, ref.theta1, ref.omega1, ref.theta2, ref.omega2);
        H = eq.hamiltonian;
        mu1 = eq.mu1;
        mu2 = eq.mu2;
    }

    const MassTriple& masses() const { return m_; }
    const FamilyCurve& curve() const { return curve_; }

  private:
    MassTriple m_;
    FamilyCurve curve_;
};

/// C = mu1' mu2 - mu2' mu1 at a parameter value, by a centered stencil with
/// one Richardson step, pairing matched to the reference sample.
inline double family_C(const FamilyEvaluator& ev, double param, const LiftedSample& ref,
                       double step = 1e-5) {
    auto mus = [&](double t) {
        double H, m1, m2;
        ev.cone_point(t, 0.0, ref, H, m1, m2);
        return std::pair<double, double>(m1, m2);
    };
    auto C_of = [&](double h) {
        const auto [m1p, m2p] = mus(param + h);
        const auto [m1m, m2m] = mus(param - h);
        const double d1 = (m1p - m1m) / (2 * h);
        const double d2 = (m2p - m2m) / (2 * h);
        return d1 * ref.mu2 - d2 * ref.mu1;
    };
    return (4.0 * C_of(step / 2) - C_of(step)) / 3.0;
}

/// Lift the contiguous physical run of a traced curve. Axis pairing is made
/// continuous along the run, then C, h', k' are filled by non-uniform
/// centered differences and the slope formula
/// dk/dh = (mu2 - mu1) / (omega1 - omega2) (mu1 + mu2)^{-4} is evaluated.
inline LiftedFamily lift_family(const MassTriple& m, const FamilyCurve& curve) {
    LiftedFamily out;
    out.id = curve.id;
    out.analytic = curve.analytic;

    // longest contiguous run with A^2 >= -eps
    std::size_t best_lo = 0, best_len = 0, lo = 0;
    for (std::size_t i = 0; i <= curve.samples.size(); ++i) {
        const bool ok = i < curve.samples.size()
                        && curve.samples[i].area2
                               >= -squared_area_epsilon(family_shape(curve.samples[i]));
        if (!ok) {
            if (i - lo > best_len) {
                best_len = i - lo;
                best_lo = lo;
            }
            lo = i + 1;
        }
    }
    if (best_len == 0) return out;

    out.samples.reserve(best_len);
    for (std::size_t i = best_lo; i < best_lo + best_len; ++i) {
        const auto& cs = curve.samples[i];
        BalancedEquilibrium eq = lift(m, family_shape(cs));
        if (!out.samples.empty()) {
            const auto& prev = out.samples.back();
            detail::match_pairing(eq, prev.theta1, prev.omega1, prev.theta2, prev.omega2);
        }
        LiftedSample s;
        s.param = family_param(curve, i);
        s.shape = eq.shape;
        s.area2 = cs.area2;
        s.theta1 = eq.planar.theta1;
        s.theta2 = eq.planar.theta2;
        s.omega1 = eq.omega1;
        s.omega2 = eq.omega2;
        s.mu1 = eq.mu1;
        s.mu2 = eq.mu2;
        s.H = eq.hamiltonian;
        const double sum = s.mu1 + s.mu2;
        s.h = s.H * sum * sum;
        s.k = s.mu1 * s.mu2 / (sum * sum);
        s.euler = cs.euler;
        s.acute = is_acute(s.shape);
        const double dw = s.omega1 - s.omega2;
        s.slope = (s.mu2 - s.mu1) / dw / (sum * sum * sum * sum);
        out.samples.push_back(s);
    }

    // parameter derivatives on the grid
    for (std::size_t i = 1; i + 1 < out.samples.size(); ++i) {
        auto& s = out.samples[i];
        const auto& sm = out.samples[i - 1];
        const auto& sp = out.samples[i + 1];
        const double hm = s.param - sm.param, hp = sp.param - s.param;
        if (!(hm > 0.0 && hp > 0.0)) continue;
        const double d1 = detail::centered3(sm.mu1, s.mu1, sp.mu1, hm, hp);
        const double d2 = detail::centered3(sm.mu2, s.mu2, sp.mu2, hm, hp);
        s.C = d1 * s.mu2 - d2 * s.mu1;
        s.hprime = detail::centered3(sm.h, s.h, sp.h, hm, hp);
        s.kprime = detail::centered3(sm.k, s.k, sp.k, hm, hp);
    }
    return out;
}

/// Bracket sign changes of C along the lifted run and bisect each to a
/// parameter tolerance of 1e-10. At a cusp both h' and k' vanish.
inline std::vector<CuspPoint> detect_cusps(const FamilyEvaluator& ev, LiftedFamily& fam) {
    std::vector<CuspPoint> cusps;
    const auto& ss = fam.samples;
    for (std::size_t i = 1; i + 2 < ss.size(); ++i) {
        const double c0 = ss[i].C, c1 = ss[i + 1].C;
        if (std::isnan(c0) || std::isnan(c1)) continue;
        if ((c0 > 0.0) == (c1 > 0.0)) continue;
        double lo = ss[i].param, hi = ss[i + 1].param;
        double flo = c0;
        const LiftedSample& ref = ss[i];
        for (int it = 0; it < 80 && hi - lo > 1e-10; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = family_C(ev, mid, ref);
            if ((fm > 0.0) == (flo > 0.0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        const double t = 0.5 * (lo + hi);
        const auto eq = ev.lift_at(t, &ss[i]);
        const auto em = scaled_energy_momentum(eq);
        cusps.push_back({t, em.h, em.k});
        fam.samples[(std::abs(ss[i].param - t) < std::abs(ss[i + 1].param - t)) ? i : i + 1]
            .cusp_flag = true;
    }
    fam.cusps = cusps;
    return cusps;
}

/// Parameter values with mu1 = mu2 (k touching 1/4), bisected on the
/// axis-paired difference; reports whether C vanishes there as well.
inline std::vector<KQuarterPoint> detect_k_quarter(const FamilyEvaluator& ev,
                                                   LiftedFamily& fam) {
    std::vector<KQuarterPoint> touches;
    const auto& ss = fam.samples;
    for (std::size_t i = 0; i + 1 < ss.size(); ++i) {
        const double d0 = ss[i].mu1 - ss[i].mu2;
        const double d1 = ss[i + 1].mu1 - ss[i + 1].mu2;
        if ((d0 > 0.0) == (d1 > 0.0)) continue;
        const LiftedSample& ref = ss[i];
        auto diff = [&](double t) {
            double H, m1, m2;
            ev.cone_point(t, 0.0, ref, H, m1, m2);
            return m1 - m2;
        };
        double lo = ss[i].param, hi = ss[i + 1].param, flo = d0;
        for (int it = 0; it < 80 && hi - lo > 1e-10; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = diff(mid);
            if ((fm > 0.0) == (flo > 0.0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        const double t = 0.5 * (lo + hi);
        const auto eq = ev.lift_at(t, &ss[i]);
        const auto em = scaled_energy_momentum(eq);
        const double C = family_C(ev, t, ref);
        const double Cscale = (eq.mu1 + eq.mu2) * (eq.mu1 + eq.mu2);
        touches.push_back({t, em.h, std::abs(C) < 1e-6 * Cscale});
        fam.samples[(std::abs(ss[i].param - t) < std::abs(ss[i + 1].param - t)) ? i : i + 1]
            .kquarter_flag = true;
    }
    fam.kquarter = touches;
    return touches;
}

struct DarbouxReport {
    double max_rel_dev = 0.0;
    int used = 0;
    int skipped = 0;
};

/// Frequencies from the energy: reconstruct dH/dmu_i by two-variable finite
/// differences on the cone (family parameter, scale) and compare to omega_i.
/// Samples where the chart degenerates (C near zero) are skipped.
inline DarbouxReport darboux_frequency_check(const FamilyEvaluator& ev,
                                             const LiftedFamily& fam,
                                             std::size_t max_samples = 40) {
    DarbouxReport rep;
    const auto& ss = fam.samples;
    if (ss.size() < 5) return rep;

    double cscale = 0.0;
    for (const auto& s : ss)
        if (!std::isnan(s.C)) cscale = std::max(cscale, std::abs(s.C));

    const std::size_t stride = std::max<std::size_t>(1, ss.size() / max_samples);
    for (std::size_t i = 2; i + 2 < ss.size(); i += stride) {
        const auto& s = ss[i];
        if (std::isnan(s.C) || std::abs(s.C) < 0.05 * cscale) {
            ++rep.skipped;
            continue;
        }
        const double dt = 1e-5 * std::max(1.0, std::abs(s.param));
        const double dsg = 1e-5;
        double Hp, Hm, m1p, m1m, m2p, m2m;
        double Hsp, Hsm, m1sp, m1sm, m2sp, m2sm;
        ev.cone_point(s.param + dt, 0.0, s, Hp, m1p, m2p);
        ev.cone_point(s.param - dt, 0.0, s, Hm, m1m, m2m);
        ev.cone_point(s.param, dsg, s, Hsp, m1sp, m2sp);
        ev.cone_point(s.param, -dsg, s, Hsm, m1sm, m2sm);

        Eigen::Matrix2d A;
        A << (m1p - m1m) / (2 * dt), (m2p - m2m) / (2 * dt),
             (m1sp - m1sm) / (2 * dsg), (m2sp - m2sm) / (2 * dsg);
        const Eigen::Vector2d rhs((Hp - Hm) / (2 * dt), (Hsp - Hsm) / (2 * dsg));
        const Eigen::Vector2d w = A.fullPivLu().solve(rhs);

        rep.max_rel_dev = std::max(rep.max_rel_dev,
                                   std::abs(w[0] - s.omega1) / s.omega1);
        rep.max_rel_dev = std::max(rep.max_rel_dev,
                                   std::abs(w[1] - s.omega2) / s.omega2);
        ++rep.used;
    }
    return rep;
}

struct ConjectureCounts {
    int k_quarter = 0;   // configurations with mu1 = mu2 on the family
    int h_critical = 0;  // sign changes of h'
    int k_critical = 0;  // sign changes of k'
};

inline ConjectureCounts conjecture_counts(const LiftedFamily& fam) {
    ConjectureCounts c;
    c.k_quarter = int(fam.kquarter.size());
    const auto& ss = fam.samples;
    for (std::size_t i = 1; i + 2 < ss.size(); ++i) {
        if (!std::isnan(ss[i].hprime) && !std::isnan(ss[i + 1].hprime)
            && (ss[i].hprime > 0.0) != (ss[i + 1].hprime > 0.0))
            ++c.h_critical;
        if (!std::isnan(ss[i].kprime) && !std::isnan(ss[i + 1].kprime)
            && (ss[i].kprime > 0.0) != (ss[i + 1].kprime > 0.0))
            ++c.k_critical;
    }
    return c;
}

} // namespace b3b
