#ifndef SU11_DENSITY_HPP
#define SU11_DENSITY_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "su11/model.hpp"
#include "su11/parallel.hpp"
#include "su11/quadrature.hpp"
#include "su11/special_functions.hpp"
#include "su11/thermo.hpp"

namespace su11 {

// ---------------------------------------------------------------------------
// Fermion density n_f(lambda, T)
// ---------------------------------------------------------------------------

struct DensityPoint {
    double lambda = 0.0;
    double T = 0.0;
    double n_f = 0.0;
    std::optional<double> dn_dT;
};

namespace detail {

// 1/(1 + e^x) without overflow
inline double fermi_factor(double x) {
    if (x >= 0.0) {
        double t = std::exp(-x);
        return t / (1.0 + t);
    }
    return 1.0 / (1.0 + std::exp(x));
}

// sech^2(y/2) = 4 e^{-|y|} / (1 + e^{-|y|})^2
inline double sech2_half(double y) {
    double t = std::exp(-std::fabs(y));
    double d = 1.0 + t;
    return 4.0 * t / (d * d);
}

} // namespace detail

inline DensityPoint density(const ChainSpec& spec, const Dispersion& disp, double T,
                            double abs_tol = kQuadAbsTol, bool validate_grid = true) {
    if (T < 0.0) throw domain_error("density: T must be nonnegative");
    CriticalPoint cp = critical_point(spec, disp, validate_grid);
    DensityPoint out;
    out.lambda = spec.lambda;
    out.T = T;
    if (T == 0.0) {
        switch (cp.regime) {
            case Regime::BelowInterval:
            case Regime::LowerEndpoint: out.n_f = 0.0; break;
            case Regime::Critical: out.n_f = cp.p0 / kPi; break;
            case Regime::UpperEndpoint:
            case Regime::AboveInterval: out.n_f = 1.0; break;
        }
        return out;
    }
    const double beta = 1.0 / T;
    std::vector<double> pts;
    if (cp.regime == Regime::Critical) pts.push_back(cp.p0);
    auto r = integrate_split(
        [&](double p) { return detail::fermi_factor(beta * (disp(p) - spec.lambda)); }, 0.0,
        kPi, pts, abs_tol);
    out.n_f = r.value / kPi;
    return out;
}

// dn_f/dT = (beta^2/(4 pi)) int_0^pi (E(p)-lambda) sech^2[beta(E(p)-lambda)/2] dp
inline double density_T_derivative(const ChainSpec& spec, const Dispersion& disp, double T,
                                   double abs_tol = 1e-13, bool validate_grid = true) {
    if (!(T > 0.0)) throw domain_error("density_T_derivative: T must be positive");
    CriticalPoint cp = critical_point(spec, disp, validate_grid);
    const double beta = 1.0 / T;
    std::vector<double> pts;
    if (cp.regime == Regime::Critical) pts.push_back(cp.p0);
    auto r = integrate_split(
        [&](double p) {
            double u = disp(p) - spec.lambda;
            return u * detail::sech2_half(beta * u);
        },
        0.0, kPi, pts, abs_tol, 1e-9);
    return beta * beta / (4.0 * kPi) * r.value;
}

// ---------------------------------------------------------------------------
// Low-temperature expansion of n_f: n_f ~ constant + coefficient * T^exponent
// * exp(-gap/T)  (gap = 0 except outside the critical interval)
// ---------------------------------------------------------------------------

struct DensityExpansion {
    Regime regime = Regime::BelowInterval;
    double constant = 0.0;
    double coefficient = 0.0;
    double exponent = 0.0;
    double gap = 0.0;
};

namespace detail {

inline double dispersion_second_deriv(const Dispersion& disp, double p, double h = 1e-3) {
    auto d1 = [&disp](double x) { return disp.deriv(x); };
    return richardson_deriv(d1, p, 1, h);
}

} // namespace detail

inline DensityExpansion low_T_density(const ChainSpec& spec, const Dispersion& disp) {
    CriticalPoint cp = critical_point(spec, disp);
    DensityExpansion e;
    e.regime = cp.regime;
    const int k = disp.kappa();
    const int nu = disp.nu();
    const double a = disp.a_coef();
    const double b = disp.b_coef();
    switch (cp.regime) {
        case Regime::BelowInterval:
            e.coefficient = (a / kPi) * gamma_fn(1.0 + 1.0 / k);
            e.exponent = 1.0 / k;
            e.gap = -spec.lambda;
            return e;
        case Regime::LowerEndpoint:
            // (a/pi) Gamma(1+1/k) eta(1/k); for k = 1 this is (log 2/(pi v)) T
            e.coefficient = (a / kPi) * gamma_fn(1.0 + 1.0 / k) * dirichlet_eta(1.0 / k);
            e.exponent = 1.0 / k;
            return e;
        case Regime::Critical:
            e.constant = cp.p0 / kPi;
            e.coefficient = -kPi * detail::dispersion_second_deriv(disp, cp.p0) /
                            (6.0 * cp.v * cp.v * cp.v);
            e.exponent = 2.0;
            return e;
        case Regime::UpperEndpoint:
            e.constant = 1.0;
            e.coefficient = -(b / kPi) * gamma_fn(1.0 + 1.0 / nu) * dirichlet_eta(1.0 / nu);
            e.exponent = 1.0 / nu;
            return e;
        case Regime::AboveInterval:
            e.constant = 1.0;
            e.coefficient = -(b / kPi) * gamma_fn(1.0 + 1.0 / nu);
            e.exponent = 1.0 / nu;
            e.gap = spec.lambda - disp.e_pi();
            return e;
    }
    return e;
}

// ---------------------------------------------------------------------------
// Extremum-count phase map over the critical interval
// ---------------------------------------------------------------------------
//
// For each lambda in (0, E(pi)) count the sign changes of dn_f/dT on
// T in (0, T_max]: class 1 = single minimum, 2 = maximum then minimum,
// 3 = monotone, 4 = single maximum. lambda_1/2/3 are the class boundaries.

struct ExtremaMapConfig {
    int lambda_points = 400;
    int T_points = 200;
    double T_min_frac = 1e-3;    // floor of the T grid, in units of E(pi)
    double T_max_factor = 10.0;  // T_max = factor * E(pi)
    int quad_panels = 1024;      // fixed composite GK panels for the scans
    double lambda_tol = 1e-4;    // boundary bisection tolerance, units of E(pi)
    int threads = -1;
};

struct PhaseClassSample {
    double lambda = 0.0;
    int cls = 0;
    int roots = 0;
};

struct ExtremaMap {
    std::string model;
    double lambda1 = 0.0, lambda2 = 0.0, lambda3 = 0.0;
    std::vector<PhaseClassSample> samples;
    std::vector<std::pair<double, double>> zero_curve;  // (lambda, T root)
};

namespace detail {

// Composite fixed-node GK15 sampling of the dn_f/dT integrand; E(p) is
// precomputed once and shared across every (lambda, T) evaluation.
struct DerivScanGrid {
    std::vector<double> p, w, E;

    DerivScanGrid(const Dispersion& disp, int panels) {
        p.reserve(15 * panels);
        w.reserve(15 * panels);
        for (int k = 0; k < panels; ++k) {
            double a = kPi * k / panels, b = kPi * (k + 1) / panels;
            double h = 0.5 * (b - a), mid = 0.5 * (a + b);
            for (int i = 0; i < 7; ++i) {
                p.push_back(mid - h * kGK15X[i]);
                w.push_back(h * kGK15WK[i]);
                p.push_back(mid + h * kGK15X[i]);
                w.push_back(h * kGK15WK[i]);
            }
            p.push_back(mid);
            w.push_back(h * kGK15WK[7]);
        }
        E.resize(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) E[i] = disp(p[i]);
    }

    double g(double lambda, double T) const {
        double beta = 1.0 / T, acc = 0.0;
        for (std::size_t i = 0; i < E.size(); ++i) {
            double u = E[i] - lambda;
            acc += w[i] * u * sech2_half(beta * u);
        }
        return beta * beta / (4.0 * kPi) * acc;
    }
};

struct LambdaClass {
    int cls = 0;
    int roots = 0;
    double s0 = 0.0;
    std::vector<double> T_roots;
};

inline int class_from(int roots, double s0) {
    if (roots == 0 && s0 > 0.0) return 3;
    if (roots == 1 && s0 < 0.0) return 1;
    if (roots == 1 && s0 > 0.0) return 4;
    if (roots == 2 && s0 > 0.0) return 2;
    return 0;
}

inline LambdaClass classify_lambda(const ChainSpec& base, const Dispersion& disp,
                                   const DerivScanGrid& grid, double lambda,
                                   const ExtremaMapConfig& cfg) {
    ChainSpec spec = base;
    spec.lambda = lambda;
    CriticalPoint cp = critical_point(spec, disp, false);
    if (cp.regime != Regime::Critical)
        throw domain_error("extrema_map: lambda grid must stay inside (0, E(pi))");
    // analytic T -> 0 sign from the leading T^2 coefficient (Sommerfeld term)
    double c2 = -dispersion_second_deriv(disp, cp.p0);
    double s0 = c2 > 0.0 ? 1.0 : -1.0;

    const double epi = disp.e_pi();
    const double Tlo = cfg.T_min_frac * epi;
    const double Thi = cfg.T_max_factor * epi;
    const double noise = 1e-9;

    auto g_accurate = [&](double T) {
        return density_T_derivative(spec, disp, T, 1e-14, false);
    };

    auto count_roots = [&](int npts, std::vector<double>* roots_out) {
        double prev_sign = s0;
        double prev_T = 0.0;
        int roots = 0;
        double lr = std::log(Tlo), step = (std::log(Thi) - lr) / (npts - 1);
        for (int i = 0; i < npts; ++i) {
            double T = std::exp(lr + i * step);
            double gv = grid.g(lambda, T);
            if (std::fabs(gv) < noise) gv = g_accurate(T);
            double s = gv >= 0.0 ? 1.0 : -1.0;
            if (s != prev_sign) {
                ++roots;
                if (roots_out) {
                    // bisect the bracket on the accurate integral
                    double lo = prev_T > 0.0 ? prev_T : Tlo * 1e-5, hi = T;
                    double flo = prev_sign;
                    for (int it = 0; it < 60 && hi - lo > 1e-4 * hi; ++it) {
                        double md = 0.5 * (lo + hi);
                        double fm = g_accurate(md) >= 0.0 ? 1.0 : -1.0;
                        if (fm == flo)
                            lo = md;
                        else
                            hi = md;
                    }
                    roots_out->push_back(0.5 * (lo + hi));
                }
                prev_sign = s;
            }
            prev_T = T;
        }
        return roots;
    };

    int r1 = count_roots(cfg.T_points, nullptr);
    int r2 = count_roots(2 * cfg.T_points, nullptr);
    if (r1 != r2) {
        int r3 = count_roots(4 * cfg.T_points, nullptr);
        if (r3 != r2)
            throw classification_error("extrema_map: root count unstable under refinement at lambda=" +
                                       std::to_string(lambda));
        r1 = r3;
    }
    LambdaClass out;
    out.s0 = s0;
    out.roots = r1;
    if (r1 > 2)
        throw classification_error("extrema_map: more than two extrema at lambda=" +
                                   std::to_string(lambda));
    out.cls = class_from(r1, s0);
    if (out.cls == 0)
        throw classification_error("extrema_map: sign pattern outside the four-class taxonomy at lambda=" +
                                   std::to_string(lambda));
    count_roots(2 * cfg.T_points, &out.T_roots);
    return out;
}

} // namespace detail

inline ExtremaMap extrema_map(const ChainSpec& base, const Dispersion& disp,
                              ExtremaMapConfig cfg = {}) {
    validate_monotone(disp);
    const double epi = disp.e_pi();
    detail::DerivScanGrid grid(disp, cfg.quad_panels);

    const int n = cfg.lambda_points;
    std::vector<double> lambdas(n);
    for (int i = 0; i < n; ++i) lambdas[i] = epi * (i + 0.5) / n;

    std::vector<detail::LambdaClass> cls(n);
    parallel_for(
        static_cast<std::size_t>(n),
        [&](std::size_t i) { cls[i] = detail::classify_lambda(base, disp, grid, lambdas[i], cfg); },
        cfg.threads);

    ExtremaMap out;
    out.model = interaction_name(base);
    out.samples.reserve(n);
    for (int i = 0; i < n; ++i) {
        out.samples.push_back({lambdas[i], cls[i].cls, cls[i].roots});
        for (double t : cls[i].T_roots) out.zero_curve.emplace_back(lambdas[i], t);
    }
    for (int i = 1; i < n; ++i)
        if (cls[i].cls < cls[i - 1].cls)
            throw classification_error("extrema_map: class sequence not monotone in lambda");

    // boundary of {class <= k}: bisect between the bracketing grid points
    auto boundary = [&](int k) -> double {
        if (cls.front().cls > k) return 0.0;
        if (cls.back().cls <= k) return epi;
        int i = 0;
        while (cls[i + 1].cls <= k) ++i;
        double lo = lambdas[i], hi = lambdas[i + 1];
        while (hi - lo > cfg.lambda_tol * epi) {
            double mid = 0.5 * (lo + hi);
            auto c = detail::classify_lambda(base, disp, grid, mid, cfg);
            if (c.cls <= k)
                lo = mid;
            else
                hi = mid;
        }
        return 0.5 * (lo + hi);
    };
    out.lambda1 = boundary(1);
    out.lambda2 = std::max(out.lambda1, boundary(2));
    out.lambda3 = std::max(out.lambda2, boundary(3));
    return out;
}

} // namespace su11

#endif
