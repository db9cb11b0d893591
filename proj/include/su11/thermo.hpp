#ifndef SU11_THERMO_HPP
#define SU11_THERMO_HPP

#include <cmath>
#include <vector>

#include "su11/model.hpp"
#include "su11/parallel.hpp"
#include "su11/quadrature.hpp"
#include "su11/special_functions.hpp"

namespace su11 {

// log(1 + e^{-x}) for any sign of x without overflow
inline double log1p_exp_neg(double x) {
    if (x >= 0.0) return std::log1p(std::exp(-x));
    return -x + std::log1p(std::exp(x));
}

struct FreeEnergyResult {
    double temperature = 0.0;
    double f = 0.0;   // free energy per site
    double f0 = 0.0;  // T = 0 value
    double f1 = 0.0;  // filled-sea depletion term
    double f2 = 0.0;  // particle excitation term
};

namespace detail {

struct FermiSplit {
    double p0 = 0.0;  // integration breakpoint (Fermi momentum where defined)
    Regime regime = Regime::BelowInterval;
};

inline FermiSplit fermi_split(const ChainSpec& spec, const Dispersion& disp) {
    CriticalPoint cp = critical_point(spec, disp);
    FermiSplit s;
    s.regime = cp.regime;
    switch (cp.regime) {
        case Regime::BelowInterval:
        case Regime::LowerEndpoint: s.p0 = 0.0; break;
        case Regime::Critical: s.p0 = cp.p0; break;
        case Regime::UpperEndpoint:
        case Regime::AboveInterval: s.p0 = kPi; break;
    }
    return s;
}

} // namespace detail

inline constexpr double kQuadAbsTol = 1e-12;

// f(T) = -(T/pi) int_0^pi log[1 + e^{-beta(E(p)-lambda)}] dp, with the T = 0
// part split off: f = f0 + f1 + f2.
inline FreeEnergyResult free_energy(const ChainSpec& spec, const Dispersion& disp, double T,
                                    double abs_tol = kQuadAbsTol) {
    if (!(T > 0.0)) throw domain_error("free_energy: T must be positive");
    const double lambda = spec.lambda;
    const double beta = 1.0 / T;
    auto split = detail::fermi_split(spec, disp);
    const double p0 = split.p0;

    FreeEnergyResult out;
    out.temperature = T;

    if (p0 > 0.0) {
        out.f0 = integrate_adaptive([&](double p) { return disp(p) - lambda; }, 0.0, p0,
                                    abs_tol * 0.1)
                     .value /
                 kPi;
        out.f1 = -(T / kPi) * integrate_adaptive(
                                  [&](double p) {
                                      return log1p_exp_neg(beta * (lambda - disp(p)));
                                  },
                                  0.0, p0, abs_tol)
                                  .value;
    }
    if (p0 < kPi) {
        out.f2 = -(T / kPi) * integrate_adaptive(
                                  [&](double p) {
                                      return log1p_exp_neg(beta * (disp(p) - lambda));
                                  },
                                  p0, kPi, abs_tol)
                                  .value;
    }
    out.f = out.f0 + out.f1 + out.f2;
    return out;
}

// Direct evaluation of the defining integral (single pass, stable branch);
// used as the decomposition cross-check.
inline double free_energy_direct(const ChainSpec& spec, const Dispersion& disp, double T,
                                 double abs_tol = kQuadAbsTol) {
    if (!(T > 0.0)) throw domain_error("free_energy_direct: T must be positive");
    const double lambda = spec.lambda;
    const double beta = 1.0 / T;
    auto split = detail::fermi_split(spec, disp);
    std::vector<double> pts;
    if (split.p0 > 0.0 && split.p0 < kPi) pts.push_back(split.p0);
    auto integrand = [&](double p) { return log1p_exp_neg(beta * (disp(p) - lambda)); };
    return -(T / kPi) * integrate_split(integrand, 0.0, kPi, pts, abs_tol).value;
}

// Low-temperature law f(T) = f0 - coefficient * T^exponent.
struct LowTExpansion {
    double exponent = 0.0;
    double coefficient = 0.0;
};

// gamma = (a/pi)(1 - 2^{-1/k}) Gamma(1 + 1/k) zeta_R(1 + 1/k)
inline double endpoint_gamma(int k, double a) {
    double ik = 1.0 / k;
    return (a / kPi) * (1.0 - std::pow(2.0, -ik)) * gamma_fn(1.0 + ik) *
           riemann_zeta(1.0 + ik);
}

inline LowTExpansion low_T_expansion(const ChainSpec& spec, const Dispersion& disp) {
    CriticalPoint cp = critical_point(spec, disp);
    LowTExpansion e;
    switch (cp.regime) {
        case Regime::Critical:
            e.exponent = 2.0;
            e.coefficient = kPi / (6.0 * cp.v);
            return e;
        case Regime::LowerEndpoint:
            e.exponent = 1.0 + 1.0 / disp.kappa();
            e.coefficient = endpoint_gamma(disp.kappa(), disp.a_coef());
            return e;
        case Regime::UpperEndpoint:
            e.exponent = 1.0 + 1.0 / disp.nu();
            e.coefficient = endpoint_gamma(disp.nu(), disp.b_coef());
            return e;
        default:
            throw domain_error("low_T_expansion: regime must be critical or an endpoint");
    }
}

// Least-squares fit y = c0 + c1 x; returns rms residual.
namespace detail {
struct LinFit {
    double c0 = 0.0, c1 = 0.0, rms = 0.0;
};

inline LinFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    double det = n * sxx - sx * sx;
    LinFit f;
    f.c1 = (n * sxy - sx * sy) / det;
    f.c0 = (sy - f.c1 * sx) / n;
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = y[i] - f.c0 - f.c1 * x[i];
        ss += r * r;
    }
    f.rms = std::sqrt(ss / n);
    return f;
}
} // namespace detail

struct CentralChargeFit {
    double c_hat = 0.0;
    double v_used = 0.0;
    double residual = 0.0;  // rms of the (f - f0)/T^2 fit, never hidden
    std::vector<double> T_grid;
};

// Fit (f(T) - f0)/T^2 = -pi c/(6 v) + (linear-in-T correction); valid in the
// critical regime, and at lambda = 0 when kappa = 1 (v = E'(0) = 1/a, c = 1/2).
inline CentralChargeFit fit_central_charge(const ChainSpec& spec, const Dispersion& disp,
                                           const std::vector<double>& T_grid,
                                           int threads = -1) {
    CriticalPoint cp = critical_point(spec, disp);
    double v = 0.0;
    if (cp.regime == Regime::Critical) {
        v = cp.v;
    } else if (cp.regime == Regime::LowerEndpoint && disp.kappa() == 1) {
        v = 1.0 / disp.a_coef();
    } else {
        throw domain_error("fit_central_charge: needs critical regime or lambda=0 with kappa=1");
    }
    if (T_grid.size() < 6)
        throw domain_error("fit_central_charge: need at least 6 temperatures");
    const double tmax = 0.05 * disp.e_pi();
    for (double T : T_grid)
        if (!(T > 0.0) || T > tmax)
            throw domain_error("fit_central_charge: T grid must lie in (0, 0.05*E(pi)]");

    std::vector<double> y(T_grid.size());
    parallel_for(
        T_grid.size(),
        [&](std::size_t i) {
            auto fr = free_energy(spec, disp, T_grid[i]);
            y[i] = (fr.f - fr.f0) / (T_grid[i] * T_grid[i]);
        },
        threads);

    auto fit = detail::linear_fit(T_grid, y);
    CentralChargeFit out;
    out.v_used = v;
    out.c_hat = -6.0 * v * fit.c0 / kPi;
    out.residual = fit.rms;
    out.T_grid = T_grid;
    return out;
}

} // namespace su11

#endif
