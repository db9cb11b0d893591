#ifndef SU11_MODEL_HPP
#define SU11_MODEL_HPP

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "su11/errors.hpp"
#include "su11/special_functions.hpp"

namespace su11 {

// ---------------------------------------------------------------------------
// Chain specification
// ---------------------------------------------------------------------------

struct Elliptic {
    double alpha;
};
struct XX {};
struct HS {};
struct Tabulated {
    std::vector<double> h;  // h(1), ..., h(N-1)
};

using Interaction = std::variant<Elliptic, XX, HS, Tabulated>;

struct ChainSpec {
    Interaction interaction;
    std::optional<int> sites;  // engaged: finite chain; empty: thermodynamic limit
    double lambda = 0.0;
};

// Validation range for the elliptic parameter: below ~0.01 the prefactor
// sinh^2(pi/alpha) overflows doubles; the XX variant covers that regime.
inline constexpr double kAlphaMin = 0.01;
inline constexpr double kAlphaMax = 1e4;

inline void validate(const ChainSpec& spec) {
    if (spec.sites && *spec.sites < 2)
        throw domain_error("ChainSpec: finite chains need N >= 2");
    if (const auto* el = std::get_if<Elliptic>(&spec.interaction)) {
        if (!(el->alpha >= kAlphaMin && el->alpha <= kAlphaMax))
            throw domain_error("ChainSpec: elliptic alpha outside [" +
                               std::to_string(kAlphaMin) + ", " + std::to_string(kAlphaMax) + "]");
    } else if (const auto* tab = std::get_if<Tabulated>(&spec.interaction)) {
        if (!spec.sites) throw domain_error("ChainSpec: tabulated interaction needs finite N");
        int n = *spec.sites;
        if (static_cast<int>(tab->h.size()) != n - 1)
            throw domain_error("ChainSpec: tabulated h must have N-1 entries");
        for (int j = 1; j <= n - 1; ++j) {
            double hj = tab->h[j - 1];
            if (!(hj >= 0.0)) throw domain_error("ChainSpec: tabulated h must be nonnegative");
            if (std::fabs(hj - tab->h[n - j - 1]) > 1e-12 * (1.0 + std::fabs(hj)))
                throw domain_error("ChainSpec: tabulated h violates h(j) = h(N-j)");
        }
    }
}

inline std::string interaction_name(const ChainSpec& spec) {
    if (std::holds_alternative<Elliptic>(spec.interaction)) return "elliptic";
    if (std::holds_alternative<XX>(spec.interaction)) return "xx";
    if (std::holds_alternative<HS>(spec.interaction)) return "hs";
    return "tabulated";
}

// ---------------------------------------------------------------------------
// Finite-chain interaction h_N and mode energies
// ---------------------------------------------------------------------------
//
// Elliptic: h_N(x) = (alpha/pi)^2 sinh^2(pi/alpha) (wp_N(x) - 2*etahat1/alpha^2)
// with wp_N = wp(.; N/2, i alpha/2) and etahat1 = wzeta(1/2; 1/2, i N/(2 alpha)).
// XX and HS are the alpha -> 0 / infinity limits in closed form.

inline std::vector<double> interaction_table(const ChainSpec& spec) {
    validate(spec);
    if (!spec.sites) throw domain_error("interaction_table: requires a finite chain");
    const int n = *spec.sites;
    std::vector<double> h(n - 1, 0.0);
    if (const auto* el = std::get_if<Elliptic>(&spec.interaction)) {
        const double alpha = el->alpha;
        RectLattice lat(0.5 * n, 0.5 * alpha);
        RectLattice unit(0.5, 0.5 * n / alpha);
        const double etahat1 = unit.wzeta(0.5);
        const double s = std::sinh(kPi / alpha);
        const double pref = (alpha / kPi) * (alpha / kPi) * s * s;
        for (int x = 1; x <= n - 1; ++x)
            h[x - 1] = pref * (lat.wp(x) - 2.0 * etahat1 / (alpha * alpha));
    } else if (std::holds_alternative<XX>(spec.interaction)) {
        h[0] += 1.0;
        h[n - 2] += 1.0;  // x = 1 and x = N-1; both land on h(1) when N = 2
    } else if (std::holds_alternative<HS>(spec.interaction)) {
        for (int x = 1; x <= n - 1; ++x) {
            double s = std::sin(kPi * x / n);
            h[x - 1] = (kPi / n) * (kPi / n) / (s * s);
        }
    } else {
        h = std::get<Tabulated>(spec.interaction).h;
    }
    return h;
}

inline double interaction_h(const ChainSpec& spec, int x) {
    if (!spec.sites) throw domain_error("interaction_h: requires a finite chain");
    const int n = *spec.sites;
    if (x < 1 || x > n - 1) throw domain_error("interaction_h: x must be in 1..N-1");
    return interaction_table(spec)[x - 1];
}

// epsilon_N(l) = sum_j [1 - cos(2 pi j l / N)] h_N(j)
inline double mode_energy_from_table(const std::vector<double>& h, int n, int l) {
    double e = 0.0;
    for (int j = 1; j <= n - 1; ++j)
        e += (1.0 - std::cos(2.0 * kPi * j * static_cast<double>(l) / n)) * h[j - 1];
    return e;
}

inline double mode_energy(const ChainSpec& spec, int l) {
    if (!spec.sites) throw domain_error("mode_energy: requires a finite chain");
    const int n = *spec.sites;
    if (l < 0 || l > n - 1) throw domain_error("mode_energy: l must be in 0..N-1");
    return mode_energy_from_table(interaction_table(spec), n, l);
}

// ---------------------------------------------------------------------------
// Continuum dispersion
// ---------------------------------------------------------------------------

namespace detail {

// Elliptic continuum data. Two exact representations of the same function:
//   E(p) = 2 sinh^2(pi/a) [wp(p) - (wzeta(p) - eta1 p/pi)^2 - 2 eta1/pi]
// on the lattice (pi, i pi/alpha), and the thermodynamic-limit real-space sum
//   E(p) = 2 sinh^2(pi/alpha) sum_j (1 - cos p j) / sinh^2(pi j / alpha).
// The Weierstrass form cancels to O(e^{-2 pi/alpha}) relative at small alpha
// and near p = 0 (the pole of wp eats the significand), where the series form
// is exact summation of positive terms; the series is used there.
struct EllipticData {
    double alpha = 0.0;
    std::shared_ptr<RectLattice> lat;
    double eta1 = 0.0, e1 = 0.0, g2 = 0.0;
    double two_sinh2 = 0.0;  // 2 sinh^2(pi/alpha)
    std::vector<double> w;   // csch^2(pi j / alpha)
    double e_pi = 0.0, a_coef = 0.0, b_coef = 0.0;
    double epp0 = 0.0, epp_pi = 0.0;

    static constexpr double kSeriesEdge = 0.25;      // |p| below this: series route
    static constexpr double kSeriesAlpha = 0.5;      // alpha below this: series only

    explicit EllipticData(double a) : alpha(a) {
        lat = std::make_shared<RectLattice>(kPi, kPi / alpha);
        eta1 = lat->eta1();
        e1 = lat->e1();
        g2 = lat->g2();
        double s = std::sinh(kPi / alpha);
        two_sinh2 = 2.0 * s * s;

        // csch^2 weights; tail decays like exp(-2 pi j / alpha)
        int jmax = static_cast<int>(8.0 * alpha) + 40;
        w.resize(jmax);
        for (int j = 1; j <= jmax; ++j) {
            double sh = std::sinh(kPi * j / alpha);
            w[j - 1] = 1.0 / (sh * sh);
        }

        e_pi = two_sinh2 * (e1 - 2.0 * eta1 / kPi);
        a_coef = kPi / s / std::sqrt(kPi * kPi * g2 / 6.0 - 2.0 * eta1 * eta1);
        b_coef = kPi / s /
                 std::sqrt(kPi * kPi * (g2 / 2.0 - 4.0 * e1 * e1) +
                           2.0 * eta1 * (eta1 + 2.0 * kPi * e1));
        double s0 = 0.0, spi = 0.0;
        for (int j = static_cast<int>(w.size()); j >= 1; --j) {
            double t = static_cast<double>(j) * j * w[j - 1];
            s0 += t;
            spi += (j & 1) ? -t : t;
        }
        epp0 = two_sinh2 * s0;
        epp_pi = two_sinh2 * spi;
    }

    // fold p into [0, pi] using E(p) = E(-p) = E(2 pi - p); dsign tracks E'
    static double fold(double p, double& dsign) {
        dsign = 1.0;
        if (p < 0.0) {
            p = -p;
            dsign = -dsign;
        }
        p = std::fmod(p, 2.0 * kPi);
        if (p > kPi) {
            p = 2.0 * kPi - p;
            dsign = -dsign;
        }
        return p;
    }

    double eval_series(double p) const {
        double acc = 0.0;
        for (int j = static_cast<int>(w.size()); j >= 1; --j)
            acc += (1.0 - std::cos(p * j)) * w[j - 1];
        return two_sinh2 * acc;
    }

    double deriv_series(double p) const {
        double acc = 0.0;
        for (int j = static_cast<int>(w.size()); j >= 1; --j)
            acc += j * std::sin(p * j) * w[j - 1];
        return two_sinh2 * acc;
    }

    double eval_weierstrass(double p) const {
        double x = lat->wzeta(p) - eta1 * p / kPi;
        return two_sinh2 * (lat->wp(p) - x * x - 2.0 * eta1 / kPi);
    }

    double deriv_weierstrass(double p) const {
        double x = lat->wzeta(p) - eta1 * p / kPi;
        return two_sinh2 * (lat->wp_prime(p) + 2.0 * x * (lat->wp(p) + eta1 / kPi));
    }

    bool series_route(double pf) const {
        return alpha < kSeriesAlpha || pf < kSeriesEdge;
    }

    double eval(double p) const {
        double ds;
        double pf = fold(p, ds);
        if (pf == 0.0) return 0.0;
        return series_route(pf) ? eval_series(pf) : eval_weierstrass(pf);
    }

    double deriv(double p) const {
        double ds;
        double pf = fold(p, ds);
        if (pf == 0.0) return 0.0;
        return ds * (series_route(pf) ? deriv_series(pf) : deriv_weierstrass(pf));
    }
};

} // namespace detail

// Continuum dispersion with endpoint expansion data: kappa/nu are the orders
// of the lowest nonvanishing derivative at p = 0 / pi, and
// a = [kappa!/E^(kappa)(0)]^{1/kappa}, b = [-nu!/E^(nu)(pi)]^{1/nu}.
class Dispersion {
public:
    double operator()(double p) const { return eval_(p); }
    double deriv(double p) const { return deriv_(p); }

    double e_pi() const { return e_pi_; }
    int kappa() const { return kappa_; }
    double a_coef() const { return a_coef_; }
    int nu() const { return nu_; }
    double b_coef() const { return b_coef_; }
    const std::string& name() const { return name_; }

    static Dispersion xx() {
        Dispersion d;
        d.name_ = "xx";
        d.eval_ = [](double p) { return 2.0 * (1.0 - std::cos(p)); };
        d.deriv_ = [](double p) { return 2.0 * std::sin(p); };
        d.e_pi_ = 4.0;
        d.kappa_ = 2;
        d.a_coef_ = 1.0;
        d.nu_ = 2;
        d.b_coef_ = 1.0;
        return d;
    }

    static Dispersion hs() {
        Dispersion d;
        d.name_ = "hs";
        d.eval_ = [](double p) { return 0.5 * p * (2.0 * kPi - p); };
        d.deriv_ = [](double p) { return kPi - p; };
        d.e_pi_ = 0.5 * kPi * kPi;
        d.kappa_ = 1;
        d.a_coef_ = 1.0 / kPi;
        d.nu_ = 2;
        d.b_coef_ = std::sqrt(2.0);
        return d;
    }

    static Dispersion elliptic(double alpha) {
        auto data = std::make_shared<detail::EllipticData>(alpha);
        Dispersion d;
        d.name_ = "elliptic";
        d.eval_ = [data](double p) { return data->eval(p); };
        d.deriv_ = [data](double p) { return data->deriv(p); };
        d.e_pi_ = data->e_pi;
        d.kappa_ = 2;
        d.a_coef_ = data->a_coef;
        d.nu_ = 2;
        d.b_coef_ = data->b_coef;
        d.elliptic_ = data;
        return d;
    }

    // exposed for cross-validation tests
    std::shared_ptr<const detail::EllipticData> elliptic_data() const { return elliptic_; }

private:
    std::function<double(double)> eval_, deriv_;
    double e_pi_ = 0.0;
    int kappa_ = 0;
    double a_coef_ = 0.0;
    int nu_ = 0;
    double b_coef_ = 0.0;
    std::string name_;
    std::shared_ptr<const detail::EllipticData> elliptic_;
};

inline Dispersion dispersion(const ChainSpec& spec) {
    validate(spec);
    if (const auto* el = std::get_if<Elliptic>(&spec.interaction))
        return Dispersion::elliptic(el->alpha);
    if (std::holds_alternative<XX>(spec.interaction)) return Dispersion::xx();
    if (std::holds_alternative<HS>(spec.interaction)) return Dispersion::hs();
    throw domain_error("dispersion: tabulated interactions define mode energies only");
}

// ---------------------------------------------------------------------------
// Critical point
// ---------------------------------------------------------------------------

enum class Regime { BelowInterval, LowerEndpoint, Critical, UpperEndpoint, AboveInterval };

inline const char* regime_name(Regime r) {
    switch (r) {
        case Regime::BelowInterval: return "below";
        case Regime::LowerEndpoint: return "lower-endpoint";
        case Regime::Critical: return "critical";
        case Regime::UpperEndpoint: return "upper-endpoint";
        case Regime::AboveInterval: return "above";
    }
    return "?";
}

struct CriticalPoint {
    Regime regime = Regime::BelowInterval;
    double p0 = 0.0;  // Fermi momentum (critical and endpoint regimes)
    double v = 0.0;   // Fermi velocity E'(p0) (critical regime)
};

inline void validate_monotone(const Dispersion& disp, int grid = 256) {
    double prev = 0.0;
    for (int i = 1; i < grid; ++i) {
        double p = kPi * i / grid;
        if (disp.deriv(p) <= 0.0)
            throw nonmonotone_dispersion("dispersion has E'(p) <= 0 at p = " + std::to_string(p));
        double e = disp(p);
        if (e < prev) throw nonmonotone_dispersion("dispersion decreases at p = " + std::to_string(p));
        prev = e;
    }
}

inline CriticalPoint critical_point(const ChainSpec& spec, const Dispersion& disp,
                                    bool validate_grid = true) {
    if (validate_grid) validate_monotone(disp);
    const double lambda = spec.lambda;
    const double epi = disp.e_pi();
    const double tol = 1e-12 * std::max(1.0, epi);
    CriticalPoint cp;
    if (lambda < -tol) {
        cp.regime = Regime::BelowInterval;
        return cp;
    }
    if (lambda <= tol) {
        cp.regime = Regime::LowerEndpoint;
        cp.p0 = 0.0;
        return cp;
    }
    if (std::fabs(lambda - epi) <= tol) {
        cp.regime = Regime::UpperEndpoint;
        cp.p0 = kPi;
        return cp;
    }
    if (lambda > epi) {
        cp.regime = Regime::AboveInterval;
        cp.p0 = kPi;
        return cp;
    }
    // bracketed bisection/secant hybrid on the monotone branch [0, pi]
    double lo = 0.0, hi = kPi;
    double flo = -lambda, fhi = epi - lambda;
    double p = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        double fp = disp(p) - lambda;
        if (fp == 0.0) break;
        if ((fp > 0.0) == (fhi > 0.0)) {
            hi = p;
            fhi = fp;
        } else {
            lo = p;
            flo = fp;
        }
        double psec = (lo * fhi - hi * flo) / (fhi - flo);
        double pbis = 0.5 * (lo + hi);
        p = (psec > lo && psec < hi) ? 0.5 * (psec + pbis) : pbis;
        if (hi - lo < 1e-15 * kPi) break;
    }
    double residual = std::fabs(disp(p) - lambda);
    if (residual > 1e-12 * std::max(1.0, std::fabs(lambda)))
        throw nonmonotone_dispersion("critical_point: root residual " + std::to_string(residual));
    cp.regime = Regime::Critical;
    cp.p0 = p;
    cp.v = disp.deriv(p);
    if (!(cp.v > 0.0)) throw nonmonotone_dispersion("critical_point: nonpositive Fermi velocity");
    return cp;
}

// ---------------------------------------------------------------------------
// Numerical endpoint expansions (independent of the closed-form data carried
// by Dispersion): 5-point central stencils with two-level Richardson.
// ---------------------------------------------------------------------------

struct EndpointExpansion {
    int kappa = 0;
    double a_coef = 0.0;
    int nu = 0;
    double b_coef = 0.0;
};

namespace detail {

inline double stencil_deriv(const std::function<double(double)>& f, double x0, int order,
                            double h) {
    const double f2m = f(x0 - 2.0 * h), f1m = f(x0 - h), f0 = f(x0), f1 = f(x0 + h),
                 f2 = f(x0 + 2.0 * h);
    switch (order) {
        case 1: return (-f2 + 8.0 * f1 - 8.0 * f1m + f2m) / (12.0 * h);
        case 2: return (-f2 + 16.0 * f1 - 30.0 * f0 + 16.0 * f1m - f2m) / (12.0 * h * h);
        case 3: return (f2 - 2.0 * f1 + 2.0 * f1m - f2m) / (2.0 * h * h * h);
        case 4: return (f2 - 4.0 * f1 + 6.0 * f0 - 4.0 * f1m + f2m) / (h * h * h * h);
    }
    throw domain_error("stencil_deriv: order must be 1..4");
}

inline double richardson_deriv(const std::function<double(double)>& f, double x0, int order,
                               double h) {
    double dh = stencil_deriv(f, x0, order, h);
    double d2h = stencil_deriv(f, x0, order, 2.0 * h);
    // orders 1,2 are O(h^4) stencils, orders 3,4 are O(h^2)
    return (order <= 2) ? (16.0 * dh - d2h) / 15.0 : (4.0 * dh - d2h) / 3.0;
}

} // namespace detail

inline EndpointExpansion endpoint_expansions(const Dispersion& disp, double h = 1e-3) {
    const double thresh = 1e-6 * std::max(1.0, disp.e_pi());
    auto f = [&disp](double p) { return disp(p); };
    EndpointExpansion out;
    for (int k = 1; k <= 4; ++k) {
        double d = detail::richardson_deriv(f, 0.0, k, h);
        if (std::fabs(d) > thresh) {
            out.kappa = k;
            double fact = 1.0;
            for (int j = 2; j <= k; ++j) fact *= j;
            out.a_coef = std::pow(fact / d, 1.0 / k);
            break;
        }
    }
    if (out.kappa == 0)
        throw expansion_order_error("endpoint_expansions: no nonvanishing derivative at p=0 up to order 4");
    for (int k = 2; k <= 4; k += 2) {
        double d = detail::richardson_deriv(f, kPi, k, h);
        if (std::fabs(d) > thresh) {
            if (d > 0.0)
                throw expansion_order_error("endpoint_expansions: E^(nu)(pi) must be negative");
            out.nu = k;
            double fact = 1.0;
            for (int j = 2; j <= k; ++j) fact *= j;
            out.b_coef = std::pow(-fact / d, 1.0 / k);
            break;
        }
    }
    if (out.nu == 0)
        throw expansion_order_error("endpoint_expansions: no nonvanishing even derivative at p=pi up to order 4");
    return out;
}

} // namespace su11

#endif
