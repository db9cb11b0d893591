#ifndef SU11_SPECIAL_FUNCTIONS_HPP
#define SU11_SPECIAL_FUNCTIONS_HPP

#include <array>
#include <cmath>
#include <limits>

#include "su11/errors.hpp"

namespace su11 {

inline constexpr double kPi = 3.14159265358979323846264338327950288;

// ---------------------------------------------------------------------------
// Dirichlet eta, Riemann zeta, Gamma
// ---------------------------------------------------------------------------
//
// eta(s) is the primitive, evaluated with Borwein's alternating-series
// acceleration (48 Chebyshev-derived weights give ~1e-36 truncation error,
// far below double rounding). zeta(s) = eta(s)/(1 - 2^{1-s}) with the
// denominator computed by expm1 so the s -> 1 cancellation is benign.

namespace detail {

inline const std::array<double, 49>& borwein_weights() {
    static const std::array<double, 49> d = [] {
        constexpr int n = 48;
        std::array<double, 49> out{};
        double t = 1.0 / n;  // t_0 = (n-1)!/n!
        double acc = t;
        out[0] = n * acc;
        for (int i = 1; i <= n; ++i) {
            t *= 4.0 * (n + i - 1.0) * (n - i + 1.0) / (2.0 * i * (2.0 * i - 1.0));
            acc += t;
            out[i] = n * acc;
        }
        return out;
    }();
    return d;
}

} // namespace detail

inline double dirichlet_eta(double s) {
    if (!(s > 0.0)) throw domain_error("dirichlet_eta: argument must be positive");
    const auto& d = detail::borwein_weights();
    constexpr int n = 48;
    double sum = 0.0;
    for (int k = 0; k < n; ++k) {
        double term = (d[n] - d[k]) / std::pow(k + 1.0, s);
        sum += (k & 1) ? -term : term;
    }
    return sum / d[n];
}

inline double riemann_zeta(double s) {
    if (!(s > 0.0)) throw domain_error("riemann_zeta: argument must be positive");
    if (s == 1.0) throw domain_error("riemann_zeta: pole at s = 1");
    return dirichlet_eta(s) / (-std::expm1((1.0 - s) * 0.693147180559945309417232121458));
}

inline double gamma_fn(double x) {
    if (!(x > 0.0)) throw domain_error("gamma_fn: argument must be positive");
    return std::tgamma(x);
}

// ---------------------------------------------------------------------------
// Weierstrass functions on a rectangular lattice
// ---------------------------------------------------------------------------
//
// Half-periods (omega1, i*omega3_imag), both real parameters positive. All
// evaluation is for real arguments on the real axis. Two Jacobi-theta
// representations are kept: the lattice's own (nome q = exp(-pi*c/om1)) and
// the 90-degree-rotated dual (c, i*om1) with nome exp(-pi*om1/c). Constants
// come from product/Lambert series, which are stable at any nome < 1; point
// values switch to the dual representation where the trigonometric theta
// series start to cancel (nome near 1, or argument near the pole). On the
// dual side the theta arguments are imaginary, so the series are resummed
// into explicitly bounded exponentials.

class RectLattice {
public:
    static constexpr double kNomeMax = 0.95;       // per-representation usability
    static constexpr double kPoleGuard = 1e-8;     // in units of x/(2*omega1)

    RectLattice(double omega1, double omega3_imag) : om1_(omega1), c_(omega3_imag) {
        if (!(omega1 > 0.0) || !std::isfinite(omega1) || !(omega3_imag > 0.0) ||
            !std::isfinite(omega3_imag))
            throw domain_error("RectLattice: half-periods must be positive and finite");
        q_ = std::exp(-kPi * c_ / om1_);
        build_rep(direct_, om1_, q_);
        build_rep(dual_, c_, std::exp(-kPi * om1_ / c_));
        if (!direct_.usable && !dual_.usable)
            throw domain_error("RectLattice: no usable theta representation");

        if (direct_.usable) {
            eta1_ = direct_.eta1;
            e1_ = direct_.e1;
            g2_ = direct_.g2;
            g3_ = direct_.g3;
        } else {
            // Legendre relation eta1*c + eta1(dual)*om1 = pi/2, and
            // e1 = wp(om1) = -e3(dual), g2 invariant, g3 flips sign under
            // the quarter-turn rotation of the lattice.
            eta1_ = (kPi / 2.0 - om1_ * dual_.eta1) / c_;
            e1_ = (kPi * kPi / (12.0 * c_ * c_)) *
                  (2.0 * pow4(dual_.t20) + pow4(dual_.t40));
            g2_ = dual_.g2;
            g3_ = -dual_.g3;
        }
        if (dual_.usable) {
            zeta3_im_ = -dual_.eta1;
            zeta3_independent_ = true;
        } else {
            zeta3_im_ = (eta1_ * c_ - kPi / 2.0) / om1_;
            zeta3_independent_ = false;
        }
    }

    double omega1() const { return om1_; }
    double omega3_imag() const { return c_; }
    double nome() const { return q_; }

    double eta1() const { return eta1_; }
    double e1() const { return e1_; }
    double g2() const { return g2_; }
    double g3() const { return g3_; }

    // Im zeta(i*omega3_imag); computed from the dual lattice's own series
    // whenever that representation is usable (see zeta3_independent()).
    double zeta3_imag() const { return zeta3_im_; }
    bool zeta3_independent() const { return zeta3_independent_; }

    // Residual of the Legendre relation eta1*omega3 - eta3*omega1 = i*pi/2
    // in its real rectangular form. Only a nontrivial check when
    // zeta3_independent() is true.
    double legendre_residual() const {
        return eta1_ * c_ - zeta3_im_ * om1_ - kPi / 2.0;
    }

    // Second independent route to g2 (theta eighth powers vs Eisenstein sums).
    double g2_theta() const {
        const Rep& r = direct_.usable ? direct_ : dual_;
        double f = kPi / (2.0 * r.om);
        double f4 = f * f * f * f;
        return (2.0 / 3.0) * f4 * (pow8(r.t20) + pow8(r.t30) + pow8(r.t40));
    }

    double wp(double x) const {
        double xr = reduce_even(x);
        return use_direct(xr) ? wp_direct(xr) : wp_dual(xr);
    }

    double wp_prime(double x) const {
        double sign;
        double xr = reduce_odd(x, sign);
        double v = use_direct(xr) ? wp_prime_direct(xr) : wp_prime_dual(xr);
        return sign * v;
    }

    double wzeta(double x) const {
        // zeta(x + 2k*om1) = zeta(x) + 2k*eta1, zeta odd
        double k = std::floor(x / (2.0 * om1_) + 0.5);
        double x0 = x - 2.0 * k * om1_;
        guard(x, x0);
        double sign = x0 < 0.0 ? -1.0 : 1.0;
        double xr = std::fabs(x0);
        double base = use_direct(xr) ? wzeta_direct(xr) : wzeta_dual(xr);
        return sign * base + 2.0 * k * eta1_;
    }

private:
    struct Rep {
        double om = 0.0;
        double q = 0.0;
        bool usable = false;
        double t20 = 0.0, t30 = 0.0, t40 = 0.0;  // theta_i(0, q)
        double e1 = 0.0;                         // wp at this rep's real half-period
        double eta1 = 0.0;                       // wzeta at this rep's real half-period
        double g2 = 0.0, g3 = 0.0;
        double Ffac = 0.0;                       // (pi*t30*t40/(2*om))^2
    };

    static double pow4(double x) { return (x * x) * (x * x); }
    static double pow8(double x) { return pow4(x) * pow4(x); }

    // sum_{n>=1} n^k q^{2n} / (1 - q^{2n})
    static double lambert_sum(double q, int k) {
        double q2 = q * q, qp = 1.0, sum = 0.0;
        for (int n = 1; n < 200000; ++n) {
            qp *= q2;
            double np = 1.0;
            for (int j = 0; j < k; ++j) np *= n;
            double term = np * qp / (1.0 - qp);
            sum += term;
            if (term < sum * 1e-19 + 1e-300) break;
        }
        return sum;
    }

    static void build_rep(Rep& r, double om, double q) {
        r.om = om;
        r.q = q;
        r.usable = q <= kNomeMax;
        if (!r.usable) return;

        // theta zero values from the product representations (no cancellation)
        double q2n = 1.0, qodd = 1.0 / q;
        double p2 = 1.0, p3 = 1.0, p4 = 1.0;
        for (int n = 1; n < 100000; ++n) {
            q2n *= q * q;      // q^{2n}
            qodd *= q * q;     // q^{2n-1}
            double a = 1.0 - q2n;
            p2 *= a * (1.0 + q2n) * (1.0 + q2n);
            p3 *= a * (1.0 + qodd) * (1.0 + qodd);
            p4 *= a * (1.0 - qodd) * (1.0 - qodd);
            if (q2n < 1e-19) break;
        }
        r.t20 = 2.0 * std::pow(q, 0.25) * p2;
        r.t30 = p3;
        r.t40 = p4;

        double pio = kPi / om;
        r.eta1 = (kPi * kPi / (12.0 * om)) * (1.0 - 24.0 * lambert_sum(q, 1));
        r.e1 = (kPi * kPi / (12.0 * om * om)) * (pow4(r.t20) + 2.0 * pow4(r.t40));
        double pio4 = pio * pio * pio * pio;
        r.g2 = pio4 * (1.0 / 12.0 + 20.0 * lambert_sum(q, 3));
        r.g3 = pio4 * pio * pio * (1.0 / 216.0 - (7.0 / 3.0) * lambert_sum(q, 5));
        double f = kPi * r.t30 * r.t40 / (2.0 * om);
        r.Ffac = f * f;
    }

    void guard(double x, double x0) const {
        if (std::fabs(x0) < kPoleGuard * 2.0 * om1_) throw pole_error(x);
    }

    double reduce_even(double x) const {
        double k = std::floor(x / (2.0 * om1_) + 0.5);
        double x0 = x - 2.0 * k * om1_;
        guard(x, x0);
        return std::fabs(x0);
    }

    double reduce_odd(double x, double& sign) const {
        double k = std::floor(x / (2.0 * om1_) + 0.5);
        double x0 = x - 2.0 * k * om1_;
        guard(x, x0);
        sign = x0 < 0.0 ? -1.0 : 1.0;
        return std::fabs(x0);
    }

    // The trigonometric theta series lose roughly (a - pi/2)^2 / ln(1/q)
    // e-folds to cancellation near the pole (a = pi*x/(2*om1) small). Stay on
    // the direct representation only where that loss is < ~2 digits.
    bool use_direct(double xr) const {
        if (!direct_.usable) return false;
        if (!dual_.usable) return true;
        if (q_ <= 0.585) return true;
        double eps = -std::log(q_);
        double a = kPi * xr / (2.0 * om1_);
        double astar = kPi / 2.0 - std::sqrt(4.6 * eps);
        return a >= astar;
    }

    // --- direct representation: theta series at a = pi*x/(2*om1) ------------

    struct ThetaPoint {
        double t1, t2, t1p, t2p;
    };

    ThetaPoint theta_point(double a) const {
        const double q = direct_.q;
        double qp = std::pow(q, 0.25);
        double q2 = q * q, qstep = 1.0;
        double cs = std::cos(a), sn = std::sin(a);
        double cs2 = cs * cs - sn * sn, sn2 = 2.0 * sn * cs;
        double cn = cs, snn = sn;
        double t1 = 0.0, t2 = 0.0, t1p = 0.0, t2p = 0.0;
        for (int n = 0; n < 700; ++n) {
            double sgn = (n & 1) ? -1.0 : 1.0;
            double m = 2.0 * n + 1.0;
            t1 += sgn * qp * snn;
            t2 += qp * cn;
            t1p += sgn * m * qp * cn;
            t2p -= m * qp * snn;
            if (qp * (m + 2.0) * (m + 2.0) < 1e-20 * std::pow(q, 0.25)) break;
            qstep *= q2;       // q^{2n+2} relative factor: q^{(n+3/2)^2 - (n+1/2)^2}
            qp *= qstep;
            double tc = cn * cs2 - snn * sn2;
            double ts = snn * cs2 + cn * sn2;
            cn = tc;
            snn = ts;
        }
        return {2.0 * t1, 2.0 * t2, 2.0 * t1p, 2.0 * t2p};
    }

    double wp_direct(double xr) const {
        double a = kPi * xr / (2.0 * om1_);
        ThetaPoint t = theta_point(a);
        double r = t.t2 / t.t1;
        return direct_.e1 + direct_.Ffac * r * r;
    }

    double wp_prime_direct(double xr) const {
        double a = kPi * xr / (2.0 * om1_);
        ThetaPoint t = theta_point(a);
        return direct_.Ffac * (kPi / om1_) * (t.t2 / t.t1) *
               (t.t2p * t.t1 - t.t2 * t.t1p) / (t.t1 * t.t1);
    }

    double wzeta_direct(double xr) const {
        double a = kPi * xr / (2.0 * om1_);
        ThetaPoint t = theta_point(a);
        return (eta1_ / om1_) * xr + (kPi / (2.0 * om1_)) * t.t1p / t.t1;
    }

    // --- dual representation: hyperbolic resummation ------------------------
    //
    // wp(x; om1, i c) = -wp(-i x; c, i om1); at argument -i*v the theta terms
    // q'^{(n+1/2)^2} e^{+-(2n+1)v} combine into exp(-K n(n+1) +- ...) with
    // K = pi*om1/c, all exponents <= 0 after factoring exp(-K/4 + v).

    struct DualSums {
        double S1, S2, S1d, S2d;
    };

    DualSums dual_sums(double xr) const {
        const double K = kPi * om1_ / c_;
        const double v = kPi * xr / (2.0 * c_);
        double S1 = 0.0, S2 = 0.0, S1d = 0.0, S2d = 0.0;
        for (int n = 0; n < 400; ++n) {
            double base = -K * n * (n + 1.0);
            double ep = std::exp(base + 2.0 * n * v);
            double em = std::exp(base - 2.0 * (n + 1.0) * v);
            double dif = -ep * std::expm1(-2.0 * (2.0 * n + 1.0) * v);  // ep - em
            double sum = ep + em;
            double sgn = (n & 1) ? -1.0 : 1.0;
            double m = 2.0 * n + 1.0;
            S1 += sgn * dif;
            S2 += sum;
            S1d += sgn * m * sum;
            S2d += m * dif;
            if (sum * (m + 2.0) * (m + 2.0) < 1e-20) break;
        }
        return {S1, S2, S1d, S2d};
    }

    double wp_dual(double xr) const {
        DualSums s = dual_sums(xr);
        double r = s.S2 / s.S1;
        return -dual_.e1 + dual_.Ffac * r * r;
    }

    double wp_prime_dual(double xr) const {
        DualSums s = dual_sums(xr);
        return dual_.Ffac * (kPi / c_) * s.S2 * (s.S2d * s.S1 - s.S2 * s.S1d) /
               (s.S1 * s.S1 * s.S1);
    }

    double wzeta_dual(double xr) const {
        DualSums s = dual_sums(xr);
        return (kPi / (2.0 * c_)) * s.S1d / s.S1 - xr * dual_.eta1 / c_;
    }

    double om1_, c_, q_;
    Rep direct_, dual_;
    double eta1_ = 0.0, e1_ = 0.0, g2_ = 0.0, g3_ = 0.0;
    double zeta3_im_ = 0.0;
    bool zeta3_independent_ = false;
};

} // namespace su11

#endif
