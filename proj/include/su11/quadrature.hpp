#ifndef SU11_QUADRATURE_HPP
#define SU11_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "su11/errors.hpp"

namespace su11 {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    int panels = 0;
};

namespace detail {

// 15-point Kronrod extension of 7-point Gauss (QUADPACK constants).
inline constexpr double kGK15X[8] = {
    0.99145537112081263920685469752633, 0.94910791234275852452618968404785,
    0.86486442335976907278971278864093, 0.74153118559939443986386477328079,
    0.58608723546769113029414483825873, 0.40584515137739716690660641207696,
    0.20778495500789846760068940377324, 0.0};
inline constexpr double kGK15WK[8] = {
    0.02293532201052922496373200805897, 0.06309209262997855329070066318920,
    0.10479001032225018383987632254152, 0.14065325971552591874518959051024,
    0.16900472663926790282658342659855, 0.19035057806478540991325640242101,
    0.20443294007529889241416199923465, 0.20948214108472782801299917489171};
inline constexpr double kGK15WG[4] = {
    0.12948496616886969327061143267908, 0.27970539148927666790146777142378,
    0.38183005050511894495036977548898, 0.41795918367346938775510204081633};

template <typename F>
void gk15(F&& f, double a, double b, double& value, double& error) {
    const double h = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double fk[15];
    for (int i = 0; i < 7; ++i) {
        fk[i] = f(mid - h * kGK15X[i]);
        fk[14 - i] = f(mid + h * kGK15X[i]);
    }
    fk[7] = f(mid);
    double ik = 0.0, ig = 0.0, resabs = 0.0;
    for (int i = 0; i < 7; ++i) {
        ik += kGK15WK[i] * (fk[i] + fk[14 - i]);
        resabs += kGK15WK[i] * (std::fabs(fk[i]) + std::fabs(fk[14 - i]));
    }
    ik += kGK15WK[7] * fk[7];
    resabs += kGK15WK[7] * std::fabs(fk[7]);
    // Gauss nodes are the odd-index Kronrod nodes.
    for (int i = 0; i < 3; ++i) ig += kGK15WG[i] * (fk[2 * i + 1] + fk[13 - 2 * i]);
    ig += kGK15WG[3] * fk[7];
    value = ik * h;
    const double mean = 0.5 * ik;
    double resasc = 0.0;
    for (int i = 0; i < 7; ++i)
        resasc += kGK15WK[i] * (std::fabs(fk[i] - mean) + std::fabs(fk[14 - i] - mean));
    resasc += kGK15WK[7] * std::fabs(fk[7] - mean);
    resasc *= std::fabs(h);
    double err = std::fabs((ik - ig) * h);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps50 = 50.0 * std::numeric_limits<double>::epsilon();
    err = std::max(err, eps50 * resabs * std::fabs(h));
    error = err;
}

struct Panel {
    double a, b, value, error;
};

} // namespace detail

// Globally adaptive: split the worst panel until the summed error estimate
// meets abs_tol + rel_tol*|I|. Deterministic (ties resolved by panel order).
template <typename F>
QuadResult integrate_adaptive(F&& f, double a, double b, double abs_tol,
                              double rel_tol = 0.0, int max_panels = 4000) {
    if (a == b) return {0.0, 0.0, 0};
    std::vector<detail::Panel> panels;
    double v, e;
    detail::gk15(f, a, b, v, e);
    panels.push_back({a, b, v, e});
    for (;;) {
        double total = 0.0, err = 0.0;
        std::size_t worst = 0;
        double worst_err = -1.0;
        for (std::size_t i = 0; i < panels.size(); ++i) {
            total += panels[i].value;
            err += panels[i].error;
            if (panels[i].error > worst_err) {
                worst_err = panels[i].error;
                worst = i;
            }
        }
        double tol = abs_tol + rel_tol * std::fabs(total);
        if (err <= tol) return {total, err, static_cast<int>(panels.size())};
        if (static_cast<int>(panels.size()) >= max_panels)
            throw quadrature_error("integrate_adaptive: panel budget exhausted", err);
        detail::Panel p = panels[worst];
        double m = 0.5 * (p.a + p.b);
        if (m <= p.a || m >= p.b)
            throw quadrature_error("integrate_adaptive: interval too small to split", err);
        detail::Panel left{p.a, m, 0, 0}, right{m, p.b, 0, 0};
        detail::gk15(f, left.a, left.b, left.value, left.error);
        detail::gk15(f, right.a, right.b, right.value, right.error);
        panels[worst] = left;
        panels.push_back(right);
    }
}

// Integrate with mandatory breakpoints (e.g. the Fermi momentum, where the
// integrand develops a kink of width O(T)).
template <typename F>
QuadResult integrate_split(F&& f, double a, double b, std::vector<double> pts,
                           double abs_tol, double rel_tol = 0.0, int max_panels = 4000) {
    pts.push_back(a);
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    QuadResult total;
    double lo = a;
    for (double p : pts) {
        if (p <= lo || p > b) continue;
        auto r = integrate_adaptive(f, lo, p, abs_tol, rel_tol, max_panels);
        total.value += r.value;
        total.error += r.error;
        total.panels += r.panels;
        lo = p;
    }
    if (lo < b) {
        auto r = integrate_adaptive(f, lo, b, abs_tol, rel_tol, max_panels);
        total.value += r.value;
        total.error += r.error;
        total.panels += r.panels;
    }
    return total;
}

} // namespace su11

#endif
