#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "su11/special_functions.hpp"
#include "support/reference_lattice_sums.hpp"

using namespace su11;
using Catch::Approx;

namespace {
double ref_wp(double om1, double c, double x) {
    return static_cast<double>(su11_ref::wp_ref({om1, c}, su11_ref::mreal(x)));
}
double ref_wzeta(double om1, double c, double x) {
    return static_cast<double>(su11_ref::wzeta_ref({om1, c}, su11_ref::mreal(x)));
}
double ref_wp_prime(double om1, double c, double x) {
    return static_cast<double>(su11_ref::wp_prime_ref({om1, c}, su11_ref::mreal(x)));
}
} // namespace

TEST_CASE("eta, zeta_R, Gamma against frozen references") {
    // alternating zeta at sampled arguments (20-digit references)
    REQUIRE(dirichlet_eta(0.25) == Approx(0.55448738591407312155).epsilon(1e-13));
    REQUIRE(dirichlet_eta(0.5) == Approx(0.60489864342163037025).epsilon(1e-13));
    REQUIRE(dirichlet_eta(0.75) == Approx(0.65111567996492825401).epsilon(1e-13));
    REQUIRE(dirichlet_eta(1.0) == Approx(std::log(2.0)).epsilon(1e-14));
    REQUIRE(dirichlet_eta(1.5) == Approx(0.76514702462540794537).epsilon(1e-13));
    REQUIRE(dirichlet_eta(2.0) == Approx(0.82246703342411321824).epsilon(1e-13));
    REQUIRE(dirichlet_eta(3.0) == Approx(0.90154267736969571405).epsilon(1e-13));
    REQUIRE(dirichlet_eta(5.0) == Approx(0.97211977044690930594).epsilon(1e-13));
    REQUIRE(dirichlet_eta(10.0) == Approx(0.99903950759827156564).epsilon(1e-13));

    REQUIRE(riemann_zeta(2.0) == Approx(kPi * kPi / 6.0).epsilon(1e-14));
    REQUIRE(riemann_zeta(0.5) == Approx(-1.4603545088095868129).epsilon(1e-13));
    REQUIRE(riemann_zeta(1.5) == Approx(2.6123753486854883433).epsilon(1e-13));
    REQUIRE(riemann_zeta(3.0) == Approx(1.2020569031595942854).epsilon(1e-13));
    // eta(z) = (1 - 2^{1-z}) zeta_R(z) at z = 1/2
    REQUIRE(dirichlet_eta(0.5) ==
            Approx((1.0 - std::sqrt(2.0)) * riemann_zeta(0.5)).epsilon(1e-13));

    REQUIRE(gamma_fn(0.25) == Approx(3.6256099082219083119).epsilon(1e-13));
    REQUIRE(gamma_fn(0.5) == Approx(std::sqrt(kPi)).epsilon(1e-14));
    REQUIRE(gamma_fn(1.5) == Approx(0.88622692545275801365).epsilon(1e-13));
    REQUIRE(gamma_fn(3.7) == Approx(4.1706517837966031654).epsilon(1e-13));
    REQUIRE(gamma_fn(10.0) == Approx(362880.0).epsilon(1e-13));

    REQUIRE_THROWS_AS(gamma_fn(0.0), domain_error);
    REQUIRE_THROWS_AS(gamma_fn(-1.0), domain_error);
    REQUIRE_THROWS_AS(dirichlet_eta(-0.5), domain_error);
    REQUIRE_THROWS_AS(riemann_zeta(1.0), domain_error);
}

TEST_CASE("lattice constants against frozen 50-digit references") {
    // (pi, i pi/5): the continuum dispersion lattice at alpha = 5
    RectLattice a5(kPi, kPi / 5.0);
    REQUIRE(a5.e1() == Approx(2.083340868420845834875067).epsilon(1e-13));
    REQUIRE(a5.eta1() == Approx(-4.044984694975168476247937).epsilon(1e-13));
    REQUIRE(a5.g2() == Approx(52.0833333336172209668739).epsilon(1e-13));
    REQUIRE(a5.g3() == Approx(-72.33796296213495736513585).epsilon(1e-13));
    REQUIRE(a5.wp(1.0) == Approx(2.254075155421268343546956).epsilon(1e-12));
    REQUIRE(a5.wzeta(1.0) == Approx(0.4505849411824710735992417).epsilon(1e-12));
    REQUIRE(a5.wp(0.7) == Approx(2.886013660397382835887853).epsilon(1e-12));
    REQUIRE(a5.wzeta(0.7) == Approx(1.197354962952703485165691).epsilon(1e-12));

    // square lattice (pi, i pi): eta1 = 1/4 exactly, g3 = 0 (lemniscatic)
    RectLattice sq(kPi, kPi);
    REQUIRE(sq.eta1() == Approx(0.25).margin(1e-15));
    REQUIRE(std::fabs(sq.g3()) < 1e-15);
    REQUIRE(sq.e1() == Approx(0.1741504912107096073980308).epsilon(1e-13));
    REQUIRE(sq.g2() == Approx(0.1213135743557257768718685).epsilon(1e-13));
    REQUIRE(sq.wp(1.0) == Approx(1.006077954325451002361186).epsilon(1e-12));
    REQUIRE(sq.wzeta(1.0) == Approx(0.9979763540311407334538237).epsilon(1e-12));

    // interaction lattice for N = 12, alpha = 5: (6, i 5/2)
    RectLattice hn(6.0, 2.5);
    REQUIRE(hn.e1() == Approx(0.1332742165290330538196506).epsilon(1e-13));
    REQUIRE(hn.eta1() == Approx(-0.1612444683987678985143844).epsilon(1e-13));
    REQUIRE(hn.g2() == Approx(0.2078201493498670393438295).epsilon(1e-13));
    REQUIRE(hn.g3() == Approx(-0.01822819209613800284099212).epsilon(1e-13));
    REQUIRE(hn.wp(3.0) == Approx(0.1697572678928650259139697).epsilon(1e-12));
    REQUIRE(hn.wzeta(3.0) == Approx(0.2631759450841759228436593).epsilon(1e-12));
}

TEST_CASE("wp/wzeta/wp_prime against the independent lattice-sum oracle") {
    // sweep both nome regimes: alpha = 50 sits just under the direct-route
    // limit, 1/alpha = 0.5 is deep in it; odd shapes exercise the dual route
    struct Case {
        double om1, c;
    };
    const Case cases[] = {{kPi, kPi / 0.5}, {kPi, kPi / 1.0}, {kPi, kPi / 5.0},
                          {kPi, kPi / 20.0}, {kPi, kPi / 50.0}, {6.0, 2.5},
                          {0.5, 30.0}, {2.0, 0.03}};
    for (const auto& cs : cases) {
        RectLattice lat(cs.om1, cs.c);
        for (double frac : {0.03, 0.1, 0.3, 0.55, 0.8, 1.0}) {
            double x = frac * cs.om1;
            double wp_expect = ref_wp(cs.om1, cs.c, x);
            double wz_expect = ref_wzeta(cs.om1, cs.c, x);
            double wpp_expect = ref_wp_prime(cs.om1, cs.c, x);
            INFO("om1=" << cs.om1 << " c=" << cs.c << " x=" << x);
            REQUIRE(lat.wp(x) ==
                    Approx(wp_expect).epsilon(1e-12).margin(1e-12 * std::fabs(wp_expect)));
            REQUIRE(lat.wzeta(x) ==
                    Approx(wz_expect).epsilon(1e-12).margin(1e-12));
            REQUIRE(lat.wp_prime(x) ==
                    Approx(wpp_expect).epsilon(5e-12).margin(5e-12 * (1.0 + std::fabs(wpp_expect))));
        }
        // independent constants
        REQUIRE(lat.eta1() ==
                Approx(static_cast<double>(su11_ref::eta1_ref({cs.om1, cs.c}))).epsilon(1e-13));
        REQUIRE(lat.g2() ==
                Approx(static_cast<double>(su11_ref::g2_ref({cs.om1, cs.c}))).epsilon(1e-13));
        double g3r = static_cast<double>(su11_ref::g3_ref({cs.om1, cs.c}));
        REQUIRE(lat.g3() == Approx(g3r).epsilon(1e-12).margin(1e-14 * std::fabs(lat.g2())));
    }
}

TEST_CASE("half-period value is a root of the Weierstrass cubic") {
    for (double alpha : {1.0, 5.0, 20.0}) {
        RectLattice lat(kPi, kPi / alpha);
        double e1 = lat.wp(kPi);
        REQUIRE(e1 == Approx(lat.e1()).epsilon(1e-12));
        double cubic = 4.0 * e1 * e1 * e1 - lat.g2() * e1 - lat.g3();
        REQUIRE(std::fabs(cubic) < 1e-10 * std::max(1.0, std::fabs(e1 * e1 * e1)));
        REQUIRE(std::fabs(lat.wp_prime(kPi)) < 1e-9 * std::max(1.0, std::fabs(e1)));
    }
}

TEST_CASE("differential equation wp'^2 = 4 wp^3 - g2 wp - g3") {
    std::mt19937_64 rng(20160311);
    for (double alpha : {0.5, 1.0, 5.0, 20.0, 50.0}) {
        RectLattice lat(kPi, kPi / alpha);
        std::uniform_real_distribution<double> ux(0.02, 2.0 * kPi - 0.02);
        for (int k = 0; k < 20; ++k) {
            double x = ux(rng);
            if (std::fabs(x - kPi) < 1e-3) continue;  // wp' ~ 0, relative check ill-posed
            double p = lat.wp(x), pp = lat.wp_prime(x);
            double lhs = pp * pp;
            double rhs = 4.0 * p * p * p - lat.g2() * p - lat.g3();
            double scale = std::max({1.0, std::fabs(lhs), std::fabs(4.0 * p * p * p)});
            INFO("alpha=" << alpha << " x=" << x);
            REQUIRE(std::fabs(lhs - rhs) < 1e-10 * scale);
        }
    }
}

TEST_CASE("periodicity, evenness, quasi-periodicity") {
    std::mt19937_64 rng(777);
    RectLattice lat(kPi, kPi);
    std::uniform_real_distribution<double> ux(0.05, kPi - 0.05);
    for (int k = 0; k < 50; ++k) {
        double x = ux(rng);
        REQUIRE(lat.wp(x) == Approx(lat.wp(2.0 * kPi - x)).epsilon(1e-12));
        REQUIRE(lat.wp(x) == Approx(lat.wp(x + 2.0 * kPi)).epsilon(1e-12));
        REQUIRE(lat.wzeta(-x) == Approx(-lat.wzeta(x)).epsilon(1e-12));
        REQUIRE(lat.wzeta(x + 2.0 * kPi) ==
                Approx(lat.wzeta(x) + 2.0 * lat.eta1()).epsilon(1e-12).margin(1e-12));
        REQUIRE(lat.wp_prime(-x) == Approx(-lat.wp_prime(x)).epsilon(1e-12));
    }
    // zeta(omega1) = eta1 by definition
    REQUIRE(lat.wzeta(kPi) == Approx(lat.eta1()).epsilon(1e-13));
}

TEST_CASE("Legendre identity across the interaction range") {
    for (double alpha : {0.5, 0.7, 1.0, 2.0, 5.0, 12.0, 20.0, 35.0, 50.0}) {
        RectLattice lat(kPi, kPi / alpha);
        INFO("alpha=" << alpha);
        REQUIRE(lat.zeta3_independent());
        REQUIRE(std::fabs(lat.legendre_residual()) < 1e-12);
        // spec footnote form: eta1/alpha + i zeta(i pi/alpha) = 1/2
        REQUIRE(lat.eta1() / alpha - lat.zeta3_imag() == Approx(0.5).epsilon(1e-12));
    }
}

TEST_CASE("dual series representations of g2 agree") {
    for (double alpha : {0.6, 1.0, 3.0}) {
        RectLattice lat(kPi, kPi / alpha);
        REQUIRE(lat.g2_theta() == Approx(lat.g2()).epsilon(1e-12));
    }
}

TEST_CASE("pole guard") {
    RectLattice lat(kPi, kPi);
    REQUIRE_THROWS_AS(lat.wp(0.0), pole_error);
    REQUIRE_THROWS_AS(lat.wp(1e-9), pole_error);
    REQUIRE_THROWS_AS(lat.wp(2.0 * kPi + 1e-9), pole_error);
    REQUIRE_THROWS_AS(lat.wzeta(-2.0 * kPi), pole_error);
    REQUIRE_NOTHROW(lat.wp(1e-6));
    REQUIRE_THROWS_AS(RectLattice(-1.0, 1.0), domain_error);
    REQUIRE_THROWS_AS(RectLattice(1.0, 0.0), domain_error);
}
