#ifndef SU11_TESTS_REFERENCE_LATTICE_SUMS_HPP
#define SU11_TESTS_REFERENCE_LATTICE_SUMS_HPP

// Test-only reference implementation of the Weierstrass functions on a
// rectangular lattice (om1, i*c), via the classical partial-fraction rows:
// the lattice sum is resummed along the real direction into csc^2 / cot
// closed forms, leaving a geometrically convergent sum over imaginary
// offsets. 50-digit working precision; entirely independent of the
// theta-series route used by the library.

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace su11_ref {

using mreal = boost::multiprecision::cpp_bin_float_50;

inline const mreal& mpi() {
    static const mreal pi = acos(mreal(-1));
    return pi;
}

struct RefLattice {
    mreal om1, c;
    RefLattice(double om1_, double c_) : om1(om1_), c(c_) {}
};

// wp(x) = (pi/2om1)^2 [csc^2 u - 1/3 + sum_n (2 Re csc^2(u - i t_n) + 2 csch^2 t_n)]
inline mreal wp_ref(const RefLattice& lat, const mreal& x) {
    const mreal pi = mpi();
    const mreal f = pi / (2 * lat.om1);
    const mreal u = f * x;
    const mreal su = sin(u), cu = cos(u);
    mreal acc = 1 / (su * su) - mreal(1) / 3;
    for (int n = 1; n < 100000; ++n) {
        mreal t = pi * n * lat.c / lat.om1;
        if (t > 70) {  // tail < e^{-2t} * O(1), below 1e-60
            break;
        }
        mreal ch = cosh(t), sh = sinh(t);
        mreal A = su * ch, B = cu * sh;
        mreal D = A * A + B * B;
        mreal term = 2 * (A * A - B * B) / (D * D) + 2 / (sh * sh);
        acc += term;
    }
    return f * f * acc;
}

// zeta(x) = (pi/2om1)[cot u + sum_n sin(2u)/(A^2+B^2)]
//           + x [pi^2/(12 om1^2) - (pi^2/(2 om1^2)) sum_n csch^2 t_n]
inline mreal wzeta_ref(const RefLattice& lat, const mreal& x) {
    const mreal pi = mpi();
    const mreal f = pi / (2 * lat.om1);
    const mreal u = f * x;
    const mreal su = sin(u), cu = cos(u);
    mreal rows = cu / su;
    mreal csch2 = 0;
    for (int n = 1; n < 100000; ++n) {
        mreal t = pi * n * lat.c / lat.om1;
        if (t > 70) break;
        mreal ch = cosh(t), sh = sinh(t);
        mreal A = su * ch, B = cu * sh;
        rows += 2 * su * cu / (A * A + B * B);
        csch2 += 1 / (sh * sh);
    }
    return f * rows + x * (pi * pi / (12 * lat.om1 * lat.om1) -
                           pi * pi / (2 * lat.om1 * lat.om1) * csch2);
}

inline mreal eta1_ref(const RefLattice& lat) {
    const mreal pi = mpi();
    mreal csch2 = 0;
    for (int n = 1; n < 100000; ++n) {
        mreal t = pi * n * lat.c / lat.om1;
        if (t > 70) break;
        mreal sh = sinh(t);
        csch2 += 1 / (sh * sh);
    }
    return pi * pi / (12 * lat.om1) - pi * pi / (2 * lat.om1) * csch2;
}

// g2 = 60 G4, rows of sum_m (m+a)^{-4} = (pi^4/3) csc^2(pi a)(2 cot^2 + csc^2)
inline mreal g2_ref(const RefLattice& lat) {
    const mreal pi = mpi();
    const mreal zeta4 = pi * pi * pi * pi / 90;
    mreal rows = 0;
    for (int n = 1; n < 100000; ++n) {
        mreal t = pi * n * lat.c / lat.om1;
        if (t > 70) break;
        mreal sh = sinh(t), ch = cosh(t);
        mreal cs = 1 / (sh * sh), ct = (ch * ch) / (sh * sh);
        rows += (pi * pi * pi * pi / 3) * cs * (2 * ct + cs);
    }
    mreal tw = 2 * lat.om1;
    return 60 * (2 * zeta4 + 2 * rows) / (tw * tw * tw * tw);
}

// g3 = 140 G6, rows of sum_m (m+a)^{-6} = -(pi^6/15) csch^2 (2 coth^4 + 11 csch^2 coth^2 + 2 csch^4)
inline mreal g3_ref(const RefLattice& lat) {
    const mreal pi = mpi();
    const mreal pi6 = pi * pi * pi * pi * pi * pi;
    const mreal zeta6 = pi6 / 945;
    mreal rows = 0;
    for (int n = 1; n < 100000; ++n) {
        mreal t = pi * n * lat.c / lat.om1;
        if (t > 70) break;
        mreal sh = sinh(t), ch = cosh(t);
        mreal cs = 1 / (sh * sh), ct = (ch * ch) / (sh * sh);
        rows += -(pi6 / 15) * cs * (2 * ct * ct + 11 * cs * ct + 2 * cs * cs);
    }
    mreal tw = 2 * lat.om1;
    mreal tw6 = tw * tw * tw * tw * tw * tw;
    return 140 * (2 * zeta6 + 2 * rows) / tw6;
}

// wp'(x) by a high-order stencil on the 50-digit reference (step 1e-8 keeps
// the truncation near 1e-32, far below double resolution).
inline mreal wp_prime_ref(const RefLattice& lat, const mreal& x) {
    const mreal h = mreal(1) / 100000000;
    mreal f2 = wp_ref(lat, x + 2 * h), f1 = wp_ref(lat, x + h);
    mreal m1 = wp_ref(lat, x - h), m2 = wp_ref(lat, x - 2 * h);
    return (-f2 + 8 * f1 - 8 * m1 + m2) / (12 * h);
}

} // namespace su11_ref

#endif
