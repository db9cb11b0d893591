#ifndef SU11_ED_ORACLE_HPP
#define SU11_ED_ORACLE_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "su11/entanglement.hpp"
#include "su11/errors.hpp"
#include "su11/model.hpp"

namespace su11 {

// Dense 2^N oracle. Basis: bitstrings (s_1 ... s_N), s_i = 1 for a fermion,
// ordered lexicographically; site i maps to bit N-i so the integer order of
// indices matches the lexicographic order of strings.
inline constexpr int kEdMaxSites = 12;

struct OccupationBasis {
    int N;
    explicit OccupationBasis(int n) : N(n) {
        if (n < 2) throw domain_error("OccupationBasis: need N >= 2");
        if (n > kEdMaxSites)
            throw size_cap_error("OccupationBasis: N > " + std::to_string(kEdMaxSites) +
                                 " exceeds the dense oracle cap");
    }
    int dim() const { return 1 << N; }
    static int site_bit(int state, int N, int i) { return (state >> (N - i)) & 1; }  // i in 1..N
    int bit(int state, int i) const { return site_bit(state, N, i); }
    int popcount(int state) const { return __builtin_popcount(static_cast<unsigned>(state)); }
};

namespace detail {

// number of fermions strictly between sites i and j (i < j)
inline int fermions_between(int state, int N, int i, int j) {
    int n = 0;
    for (int k = i + 1; k < j; ++k) n += OccupationBasis::site_bit(state, N, k);
    return n;
}

// Jordan-Wigner parity over sites with index < i
inline int parity_below(int state, int N, int i) {
    int n = 0;
    for (int k = 1; k < i; ++k) n += OccupationBasis::site_bit(state, N, k);
    return n & 1;
}

} // namespace detail

// Apply the su(1|1) permutation S_ij to a basis state: swaps the occupations
// with phase (-1)^n, where n counts the fermions strictly between i and j if
// s_i != s_j, and n = s_i = s_j otherwise.
inline std::pair<int, double> apply_permutation(const OccupationBasis& basis, int state, int i,
                                                int j) {
    int si = basis.bit(state, i), sj = basis.bit(state, j);
    if (si == sj) return {state, si ? -1.0 : 1.0};
    int swapped = state ^ (1 << (basis.N - i)) ^ (1 << (basis.N - j));
    int n = detail::fermions_between(state, basis.N, std::min(i, j), std::max(i, j));
    return {swapped, (n & 1) ? -1.0 : 1.0};
}

// H = sum_{i<j} h_N(j-i) (1 - S_ij) - lambda N_f          (spin form)
inline Eigen::MatrixXd build_spin_hamiltonian(const ChainSpec& spec) {
    if (!spec.sites) throw domain_error("build_spin_hamiltonian: requires finite N");
    OccupationBasis basis(*spec.sites);
    const int N = basis.N, dim = basis.dim();
    const auto h = interaction_table(spec);
    double hsum = 0.0;
    for (int i = 1; i <= N; ++i)
        for (int j = i + 1; j <= N; ++j) hsum += h[j - i - 1];
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
    for (int s = 0; s < dim; ++s) {
        H(s, s) += hsum - spec.lambda * basis.popcount(s);
        for (int i = 1; i <= N; ++i)
            for (int j = i + 1; j <= N; ++j) {
                auto [t, phase] = apply_permutation(basis, s, i, j);
                H(t, s) -= h[j - i - 1] * phase;
            }
    }
    return H;
}

// H = -sum_{i,j} h_N(i-j) a^dag_i a_j - lambda sum_i a^dag_i a_i   (hopping form)
// with h_N(0) = -sum_{j>=1} h_N(j); a_i carries the parity string over sites < i.
inline Eigen::MatrixXd build_fermion_hamiltonian(const ChainSpec& spec) {
    if (!spec.sites) throw domain_error("build_fermion_hamiltonian: requires finite N");
    OccupationBasis basis(*spec.sites);
    const int N = basis.N, dim = basis.dim();
    const auto h = interaction_table(spec);
    double h0 = 0.0;
    for (double x : h) h0 -= x;
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
    for (int s = 0; s < dim; ++s) {
        int nf = basis.popcount(s);
        H(s, s) -= (h0 + spec.lambda) * nf;
        for (int j = 1; j <= N; ++j) {
            if (!basis.bit(s, j)) continue;
            int mid = s ^ (1 << (N - j));  // a_j applied
            double sj = detail::parity_below(s, N, j) ? -1.0 : 1.0;
            for (int i = 1; i <= N; ++i) {
                if (i == j || basis.bit(mid, i)) continue;
                int t = mid ^ (1 << (N - i));  // a^dag_i applied
                double si = detail::parity_below(mid, N, i) ? -1.0 : 1.0;
                int d = std::abs(i - j);
                H(t, s) -= h[d - 1] * si * sj;
            }
        }
    }
    return H;
}

// All 2^N subset sums of (eps_N(l) - lambda): the exact spectrum by Fourier
// diagonalization.
inline std::vector<double> mode_subset_spectrum(const ChainSpec& spec) {
    if (!spec.sites) throw domain_error("mode_subset_spectrum: requires finite N");
    const int N = *spec.sites;
    if (N > kEdMaxSites) throw size_cap_error("mode_subset_spectrum: N exceeds the dense cap");
    const auto h = interaction_table(spec);
    std::vector<double> sums{0.0};
    sums.reserve(1u << N);
    for (int l = 0; l < N; ++l) {
        double e = mode_energy_from_table(h, N, l) - spec.lambda;
        std::size_t m = sums.size();
        for (std::size_t k = 0; k < m; ++k) sums.push_back(sums[k] + e);
    }
    std::sort(sums.begin(), sums.end());
    return sums;
}

struct ModeSpectrumReport {
    double worst_deviation = 0.0;
    bool pass = false;
};

// Dense spectrum vs mode subset sums, sorted multiset comparison.
inline ModeSpectrumReport spectrum_vs_modes(const ChainSpec& spec, double tol = 1e-10) {
    Eigen::MatrixXd H = build_spin_hamiltonian(spec);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(H, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw eigensolver_error("spectrum_vs_modes: dense eigensolver failed");
    auto modes = mode_subset_spectrum(spec);
    double scale = 1.0;
    for (double e : modes) scale = std::max(scale, std::fabs(e));
    double worst = 0.0;
    for (int k = 0; k < H.rows(); ++k)
        worst = std::max(worst, std::fabs(solver.eigenvalues()[k] - modes[k]));
    return {worst, worst <= tol * scale};
}

// Dense ground state with a nondegeneracy check on the spectral gap.
inline Eigen::VectorXd ed_ground_state(const Eigen::MatrixXd& H) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(H);
    if (solver.info() != Eigen::Success)
        throw eigensolver_error("ed_ground_state: dense eigensolver failed");
    const auto& ev = solver.eigenvalues();
    double scale = std::max({1.0, std::fabs(ev[0]), std::fabs(ev[ev.size() - 1])});
    if (ev[1] - ev[0] < 1e-10 * scale) throw degenerate_ground_state(-1);
    return solver.eigenvectors().col(0);
}

// Reduced density matrix of the first L sites by partial trace over the rest.
inline Eigen::MatrixXd reduced_density_matrix(const Eigen::VectorXd& psi, int N, int L) {
    if (L < 1 || L > N) throw domain_error("reduced_density_matrix: need 1 <= L <= N");
    const int dimA = 1 << L, dimB = 1 << (N - L);
    Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(dimA, dimA);
    for (int a = 0; a < dimA; ++a)
        for (int b = 0; b <= a; ++b) {
            double acc = 0.0;
            for (int r = 0; r < dimB; ++r) acc += psi[a * dimB + r] * psi[b * dimB + r];
            rho(a, b) = acc;
            rho(b, a) = acc;
        }
    return rho;
}

inline double entropy_from_density_matrix(const Eigen::MatrixXd& rho, double q) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(rho, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw eigensolver_error("entropy_from_density_matrix: eigensolver failed");
    bool vn = std::fabs(q - 1.0) < kRenyiVnBand;
    double s = 0.0, tr = 0.0;
    for (int k = 0; k < rho.rows(); ++k) {
        double p = std::max(0.0, solver.eigenvalues()[k]);
        tr += p;
        if (vn) {
            if (p > 0.0) s -= p * std::log(p);
        } else {
            s += std::pow(p, q);
        }
    }
    (void)tr;
    return vn ? s : std::log(s) / (1.0 - q);
}

// Block entropy of the exact ground state (partial-trace route).
inline double ed_block_entropy(const ChainSpec& spec, int L, double q = 1.0) {
    if (!spec.sites) throw domain_error("ed_block_entropy: requires finite N");
    Eigen::MatrixXd H = build_spin_hamiltonian(spec);
    Eigen::VectorXd psi = ed_ground_state(H);
    return entropy_from_density_matrix(reduced_density_matrix(psi, *spec.sites, L), q);
}

} // namespace su11

#endif
