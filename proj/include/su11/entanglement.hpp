#ifndef SU11_ENTANGLEMENT_HPP
#define SU11_ENTANGLEMENT_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "su11/errors.hpp"
#include "su11/model.hpp"

namespace su11 {

// ---------------------------------------------------------------------------
// Ground-state correlation matrices
// ---------------------------------------------------------------------------

// Thermodynamic limit: A_L(m,n) = sin(p0 (m-n)) / (pi (m-n)), p0/pi on the
// diagonal. Real symmetric Toeplitz.
inline Eigen::MatrixXd correlation_matrix(double p0, int L) {
    if (!(p0 > 0.0 && p0 < kPi)) throw domain_error("correlation_matrix: p0 must be in (0, pi)");
    if (L < 1) throw domain_error("correlation_matrix: L must be >= 1");
    std::vector<double> first(L);
    first[0] = p0 / kPi;
    for (int d = 1; d < L; ++d) first[d] = std::sin(p0 * d) / (kPi * d);
    Eigen::MatrixXd a(L, L);
    for (int m = 0; m < L; ++m)
        for (int n = 0; n < L; ++n) a(m, n) = first[std::abs(m - n)];
    return a;
}

// Finite N: exact discrete Fourier sum over the modes occupied in the ground
// state, i.e. those with E(2 pi l/N) < lambda. Real by the l -> N-l symmetry.
inline Eigen::MatrixXd correlation_matrix_finite_N(const ChainSpec& spec,
                                                   const Dispersion& disp, int L) {
    if (!spec.sites) throw domain_error("correlation_matrix_finite_N: requires finite N");
    const int n = *spec.sites;
    if (L < 1 || L > n) throw domain_error("correlation_matrix_finite_N: need 1 <= L <= N");
    const double scale = std::max(1.0, disp.e_pi());
    std::vector<int> occ;
    for (int l = 0; l < n; ++l) {
        double e = disp(2.0 * kPi * l / n);
        if (std::fabs(e - spec.lambda) < 1e-10 * scale) throw degenerate_ground_state(l);
        if (e < spec.lambda) occ.push_back(l);
    }
    Eigen::MatrixXd a(L, L);
    for (int m = 0; m < L; ++m)
        for (int k = 0; k < L; ++k) {
            double s = 0.0;
            for (int l : occ) s += std::cos(2.0 * kPi * (m - k) * static_cast<double>(l) / n);
            a(m, k) = s / n;
        }
    return a;
}

// ---------------------------------------------------------------------------
// Correlation spectrum (eigenvalues of A_L) with validation and caching
// ---------------------------------------------------------------------------

struct CorrelationSpectrum {
    int L = 0;
    double p0 = 0.0;
    std::vector<double> mu;  // ascending, clamped to [0, 1]
};

namespace detail {

inline constexpr double kEigBand = 1e-10;  // clamp band outside [0,1]

inline std::vector<double> validated_eigenvalues(const Eigen::MatrixXd& a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        std::ostringstream os;
        os << "symmetric eigensolver failed on " << a.rows() << "x" << a.cols()
           << " matrix (norm " << a.norm() << ", max|entry| "
           << a.cwiseAbs().maxCoeff() << ")";
        throw eigensolver_error(os.str());
    }
    std::vector<double> mu(solver.eigenvalues().data(),
                           solver.eigenvalues().data() + a.rows());
    for (double& x : mu) {
        if (x < -kEigBand || x > 1.0 + kEigBand) {
            std::ostringstream os;
            os << "correlation eigenvalue " << x
               << " outside [0,1] beyond the clamp band; kernel construction bug";
            throw eigensolver_error(os.str());
        }
        x = std::min(1.0, std::max(0.0, x));
    }
    std::sort(mu.begin(), mu.end());
    return mu;
}

struct SpectrumCache {
    std::mutex m;
    std::map<std::pair<std::int64_t, int>, std::shared_ptr<const std::vector<double>>> entries;
};

inline SpectrumCache& spectrum_cache() {
    static SpectrumCache c;
    return c;
}

} // namespace detail

// Eigenvalues of the sine-kernel A_L; results cached keyed by (p0 rounded to
// 1e-12, L) and safe for concurrent lookup/insert.
inline CorrelationSpectrum correlation_spectrum(double p0, int L) {
    auto key = std::make_pair(static_cast<std::int64_t>(std::llround(p0 * 1e12)), L);
    auto& cache = detail::spectrum_cache();
    {
        std::lock_guard<std::mutex> lock(cache.m);
        auto it = cache.entries.find(key);
        if (it != cache.entries.end()) return {L, p0, *it->second};
    }
    auto mu = std::make_shared<const std::vector<double>>(
        detail::validated_eigenvalues(correlation_matrix(p0, L)));
    {
        std::lock_guard<std::mutex> lock(cache.m);
        cache.entries.emplace(key, mu);
    }
    return {L, p0, *mu};
}

// ---------------------------------------------------------------------------
// Entropies
// ---------------------------------------------------------------------------

// s(x) = -x log x - (1-x) log(1-x), with s(0) = s(1) = 0
inline double binary_entropy(double x) {
    double s = 0.0;
    if (x > 0.0) s -= x * std::log(x);
    if (x < 1.0) s -= (1.0 - x) * std::log(1.0 - x);
    return s;
}

inline constexpr double kRenyiVnBand = 1e-6;  // |q-1| below this: von Neumann branch

// s_q(x) = (1-q)^{-1} log(x^q + (1-x)^q)
inline double renyi_mode_entropy(double x, double q) {
    if (!(q > 0.0)) throw domain_error("renyi_mode_entropy: q must be positive");
    if (std::fabs(q - 1.0) < kRenyiVnBand) return binary_entropy(x);
    return std::log(std::pow(x, q) + std::pow(1.0 - x, q)) / (1.0 - q);
}

struct EntropyResult {
    int L = 0;
    double q = 1.0;
    double S_exact = 0.0;
    std::optional<double> S_asymptotic;
    std::optional<double> gamma1_q;
};

inline double entropy_from_spectrum(const std::vector<double>& mu, double q) {
    double s = 0.0;
    for (double x : mu) s += renyi_mode_entropy(x, q);
    return s;
}

inline EntropyResult entropy(const Eigen::MatrixXd& a, double q) {
    EntropyResult r;
    r.L = static_cast<int>(a.rows());
    r.q = q;
    r.S_exact = entropy_from_spectrum(detail::validated_eigenvalues(a), q);
    return r;
}

inline EntropyResult entropy_exact(double p0, int L, double q) {
    EntropyResult r;
    r.L = L;
    r.q = q;
    r.S_exact = entropy_from_spectrum(correlation_spectrum(p0, L).mu, q);
    return r;
}

// ---------------------------------------------------------------------------
// Asymptotics: S_q = (q+1)/(6q) log(L sin p0) + gamma1(q) + o(1)
// ---------------------------------------------------------------------------

struct AsymptoticEntropy {
    double value = 0.0;
    bool intercept_calibrated = false;
    bool regime_ok = true;  // false when L sin p0 < 20
};

inline double fisher_hartwig_slope(double q) { return (q + 1.0) / (6.0 * q); }

inline AsymptoticEntropy entropy_asymptotic(double p0, int L, double q,
                                            std::optional<double> gamma1_q = std::nullopt) {
    if (!(p0 > 0.0 && p0 < kPi)) throw domain_error("entropy_asymptotic: p0 must be in (0, pi)");
    AsymptoticEntropy out;
    double arg = L * std::sin(p0);
    out.regime_ok = arg >= 20.0;
    out.value = fisher_hartwig_slope(q) * std::log(arg);
    if (gamma1_q) {
        out.value += *gamma1_q;
        out.intercept_calibrated = true;
    }
    return out;
}

// Small-filling closed forms (lambda near an endpoint, L p0 << 1; the upper
// endpoint uses pi - p0 in place of p0).
inline double endpoint_entropy_limit(double p0, int L, double q) {
    double t = L * p0 / kPi;
    if (std::fabs(q - 1.0) < kRenyiVnBand) return -t * std::log(t);
    if (q < 1.0) return std::pow(t, q) / (1.0 - q);
    return q / (q - 1.0) * t;
}

// ---------------------------------------------------------------------------
// gamma1 calibration: fitted intercepts against the exact eigenvalue route
// ---------------------------------------------------------------------------

struct Gamma1Fit {
    double q = 1.0;
    double gamma1 = 0.0;
    double spread = 0.0;  // max-min of per-L intercepts (stability diagnostic)
};

inline Gamma1Fit fit_gamma1(double q, double p0 = kPi / 2.0,
                            std::vector<int> Ls = {500, 1000, 1500, 2000}) {
    if (Ls.size() < 2) throw domain_error("fit_gamma1: need at least two block lengths");
    std::vector<double> c;
    c.reserve(Ls.size());
    for (int L : Ls) {
        double s = entropy_exact(p0, L, q).S_exact;
        c.push_back(s - fisher_hartwig_slope(q) * std::log(L * std::sin(p0)));
    }
    Gamma1Fit out;
    out.q = q;
    out.gamma1 = 0.0;
    for (double x : c) out.gamma1 += x;
    out.gamma1 /= c.size();
    out.spread = *std::max_element(c.begin(), c.end()) - *std::min_element(c.begin(), c.end());
    return out;
}

// ---------------------------------------------------------------------------
// Calibration file: plain-text lines "gamma1[<q>]=<decimal>" (precision 1e-6)
// ---------------------------------------------------------------------------

inline std::string format_q_key(double q) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", q);
    return buf;
}

inline void write_calibration(const std::string& path, const std::map<double, double>& gamma1) {
    std::ofstream out(path);
    if (!out) throw domain_error("write_calibration: cannot open " + path);
    for (const auto& [q, g] : gamma1) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "gamma1[%s]=%.8f\n", format_q_key(q).c_str(), g);
        out << buf;
    }
}

inline std::map<double, double> read_calibration(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("read_calibration: cannot open " + path);
    std::map<double, double> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto lb = line.find("gamma1[");
        auto rb = line.find("]=");
        if (lb != 0 || rb == std::string::npos)
            throw domain_error("read_calibration: malformed line: " + line);
        double q = std::stod(line.substr(7, rb - 7));
        double g = std::stod(line.substr(rb + 2));
        out[q] = g;
    }
    return out;
}

} // namespace su11

#endif
