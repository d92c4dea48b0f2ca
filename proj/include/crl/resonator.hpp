#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "crl/chargroup.hpp"

namespace crl {

/// Scale parameters of the resonator construction.  L = sqrt(log N loglog N)
/// and the coefficient primes are drawn from (p_low, p_high]; with the
/// defaults (0, 0) the window is (L^2, N].
struct ResonatorSpec {
    std::uint64_t n_max = 1;
    double p_low = 0.0;
    double p_high = 0.0;
};

/// Sparse coefficient sequence r(n) supported on [1, N].  The standard
/// construction is multiplicative on squarefree products of window primes
/// with r(p) = L / (sqrt p log p); arbitrary complex entries are accepted
/// for brute-force experiments.
class Resonator {
public:
    // r = delta_1
    explicit Resonator(std::uint64_t n_max = 1);
    // explicit support (ascending, distinct) and matching coefficients
    Resonator(std::vector<std::uint64_t> support, std::vector<cplx> coeffs,
              std::uint64_t n_max);

    std::uint64_t n_max() const { return n_max_; }
    const std::vector<std::uint64_t>& support() const { return support_; }
    const std::vector<cplx>& coeffs() const { return coeffs_; }
    double norm_sq() const { return norm_sq_; }
    bool degenerate() const { return degenerate_; }
    double scale_l() const { return scale_l_; }

    cplx at(std::uint64_t n) const {
        auto it = index_.find(n);
        return it == index_.end() ? cplx{0.0, 0.0} : coeffs_[it->second];
    }

private:
    friend Resonator build_resonator(const ResonatorSpec&);

    std::uint64_t n_max_;
    std::vector<std::uint64_t> support_;
    std::vector<cplx> coeffs_;
    std::unordered_map<std::uint64_t, std::size_t> index_;
    double norm_sq_ = 0.0;
    double scale_l_ = 0.0;
    bool degenerate_ = false;

    void finalize();
};

Resonator build_resonator(const ResonatorSpec& spec);

// Re sum_{mk <= N} r(m) conj(r(mk)) / sqrt(k); the k = 1 diagonal equals
// norm_sq, so the ratio below is 1 + cross terms.
double rayleigh_numerator(const Resonator& r);
double rayleigh_ratio(const Resonator& r);

struct BruteForceOptimum {
    double value;
    Resonator maximizer;
};

// Largest Rayleigh quotient over all complex r supported on [1, N]: top
// eigenvalue of the symmetrized pair matrix, by power iteration from the
// all-ones vector.  Dense N x N problem; refuses N > 256.
BruteForceOptimum optimize_bruteforce(std::uint64_t n, double tol = 1e-10);

// R(chi) = sum_n r(n) chi(n); requires support bound < q.
cplx resonate(const Resonator& r, const Character& chi);

} // namespace crl
