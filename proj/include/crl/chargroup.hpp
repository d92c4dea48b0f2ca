#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "crl/modarith.hpp"

namespace crl {

using cplx = std::complex<double>;

// e(x) = exp(2 pi i x)
cplx unit_phase(double x);

enum class ParityProfile { all_even, all_odd, mixed };

const char* to_string(ParityProfile p);

/// chi_k relative to the fixed smallest primitive root of ctx:
/// chi_k(g^a) = e(k a / (q-1)), chi_k(n) = 0 when q | n.
class Character {
public:
    Character(const PrimeContext& ctx, std::uint64_t k)
        : ctx_(&ctx), k_(k % ctx.phi()) {}

    const PrimeContext& ctx() const { return *ctx_; }
    std::uint64_t k() const { return k_; }

    // kappa: 0 for even (chi(-1) = 1), 1 for odd
    int parity() const { return static_cast<int>(k_ & 1); }
    bool is_principal() const { return k_ == 0; }
    // prime modulus: every non-principal character is primitive
    bool is_primitive() const { return k_ != 0; }

    cplx operator()(std::int64_t n) const;

    // k * dlog(n) mod (q-1): the exact rational angle of chi(n) in units of
    // 1/(q-1).  n must be a unit.
    std::uint64_t angle_index(std::int64_t n) const {
        return k_ * ctx_->dlog(n) % ctx_->phi();
    }

    Character conjugate() const {
        return {*ctx_, k_ == 0 ? 0 : ctx_->phi() - k_};
    }

private:
    const PrimeContext* ctx_;
    std::uint64_t k_;
};

/// Subgroup H = {chi_k : d | k} of the character group, d a divisor of q-1.
/// Every subgroup of the (cyclic) character group arises this way.
class Subgroup {
public:
    Subgroup(const PrimeContext& ctx, std::uint64_t d);

    const PrimeContext& ctx() const { return *ctx_; }
    std::uint64_t index() const { return d_; }                 // [X:H]
    std::uint64_t order() const { return ctx_->phi() / d_; }   // #H
    Character member(std::uint64_t j) const { return {*ctx_, j % order() * d_}; }

private:
    const PrimeContext* ctx_;
    std::uint64_t d_;
};

/// Residues h with chi(h) = 1 for every chi in H; equals the cyclic unit
/// subgroup of order [X:H].
struct KernelSet {
    std::vector<std::uint64_t> residues; // sorted ascending
    std::size_t size() const { return residues.size(); }
};

KernelSet kernel(const Subgroup& H);

// Order-m subgroup of units mod q (m | q-1), sorted.  kernel(H) is the
// case m = H.index(); Lemma-5 style scans use it directly.
std::vector<std::uint64_t> unit_subgroup(const PrimeContext& ctx, std::uint64_t m);

/// Coset chi_c H = {chi_k : k = c (mod d)}.
class Coset {
public:
    Coset(const Subgroup& H, std::uint64_t c) : H_(H), c_(c % H.index()) {}

    const Subgroup& subgroup() const { return H_; }
    const PrimeContext& ctx() const { return H_.ctx(); }
    std::uint64_t rep_index() const { return c_; }
    Character representative() const { return {H_.ctx(), c_}; }
    std::uint64_t size() const { return H_.order(); }
    Character member(std::uint64_t j) const {
        return {H_.ctx(), c_ + j % size() * H_.index()};
    }
    bool is_trivial() const { return c_ == 0; }
    bool contains_principal() const { return c_ == 0; }

    // mixed iff the index d is odd; otherwise the parity is c mod 2 throughout
    ParityProfile parity_profile() const;

private:
    Subgroup H_;
    std::uint64_t c_;
};

// Direct summation of chi(a) over the coset members.
cplx coset_char_sum(const Coset& C, std::int64_t a);

// Closed form chi_c(a) #H [a in ker H]; membership decided by exact integer
// angle arithmetic.
cplx coset_char_sum_closed(const Coset& C, std::int64_t a);

// tau(chi) = sum_{a mod q} chi(a) e(a/q), direct O(q) summation.
cplx gauss_sum(const Character& chi);

// sum_{chi in C} tau(chi) chi(a), by direct summation over members.
cplx coset_twisted_gauss_sum(const Coset& C, std::int64_t a);

// Same quantity through the kernel identity:
// chi_c(a) #H sum_{h in ker H} chi_c(w) e(w/q) with w = h a^{-1} mod q.
cplx coset_twisted_gauss_closed(const Coset& C, std::int64_t a);

} // namespace crl
