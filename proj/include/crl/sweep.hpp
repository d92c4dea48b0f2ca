#pragma once

#include <cstdint>
#include <vector>

#include "crl/lcentral.hpp"
#include "crl/resonator.hpp"

namespace crl {

// Exhaustive per-character evaluations over the whole group mod q.  Weighted
// sums sum_n w(n) chi_k(n) are bucketed by dlog class and resolved for every
// k at once through one length-(q-1) DFT, so a full sweep costs
// O(sum length + q log q) instead of O(q * sum length).

// tau(chi_k) for k = 0 .. q-2.
std::vector<cplx> gauss_sums_all(const PrimeContext& ctx);

struct CentralSweep {
    AfeParams params;
    std::vector<cplx> values; // L*(chi_k)
    std::vector<cplx> tau;    // Gauss sums
};

// L*(chi_k, 1/2) for every k.  workers parallelizes the smoothing-weight
// tables; results are bitwise independent of the worker count.
CentralSweep lstar_sweep(const PrimeContext& ctx, const AfeParams& params, int workers = 1);

// R(chi_k) for every k; requires r.n_max() < q.
std::vector<cplx> resonator_sweep(const PrimeContext& ctx, const Resonator& r);

} // namespace crl
