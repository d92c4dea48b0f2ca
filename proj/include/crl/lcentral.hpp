#pragma once

#include <cstdint>

#include "crl/chargroup.hpp"
#include "crl/special.hpp"

namespace crl {

/// Balance parameter and truncation rule for the approximate functional
/// equation at the central point.  Terms whose kernel argument exceeds
/// `cutoff` are dropped; with cutoff = 40 the discarded tails sit far below
/// every tolerance used here.
struct AfeParams {
    double x_balance = 1.0;
    double cutoff = 40.0;
};

struct AfeLengths {
    std::uint64_t principal; // last n with n sqrt(pi) / (X sqrt q) <= cutoff
    std::uint64_t dual;      // last n with n sqrt(pi) X / sqrt q  <= cutoff
};

AfeLengths afe_lengths(std::uint64_t q, const AfeParams& params);

struct CentralValue {
    cplx value;
    double tail_bound; // rigorous bound on the truncation error
    int parity;
    AfeParams params;
};

// L*(chi, 1/2): the AFE evaluated with the character's own parity; agrees
// with L(chi, 1/2) for primitive (= non-principal) chi and extends the
// formula to the principal character.
CentralValue l_star(const Character& chi, const AfeParams& params = {});

// As above with tau(chi) supplied by the caller (one Gauss sum per character
// is enough for a whole coset sweep).
CentralValue l_star(const Character& chi, const AfeParams& params, cplx tau);

// Exact principal central value zeta(1/2) (1 - q^{-1/2}) via the Euler factor.
double l_principal_exact(const PrimeContext& ctx);

// Root number tau(chi) / (i^kappa sqrt q); modulus 1 for primitive chi.
// Throws unit_error-family config errors for the principal character.
cplx epsilon_factor(const Character& chi);
cplx epsilon_factor(const Character& chi, cplx tau);

// |l_star(chi, X1) - l_star(chi, X2)|: the functional equation makes this a
// pure floating-point residual for non-principal chi.
double afe_consistency_residual(const Character& chi, double x1, double x2,
                                double cutoff = 40.0);

} // namespace crl
