#include "crl/lcentral.hpp"

#include <cmath>
#include <numbers>

namespace crl {

namespace {

constexpr cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

// V_kappa(y) <= 1.12 e^{-y^2} for y >= 1, so the dropped tail past n = len
// of sum_n V(n a) / sqrt n is below this integral bound.
double tail_after(double a, std::uint64_t len, double cutoff) {
    const double y = a * static_cast<double>(len + 1);
    if (y < cutoff) return 1e300; // misuse guard; lengths always reach cutoff
    const double log_tail = std::log(1.12) - y * y -
                            0.5 * std::log(static_cast<double>(len + 1)) +
                            std::log1p(1.0 / (2.0 * a * y));
    return log_tail < -700.0 ? 0.0 : std::exp(log_tail);
}

} // namespace

AfeLengths afe_lengths(std::uint64_t q, const AfeParams& params) {
    const double sq = std::sqrt(static_cast<double>(q) / std::numbers::pi);
    const auto len = [&](double scale) {
        return static_cast<std::uint64_t>(std::floor(params.cutoff * sq * scale));
    };
    return {len(params.x_balance), len(1.0 / params.x_balance)};
}

CentralValue l_star(const Character& chi, const AfeParams& params) {
    return l_star(chi, params, gauss_sum(chi));
}

CentralValue l_star(const Character& chi, const AfeParams& params, cplx tau) {
    const auto& ctx = chi.ctx();
    const std::uint64_t q = ctx.q();
    const int kappa = chi.parity();
    const SmoothingKernel v(kappa);
    const AfeLengths len = afe_lengths(q, params);
    const double root_pi_over_q = std::sqrt(std::numbers::pi / static_cast<double>(q));
    const double a1 = root_pi_over_q / params.x_balance;
    const double a2 = root_pi_over_q * params.x_balance;

    cplx principal{0.0, 0.0};
    for (std::uint64_t n = 1; n <= len.principal; ++n) {
        if (n % q == 0) continue;
        principal += chi(static_cast<std::int64_t>(n)) *
                     (v(a1 * static_cast<double>(n)) / std::sqrt(static_cast<double>(n)));
    }
    const Character chi_bar = chi.conjugate();
    cplx dual{0.0, 0.0};
    for (std::uint64_t n = 1; n <= len.dual; ++n) {
        if (n % q == 0) continue;
        dual += chi_bar(static_cast<std::int64_t>(n)) *
                (v(a2 * static_cast<double>(n)) / std::sqrt(static_cast<double>(n)));
    }
    const cplx eps = tau / (kIPow[kappa & 3] * std::sqrt(static_cast<double>(q)));
    CentralValue out;
    out.value = principal + eps * dual;
    out.tail_bound = tail_after(a1, len.principal, params.cutoff) +
                     tail_after(a2, len.dual, params.cutoff); // |eps| = 1
    out.parity = kappa;
    out.params = params;
    return out;
}

double l_principal_exact(const PrimeContext& ctx) {
    static const double zeta_half = zeta_euler_maclaurin(0.5);
    return zeta_half * (1.0 - 1.0 / std::sqrt(static_cast<double>(ctx.q())));
}

cplx epsilon_factor(const Character& chi) {
    if (chi.is_principal())
        throw config_error("epsilon factor requires a primitive (non-principal) character");
    return epsilon_factor(chi, gauss_sum(chi));
}

cplx epsilon_factor(const Character& chi, cplx tau) {
    if (chi.is_principal())
        throw config_error("epsilon factor requires a primitive (non-principal) character");
    return tau / (kIPow[chi.parity() & 3] * std::sqrt(static_cast<double>(chi.ctx().q())));
}

double afe_consistency_residual(const Character& chi, double x1, double x2, double cutoff) {
    if (chi.is_principal())
        throw config_error("AFE residual is defined for non-principal characters");
    const cplx tau = gauss_sum(chi);
    const cplx v1 = l_star(chi, {x1, cutoff}, tau).value;
    const cplx v2 = l_star(chi, {x2, cutoff}, tau).value;
    return std::abs(v1 - v2);
}

} // namespace crl
