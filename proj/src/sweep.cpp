#include "crl/sweep.hpp"

#include <cmath>
#include <numbers>

#include "crl/dft.hpp"
#include "crl/parallel.hpp"

namespace crl {

namespace {

constexpr cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

// bucket[t] += w(n) over n <= len with n = g^t (mod q); multiples of q drop out
std::vector<cplx> bucket_by_dlog(const PrimeContext& ctx, const std::vector<double>& w) {
    std::vector<cplx> bucket(ctx.phi(), cplx{0.0, 0.0});
    const std::uint64_t q = ctx.q();
    for (std::uint64_t n = 1; n <= w.size(); ++n) {
        const std::uint64_t r = n % q;
        if (r == 0) continue;
        bucket[ctx.dlog(static_cast<std::int64_t>(r))] += w[n - 1];
    }
    return bucket;
}

} // namespace

std::vector<cplx> gauss_sums_all(const PrimeContext& ctx) {
    const std::uint64_t q = ctx.q();
    std::vector<cplx> bucket(ctx.phi());
    std::uint64_t cur = 1;
    const double invq = 1.0 / static_cast<double>(q);
    for (std::uint64_t t = 0; t < ctx.phi(); ++t) {
        bucket[t] = unit_phase(static_cast<double>(cur) * invq);
        cur = cur * ctx.g() % q;
    }
    return dft(bucket, +1);
}

CentralSweep lstar_sweep(const PrimeContext& ctx, const AfeParams& params, int workers) {
    const std::uint64_t q = ctx.q();
    const AfeLengths len = afe_lengths(q, params);
    const double root_pi_over_q = std::sqrt(std::numbers::pi / static_cast<double>(q));
    const double a1 = root_pi_over_q / params.x_balance;
    const double a2 = root_pi_over_q * params.x_balance;

    const SmoothingKernel v0(0), v1(1);
    // weight tables w[n-1] = V_kappa(a n) / sqrt n, filled element-wise
    const auto weights = [&](double a, std::uint64_t count, const SmoothingKernel& v) {
        std::vector<double> w(count);
        parallel_for(1, count + 1, workers, [&](std::uint64_t lo, std::uint64_t hi) {
            for (std::uint64_t n = lo; n < hi; ++n)
                w[n - 1] = v(a * static_cast<double>(n)) / std::sqrt(static_cast<double>(n));
        });
        return w;
    };

    const std::vector<cplx> s1[2] = {
        dft(bucket_by_dlog(ctx, weights(a1, len.principal, v0)), +1),
        dft(bucket_by_dlog(ctx, weights(a1, len.principal, v1)), +1)};
    const std::vector<cplx> s2[2] = {
        dft(bucket_by_dlog(ctx, weights(a2, len.dual, v0)), -1),
        dft(bucket_by_dlog(ctx, weights(a2, len.dual, v1)), -1)};

    CentralSweep out;
    out.params = params;
    out.tau = gauss_sums_all(ctx);
    out.values.resize(ctx.phi());
    const double root_q = std::sqrt(static_cast<double>(q));
    for (std::uint64_t k = 0; k < ctx.phi(); ++k) {
        const int kappa = static_cast<int>(k & 1);
        const cplx eps = out.tau[k] / (kIPow[kappa] * root_q);
        out.values[k] = s1[kappa][k] + eps * s2[kappa][k];
    }
    return out;
}

std::vector<cplx> resonator_sweep(const PrimeContext& ctx, const Resonator& r) {
    if (r.n_max() >= ctx.q())
        throw config_error("resonator support bound must stay below q");
    std::vector<cplx> bucket(ctx.phi(), cplx{0.0, 0.0});
    for (std::size_t i = 0; i < r.support().size(); ++i)
        bucket[ctx.dlog(static_cast<std::int64_t>(r.support()[i]))] += r.coeffs()[i];
    return dft(bucket, +1);
}

} // namespace crl
