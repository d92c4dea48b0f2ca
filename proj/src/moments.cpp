#include "crl/moments.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace crl {

namespace {

constexpr cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

// saturating check of N^{2K-1} (n^{2K}-1)/(n-1) < q; n = 1 degenerates to 2K N^{2K-1}
bool lemma5_size_bound(std::uint64_t q, std::uint64_t index, std::uint64_t n_support,
                       std::uint64_t n_edge) {
    using u128 = unsigned __int128;
    const u128 cap = static_cast<u128>(q);
    u128 lhs = 1;
    for (std::uint64_t i = 0; i + 1 < 2 * index; ++i) {
        lhs *= n_support;
        if (lhs >= cap) return false;
    }
    // geometric factor sum_{i<2K} n_edge^i, saturated against q
    u128 geo = 0, pw = 1;
    for (std::uint64_t i = 0; i < 2 * index; ++i) {
        geo += pw;
        if (geo >= cap) return false;
        if (i + 1 < 2 * index) {
            pw *= n_edge;
            if (pw >= cap) return false;
        }
    }
    // both factors are below q <= 2^32 here, so the product fits in 128 bits
    return lhs * geo < cap;
}

// Per-parity kernel block of the principal term:
//   sum_{h in ker} chi_rep(h) sum_{n = h n2 / n1 (mod q), n <= len} V_kappa(a n)/sqrt n
cplx pt_block(const PrimeContext& ctx, const std::vector<std::uint64_t>& ker,
              const Character& rep, const SmoothingKernel& v, double a,
              std::uint64_t len, std::uint64_t n1, std::uint64_t n2) {
    const std::uint64_t q = ctx.q();
    const std::uint64_t base = n2 % q * ctx.mod_inv(static_cast<std::int64_t>(n1)) % q;
    cplx sum{0.0, 0.0};
    for (std::uint64_t h : ker) {
        const std::uint64_t n0 = h * base % q;
        if (n0 == 0) continue; // unreachable for unit data
        double inner = 0.0;
        for (std::uint64_t n = n0; n <= len; n += q)
            inner += v(a * static_cast<double>(n)) / std::sqrt(static_cast<double>(n));
        sum += rep(static_cast<std::int64_t>(h)) * inner;
    }
    return sum;
}

// Per-parity kernel block of the dual term:
//   (1/(i^kappa sqrt q)) sum_{n <= len, q !| n} V_kappa(a n)/sqrt n *
//       chi_rep(b_n) sum_{h in ker} chi_rep(u) e(u/q),  u = h / b_n (mod q)
cplx dt_block(const PrimeContext& ctx, const std::vector<std::uint64_t>& ker,
              const Character& rep, const SmoothingKernel& v, double a,
              std::uint64_t len, std::uint64_t n1, std::uint64_t n2) {
    const std::uint64_t q = ctx.q();
    const std::uint64_t c0 = n1 % q * ctx.mod_inv(static_cast<std::int64_t>(n2)) % q;
    const std::uint64_t c0_inv = ctx.mod_inv(static_cast<std::int64_t>(c0));
    const double invq = 1.0 / static_cast<double>(q);
    cplx sum{0.0, 0.0};
    for (std::uint64_t n = 1; n <= len; ++n) {
        if (n % q == 0) continue;
        const std::uint64_t b = c0 * ctx.mod_inv(static_cast<std::int64_t>(n)) % q;
        const std::uint64_t b_inv = c0_inv * (n % q) % q;
        cplx inner{0.0, 0.0};
        for (std::uint64_t h : ker) {
            const std::uint64_t u = h * b_inv % q;
            inner += rep(static_cast<std::int64_t>(u)) *
                     unit_phase(static_cast<double>(u) * invq);
        }
        sum += (v(a * static_cast<double>(n)) / std::sqrt(static_cast<double>(n))) *
               rep(static_cast<std::int64_t>(b)) * inner;
    }
    return sum / (kIPow[v.kappa() & 3] * std::sqrt(static_cast<double>(q)));
}

} // namespace

double script_l(double q) {
    return std::sqrt(std::log(q) / std::log(std::log(q)));
}

ExperimentParams ExperimentParams::defaults_for(std::uint64_t q, std::uint64_t index,
                                                std::uint64_t coset, double cutoff) {
    ExperimentParams p;
    p.q = q;
    p.index = index;
    p.coset = coset;
    p.cutoff = cutoff;
    const double qd = static_cast<double>(q);
    if (coset == 0) {
        p.n_support = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::floor(std::cbrt(qd))));
        p.x_balance = std::pow(qd, 1.0 / 6.0);
        p.delta = 0.0;
    } else {
        const double k2 = 2.0 * static_cast<double>(index) - 1.0;
        p.x_balance = 1.0;
        p.delta = (2.0 / 3.0) / k2;
        p.n_support = std::max<std::uint64_t>(
            1, static_cast<std::uint64_t>(std::floor(std::pow(qd, 1.0 / (3.0 * k2)))));
    }
    p.refresh_flags();
    return p;
}

void ExperimentParams::refresh_flags() {
    const double qd = static_cast<double>(q);
    index_warning = static_cast<double>(index) > std::pow(std::log(qd), 0.9);
    if (coset == 0) {
        lemma5_feasible = true; // positivity argument, no congruence window
    } else {
        const auto n_edge = static_cast<std::uint64_t>(std::floor(std::pow(qd, delta)));
        lemma5_feasible = lemma5_size_bound(q, index, n_support, std::max<std::uint64_t>(1, n_edge));
    }
}

double m1(const Coset& C, const Resonator& r, M1Route route) {
    const auto& ctx = C.ctx();
    if (r.n_max() >= ctx.q())
        throw config_error("resonator support bound must stay below q");
    if (route == M1Route::direct) {
        double sum = 0.0;
        for (std::uint64_t j = 0; j < C.size(); ++j)
            sum += std::norm(resonate(r, C.member(j)));
        return sum;
    }
    const auto ker = kernel(C.subgroup()).residues;
    const Character rep = C.representative();
    const std::uint64_t q = ctx.q();
    cplx sum{0.0, 0.0};
    for (std::uint64_t h : ker) {
        cplx pair_sum{0.0, 0.0};
        for (std::size_t i = 0; i < r.support().size(); ++i) {
            const std::uint64_t n1 = r.support()[i];
            const std::uint64_t n2 = h * n1 % q;
            if (n2 > r.n_max()) continue;
            const cplx rn2 = r.at(n2);
            if (rn2 == cplx{0.0, 0.0}) continue;
            pair_sum += r.coeffs()[i] * std::conj(rn2);
        }
        sum += std::conj(rep(static_cast<std::int64_t>(h))) * pair_sum;
    }
    return static_cast<double>(C.size()) * std::real(sum);
}

cplx m2(const Coset& C, const Resonator& r, const AfeParams& params) {
    const auto& ctx = C.ctx();
    if (r.n_max() >= ctx.q())
        throw config_error("resonator support bound must stay below q");
    cplx sum{0.0, 0.0};
    for (std::uint64_t j = 0; j < C.size(); ++j) {
        const Character chi = C.member(j);
        const cplx weight = {std::norm(resonate(r, chi)), 0.0};
        const cplx lval = chi.is_principal() ? cplx{l_principal_exact(ctx), 0.0}
                                             : l_star(chi, params).value;
        sum += lval * weight;
    }
    return sum;
}

PtDt pt_dt_decompose(const Coset& C, std::uint64_t n1, std::uint64_t n2,
                     const AfeParams& params) {
    const auto& ctx = C.ctx();
    if (!ctx.is_unit(static_cast<std::int64_t>(n1)) || !ctx.is_unit(static_cast<std::int64_t>(n2)))
        throw unit_error("PT/DT decomposition requires unit n1, n2");
    const std::uint64_t d = C.subgroup().index();
    const AfeLengths len = afe_lengths(ctx.q(), params);
    const double root_pi_over_q = std::sqrt(std::numbers::pi / static_cast<double>(ctx.q()));
    const double a1 = root_pi_over_q / params.x_balance;
    const double a2 = root_pi_over_q * params.x_balance;
    const SmoothingKernel v0(0), v1(1);

    PtDt out{{0.0, 0.0}, {0.0, 0.0}};
    if (C.parity_profile() != ParityProfile::mixed) {
        // constant parity: orthogonality applies to the coset as-is
        const auto ker = kernel(C.subgroup()).residues;
        const Character rep = C.representative();
        const SmoothingKernel& v = C.parity_profile() == ParityProfile::all_even ? v0 : v1;
        const double order = static_cast<double>(C.size());
        out.pt = order * pt_block(ctx, ker, rep, v, a1, len.principal, n1, n2);
        out.dt = order * dt_block(ctx, ker, rep, v, a2, len.dual, n1, n2);
        return out;
    }
    // mixed parity (d odd): split into the even and odd halves, cosets of the
    // index-2d subgroup whose kernel is ker H u -ker H
    const std::uint64_t c = C.rep_index();
    const std::uint64_t c_even = (c % 2 == 0) ? c : c + d;
    const std::uint64_t c_odd = (c % 2 == 1) ? c : c + d;
    const auto ker2 = unit_subgroup(ctx, 2 * d);
    const Character rep_even(ctx, c_even), rep_odd(ctx, c_odd);
    const double half_order = static_cast<double>(C.size()) / 2.0;
    out.pt = half_order * (pt_block(ctx, ker2, rep_even, v0, a1, len.principal, n1, n2) +
                           pt_block(ctx, ker2, rep_odd, v1, a1, len.principal, n1, n2));
    out.dt = half_order * (dt_block(ctx, ker2, rep_even, v0, a2, len.dual, n1, n2) +
                           dt_block(ctx, ker2, rep_odd, v1, a2, len.dual, n1, n2));
    return out;
}

double main_term(const Coset& C, const Resonator& r) {
    return static_cast<double>(C.size()) * rayleigh_numerator(r);
}

double main_term_congruence(const Coset& C, const Resonator& r, const AfeParams& params) {
    const auto& ctx = C.ctx();
    const std::uint64_t q = ctx.q();
    if (r.n_max() >= q)
        throw config_error("resonator support bound must stay below q");
    // small-argument range of the principal sum: n sqrt(pi) / (X sqrt q) < 1
    const double edge = params.x_balance * std::sqrt(static_cast<double>(q) / std::numbers::pi);
    const auto n_small = static_cast<std::uint64_t>(std::ceil(edge)) - 1;
    cplx sum{0.0, 0.0};
    for (std::uint64_t n = 1; n <= n_small; ++n) {
        if (n % q == 0) continue;
        const double w = 1.0 / std::sqrt(static_cast<double>(n));
        for (std::size_t i = 0; i < r.support().size(); ++i) {
            const std::uint64_t m2v = n * r.support()[i] % q;
            if (m2v == 0 || m2v > r.n_max()) continue;
            const cplx rn2 = r.at(m2v);
            if (rn2 == cplx{0.0, 0.0}) continue;
            sum += w * r.coeffs()[i] * std::conj(rn2);
        }
    }
    return static_cast<double>(C.size()) * std::real(sum);
}

Lemma5Result lemma5_check(const PrimeContext& ctx, std::uint64_t index,
                          std::uint64_t n_support, double delta, std::uint64_t budget) {
    const std::uint64_t q = ctx.q();
    if (index == 0 || ctx.phi() % index != 0)
        throw config_error("kernel order must divide q - 1");
    const auto n_edge = std::max<std::uint64_t>(
        1, static_cast<std::uint64_t>(std::floor(std::pow(static_cast<double>(q), delta))));
    const std::uint64_t probes = (index - 1) * n_edge * n_support;
    if (probes > budget)
        throw budget_error("lemma-5 scan needs ~" + std::to_string(probes) +
                           " probes, budget is " + std::to_string(budget));
    Lemma5Result out;
    out.size_bound_ok = lemma5_size_bound(q, index, n_support, n_edge);
    for (std::uint64_t h : unit_subgroup(ctx, index)) {
        if (h == 1) continue;
        for (std::uint64_t n = 1; n <= n_edge; ++n) {
            const std::uint64_t hn = h * n % q;
            for (std::uint64_t m = 1; m <= n_support; ++m) {
                const std::uint64_t n2 = hn * m % q;
                if (n2 >= 1 && n2 <= n_support) {
                    out.holds = false;
                    out.witness = Lemma5Witness{h, n, m, n2};
                    return out;
                }
            }
        }
    }
    return out;
}

Lemma5Result lemma5_check(std::uint64_t q, std::uint64_t index, std::uint64_t n_support,
                          double delta, std::uint64_t budget) {
    return lemma5_check(PrimeContext(q), index, n_support, delta, budget);
}

ErrorBudget error_budget(const ExperimentParams& p, double norm_sq, double eps) {
    return error_budget(p.q, p.index, static_cast<double>(p.n_support), p.x_balance,
                        norm_sq, eps);
}

ErrorBudget error_budget(std::uint64_t q, std::uint64_t index, double n_support,
                         double x_balance, double norm_sq, double eps) {
    const double qd = static_cast<double>(q);
    const double phi = qd - 1.0;
    const double order = phi / static_cast<double>(index); // #H
    const double n = n_support, x = x_balance;
    ErrorBudget out;
    out.brackets = {
        n / (std::pow(qd, 0.25) * std::sqrt(x)),
        std::sqrt(x) * n / std::pow(qd, 0.75 - eps),
        n / (std::pow(qd, 0.25) * std::sqrt(x)),
        1.0 / (std::sqrt(x) * std::pow(qd, 0.25 - eps)),
        n * std::sqrt(x) * std::pow(qd, 0.25) / phi,
    };
    out.all_bounded = true;
    for (std::size_t i = 0; i < 5; ++i) {
        out.terms[i] = order * norm_sq * out.brackets[i];
        if (!(out.brackets[i] <= 1.0)) out.all_bounded = false;
    }
    return out;
}

double theorem_bound(std::uint64_t q, std::uint64_t index, BoundProfile profile) {
    const double l = script_l(static_cast<double>(q));
    const double k = static_cast<double>(index);
    const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
    switch (profile) {
        case BoundProfile::trivial_coset:
            return inv_sqrt3 * l - std::log(k);
        case BoundProfile::mixed:
            return inv_sqrt3 * l / std::sqrt(2.0 * k - 1.0);
        case BoundProfile::single_parity:
            if (index <= 1) return inv_sqrt3 * l; // guarded: index-1 subgroup has no proper coset
            return inv_sqrt3 * l / std::sqrt(k - 1.0);
    }
    return 0.0;
}

namespace {

std::uint64_t checked_q(std::uint64_t q, std::uint64_t budget) {
    if (q > budget)
        throw budget_error("q = " + std::to_string(q) + " exceeds the scan budget " +
                           std::to_string(budget) + "; a full sweep needs roughly " +
                           std::to_string(5 * q * 64) + " kernel evaluations");
    return q;
}

} // namespace

PrimeScanner::PrimeScanner(std::uint64_t q, double cutoff, int workers, std::uint64_t budget)
    : ctx_(checked_q(q, budget)), cutoff_(cutoff), workers_(workers) {}

const CentralSweep& PrimeScanner::sweep_for(double x_balance) {
    auto it = sweeps_.find(x_balance);
    if (it == sweeps_.end())
        it = sweeps_.emplace(x_balance, lstar_sweep(ctx_, {x_balance, cutoff_}, workers_)).first;
    return it->second;
}

const Resonator& PrimeScanner::resonator_for(std::uint64_t n_support) {
    auto it = resonators_.find(n_support);
    if (it == resonators_.end())
        it = resonators_.emplace(n_support, build_resonator({n_support})).first;
    return it->second;
}

const std::vector<cplx>& PrimeScanner::resonator_values(std::uint64_t n_support) {
    auto it = resonator_sweeps_.find(n_support);
    if (it == resonator_sweeps_.end())
        it = resonator_sweeps_
                 .emplace(n_support, resonator_sweep(ctx_, resonator_for(n_support)))
                 .first;
    return it->second;
}

MomentReport PrimeScanner::run(std::uint64_t index, std::uint64_t coset) {
    return run(ExperimentParams::defaults_for(ctx_.q(), index, coset, cutoff_));
}

MomentReport PrimeScanner::run(const ExperimentParams& params) {
    if (params.q != ctx_.q()) throw config_error("params built for a different q");
    if (params.n_support >= ctx_.q())
        throw config_error("resonator support bound must stay below q");
    const Subgroup H(ctx_, params.index);
    const Coset C(H, params.coset);
    const Resonator& r = resonator_for(params.n_support);
    const CentralSweep& sweep = sweep_for(params.x_balance);
    const std::vector<cplx>& rvals = resonator_values(params.n_support);
    const double exact_principal = l_principal_exact(ctx_);

    MomentReport rep;
    rep.q = ctx_.q();
    rep.g = ctx_.g();
    rep.index = params.index;
    rep.coset = params.coset;
    rep.profile = C.parity_profile();
    rep.n_support = params.n_support;
    rep.x_balance = params.x_balance;
    rep.delta = params.delta;

    double m1_direct = 0.0;
    cplx m2_sum{0.0, 0.0};
    double max_abs = -1.0;
    std::uint64_t argmax = 0;
    for (std::uint64_t j = 0; j < C.size(); ++j) {
        const std::uint64_t k = (params.coset + j * params.index) % ctx_.phi();
        const double w = std::norm(rvals[k]);
        const cplx lval = (k == 0) ? cplx{exact_principal, 0.0} : sweep.values[k];
        m1_direct += w;
        m2_sum += lval * w;
        const double mag = std::abs(lval);
        if (mag > max_abs) {
            max_abs = mag;
            argmax = k;
        }
    }
    // route cross-check: the kernel form must reproduce the direct sum
    const double m1_kernel = m1(C, r, M1Route::kernel);
    if (std::fabs(m1_kernel - m1_direct) > 1e-6 * std::max(1.0, std::fabs(m1_direct)))
        throw std::runtime_error("m1 route mismatch at q=" + std::to_string(ctx_.q()) +
                                 " K=" + std::to_string(params.index) +
                                 " c=" + std::to_string(params.coset));

    rep.m1 = m1_direct;
    rep.m2 = m2_sum;
    rep.main_term = main_term(C, r);
    rep.error_terms = error_budget(params, r.norm_sq()).terms;
    rep.lower_bound = std::real(m2_sum) / m1_direct;
    rep.max_abs_l = max_abs;
    rep.argmax_index = argmax;
    if (rep.lower_bound > rep.max_abs_l + 1e-6)
        throw std::runtime_error("weighted-average inequality violated at q=" +
                                 std::to_string(ctx_.q()));
    const BoundProfile profile =
        C.is_trivial() ? BoundProfile::trivial_coset
                       : (rep.profile == ParityProfile::mixed ? BoundProfile::mixed
                                                              : BoundProfile::single_parity);
    rep.theorem_exponent = theorem_bound(ctx_.q(), params.index, profile);
    rep.measured_log_max = std::log(max_abs);
    return rep;
}

MomentReport coset_scan(const ExperimentParams& params, int workers, std::uint64_t budget) {
    PrimeScanner scanner(params.q, params.cutoff, workers, budget);
    return scanner.run(params);
}

} // namespace crl
