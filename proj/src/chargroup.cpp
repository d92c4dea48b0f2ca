#include "crl/chargroup.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace crl {

cplx unit_phase(double x) {
    const double t = 2.0 * std::numbers::pi * x;
    return {std::cos(t), std::sin(t)};
}

const char* to_string(ParityProfile p) {
    switch (p) {
        case ParityProfile::all_even: return "all-even";
        case ParityProfile::all_odd: return "all-odd";
        default: return "mixed";
    }
}

cplx Character::operator()(std::int64_t n) const {
    const std::uint64_t r = ctx_->reduce(n);
    if (r == 0) return {0.0, 0.0};
    const std::uint64_t phi = ctx_->phi();
    const std::uint64_t t = k_ * ctx_->dlog(static_cast<std::int64_t>(r)) % phi;
    return unit_phase(static_cast<double>(t) / static_cast<double>(phi));
}

Subgroup::Subgroup(const PrimeContext& ctx, std::uint64_t d) : ctx_(&ctx), d_(d) {
    if (d == 0 || ctx.phi() % d != 0)
        throw config_error("subgroup index " + std::to_string(d) + " must divide " +
                           std::to_string(ctx.phi()));
}

std::vector<std::uint64_t> unit_subgroup(const PrimeContext& ctx, std::uint64_t m) {
    if (m == 0 || ctx.phi() % m != 0)
        throw config_error("unit subgroup order must divide " + std::to_string(ctx.phi()));
    const std::uint64_t step = ctx.phi() / m;
    std::vector<std::uint64_t> out;
    out.reserve(m);
    const std::uint64_t gen = pow_mod(ctx.g(), step, ctx.q());
    std::uint64_t cur = 1;
    for (std::uint64_t j = 0; j < m; ++j) {
        out.push_back(cur);
        cur = cur * gen % ctx.q();
    }
    std::sort(out.begin(), out.end());
    return out;
}

KernelSet kernel(const Subgroup& H) {
    return {unit_subgroup(H.ctx(), H.index())};
}

ParityProfile Coset::parity_profile() const {
    if (H_.index() % 2 == 1) return ParityProfile::mixed;
    return (c_ % 2 == 0) ? ParityProfile::all_even : ParityProfile::all_odd;
}

cplx coset_char_sum(const Coset& C, std::int64_t a) {
    const auto& ctx = C.ctx();
    if (!ctx.is_unit(a)) throw unit_error("coset character sum requires a unit argument");
    const std::uint64_t phi = ctx.phi();
    const std::uint64_t la = ctx.dlog(a);
    const std::uint64_t d = C.subgroup().index();
    cplx sum{0.0, 0.0};
    for (std::uint64_t j = 0; j < C.size(); ++j) {
        const std::uint64_t t = (C.rep_index() + j * d) % phi * la % phi;
        sum += unit_phase(static_cast<double>(t) / static_cast<double>(phi));
    }
    return sum;
}

cplx coset_char_sum_closed(const Coset& C, std::int64_t a) {
    const auto& ctx = C.ctx();
    if (!ctx.is_unit(a)) throw unit_error("coset character sum requires a unit argument");
    const std::uint64_t la = ctx.dlog(a);
    const std::uint64_t d = C.subgroup().index();
    // a in ker H  <=>  dlog(a) is a multiple of (q-1)/d, exactly
    if (la % (ctx.phi() / d) != 0) return {0.0, 0.0};
    return static_cast<double>(C.size()) * C.representative()(a);
}

cplx gauss_sum(const Character& chi) {
    const auto& ctx = chi.ctx();
    const std::uint64_t q = ctx.q();
    const std::uint64_t phi = ctx.phi();
    const double invq = 1.0 / static_cast<double>(q);
    cplx sum{0.0, 0.0};
    for (std::uint64_t a = 1; a < q; ++a) {
        const std::uint64_t t = chi.k() * ctx.dlog(static_cast<std::int64_t>(a)) % phi;
        sum += unit_phase(static_cast<double>(t) / static_cast<double>(phi)) *
               unit_phase(static_cast<double>(a) * invq);
    }
    return sum;
}

cplx coset_twisted_gauss_sum(const Coset& C, std::int64_t a) {
    const auto& ctx = C.ctx();
    if (!ctx.is_unit(a)) throw unit_error("twisted gauss sum requires a unit argument");
    cplx sum{0.0, 0.0};
    for (std::uint64_t j = 0; j < C.size(); ++j) {
        const Character chi = C.member(j);
        sum += gauss_sum(chi) * chi(a);
    }
    return sum;
}

cplx coset_twisted_gauss_closed(const Coset& C, std::int64_t a) {
    const auto& ctx = C.ctx();
    if (!ctx.is_unit(a)) throw unit_error("twisted gauss sum requires a unit argument");
    const std::uint64_t q = ctx.q();
    const std::uint64_t abar = ctx.mod_inv(a);
    const Character rep = C.representative();
    cplx inner{0.0, 0.0};
    for (std::uint64_t h : kernel(C.subgroup()).residues) {
        const std::uint64_t w = h * abar % q;
        inner += rep(static_cast<std::int64_t>(w)) *
                 unit_phase(static_cast<double>(w) / static_cast<double>(q));
    }
    return rep(a) * static_cast<double>(C.size()) * inner;
}

} // namespace crl
