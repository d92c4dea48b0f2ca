#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "crl/chargroup.hpp"
#include "crl/random.hpp"

using namespace crl;

namespace {

// definition-level oracle: kernel by scanning every unit against every member
std::vector<std::uint64_t> kernel_bruteforce(const Subgroup& H) {
    std::vector<std::uint64_t> out;
    const auto& ctx = H.ctx();
    for (std::uint64_t h = 1; h < ctx.q(); ++h) {
        bool fixed = true;
        for (std::uint64_t j = 0; j < H.order() && fixed; ++j)
            fixed = H.member(j).angle_index(static_cast<std::int64_t>(h)) == 0;
        if (fixed) out.push_back(h);
    }
    return out;
}

} // namespace

TEST_CASE("character evaluation against hand values") {
    const PrimeContext ctx(7);
    const Character chi0(ctx, 0), chi3(ctx, 3);
    CHECK(chi0(5) == cplx{1.0, 0.0});
    CHECK(chi0(7) == cplx{0.0, 0.0});
    CHECK(std::abs(chi3(2) - cplx{1.0, 0.0}) < 1e-15);  // dlog 2 = 2, e(1) = 1
    CHECK(std::abs(chi3(3) - cplx{-1.0, 0.0}) < 1e-15); // dlog 3 = 1, e(1/2) = -1
    CHECK(chi3(14) == cplx{0.0, 0.0});
    CHECK(std::abs(chi3(-4)) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("parity is the index parity, exactly") {
    for (std::uint64_t q : {5ULL, 7ULL, 101ULL}) {
        const PrimeContext ctx(q);
        for (std::uint64_t k = 0; k < q - 1; ++k) {
            const Character chi(ctx, k);
            CHECK(chi.parity() == static_cast<int>(k % 2));
            // chi(-1) = (-1)^k via integer angles: angle of -1 is k (q-1)/2
            const std::uint64_t angle = chi.angle_index(-1);
            CHECK(angle == k * ((q - 1) / 2) % (q - 1));
            CHECK((angle == 0 || angle * 2 == q - 1));
            CHECK((chi.parity() == 0) == (angle == 0));
        }
    }
}

TEST_CASE("characters are completely multiplicative") {
    Rng rng(11);
    const PrimeContext ctx(101);
    for (int t = 0; t < 200; ++t) {
        const Character chi(ctx, rng.below(100));
        const auto m = static_cast<std::int64_t>(rng.in(1, 100));
        const auto n = static_cast<std::int64_t>(rng.in(1, 100));
        const cplx lhs = chi(m * n);
        const cplx rhs = chi(m) * chi(n);
        CHECK(std::abs(lhs - rhs) < 1e-14);
    }
}

TEST_CASE("subgroup bookkeeping") {
    const PrimeContext ctx(7);
    const Subgroup H(ctx, 3); // {chi_0, chi_3}
    CHECK(H.order() == 2);
    CHECK(H.index() == 3);
    CHECK(H.member(0).k() == 0);
    CHECK(H.member(1).k() == 3);
    CHECK_THROWS_AS(Subgroup(ctx, 4), config_error); // 4 does not divide 6
    CHECK_THROWS_AS(Subgroup(ctx, 0), config_error);
}

TEST_CASE("kernels match the definition and the counting identity") {
    const PrimeContext ctx(7);
    CHECK(kernel(Subgroup(ctx, 1)).residues == std::vector<std::uint64_t>{1});
    CHECK(kernel(Subgroup(ctx, 6)).residues == std::vector<std::uint64_t>{1, 2, 3, 4, 5, 6});
    // {chi_0, chi_3} fixes exactly the quadratic residues mod 7
    CHECK(kernel(Subgroup(ctx, 3)).residues == std::vector<std::uint64_t>{1, 2, 4});

    for (std::uint64_t q : {5ULL, 13ULL, 31ULL, 61ULL}) {
        const PrimeContext c(q);
        for (std::uint64_t d : divisors_of(q - 1)) {
            const Subgroup H(c, d);
            const auto ker = kernel(H);
            CHECK(ker.residues == kernel_bruteforce(H));
            CHECK(ker.size() == d);
            CHECK(ker.size() * H.order() == q - 1); // #ker H * #H = phi(q)
        }
    }
}

TEST_CASE("extended kernel doubles exactly when -1 is missing") {
    const PrimeContext ctx(13);
    for (std::uint64_t d : divisors_of(12ULL)) {
        const auto ker = kernel(Subgroup(ctx, d)).residues;
        std::set<std::uint64_t> ext(ker.begin(), ker.end());
        for (std::uint64_t h : ker) ext.insert(13 - h);
        const bool has_minus_one =
            std::find(ker.begin(), ker.end(), 12ULL) != ker.end();
        CHECK(ext.size() == (has_minus_one ? d : 2 * d));
        if (d % 2 == 1) {
            // odd index: the extension is the order-2d unit subgroup
            const auto ker2 = unit_subgroup(ctx, 2 * d);
            CHECK(std::vector<std::uint64_t>(ext.begin(), ext.end()) == ker2);
        }
    }
}

TEST_CASE("coset parity profile") {
    const PrimeContext ctx(13);
    CHECK(Coset(Subgroup(ctx, 3), 1).parity_profile() == ParityProfile::mixed);
    CHECK(Coset(Subgroup(ctx, 4), 0).parity_profile() == ParityProfile::all_even);
    CHECK(Coset(Subgroup(ctx, 4), 1).parity_profile() == ParityProfile::all_odd);
    CHECK(Coset(Subgroup(ctx, 4), 2).parity_profile() == ParityProfile::all_even);
    // verify against the members themselves
    for (std::uint64_t d : divisors_of(12ULL)) {
        for (std::uint64_t c = 0; c < d; ++c) {
            const Coset C(Subgroup(ctx, d), c);
            bool any_even = false, any_odd = false;
            for (std::uint64_t j = 0; j < C.size(); ++j)
                (C.member(j).parity() == 0 ? any_even : any_odd) = true;
            switch (C.parity_profile()) {
                case ParityProfile::mixed: CHECK((any_even && any_odd)); break;
                case ParityProfile::all_even: CHECK((any_even && !any_odd)); break;
                case ParityProfile::all_odd: CHECK((any_odd && !any_even)); break;
            }
        }
    }
}

TEST_CASE("principal orthogonality over cosets") {
    const PrimeContext ctx(7);
    const Subgroup H(ctx, 3);
    const Coset C(H, 1); // {chi_1, chi_4}

    SUBCASE("a = 1 gives #H") {
        CHECK(std::abs(coset_char_sum(C, 1) - cplx{2.0, 0.0}) < 1e-12);
    }
    SUBCASE("a in the kernel gives chi_1(a) #H") {
        const cplx expect = 2.0 * unit_phase(2.0 / 6.0); // chi_1(2) = e(dlog 2 / 6)
        CHECK(std::abs(coset_char_sum(C, 2) - expect) < 1e-12);
        CHECK(std::abs(coset_char_sum_closed(C, 2) - expect) < 1e-12);
    }
    SUBCASE("a outside the kernel vanishes") {
        CHECK(std::abs(coset_char_sum(C, 3)) < 1e-12);
        CHECK(coset_char_sum_closed(C, 3) == cplx{0.0, 0.0});
    }
    SUBCASE("non-units rejected") {
        CHECK_THROWS_AS(coset_char_sum(C, 7), unit_error);
        CHECK_THROWS_AS(coset_char_sum_closed(C, 14), unit_error);
    }
}

TEST_CASE("principal orthogonality, randomized sweep") {
    Rng rng(23);
    for (int t = 0; t < 200; ++t) {
        const std::uint64_t qs[] = {11, 13, 31, 61, 97, 151};
        const PrimeContext ctx(qs[rng.below(6)]);
        const auto ds = divisors_of(ctx.phi());
        const Subgroup H(ctx, ds[rng.below(ds.size())]);
        const Coset C(H, rng.below(H.index()));
        const auto a = static_cast<std::int64_t>(rng.in(1, ctx.q() - 1));
        CHECK(std::abs(coset_char_sum(C, a) - coset_char_sum_closed(C, a)) < 1e-9);
    }
}

TEST_CASE("gauss sums") {
    SUBCASE("principal character gives -1") {
        for (std::uint64_t q : {5ULL, 7ULL, 101ULL}) {
            const PrimeContext ctx(q);
            CHECK(std::abs(gauss_sum(Character(ctx, 0)) - cplx{-1.0, 0.0}) < 1e-9);
        }
    }
    SUBCASE("quadratic character mod 5 gives sqrt 5") {
        const PrimeContext ctx(5);
        const cplx tau = gauss_sum(Character(ctx, 2));
        CHECK(std::abs(tau - cplx{2.2360679774997897, 0.0}) < 1e-9);
    }
    SUBCASE("modulus sqrt q for all non-principal characters mod 101") {
        const PrimeContext ctx(101);
        for (std::uint64_t k = 1; k < 100; ++k) {
            const double m = std::abs(gauss_sum(Character(ctx, k)));
            CHECK(m == doctest::Approx(std::sqrt(101.0)).epsilon(1e-6));
        }
    }
}

TEST_CASE("twisted gauss sums over cosets, both routes") {
    SUBCASE("trivial subgroup reduces to tau(chi_0)") {
        const PrimeContext ctx(7);
        const Coset C(Subgroup(ctx, 6), 0); // {chi_0} only
        for (std::int64_t a : {1, 2, 3, 6}) {
            CHECK(std::abs(coset_twisted_gauss_sum(C, a) - cplx{-1.0, 0.0}) < 1e-10);
            CHECK(std::abs(coset_twisted_gauss_closed(C, a) - cplx{-1.0, 0.0}) < 1e-10);
        }
    }
    SUBCASE("full group collapses to phi(q) e(a^{-1}/q)") {
        const PrimeContext ctx5(5);
        const Coset full5(Subgroup(ctx5, 1), 0);
        const cplx expect5 = 4.0 * unit_phase(3.0 / 5.0); // inverse of 2 is 3
        CHECK(std::abs(coset_twisted_gauss_sum(full5, 2) - expect5) < 1e-10);
        CHECK(std::abs(coset_twisted_gauss_closed(full5, 2) - expect5) < 1e-10);

        const PrimeContext ctx7(7);
        const Coset full7(Subgroup(ctx7, 1), 0);
        const cplx expect7 = 6.0 * unit_phase(1.0 / 7.0);
        CHECK(std::abs(coset_twisted_gauss_sum(full7, 1) - expect7) < 1e-10);
        CHECK(std::abs(coset_twisted_gauss_closed(full7, 1) - expect7) < 1e-10);
    }
    SUBCASE("random cosets agree across routes") {
        Rng rng(31);
        for (int t = 0; t < 60; ++t) {
            const std::uint64_t qs[] = {11, 13, 31, 61};
            const PrimeContext ctx(qs[rng.below(4)]);
            const auto ds = divisors_of(ctx.phi());
            const Subgroup H(ctx, ds[rng.below(ds.size())]);
            const Coset C(H, rng.below(H.index()));
            const auto a = static_cast<std::int64_t>(rng.in(1, ctx.q() - 1));
            CHECK(std::abs(coset_twisted_gauss_sum(C, a) - coset_twisted_gauss_closed(C, a)) <
                  1e-8);
        }
    }
}

TEST_CASE("conjugate characters") {
    const PrimeContext ctx(11);
    for (std::uint64_t k = 0; k < 10; ++k) {
        const Character chi(ctx, k);
        const Character bar = chi.conjugate();
        for (std::int64_t n = 1; n < 11; ++n)
            CHECK(std::abs(bar(n) - std::conj(chi(n))) < 1e-14);
    }
}
