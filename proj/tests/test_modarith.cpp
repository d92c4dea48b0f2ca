#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "crl/modarith.hpp"
#include "crl/random.hpp"

using namespace crl;

namespace {

// independent oracle: multiplicative order by stepping
std::uint64_t order_bruteforce(std::uint64_t a, std::uint64_t q) {
    std::uint64_t cur = a % q, ord = 1;
    while (cur != 1) {
        cur = cur * a % q;
        ++ord;
    }
    return ord;
}

std::uint64_t smallest_root_bruteforce(std::uint64_t q) {
    for (std::uint64_t g = 2; g < q; ++g)
        if (order_bruteforce(g, q) == q - 1) return g;
    return 0;
}

} // namespace

TEST_CASE("primality by trial division") {
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK(is_prime(101));
    CHECK(is_prime(9973));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(91));  // 7 * 13
    CHECK_FALSE(is_prime(10000));
}

TEST_CASE("smallest primitive roots") {
    CHECK(find_primitive_root(3) == 2);
    CHECK(find_primitive_root(7) == 3);   // ord(2) = 3, ord(3) = 6
    CHECK(find_primitive_root(101) == 2); // 2^50 = -1 mod 101
    for (std::uint64_t q : {5ULL, 13ULL, 97ULL, 409ULL})
        CHECK(find_primitive_root(q) == smallest_root_bruteforce(q));
    CHECK_THROWS_AS(find_primitive_root(91), modulus_error);
    CHECK_THROWS_AS(find_primitive_root(2), modulus_error);
    CHECK_THROWS_AS(find_primitive_root(0), modulus_error);
}

TEST_CASE("dlog table inverts exponentiation") {
    const PrimeContext ctx(7);
    CHECK(ctx.g() == 3);
    CHECK(ctx.dlog(1) == 0);
    CHECK(ctx.dlog(2) == 2); // 3^2 = 9 = 2
    CHECK(ctx.dlog(6) == 3); // 3^3 = 27 = 6; also -1 = g^{(q-1)/2}
    CHECK(ctx.dlog(3) == 1);
    CHECK_THROWS_AS(ctx.dlog(0), unit_error);
    CHECK_THROWS_AS(ctx.dlog(14), unit_error);
    CHECK(ctx.dlog(-1) == 3);  // negative arguments reduce mod q
    CHECK(ctx.dlog(9) == 2);   // and so do large ones
}

TEST_CASE("dlog bijection and structure across a prime sample") {
    for (std::uint64_t q : {3ULL, 5ULL, 7ULL, 11ULL, 101ULL, 997ULL, 3989ULL, 9973ULL}) {
        const PrimeContext ctx(q);
        std::set<std::uint64_t> seen;
        std::uint64_t cur = 1;
        for (std::uint64_t e = 0; e + 1 < q; ++e) {
            CHECK(ctx.dlog(static_cast<std::int64_t>(cur)) == e);
            seen.insert(cur);
            cur = cur * ctx.g() % q;
        }
        CHECK(seen.size() == q - 1); // g^e enumerates every unit exactly once
        CHECK(ctx.dlog(static_cast<std::int64_t>(q - 1)) == (q - 1) / 2);
    }
}

TEST_CASE("dlog is a homomorphism onto Z/(q-1)") {
    Rng rng(7);
    for (std::uint64_t q : {7ULL, 11ULL, 997ULL}) {
        const PrimeContext ctx(q);
        for (int t = 0; t < 200; ++t) {
            const std::uint64_t a = rng.in(1, q - 1), b = rng.in(1, q - 1);
            const std::uint64_t lhs = ctx.dlog(static_cast<std::int64_t>(a * b % q));
            const std::uint64_t rhs =
                (ctx.dlog(static_cast<std::int64_t>(a)) + ctx.dlog(static_cast<std::int64_t>(b))) %
                (q - 1);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("modular inverses") {
    const PrimeContext ctx7(7);
    CHECK(ctx7.mod_inv(1) == 1);
    CHECK(ctx7.mod_inv(3) == 5); // 3 * 5 = 15 = 1
    const PrimeContext ctx5(5);
    CHECK(ctx5.mod_inv(2) == 3); // 2 * 3 = 6 = 1
    CHECK_THROWS_AS(ctx5.mod_inv(0), unit_error);
    CHECK_THROWS_AS(ctx5.mod_inv(10), unit_error);

    // involution across all units
    for (std::uint64_t q : {7ULL, 101ULL, 997ULL}) {
        const PrimeContext ctx(q);
        for (std::uint64_t a = 1; a < q; ++a) {
            const std::uint64_t inv = ctx.mod_inv(static_cast<std::int64_t>(a));
            CHECK(inv * a % q == 1);
            CHECK(ctx.mod_inv(static_cast<std::int64_t>(inv)) == a);
        }
    }
}

TEST_CASE("divisors and prime factors") {
    CHECK(divisors_of(100) == std::vector<std::uint64_t>{1, 2, 4, 5, 10, 20, 25, 50, 100});
    CHECK(prime_factors(100) == std::vector<std::uint64_t>{2, 5});
    CHECK(prime_factors(97) == std::vector<std::uint64_t>{97});
    CHECK(primes_up_to(20) == std::vector<std::uint32_t>{2, 3, 5, 7, 11, 13, 17, 19});
}

TEST_CASE("context rejects bad moduli") {
    CHECK_THROWS_AS(PrimeContext(1), modulus_error);
    CHECK_THROWS_AS(PrimeContext(2), modulus_error);
    CHECK_THROWS_AS(PrimeContext(91), modulus_error);
}
