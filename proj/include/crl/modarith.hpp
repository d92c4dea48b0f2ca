#pragma once

#include <cstdint>
#include <vector>

#include "crl/errors.hpp"

namespace crl {

// Deterministic primality by trial division; intended for desk-scale n.
bool is_prime(std::uint64_t n);

// Primes in [2, n] by sieve of Eratosthenes.
std::vector<std::uint32_t> primes_up_to(std::uint32_t n);

// All positive divisors of n, ascending.
std::vector<std::uint64_t> divisors_of(std::uint64_t n);

// Distinct prime factors of n, ascending.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);

// Smallest g generating the full unit group mod prime q.
// Throws modulus_error unless q is a prime >= 3.
std::uint64_t find_primitive_root(std::uint64_t q);

/// Prime modulus q together with its smallest primitive root g and a dense
/// discrete-log table: dlog(a) is the exponent e in [0, q-2] with g^e = a
/// (mod q).  Immutable after construction, safe for concurrent reads.
class PrimeContext {
public:
    explicit PrimeContext(std::uint64_t q);

    std::uint64_t q() const { return q_; }
    std::uint64_t g() const { return g_; }
    std::uint64_t phi() const { return q_ - 1; }

    bool is_unit(std::int64_t n) const { return reduce(n) != 0; }

    // n mod q, mapped into [0, q).
    std::uint64_t reduce(std::int64_t n) const {
        std::int64_t r = n % static_cast<std::int64_t>(q_);
        return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(q_) : r);
    }

    // Exponent of a with respect to g; throws unit_error if q | a.
    std::uint64_t dlog(std::int64_t a) const;

    // Multiplicative inverse mod q; throws unit_error if q | a.
    std::uint64_t mod_inv(std::int64_t a) const;

private:
    std::uint64_t q_;
    std::uint64_t g_;
    std::vector<std::uint32_t> dlog_; // index a in [1, q-1]; slot 0 unused
};

} // namespace crl
