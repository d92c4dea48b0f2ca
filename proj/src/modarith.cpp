#include "crl/modarith.hpp"

#include <limits>
#include <string>

namespace crl {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (std::uint64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t n) {
    std::vector<std::uint32_t> out;
    if (n < 2) return out;
    std::vector<bool> composite(n + 1, false);
    for (std::uint32_t p = 2; p <= n; ++p) {
        if (composite[p]) continue;
        out.push_back(p);
        for (std::uint64_t m = static_cast<std::uint64_t>(p) * p; m <= n; m += p)
            composite[static_cast<std::size_t>(m)] = true;
    }
    return out;
}

std::vector<std::uint64_t> divisors_of(std::uint64_t n) {
    std::vector<std::uint64_t> small, large;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        small.push_back(d);
        if (d != n / d) large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0) continue;
        out.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
    // products fit in 64 bits for mod < 2^32; desk-scale moduli stay far below
    std::uint64_t r = 1 % mod;
    base %= mod;
    while (exp > 0) {
        if (exp & 1) r = r * base % mod;
        base = base * base % mod;
        exp >>= 1;
    }
    return r;
}

std::uint64_t find_primitive_root(std::uint64_t q) {
    if (q < 3 || !is_prime(q))
        throw modulus_error("modulus must be a prime >= 3, got " + std::to_string(q));
    const auto factors = prime_factors(q - 1);
    for (std::uint64_t g = 2; g < q; ++g) {
        bool primitive = true;
        for (std::uint64_t p : factors) {
            if (pow_mod(g, (q - 1) / p, q) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) return g;
    }
    throw modulus_error("no primitive root found for " + std::to_string(q)); // unreachable for prime q
}

PrimeContext::PrimeContext(std::uint64_t q) : q_(q), g_(find_primitive_root(q)) {
    if (q > std::numeric_limits<std::uint32_t>::max())
        throw modulus_error("modulus too large for dense dlog table");
    dlog_.assign(q, 0);
    std::uint64_t cur = 1;
    for (std::uint64_t e = 0; e + 1 < q; ++e) {
        dlog_[cur] = static_cast<std::uint32_t>(e);
        cur = cur * g_ % q_;
    }
    // cur walked back to 1 exactly when g has full order
}

std::uint64_t PrimeContext::dlog(std::int64_t a) const {
    const std::uint64_t r = reduce(a);
    if (r == 0) throw unit_error("dlog requires a unit mod " + std::to_string(q_));
    return dlog_[r];
}

std::uint64_t PrimeContext::mod_inv(std::int64_t a) const {
    const std::uint64_t r = reduce(a);
    if (r == 0) throw unit_error("inverse requires a unit mod " + std::to_string(q_));
    return pow_mod(r, q_ - 2, q_);
}

} // namespace crl
