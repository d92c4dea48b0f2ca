#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "crl/sweep.hpp"

namespace crl {

// The scale sqrt(log q / loglog q) governing predicted extreme values.
double script_l(double q);

/// Moment-experiment parameters for one (q, index, coset) cell.  Defaults
/// follow the two regimes: on the trivial coset N = floor(q^{1/3}),
/// X = q^{1/6}; on a proper coset X = 1, delta = (2/3)/(2K-1) and
/// N = floor(q^{1/(3(2K-1))}) with the Lemma-5 size bound re-checked.
struct ExperimentParams {
    std::uint64_t q = 3;
    std::uint64_t index = 1; // K = [X:H] = #ker H
    std::uint64_t coset = 0; // c
    std::uint64_t n_support = 1;
    double x_balance = 1.0;
    double delta = 0.0; // congruence window exponent; 0 on the trivial coset
    double cutoff = 40.0;
    bool index_warning = false;  // K beyond (log q)^{0.9}
    bool lemma5_feasible = true; // size bound holds at n = floor(q^delta)

    static ExperimentParams defaults_for(std::uint64_t q, std::uint64_t index,
                                         std::uint64_t coset, double cutoff = 40.0);

    // recompute the warning flags after overriding N / X / delta
    void refresh_flags();

    AfeParams afe() const { return {x_balance, cutoff}; }
};

enum class M1Route { direct, kernel };

// M1 = sum_{chi in C} |R(chi)|^2.  direct: literal sum over members;
// kernel: #H sum_{h in ker H} conj(chi_c(h)) sum_{h n1 = n2 (q)} r(n1) conj(r(n2)).
double m1(const Coset& C, const Resonator& r, M1Route route);

// M2 = sum_{chi in C} L(chi, 1/2) |R(chi)|^2, with the exact Euler-factor
// value substituted for the principal character on the trivial coset.
cplx m2(const Coset& C, const Resonator& r, const AfeParams& params);

struct PtDt {
    cplx pt, dt;
};

// Kernel-route (orthogonality + congruence) evaluation of
// sum_{chi in C} chi(n1) conj(chi(n2)) L*(chi, 1/2), split into the principal
// and dual contributions.  Mixed-parity cosets run over ker H u -ker H with
// parity-split representatives.
PtDt pt_dt_decompose(const Coset& C, std::uint64_t n1, std::uint64_t n2,
                     const AfeParams& params);

// MT = #H sum_{mk <= N} r(m) conj(r(mk)) / sqrt k, divisor-loop enumeration.
double main_term(const Coset& C, const Resonator& r);

// The same quantity enumerated through the h = 1 congruence n n1 = n2 (mod q)
// with unit weight, n below X sqrt(q/pi); agrees with main_term exactly when
// N X < sqrt(pi q).
double main_term_congruence(const Coset& C, const Resonator& r, const AfeParams& params);

struct Lemma5Witness {
    std::uint64_t h = 0, n = 0, n1 = 0, n2 = 0;
};

struct Lemma5Result {
    bool holds = true;
    std::optional<Lemma5Witness> witness;
    bool size_bound_ok = true; // N^{2K-1} (n^{2K}-1)/(n-1) < q at the scan edge
};

// Exhaustive scan of h n n1 = n2 (mod q) over h in the order-K unit subgroup
// minus 1, n <= q^delta, n1, n2 <= N.  Refuses scans beyond `budget` probes.
Lemma5Result lemma5_check(const PrimeContext& ctx, std::uint64_t index,
                          std::uint64_t n_support, double delta,
                          std::uint64_t budget = 1'000'000'000);
Lemma5Result lemma5_check(std::uint64_t q, std::uint64_t index, std::uint64_t n_support,
                          double delta, std::uint64_t budget = 1'000'000'000);

struct ErrorBudget {
    // the five bracket terms of the error bound, in text order
    std::array<double, 5> brackets{};
    // brackets scaled by #H sum |r(n)|^2: the actual error magnitudes
    std::array<double, 5> terms{};
    bool all_bounded = false; // every bracket <= 1: the O(1) regime
};

ErrorBudget error_budget(const ExperimentParams& p, double norm_sq, double eps = 0.01);
// real-exponent variant: N and X need not come from integer parameters
ErrorBudget error_budget(std::uint64_t q, std::uint64_t index, double n_support,
                         double x_balance, double norm_sq, double eps = 0.01);

enum class BoundProfile { trivial_coset, mixed, single_parity };

// Predicted log max |L| with the o(1) terms dropped: the trivial coset gets
// L/sqrt3 - log K, a mixed coset L/(sqrt3 sqrt(2K-1)), a single-parity coset
// L/(sqrt3 sqrt(K-1)) (K = 1 falls back to the trivial formula).
double theorem_bound(std::uint64_t q, std::uint64_t index, BoundProfile profile);

struct MomentReport {
    std::uint64_t q = 0, g = 0, index = 1, coset = 0;
    ParityProfile profile = ParityProfile::mixed;
    std::uint64_t n_support = 1;
    double x_balance = 1.0;
    double delta = 0.0;
    double m1 = 0.0;
    cplx m2{0.0, 0.0};
    double main_term = 0.0;
    std::array<double, 5> error_terms{};
    double lower_bound = 0.0; // Re M2 / M1
    double max_abs_l = 0.0;   // exhaustive over the coset
    std::uint64_t argmax_index = 0;
    double theorem_exponent = 0.0;
    double measured_log_max = 0.0;
};

/// Shared caches (central-value sweeps, Gauss sums, resonator transforms) for
/// scanning many (index, coset) cells of one prime.  The weighted-average
/// inequality Re M2 / M1 <= max |L| + 1e-6 is asserted on every report.
class PrimeScanner {
public:
    explicit PrimeScanner(std::uint64_t q, double cutoff = 40.0, int workers = 1,
                          std::uint64_t budget = 1'000'000);

    const PrimeContext& ctx() const { return ctx_; }

    MomentReport run(std::uint64_t index, std::uint64_t coset);
    MomentReport run(const ExperimentParams& params);

    const Resonator& resonator_for(std::uint64_t n_support);

private:
    const CentralSweep& sweep_for(double x_balance);
    const std::vector<cplx>& resonator_values(std::uint64_t n_support);

    PrimeContext ctx_;
    double cutoff_;
    int workers_;
    std::map<double, CentralSweep> sweeps_;
    std::map<std::uint64_t, Resonator> resonators_;
    std::map<std::uint64_t, std::vector<cplx>> resonator_sweeps_;
};

// One-shot convenience around PrimeScanner.
MomentReport coset_scan(const ExperimentParams& params, int workers = 1,
                        std::uint64_t budget = 1'000'000);

} // namespace crl
