#include "crl/resonator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace crl {

Resonator::Resonator(std::uint64_t n_max)
    : n_max_(std::max<std::uint64_t>(n_max, 1)), support_{1}, coeffs_{cplx{1.0, 0.0}} {
    finalize();
}

Resonator::Resonator(std::vector<std::uint64_t> support, std::vector<cplx> coeffs,
                     std::uint64_t n_max)
    : n_max_(n_max), support_(std::move(support)), coeffs_(std::move(coeffs)) {
    if (support_.size() != coeffs_.size() || support_.empty())
        throw config_error("resonator support and coefficients must align and be nonempty");
    for (std::size_t i = 0; i < support_.size(); ++i) {
        if (support_[i] < 1 || support_[i] > n_max_)
            throw config_error("resonator support must lie in [1, N]");
        if (i > 0 && support_[i] <= support_[i - 1])
            throw config_error("resonator support must be ascending and distinct");
    }
    finalize();
}

void Resonator::finalize() {
    index_.clear();
    index_.reserve(support_.size());
    norm_sq_ = 0.0;
    for (std::size_t i = 0; i < support_.size(); ++i) {
        index_.emplace(support_[i], i);
        norm_sq_ += std::norm(coeffs_[i]);
    }
    if (norm_sq_ <= 0.0) throw config_error("resonator must have positive norm");
}

Resonator build_resonator(const ResonatorSpec& spec) {
    const std::uint64_t n = std::max<std::uint64_t>(spec.n_max, 1);
    // loglog N is only positive from N = 3 up; smaller supports carry no
    // usable prime window
    if (n < 3) {
        Resonator r(n);
        r.degenerate_ = true;
        return r;
    }
    const double log_n = std::log(static_cast<double>(n));
    const double scale_sq = log_n * std::log(log_n);
    const double scale = std::sqrt(scale_sq);
    const double p_low = spec.p_low > 0.0 ? spec.p_low : scale_sq;
    const double p_high = spec.p_high > 0.0 ? std::min(spec.p_high, static_cast<double>(n))
                                            : static_cast<double>(n);

    std::vector<std::uint64_t> primes;
    for (std::uint32_t p : primes_up_to(static_cast<std::uint32_t>(p_high)))
        if (static_cast<double>(p) > p_low) primes.push_back(p);

    if (primes.empty()) {
        Resonator r(n);
        r.degenerate_ = true;
        r.scale_l_ = scale;
        return r;
    }

    std::vector<double> weight(primes.size());
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const double p = static_cast<double>(primes[i]);
        weight[i] = scale / (std::sqrt(p) * std::log(p));
    }

    // squarefree products of window primes staying <= N, depth-first
    std::vector<std::pair<std::uint64_t, double>> entries{{1, 1.0}};
    struct Frame {
        std::uint64_t value;
        double coeff;
        std::size_t next;
    };
    std::vector<Frame> stack{{1, 1.0, 0}};
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        for (std::size_t i = f.next; i < primes.size(); ++i) {
            if (primes[i] > n / f.value) break;
            const std::uint64_t v = f.value * primes[i];
            const double c = f.coeff * weight[i];
            entries.emplace_back(v, c);
            stack.push_back({v, c, i + 1});
        }
    }
    std::sort(entries.begin(), entries.end());

    std::vector<std::uint64_t> support;
    std::vector<cplx> coeffs;
    support.reserve(entries.size());
    coeffs.reserve(entries.size());
    for (const auto& [v, c] : entries) {
        support.push_back(v);
        coeffs.emplace_back(c, 0.0);
    }
    Resonator r(std::move(support), std::move(coeffs), n);
    r.scale_l_ = scale;
    return r;
}

double rayleigh_numerator(const Resonator& r) {
    double sum = 0.0;
    for (std::size_t i = 0; i < r.support().size(); ++i) {
        const std::uint64_t m = r.support()[i];
        const cplx rm = r.coeffs()[i];
        for (std::uint64_t k = 1; k <= r.n_max() / m; ++k) {
            const cplx rmk = r.at(m * k);
            if (rmk == cplx{0.0, 0.0}) continue;
            sum += std::real(rm * std::conj(rmk)) / std::sqrt(static_cast<double>(k));
        }
    }
    return sum;
}

double rayleigh_ratio(const Resonator& r) {
    if (r.norm_sq() <= 0.0) throw config_error("rayleigh ratio of a zero resonator");
    return rayleigh_numerator(r) / r.norm_sq();
}

BruteForceOptimum optimize_bruteforce(std::uint64_t n, double tol) {
    if (n < 1) throw config_error("brute-force optimizer needs N >= 1");
    if (n > 256)
        throw config_error("brute-force optimizer limited to N <= 256, got " + std::to_string(n));
    const std::size_t dim = static_cast<std::size_t>(n);
    // A = I + C with C[m-1][mk-1] = C[mk-1][m-1] = 1/(2 sqrt k), k >= 2
    std::vector<double> a(dim * dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) a[i * dim + i] = 1.0;
    for (std::uint64_t m = 1; m <= n; ++m) {
        for (std::uint64_t k = 2; k <= n / m; ++k) {
            const double w = 0.5 / std::sqrt(static_cast<double>(k));
            a[(m - 1) * dim + (m * k - 1)] += w;
            a[(m * k - 1) * dim + (m - 1)] += w;
        }
    }

    std::vector<double> v(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
    std::vector<double> w(dim, 0.0);
    double lambda = 0.0;
    for (int iter = 0; iter < 200000; ++iter) {
        for (std::size_t i = 0; i < dim; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < dim; ++j) s += a[i * dim + j] * v[j];
            w[i] = s;
        }
        double rq = 0.0, nrm = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            rq += v[i] * w[i];
            nrm += w[i] * w[i];
        }
        nrm = std::sqrt(nrm);
        for (std::size_t i = 0; i < dim; ++i) v[i] = w[i] / nrm;
        if (std::fabs(rq - lambda) < tol && iter > 1) {
            lambda = rq;
            break;
        }
        lambda = rq;
    }

    // Perron vector: fix the overall sign so the largest entry is positive
    double big = 0.0;
    for (double x : v)
        if (std::fabs(x) > std::fabs(big)) big = x;
    if (big < 0.0)
        for (double& x : v) x = -x;

    std::vector<std::uint64_t> support(dim);
    std::vector<cplx> coeffs(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        support[i] = i + 1;
        coeffs[i] = cplx{v[i], 0.0};
    }
    return {lambda, Resonator(std::move(support), std::move(coeffs), n)};
}

cplx resonate(const Resonator& r, const Character& chi) {
    if (r.n_max() >= chi.ctx().q())
        throw config_error("resonator support bound must stay below q");
    cplx sum{0.0, 0.0};
    for (std::size_t i = 0; i < r.support().size(); ++i)
        sum += r.coeffs()[i] * chi(static_cast<std::int64_t>(r.support()[i]));
    return sum;
}

} // namespace crl
