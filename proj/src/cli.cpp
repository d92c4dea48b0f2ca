#include "crl/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "crl/random.hpp"

namespace crl {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> out;
    for (std::uint32_t p : primes_up_to(static_cast<std::uint32_t>(hi)))
        if (p >= lo && p >= 3) out.push_back(p);
    return out;
}

std::vector<std::uint64_t> moduli_from(const RunConfig& cfg) {
    if (cfg.q != 0) return {cfg.q};
    if (cfg.q_min == 0 && cfg.q_max == 0)
        throw config_error("need --q or --q-min/--q-max");
    if (cfg.q_max < cfg.q_min) return {};
    return primes_in_range(cfg.q_min, cfg.q_max);
}

std::vector<std::uint64_t> divisors_for(const PrimeContext& ctx, const RunConfig& cfg) {
    if (cfg.index != 0) return {cfg.index};
    std::vector<std::uint64_t> ds = divisors_of(ctx.phi());
    if (cfg.max_index != 0)
        std::erase_if(ds, [&](std::uint64_t d) { return d > cfg.max_index; });
    return ds;
}

void write_out(const RunConfig& cfg, const std::string& payload, std::ostream& fallback) {
    if (cfg.out.empty()) {
        fallback << payload;
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + cfg.out);
    f << payload;
}

// ---------------------------------------------------------------------------
// verify: every module's invariant suite at desk scale
// ---------------------------------------------------------------------------

struct SuiteResult {
    std::string name;
    bool pass = false;
    double max_residual = 0.0;
    std::uint64_t cases = 0;
    std::string detail;
};

SuiteResult verify_orthogonality(const RunConfig& cfg) {
    SuiteResult res{"orthogonality"};
    Rng rng(cfg.seed);
    const auto primes = cfg.q ? std::vector<std::uint64_t>{cfg.q} : primes_in_range(3, 199);
    for (std::uint64_t q : primes) {
        const PrimeContext ctx(q);
        for (std::uint64_t d : divisors_of(ctx.phi())) {
            const Subgroup H(ctx, d);
            for (int t = 0; t < 3; ++t) {
                const Coset C(H, rng.below(d));
                for (int u = 0; u < 3; ++u) {
                    const auto a = static_cast<std::int64_t>(rng.in(1, q - 1));
                    const cplx direct = coset_char_sum(C, a);
                    const cplx closed = coset_char_sum_closed(C, a);
                    res.max_residual = std::max(res.max_residual, std::abs(direct - closed));
                    ++res.cases;
                }
            }
        }
    }
    res.pass = res.max_residual < 1e-9;
    return res;
}

SuiteResult verify_gauss(const RunConfig& cfg) {
    SuiteResult res{"gauss-modulus"};
    const auto primes = cfg.q ? std::vector<std::uint64_t>{cfg.q}
                              : std::vector<std::uint64_t>{101, 499, 997};
    for (std::uint64_t q : primes) {
        const PrimeContext ctx(q);
        const auto tau = gauss_sums_all(ctx);
        res.max_residual = std::max(res.max_residual, std::abs(tau[0] - cplx{-1.0, 0.0}));
        for (std::uint64_t k = 1; k < ctx.phi(); ++k) {
            const double rel = std::fabs(std::norm(tau[k]) / static_cast<double>(q) - 1.0);
            res.max_residual = std::max(res.max_residual, rel);
            ++res.cases;
        }
    }
    const PrimeContext ctx5(5);
    const cplx quad = gauss_sum(Character(ctx5, 2));
    res.max_residual = std::max(res.max_residual, std::abs(quad - cplx{std::sqrt(5.0), 0.0}));
    res.pass = res.max_residual < 1e-6;
    return res;
}

SuiteResult verify_smoothing(const RunConfig&) {
    SuiteResult res{"smoothing-dual-route"};
    for (int kappa = 0; kappa <= 1; ++kappa) {
        const SmoothingKernel v(kappa);
        res.max_residual = std::max(res.max_residual, std::fabs(v(0.0) - 1.0));
        for (int i = 0; i <= 80; ++i) {
            const double y = std::pow(10.0, -6.0 + 7.5 * i / 80.0); // 1e-6 .. ~3e1
            res.max_residual = std::max(res.max_residual, std::fabs(v(y) - v.eval_quadrature(y)));
            ++res.cases;
        }
    }
    res.pass = res.max_residual < 1e-12;
    return res;
}

SuiteResult verify_afe(const RunConfig& cfg) {
    SuiteResult res{"afe-x-independence"};
    Rng rng(cfg.seed + 1);
    const std::uint64_t q = cfg.q ? cfg.q : 101;
    const PrimeContext ctx(q);
    for (int t = 0; t < 20; ++t) {
        const Character chi(ctx, rng.in(1, ctx.phi() - 1));
        res.max_residual = std::max(res.max_residual, afe_consistency_residual(chi, 0.5, 2.0));
        const cplx a = l_star(chi).value;
        const cplx b = l_star(chi.conjugate()).value;
        res.max_residual = std::max(res.max_residual, std::abs(b - std::conj(a)));
        ++res.cases;
    }
    res.pass = res.max_residual < 1e-7;
    return res;
}

SuiteResult verify_m1_routes(const RunConfig& cfg) {
    SuiteResult res{"m1-route-equality"};
    Rng rng(cfg.seed + 2);
    const auto primes = cfg.q ? std::vector<std::uint64_t>{cfg.q} : primes_in_range(11, 300);
    for (int t = 0; t < 20; ++t) {
        const std::uint64_t q = primes[rng.below(primes.size())];
        const PrimeContext ctx(q);
        const auto ds = divisors_of(ctx.phi());
        const Subgroup H(ctx, ds[rng.below(ds.size())]);
        const Coset C(H, rng.below(H.index()));
        const std::uint64_t n = std::min<std::uint64_t>(1 + rng.below(12), q - 1);
        std::vector<std::uint64_t> support(n);
        std::vector<cplx> coeffs(n);
        for (std::uint64_t i = 0; i < n; ++i) {
            support[i] = i + 1;
            coeffs[i] = cplx{rng.unit(), 0.0};
        }
        coeffs[0] = cplx{1.0, 0.0};
        const Resonator r(std::move(support), std::move(coeffs), n);
        const double direct = m1(C, r, M1Route::direct);
        const double kern = m1(C, r, M1Route::kernel);
        res.max_residual =
            std::max(res.max_residual, std::fabs(direct - kern) / std::max(1.0, std::fabs(direct)));
        ++res.cases;
    }
    res.pass = res.max_residual < 1e-8;
    return res;
}

SuiteResult verify_lemma5(const RunConfig& cfg) {
    SuiteResult res{"lemma5"};
    bool all_hold = true;
    for (std::uint64_t q : primes_in_range(3, cfg.q ? cfg.q : 500)) {
        const PrimeContext ctx(q);
        for (std::uint64_t k : {std::uint64_t{2}, std::uint64_t{3}}) {
            if (ctx.phi() % k != 0) continue;
            const double expo = 1.0 / (2.0 * (2.0 * static_cast<double>(k) - 1.0));
            const auto n = static_cast<std::uint64_t>(std::pow(static_cast<double>(q), expo));
            const auto out = lemma5_check(ctx, k, std::max<std::uint64_t>(1, n), expo);
            all_hold = all_hold && out.holds;
            ++res.cases;
        }
    }
    // deliberately oversized support must produce at least one witness
    bool witness_seen = false;
    for (std::uint64_t q : primes_in_range(3, 500)) {
        const PrimeContext ctx(q);
        const auto n = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(q))));
        if (!lemma5_check(ctx, 2, n, 0.25).holds) witness_seen = true;
    }
    res.pass = all_hold && witness_seen;
    res.detail = witness_seen ? "oversized witness found" : "no oversized witness";
    return res;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    std::vector<SuiteResult> suites;
    suites.push_back(verify_orthogonality(cfg));
    suites.push_back(verify_gauss(cfg));
    suites.push_back(verify_smoothing(cfg));
    suites.push_back(verify_afe(cfg));
    suites.push_back(verify_m1_routes(cfg));
    suites.push_back(verify_lemma5(cfg));

    std::string payload;
    if (format_from_string(cfg.format) == ReportFormat::json) {
        nlohmann::ordered_json doc;
        doc["version"] = kReportVersion;
        doc["seed"] = cfg.seed;
        doc["suites"] = nlohmann::ordered_json::array();
        for (const auto& s : suites) {
            nlohmann::ordered_json j;
            j["suite"] = s.name;
            j["pass"] = s.pass;
            j["max_residual"] = s.max_residual;
            j["cases"] = s.cases;
            j["detail"] = s.detail;
            doc["suites"].push_back(j);
        }
        payload = doc.dump(2) + "\n";
    } else {
        std::ostringstream os;
        os << "# " << kReportVersion << "\nsuite,pass,max_residual,cases,detail\n";
        for (const auto& s : suites)
            os << s.name << ',' << (s.pass ? "true" : "false") << ',' << fmt(s.max_residual)
               << ',' << s.cases << ',' << s.detail << "\n";
        payload = os.str();
    }
    write_out(cfg, payload, out);

    bool all_pass = true;
    for (const auto& s : suites) {
        if (!s.pass) {
            err << "FAILED invariant suite: " << s.name << " (max residual " << s.max_residual
                << ")\n";
            all_pass = false;
        }
    }
    return all_pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// scan / bounds / resonate / lemma5
// ---------------------------------------------------------------------------

ExperimentParams params_for_cell(const RunConfig& cfg, std::uint64_t q, std::uint64_t d,
                                 std::uint64_t c) {
    ExperimentParams p = ExperimentParams::defaults_for(q, d, c);
    if (cfg.n_support != 0) p.n_support = cfg.n_support;
    if (cfg.x_balance != 0.0) p.x_balance = cfg.x_balance;
    if (cfg.delta >= 0.0) p.delta = cfg.delta;
    p.refresh_flags();
    return p;
}

int cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    std::vector<MomentReport> rows;
    for (std::uint64_t q : moduli_from(cfg)) {
        PrimeScanner scanner(q, 40.0, cfg.workers, cfg.budget);
        for (std::uint64_t d : divisors_for(scanner.ctx(), cfg)) {
            const std::uint64_t c_lo = cfg.coset >= 0 ? static_cast<std::uint64_t>(cfg.coset) : 0;
            const std::uint64_t c_hi = cfg.coset >= 0 ? c_lo + 1 : d;
            for (std::uint64_t c = c_lo; c < c_hi; ++c) {
                const ExperimentParams p = params_for_cell(cfg, q, d, c);
                if (p.index_warning)
                    err << "note: q=" << q << " K=" << d << " exceeds the (log q)^0.9 range\n";
                if (c != 0 && !p.lemma5_feasible)
                    err << "note: q=" << q << " K=" << d << " c=" << c
                        << " fails the Lemma-5 size bound; moments remain exact\n";
                rows.push_back(scanner.run(p));
            }
        }
    }
    write_out(cfg, emit_reports(rows, format_from_string(cfg.format)), out);
    return 0;
}

int cmd_bounds(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    std::vector<MomentReport> scanned;
    if (!cfg.scan_data.empty()) {
        std::ifstream f(cfg.scan_data);
        if (!f) throw std::runtime_error("cannot read scan data " + cfg.scan_data);
        std::stringstream buf;
        buf << f.rdbuf();
        const bool json = cfg.scan_data.size() > 5 &&
                          cfg.scan_data.substr(cfg.scan_data.size() - 5) == ".json";
        scanned = parse_reports(buf.str(), json ? ReportFormat::json : ReportFormat::csv);
    }
    const auto measured_for = [&](std::uint64_t q, std::uint64_t d,
                                  bool trivial) -> std::optional<double> {
        std::optional<double> best;
        for (const auto& r : scanned) {
            if (r.q != q || r.index != d) continue;
            if (trivial != (r.coset == 0)) continue;
            if (!best || r.measured_log_max > *best) best = r.measured_log_max;
        }
        return best;
    };

    std::vector<BoundsRow> rows;
    for (std::uint64_t q : moduli_from(cfg)) {
        const PrimeContext ctx(q);
        for (std::uint64_t d : divisors_for(ctx, cfg)) {
            rows.push_back({q, d, BoundProfile::trivial_coset,
                            theorem_bound(q, d, BoundProfile::trivial_coset),
                            measured_for(q, d, true)});
            if (d > 1) {
                const BoundProfile p =
                    d % 2 == 1 ? BoundProfile::mixed : BoundProfile::single_parity;
                rows.push_back({q, d, p, theorem_bound(q, d, p), measured_for(q, d, false)});
            }
        }
    }
    write_out(cfg, emit_bounds(rows, format_from_string(cfg.format)), out);
    return 0;
}

int cmd_resonate(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    std::uint64_t n = cfg.n_support;
    if (n == 0) {
        if (cfg.q == 0) throw config_error("resonate needs --N or --q");
        n = ExperimentParams::defaults_for(cfg.q, 1, 0).n_support;
    }
    const Resonator r = build_resonator({n});
    const double ratio = rayleigh_ratio(r);
    std::optional<double> brute;
    if (n <= 256) brute = optimize_bruteforce(n).value;

    const ReportFormat format = format_from_string(cfg.format);
    std::string payload;
    if (format == ReportFormat::json) {
        nlohmann::ordered_json j;
        j["version"] = kReportVersion;
        j["N"] = r.n_max();
        j["scale_L"] = r.scale_l();
        j["support_size"] = r.support().size();
        j["norm_sq"] = r.norm_sq();
        j["rayleigh_ratio"] = ratio;
        if (brute)
            j["bruteforce_value"] = *brute;
        else
            j["bruteforce_value"] = nullptr;
        j["degenerate"] = r.degenerate();
        payload = j.dump(2) + "\n";
    } else {
        std::ostringstream os;
        os << "# " << kReportVersion << "\nN,scale_L,support_size,norm_sq,rayleigh_ratio,"
           << "bruteforce_value,degenerate\n";
        os << r.n_max() << ',' << fmt(r.scale_l()) << ',' << r.support().size() << ','
           << fmt(r.norm_sq()) << ',' << fmt(ratio) << ','
           << (brute ? fmt(*brute) : "null") << ',' << (r.degenerate() ? "true" : "false")
           << "\n";
        payload = os.str();
    }
    write_out(cfg, payload, out);
    return 0;
}

int cmd_lemma5(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    const std::uint64_t k = cfg.index == 0 ? 2 : cfg.index;
    std::ostringstream csv;
    nlohmann::ordered_json jrows = nlohmann::ordered_json::array();
    csv << "# " << kReportVersion << "\nq,K,N,delta,holds,h,n,n1,n2\n";
    for (std::uint64_t q : moduli_from(cfg)) {
        const PrimeContext ctx(q);
        if (ctx.phi() % k != 0) continue;
        const double delta =
            cfg.delta >= 0.0 ? cfg.delta : 1.0 / (2.0 * (2.0 * static_cast<double>(k) - 1.0));
        const std::uint64_t n =
            cfg.n_support != 0
                ? cfg.n_support
                : std::max<std::uint64_t>(
                      1, static_cast<std::uint64_t>(std::pow(static_cast<double>(q),
                                                             1.0 / (4.0 * k - 2.0))));
        const auto res = lemma5_check(ctx, k, n, delta, cfg.budget * 1000);
        csv << q << ',' << k << ',' << n << ',' << fmt(delta) << ','
            << (res.holds ? "true" : "false");
        nlohmann::ordered_json j;
        j["q"] = q;
        j["K"] = k;
        j["N"] = n;
        j["delta"] = delta;
        j["holds"] = res.holds;
        if (res.witness) {
            csv << ',' << res.witness->h << ',' << res.witness->n << ',' << res.witness->n1
                << ',' << res.witness->n2 << "\n";
            j["h"] = res.witness->h;
            j["n"] = res.witness->n;
            j["n1"] = res.witness->n1;
            j["n2"] = res.witness->n2;
        } else {
            csv << ",null,null,null,null\n";
            j["h"] = nullptr;
            j["n"] = nullptr;
            j["n1"] = nullptr;
            j["n2"] = nullptr;
        }
        jrows.push_back(j);
    }
    std::string payload;
    if (format_from_string(cfg.format) == ReportFormat::json) {
        nlohmann::ordered_json doc;
        doc["version"] = kReportVersion;
        doc["rows"] = jrows;
        payload = doc.dump(2) + "\n";
    } else {
        payload = csv.str();
    }
    write_out(cfg, payload, out);
    return 0;
}

} // namespace

void apply_config_json(RunConfig& cfg, const std::string& json_text) {
    const auto j = nlohmann::json::parse(json_text);
    const auto get = [&](const char* key, auto& field) {
        if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    get("command", cfg.command);
    get("q", cfg.q);
    get("q_min", cfg.q_min);
    get("q_max", cfg.q_max);
    get("index", cfg.index);
    get("max_index", cfg.max_index);
    get("coset", cfg.coset);
    get("N", cfg.n_support);
    get("X", cfg.x_balance);
    get("delta", cfg.delta);
    get("format", cfg.format);
    get("out", cfg.out);
    get("scan_data", cfg.scan_data);
    get("seed", cfg.seed);
    get("workers", cfg.workers);
    get("budget", cfg.budget);
}

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.command == "verify") return cmd_verify(cfg, out, err);
    if (cfg.command == "scan") return cmd_scan(cfg, out, err);
    if (cfg.command == "bounds") return cmd_bounds(cfg, out, err);
    if (cfg.command == "resonate") return cmd_resonate(cfg, out, err);
    if (cfg.command == "lemma5") return cmd_lemma5(cfg, out, err);
    throw config_error("unknown command: " + (cfg.command.empty() ? "<none>" : cfg.command));
}

} // namespace crl
