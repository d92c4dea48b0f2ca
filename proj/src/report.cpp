#include "crl/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

namespace crl {

namespace {

const char* kColumns =
    "q,g,K,c,parity_profile,N,X,delta,M1,ReM2,MT,err1,err2,err3,err4,err5,"
    "lower_bound,max_abs_L,argmax_character_index,theorem_exponent,measured_log_max";

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

ParityProfile profile_from_string(const std::string& s) {
    if (s == "all-even") return ParityProfile::all_even;
    if (s == "all-odd") return ParityProfile::all_odd;
    if (s == "mixed") return ParityProfile::mixed;
    throw config_error("unknown parity profile: " + s);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

nlohmann::ordered_json row_to_json(const MomentReport& r) {
    nlohmann::ordered_json j;
    j["q"] = r.q;
    j["g"] = r.g;
    j["K"] = r.index;
    j["c"] = r.coset;
    j["parity_profile"] = to_string(r.profile);
    j["N"] = r.n_support;
    j["X"] = r.x_balance;
    j["delta"] = r.delta;
    j["M1"] = r.m1;
    j["ReM2"] = std::real(r.m2);
    j["MT"] = r.main_term;
    for (int i = 0; i < 5; ++i) j["err" + std::to_string(i + 1)] = r.error_terms[i];
    j["lower_bound"] = r.lower_bound;
    j["max_abs_L"] = r.max_abs_l;
    j["argmax_character_index"] = r.argmax_index;
    j["theorem_exponent"] = r.theorem_exponent;
    j["measured_log_max"] = r.measured_log_max;
    return j;
}

MomentReport row_from_json(const nlohmann::json& j) {
    MomentReport r;
    r.q = j.at("q").get<std::uint64_t>();
    r.g = j.at("g").get<std::uint64_t>();
    r.index = j.at("K").get<std::uint64_t>();
    r.coset = j.at("c").get<std::uint64_t>();
    r.profile = profile_from_string(j.at("parity_profile").get<std::string>());
    r.n_support = j.at("N").get<std::uint64_t>();
    r.x_balance = j.at("X").get<double>();
    r.delta = j.at("delta").get<double>();
    r.m1 = j.at("M1").get<double>();
    r.m2 = cplx{j.at("ReM2").get<double>(), 0.0};
    r.main_term = j.at("MT").get<double>();
    for (int i = 0; i < 5; ++i)
        r.error_terms[i] = j.at("err" + std::to_string(i + 1)).get<double>();
    r.lower_bound = j.at("lower_bound").get<double>();
    r.max_abs_l = j.at("max_abs_L").get<double>();
    r.argmax_index = j.at("argmax_character_index").get<std::uint64_t>();
    r.theorem_exponent = j.at("theorem_exponent").get<double>();
    r.measured_log_max = j.at("measured_log_max").get<double>();
    return r;
}

} // namespace

ReportFormat format_from_string(const std::string& name) {
    if (name == "csv") return ReportFormat::csv;
    if (name == "json") return ReportFormat::json;
    throw config_error("unknown format: " + name + " (expected csv or json)");
}

const char* to_string(BoundProfile profile) {
    switch (profile) {
        case BoundProfile::trivial_coset: return "trivial";
        case BoundProfile::mixed: return "mixed";
        default: return "single-parity";
    }
}

std::string emit_reports(const std::vector<MomentReport>& rows, ReportFormat format) {
    if (format == ReportFormat::json) {
        nlohmann::ordered_json doc;
        doc["version"] = kReportVersion;
        doc["rows"] = nlohmann::ordered_json::array();
        for (const auto& r : rows) doc["rows"].push_back(row_to_json(r));
        return doc.dump(2) + "\n";
    }
    std::ostringstream out;
    out << "# " << kReportVersion << "\n" << kColumns << "\n";
    for (const auto& r : rows) {
        out << r.q << ',' << r.g << ',' << r.index << ',' << r.coset << ','
            << to_string(r.profile) << ',' << r.n_support << ',' << fmt(r.x_balance) << ','
            << fmt(r.delta) << ',' << fmt(r.m1) << ',' << fmt(std::real(r.m2)) << ','
            << fmt(r.main_term);
        for (double e : r.error_terms) out << ',' << fmt(e);
        out << ',' << fmt(r.lower_bound) << ',' << fmt(r.max_abs_l) << ',' << r.argmax_index
            << ',' << fmt(r.theorem_exponent) << ',' << fmt(r.measured_log_max) << "\n";
    }
    return out.str();
}

std::vector<MomentReport> parse_reports(std::string_view text, ReportFormat format) {
    std::vector<MomentReport> rows;
    if (format == ReportFormat::json) {
        const auto doc = nlohmann::json::parse(text);
        for (const auto& j : doc.at("rows")) rows.push_back(row_from_json(j));
        return rows;
    }
    std::istringstream in{std::string(text)};
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) { // column header
            header_seen = true;
            continue;
        }
        const auto f = split_csv_line(line);
        if (f.size() != 21) throw config_error("malformed scan row: " + line);
        MomentReport r;
        r.q = std::strtoull(f[0].c_str(), nullptr, 10);
        r.g = std::strtoull(f[1].c_str(), nullptr, 10);
        r.index = std::strtoull(f[2].c_str(), nullptr, 10);
        r.coset = std::strtoull(f[3].c_str(), nullptr, 10);
        r.profile = profile_from_string(f[4]);
        r.n_support = std::strtoull(f[5].c_str(), nullptr, 10);
        r.x_balance = std::strtod(f[6].c_str(), nullptr);
        r.delta = std::strtod(f[7].c_str(), nullptr);
        r.m1 = std::strtod(f[8].c_str(), nullptr);
        r.m2 = cplx{std::strtod(f[9].c_str(), nullptr), 0.0};
        r.main_term = std::strtod(f[10].c_str(), nullptr);
        for (int i = 0; i < 5; ++i) r.error_terms[i] = std::strtod(f[11 + i].c_str(), nullptr);
        r.lower_bound = std::strtod(f[16].c_str(), nullptr);
        r.max_abs_l = std::strtod(f[17].c_str(), nullptr);
        r.argmax_index = std::strtoull(f[18].c_str(), nullptr, 10);
        r.theorem_exponent = std::strtod(f[19].c_str(), nullptr);
        r.measured_log_max = std::strtod(f[20].c_str(), nullptr);
        rows.push_back(r);
    }
    return rows;
}

std::string emit_bounds(const std::vector<BoundsRow>& rows, ReportFormat format) {
    if (format == ReportFormat::json) {
        nlohmann::ordered_json doc;
        doc["version"] = kReportVersion;
        doc["rows"] = nlohmann::ordered_json::array();
        for (const auto& r : rows) {
            nlohmann::ordered_json j;
            j["q"] = r.q;
            j["K"] = r.index;
            j["profile"] = to_string(r.profile);
            j["predicted_exponent"] = r.predicted;
            if (r.measured)
                j["measured_log_max"] = *r.measured;
            else
                j["measured_log_max"] = nullptr;
            doc["rows"].push_back(j);
        }
        return doc.dump(2) + "\n";
    }
    std::ostringstream out;
    out << "# " << kReportVersion << "\n"
        << "q,K,profile,predicted_exponent,measured_log_max\n";
    for (const auto& r : rows) {
        out << r.q << ',' << r.index << ',' << to_string(r.profile) << ',' << fmt(r.predicted)
            << ',' << (r.measured ? fmt(*r.measured) : "null") << "\n";
    }
    return out.str();
}

} // namespace crl
