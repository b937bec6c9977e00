#include "dfsec/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "dfsec/analytic.hpp"
#include "dfsec/monte_carlo.hpp"

namespace dfsec {

namespace {

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string opt_csv(const std::optional<double>& v) { return v ? g17(*v) : std::string(); }

double parse_double(const std::string& s, const std::string& context) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ValidationError("cannot parse number '" + s + "' in " + context);
    }
}

std::optional<double> parse_opt(const std::string& s, const std::string& context) {
    if (s.empty()) return std::nullopt;
    return parse_double(s, context);
}

}  // namespace

std::string to_string(Scenario s) {
    return s == Scenario::kFixedEve ? "fixed-eve" : "scaled-eve";
}

Scenario scenario_from_string(std::string_view s) {
    if (s == "fixed-eve") return Scenario::kFixedEve;
    if (s == "scaled-eve") return Scenario::kScaledEve;
    throw ValidationError("unknown scenario '" + std::string(s) +
                          "' (expected fixed-eve or scaled-eve)");
}

TableFormat format_from_string(std::string_view s) {
    if (s == "csv") return TableFormat::kCsv;
    if (s == "jsonl") return TableFormat::kJsonLines;
    throw ValidationError("unknown format '" + std::string(s) + "' (expected csv or jsonl)");
}

void SweepSpec::validate() const {
    if (cases.empty()) throw ValidationError("sweep needs at least one case");
    for (std::size_t i = 0; i < cases.size(); ++i) {
        for (std::size_t j = i + 1; j < cases.size(); ++j) {
            if (cases[i] == cases[j]) throw ValidationError("duplicate case in sweep spec");
        }
    }
    if (!(std::isfinite(gamma_d_db_start) && std::isfinite(gamma_d_db_stop) &&
          gamma_d_db_start <= gamma_d_db_stop))
        throw ValidationError("dB grid must satisfy start <= stop");
    if (!(std::isfinite(gamma_d_db_step) && gamma_d_db_step > 0.0))
        throw ValidationError("dB grid step must be > 0");
    ScenarioScaling probe(alpha, beta);  // validates alpha, beta
    if (scenario == Scenario::kFixedEve) {
        if (beta || !gamma_e_fixed)
            throw ValidationError("fixed-eve sweep requires gamma_e_fixed and no beta");
        if (!(std::isfinite(*gamma_e_fixed) && *gamma_e_fixed >= 0.0))
            throw ValidationError("gamma_e_fixed must be finite and >= 0");
    } else {
        if (!beta || gamma_e_fixed)
            throw ValidationError("scaled-eve sweep requires beta and no gamma_e_fixed");
    }
    RateThreshold probe_rate(rate_bits);
    const bool conv = std::find(cases.begin(), cases.end(), CaseId::kCase1Conventional) !=
                      cases.end();
    if (conv && mc_samples == 0)
        throw ValidationError(
            "the conventional Case 1 variant is Monte Carlo only; set mc_samples > 0");
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    spec.validate();
    const ScenarioScaling scaling(spec.alpha, spec.beta);
    const RateThreshold rate(spec.rate_bits);
    const double rates[1] = {rate.bits};

    const auto npoints = static_cast<std::size_t>(
        std::floor((spec.gamma_d_db_stop - spec.gamma_d_db_start) / spec.gamma_d_db_step +
                   1e-9)) + 1;

    std::vector<CaseId> cases = spec.cases;
    std::sort(cases.begin(), cases.end());

    // MC once per grid point, shared across cases (common randomness).
    std::vector<std::optional<OutageCounts>> mc(npoints);
    std::vector<SnrTriple> grid;
    grid.reserve(npoints);
    for (std::size_t p = 0; p < npoints; ++p) {
        const double gamma_d_db = spec.gamma_d_db_start + static_cast<double>(p) * spec.gamma_d_db_step;
        grid.push_back(snrs_from_scenario(db_to_linear(gamma_d_db), scaling, spec.gamma_e_fixed));
    }
    if (spec.mc_samples > 0) {
        for (std::size_t p = 0; p < npoints; ++p) {
            // Skip points every requested case would skip: tiny outage
            // probabilities need more than the default sample budget to
            // resolve. The conventional variant is gated by the Case 1
            // closed form, a lower bound on its SOP.
            bool any_needed = false;
            for (CaseId c : cases) {
                const CaseId gate = has_closed_form(c) ? c : CaseId::kCase1;
                const double analytic = sop_closed_form(gate, grid[p], rate);
                if (analytic >= kMcSkipThreshold || spec.mc_samples > kMcDefaultSamples)
                    any_needed = true;
            }
            if (any_needed)
                mc[p] = count_outages(grid[p], rates, spec.mc_samples, spec.seed, spec.workers);
        }
    }

    std::vector<SweepRow> rows;
    rows.reserve(cases.size() * npoints);
    for (CaseId c : cases) {
        for (std::size_t p = 0; p < npoints; ++p) {
            const SnrTriple& snrs = grid[p];
            SweepRow row;
            row.case_id = c;
            row.gamma_d_db = spec.gamma_d_db_start + static_cast<double>(p) * spec.gamma_d_db_step;
            row.gamma_r_db = linear_to_db(snrs.gamma_r);
            row.gamma_e_db = linear_to_db(snrs.gamma_e);
            row.rate = rate.bits;
            if (has_closed_form(c)) {
                row.sop_analytic = sop_closed_form(c, snrs, rate);
                const AsymptoticResult asym =
                    sop_asymptotic(c, snrs.gamma_d, scaling, spec.gamma_e_fixed, rate);
                row.sop_asymptotic = asym.approx;
                row.sop_limit = asym.limit;
                row.excess = *row.sop_analytic - *row.sop_limit;
            }
            if (mc[p]) {
                const CaseId gate = has_closed_form(c) ? c : CaseId::kCase1;
                const double analytic = sop_closed_form(gate, snrs, rate);
                if (analytic >= kMcSkipThreshold || spec.mc_samples > kMcDefaultSamples) {
                    const std::uint64_t outages = mc[p]->at(c, 0);
                    const Interval ci = wilson_interval(outages, spec.mc_samples);
                    row.sop_mc = static_cast<double>(outages) / static_cast<double>(spec.mc_samples);
                    row.mc_ci_low = ci.low;
                    row.mc_ci_high = ci.high;
                }
            }
            rows.push_back(row);
        }
    }
    return rows;
}

namespace {

void write_csv(std::span<const SweepRow> rows, std::ostream& out) {
    out << kTableHeader << '\n';
    for (const SweepRow& r : rows) {
        out << to_string(r.case_id) << ',' << g17(r.gamma_d_db) << ',' << g17(r.gamma_r_db) << ','
            << g17(r.gamma_e_db) << ',' << g17(r.rate) << ',' << opt_csv(r.sop_analytic) << ','
            << opt_csv(r.sop_asymptotic) << ',' << opt_csv(r.sop_limit) << ','
            << opt_csv(r.sop_mc) << ',' << opt_csv(r.mc_ci_low) << ',' << opt_csv(r.mc_ci_high)
            << ',' << opt_csv(r.excess) << '\n';
    }
}

// JSON has no infinities; non-finite numbers travel as strings ("-inf").
void append_json_number(std::string& line, const char* name, double v) {
    line += '"';
    line += name;
    line += "\":";
    if (std::isfinite(v)) {
        line += g17(v);
    } else {
        line += '"';
        line += g17(v);
        line += '"';
    }
}

void append_json_opt(std::string& line, const char* name, const std::optional<double>& v) {
    if (v) {
        append_json_number(line, name, *v);
    } else {
        line += '"';
        line += name;
        line += "\":null";
    }
}

void write_jsonl(std::span<const SweepRow> rows, std::ostream& out) {
    for (const SweepRow& r : rows) {
        std::string line = "{\"case\":\"" + to_string(r.case_id) + "\",";
        append_json_number(line, "gamma_d_db", r.gamma_d_db);
        line += ',';
        append_json_number(line, "gamma_r_db", r.gamma_r_db);
        line += ',';
        append_json_number(line, "gamma_e_db", r.gamma_e_db);
        line += ',';
        append_json_number(line, "rate", r.rate);
        line += ',';
        append_json_opt(line, "sop_analytic", r.sop_analytic);
        line += ',';
        append_json_opt(line, "sop_asymptotic", r.sop_asymptotic);
        line += ',';
        append_json_opt(line, "sop_limit", r.sop_limit);
        line += ',';
        append_json_opt(line, "sop_mc", r.sop_mc);
        line += ',';
        append_json_opt(line, "mc_ci_low", r.mc_ci_low);
        line += ',';
        append_json_opt(line, "mc_ci_high", r.mc_ci_high);
        line += ',';
        append_json_opt(line, "excess", r.excess);
        line += '}';
        out << line << '\n';
    }
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    fields.push_back(cur);
    return fields;
}

std::vector<SweepRow> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("empty table: missing CSV header");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kTableHeader) throw ValidationError("unexpected CSV header: " + line);
    std::vector<SweepRow> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::string ctx = "CSV line " + std::to_string(lineno);
        const std::vector<std::string> f = split_csv_line(line);
        if (f.size() != 12) throw ValidationError(ctx + ": expected 12 fields");
        SweepRow r;
        r.case_id = case_from_string(f[0]);
        r.gamma_d_db = parse_double(f[1], ctx);
        r.gamma_r_db = parse_double(f[2], ctx);
        r.gamma_e_db = parse_double(f[3], ctx);
        r.rate = parse_double(f[4], ctx);
        r.sop_analytic = parse_opt(f[5], ctx);
        r.sop_asymptotic = parse_opt(f[6], ctx);
        r.sop_limit = parse_opt(f[7], ctx);
        r.sop_mc = parse_opt(f[8], ctx);
        r.mc_ci_low = parse_opt(f[9], ctx);
        r.mc_ci_high = parse_opt(f[10], ctx);
        r.excess = parse_opt(f[11], ctx);
        rows.push_back(r);
    }
    return rows;
}

double json_number(const nlohmann::json& v, const std::string& ctx) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return parse_double(v.get<std::string>(), ctx);
    throw ValidationError(ctx + ": expected a number");
}

std::optional<double> json_opt(const nlohmann::json& v, const std::string& ctx) {
    if (v.is_null()) return std::nullopt;
    return json_number(v, ctx);
}

std::vector<SweepRow> read_jsonl(std::istream& in) {
    std::vector<SweepRow> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const std::string ctx = "JSONL line " + std::to_string(lineno);
        try {
            const nlohmann::json obj = nlohmann::json::parse(line);
            SweepRow r;
            r.case_id = case_from_string(obj.at("case").get<std::string>());
            r.gamma_d_db = json_number(obj.at("gamma_d_db"), ctx);
            r.gamma_r_db = json_number(obj.at("gamma_r_db"), ctx);
            r.gamma_e_db = json_number(obj.at("gamma_e_db"), ctx);
            r.rate = json_number(obj.at("rate"), ctx);
            r.sop_analytic = json_opt(obj.at("sop_analytic"), ctx);
            r.sop_asymptotic = json_opt(obj.at("sop_asymptotic"), ctx);
            r.sop_limit = json_opt(obj.at("sop_limit"), ctx);
            r.sop_mc = json_opt(obj.at("sop_mc"), ctx);
            r.mc_ci_low = json_opt(obj.at("mc_ci_low"), ctx);
            r.mc_ci_high = json_opt(obj.at("mc_ci_high"), ctx);
            r.excess = json_opt(obj.at("excess"), ctx);
            rows.push_back(r);
        } catch (const nlohmann::json::exception& e) {
            throw ValidationError(ctx + ": " + e.what());
        }
    }
    return rows;
}

}  // namespace

void write_table(std::span<const SweepRow> rows, std::ostream& out, TableFormat format) {
    if (format == TableFormat::kCsv) {
        write_csv(rows, out);
    } else {
        write_jsonl(rows, out);
    }
    if (!out) throw ValidationError("failed writing table to stream");
}

void write_table(std::span<const SweepRow> rows, const std::string& path, TableFormat format) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot open '" + path + "' for writing");
    write_table(rows, out, format);
    out.flush();
    if (!out) throw ValidationError("failed writing table to '" + path + "'");
}

std::vector<SweepRow> read_table(std::istream& in, TableFormat format) {
    return format == TableFormat::kCsv ? read_csv(in) : read_jsonl(in);
}

std::vector<SweepRow> read_table(const std::string& path, TableFormat format) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "' for reading");
    return read_table(in, format);
}

double fit_diversity_order(std::span<const SweepRow> rows, std::pair<double, double> window_db) {
    std::vector<const SweepRow*> picked;
    for (const SweepRow& r : rows) {
        if (r.gamma_d_db >= window_db.first - 1e-9 && r.gamma_d_db <= window_db.second + 1e-9)
            picked.push_back(&r);
    }
    if (picked.size() < 3)
        throw ValidationError("diversity-order fit needs at least 3 rows inside the window");
    for (const SweepRow* r : picked) {
        if (r->case_id != picked.front()->case_id)
            throw ValidationError("diversity-order fit needs rows of a single case");
        if (!r->sop_analytic || !(*r->sop_analytic > 0.0))
            throw ValidationError("diversity-order fit needs positive analytic SOP in window");
        if (r->sop_limit.value_or(0.0) != 0.0)
            throw ValidationError(
                "diversity-order fit applies to fixed-eavesdropper sweeps (sop_limit = 0)");
    }

    // Simple least squares on (log10 gamma_d, log10 sop).
    const auto n = static_cast<double>(picked.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const SweepRow* r : picked) {
        const double x = r->gamma_d_db / 10.0;
        const double y = std::log10(*r->sop_analytic);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw ValidationError("diversity-order fit window is degenerate");
    const double slope = (n * sxy - sx * sy) / denom;
    return -slope;
}

}  // namespace dfsec
