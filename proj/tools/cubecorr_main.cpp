// cubecorr: build monotone families on the discrete cube, compute spectra and
// influence-based correlation bounds, and run the verification suites.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cubecorr/bounds.hpp"
#include "cubecorr/families.hpp"
#include "cubecorr/function_table.hpp"
#include "cubecorr/spectral.hpp"
#include "cubecorr/table_io.hpp"
#include "cubecorr/verify.hpp"

namespace {

using nlohmann::json;
using namespace cubecorr;

constexpr int kDefaultCap = 20;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json finite_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void enforce_cap(const FunctionTable& f, int cap) {
    if (f.n > cap)
        throw UsageError("table has n = " + std::to_string(f.n) + " > cap " +
                         std::to_string(cap) + (cap < kMaxCoordinates
                                                    ? "; pass --allow-large to raise it"
                                                    : ""));
}

struct Sink {
    std::ofstream file;
    std::ostream* out = &std::cout;
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file.open(path);
            if (!file) throw UsageError("cannot open output file: " + path);
            out = &file;
        }
    }
    std::ostream& stream() { return *out; }
};

// Loads the single tables named by --spec strings and --table paths, in that
// order, enforcing the coordinate cap.
std::vector<FunctionTable> load_inputs(const std::vector<std::string>& specs,
                                       const std::vector<std::string>& tables, int cap) {
    std::vector<FunctionTable> result;
    for (const auto& text : specs) {
        MaterializedFamily fam = materialize(parse_family_spec(text));
        if (fam.is_pair) throw UsageError("spec builds a pair; use the pair command");
        result.push_back(std::move(fam.f));
    }
    for (const auto& path : tables) result.push_back(table_from_json(read_file(path)));
    for (const auto& f : result) enforce_cap(f, cap);
    return result;
}

json check_to_json_value(const CheckResult& r) { return json::parse(check_result_to_json(r)); }

int cmd_analyze(const std::vector<std::string>& specs, const std::vector<std::string>& tables,
                int cap, const std::string& format, Sink& sink) {
    if (format != "json") throw UsageError("analyze supports --format json only");
    auto inputs = load_inputs(specs, tables, cap);
    if (inputs.size() != 1) throw UsageError("analyze needs exactly one --spec or --table");
    const FunctionTable& f = inputs[0];

    json j;
    j["n"] = f.n;
    j["kind"] = to_string(f.kind);
    const double m = mean(f);
    j["mean"] = m;
    j["mu"] = f.kind == ValueKind::SignedPm1 ? 0.5 * (1.0 + m) : m;
    const InfluenceProfile prof = influences(f);
    j["influences"] = prof.influences;
    j["total_influence"] = prof.total;
    j["regularity_max_over_min"] = finite_or_null(prof.max_over_min);
    j["tau_regularity"] = tau_regularity(f);
    j["monotone"] = is_monotone(f);

    const LevelWeights lw = level_weights(f, f);
    json sw = json::array();
    for (int d = 0; d <= std::min(4, f.n); ++d) sw.push_back(lw.sw[d]);
    j["level_weights"] = sw;
    j["w1_influence"] = lw.w1_influence;

    if (f.kind != ValueKind::Bounded) {
        const FunctionTable signed_f = f.kind == ValueKind::SignedPm1 ? f : to_signed(f);
        json ns = json::object();
        for (double eps : {0.01, 0.04, 0.09, 0.25}) {
            char key[16];
            std::snprintf(key, sizeof key, "%.2f", eps);
            ns[key] = noise_stability(signed_f, eps);
        }
        j["noise_stability"] = ns;
    }
    sink.stream() << j.dump(2) << "\n";
    return 0;
}

int cmd_bounds(const std::vector<std::string>& specs, const std::vector<std::string>& tables,
               int cap, const std::string& format, Sink& sink) {
    auto inputs = load_inputs(specs, tables, cap);
    if (inputs.size() != 2)
        throw UsageError("bounds needs exactly two inputs (--spec/--table, f first)");
    const BoundReport rep = bound_report(inputs[0], inputs[1]);
    if (format == "csv")
        sink.stream() << bound_report_csv_header() << bound_report_csv_row(rep);
    else
        sink.stream() << bound_report_to_json(rep) << "\n";
    return check_comparison_claims(rep) ? 0 : 1;
}

struct NamedPair {
    FunctionTable f, g;
    std::map<std::string, double> notes;
    json extra = json::object();
};

NamedPair build_named_pair(const std::string& name, int n, double a, int r, int cap) {
    NamedPair p{FunctionTable{}, FunctionTable{}, {}, json::object()};
    if (name == "talagrand_ball") {
        if (n == 0) n = 16;
        if (a == 0.0) a = 0.05;
        BallPick pick = hamming_ball_mu(n, a);
        p.notes["t"] = pick.t;
        p.notes["mu"] = pick.mu;
        p.g = dual(pick.table);
        p.f = std::move(pick.table);
        const double cov = covariance(p.f, p.g);
        p.extra["cov_minus_mu_squared"] = cov - pick.mu * pick.mu;
    } else if (name == "tribes_dual") {
        if (n == 0) n = 16;
        if (r == 0) r = 4;
        p.f = tribes(n, r);
        p.g = dual(p.f);
        p.notes["r"] = r;
    } else if (name == "example31") {
        if (n == 0) n = 12;
        if (a == 0.0) a = 0.125;
        PairResult pr = example31(n, a);
        p.f = std::move(pr.f);
        p.g = std::move(pr.g);
        p.notes = std::move(pr.notes);
    } else if (name == "example32") {
        if (n == 0) n = 10;
        if (a == 0.0) a = 0.125;
        PairResult pr = example32(n, a, cap);
        p.f = std::move(pr.f);
        p.g = std::move(pr.g);
        p.notes = std::move(pr.notes);
    } else if (name == "example54") {
        if (n == 0) n = 13;
        if (a == 0.0) a = 0.25;
        PairResult pr = example54(n, a);
        p.f = std::move(pr.f);
        p.g = std::move(pr.g);
        p.notes = std::move(pr.notes);
    } else if (name == "cormaj") {
        if (n == 0) n = 12;
        if (r == 0) r = 4;
        const FunctionTable a_tbl = tribes(n, r);
        const int m = n % 2 == 0 ? n + 1 : n;
        std::vector<double> lifted(size_t{1} << m);
        for (size_t x = 0; x < lifted.size(); ++x)
            lifted[x] = a_tbl.values[x & (a_tbl.size() - 1)];
        p.f = FunctionTable(m, ValueKind::Indicator01, std::move(lifted));
        p.g = majority(m);
        p.notes["r"] = r;
        p.notes["m"] = m;
        p.extra["cormaj_score"] = cormaj_score(a_tbl);
    } else {
        throw UsageError("unknown pair name: " + name +
                         " (expected talagrand_ball, tribes_dual, example31, example32, "
                         "example54, cormaj)");
    }
    return p;
}

int cmd_pair(const std::string& name, int n, double a, int r, int cap,
             const std::string& format, Sink& sink) {
    NamedPair p = build_named_pair(name, n, a, r, cap);
    enforce_cap(p.f, cap);
    enforce_cap(p.g, cap);
    const BoundReport rep = bound_report(p.f, p.g);

    std::vector<CheckResult> checks;
    checks.push_back(check_harris(p.f, p.g));
    checks.push_back(check_noise_monotone(p.f, p.g));
    CheckResult claims;
    claims.name = "comparison_claims";
    claims.passed = check_comparison_claims(rep);
    claims.details["rhs_similar_minus_talagrand"] = rep.rhs_similar - rep.rhs_talagrand;
    claims.details["rhs_similar_minus_half_kms"] = rep.rhs_similar - 0.5 * rep.rhs_kms;
    checks.push_back(claims);

    bool all_pass = true;
    for (const auto& c : checks) all_pass = all_pass && c.passed;

    if (format == "csv") {
        sink.stream() << bound_report_csv_header() << bound_report_csv_row(rep);
    } else {
        json j;
        j["name"] = name;
        j["notes"] = json::object();
        for (const auto& [k, v] : p.notes) j["notes"][k] = finite_or_null(v);
        for (auto& [k, v] : p.extra.items()) j[k] = v;
        j["report"] = json::parse(bound_report_to_json(rep, -1));
        json arr = json::array();
        for (const auto& c : checks) arr.push_back(check_to_json_value(c));
        j["checks"] = arr;
        sink.stream() << j.dump(2) << "\n";
    }
    return all_pass ? 0 : 1;
}

std::string csv_escape(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        out += c;
    }
    out += "\"";
    return out;
}

void emit_check_results(const std::vector<CheckResult>& results, const std::string& format,
                        Sink& sink) {
    if (format == "csv") {
        sink.stream() << "# cubecorr-checks-csv v1\nname,passed,implied_constant,witness\n";
        for (const auto& r : results) {
            char num[32] = "";
            if (r.implied_constant) {
                if (std::isfinite(*r.implied_constant))
                    std::snprintf(num, sizeof num, "%.17g", *r.implied_constant);
                else
                    std::snprintf(num, sizeof num, "%s",
                                  std::isnan(*r.implied_constant)        ? "nan"
                                  : *r.implied_constant > 0 ? "inf" : "-inf");
            }
            sink.stream() << csv_escape(r.name) << "," << (r.passed ? "true" : "false") << ","
                          << num << "," << csv_escape(r.witness) << "\n";
        }
    } else {
        for (const auto& r : results) sink.stream() << check_result_to_json(r) << "\n";
    }
}

int cmd_verify(uint64_t seed, int n_min, int n_max, int pairs, int cap,
               const std::string& format, Sink& sink) {
    if (n_max > cap) throw UsageError("--n-max exceeds the coordinate cap");
    const auto results = run_property_suite(seed, n_min, n_max, pairs);
    emit_check_results(results, format, sink);
    for (const auto& r : results)
        if (!r.passed) return 1;
    return 0;
}

int cmd_scan(const std::string& target_name, const std::string& gen_json, int budget,
             uint64_t seed, int cap, const std::string& format, Sink& sink) {
    const ScanTarget target = scan_target_from_string(target_name);
    const ScanGenerator gen = parse_scan_generator(gen_json);
    if (gen.kind != "catalog" && gen.n > cap)
        throw UsageError("generator n exceeds the coordinate cap");
    const CheckResult r = scan(gen, target, budget, seed);
    emit_check_results({r}, format, sink);
    return r.passed ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cubecorr: correlation bounds for monotone functions on the discrete cube"};
    app.require_subcommand(1);

    bool allow_large = false;
    std::string format = "json", out_path;
    app.add_flag("--allow-large", allow_large,
                 "raise the coordinate cap from 20 to 24 (up to ~1.2 GiB of table data)");
    app.add_option("--format", format, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", out_path, "write output to a file instead of stdout");

    std::vector<std::string> specs, tables;
    int n = 0, r = 0, pairs = 100, budget = 100, n_max = 10;
    double a = 0.0;
    uint64_t seed = 7;
    std::string name, gen_json;

    CLI::App* analyze = app.add_subcommand(
        "analyze", "spectrum, influences and noise profile of one function");
    analyze->add_option("--spec", specs, "family spec JSON (see README for kinds)");
    analyze->add_option("--table", tables, "path to a table JSON file");

    CLI::App* bounds = app.add_subcommand(
        "bounds", "correlation lower-bound report for a pair f, g");
    bounds->add_option("--spec", specs, "family spec JSON; may repeat (f first)");
    bounds->add_option("--table", tables, "path to a table JSON file; may repeat");

    CLI::App* pair = app.add_subcommand("pair", "built-in example pairs with checks");
    pair->add_option("--name", name,
                     "one of talagrand_ball, tribes_dual, example31, example32, example54, "
                     "cormaj")
        ->required();
    pair->add_option("--n", n, "coordinate count (0 = per-name default)");
    pair->add_option("--a", a, "target measure (0 = per-name default)");
    pair->add_option("--r", r, "tribe width (0 = per-name default)");

    CLI::App* verify = app.add_subcommand(
        "verify", "seeded property suite: Harris, noise monotonicity, comparison claims");
    verify->add_option("--seed", seed, "RNG seed (default 7)");
    verify->add_option("--n", n, "smallest coordinate count (default 4)");
    verify->add_option("--n-max", n_max, "largest coordinate count (default 10)");
    verify->add_option("--pairs", pairs, "random pairs per coordinate count (default 100)");

    CLI::App* scan_cmd = app.add_subcommand(
        "scan", "seeded extremal-instance search over a generator");
    scan_cmd->add_option("--name", name,
                         "target: wrong2, statement33, chang_max or tightness_min")
        ->required();
    scan_cmd->add_option("--spec", specs, "generator spec JSON")->required();
    scan_cmd->add_option("--budget", budget, "instances to draw (default 100)");
    scan_cmd->add_option("--seed", seed, "RNG seed (default 7)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help and friends
        std::cerr << json{{"error", std::string(e.what())}, {"code", 2}}.dump() << "\n";
        return 2;
    }

    const int cap = allow_large ? kMaxCoordinates : kDefaultCap;
    try {
        Sink sink(out_path);
        if (analyze->parsed()) return cmd_analyze(specs, tables, cap, format, sink);
        if (bounds->parsed()) return cmd_bounds(specs, tables, cap, format, sink);
        if (pair->parsed()) return cmd_pair(name, n, a, r, cap, format, sink);
        if (verify->parsed())
            return cmd_verify(seed, n == 0 ? 4 : n, n_max, pairs, cap, format, sink);
        if (scan_cmd->parsed())
            return cmd_scan(name, specs.empty() ? "" : specs[0], budget, seed, cap, format,
                            sink);
    } catch (const std::invalid_argument& e) {
        std::cerr << json{{"error", std::string(e.what())}, {"code", 2}}.dump() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << json{{"error", std::string(e.what())}, {"code", 2}}.dump() << "\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << json{{"error", std::string(e.what())}, {"code", 2}}.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", std::string(e.what())}, {"code", 2}}.dump() << "\n";
        return 2;
    }
    return 2;
}
