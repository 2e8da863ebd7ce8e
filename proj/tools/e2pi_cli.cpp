// e2pi command-line front end.
//
// Subcommands: pi, e, verify, convergence, bench. All numeric payloads are
// decimal strings; JSON output is a canonical single object with exactly the
// keys command/parameters/results/timing/tool_version. Exit codes: 0 ok,
// 1 verification or correctness failure, 2 usage error.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "e2pi/e2pi.hpp"

using json = nlohmann::json;
using namespace e2pi;

namespace {

constexpr const char* kVersion = "1.0.0";

enum class Format { json_fmt, csv, text };

Format parse_format(const std::string& s) {
    if (s == "json") return Format::json_fmt;
    if (s == "csv") return Format::csv;
    if (s == "text") return Format::text;
    throw CLI::ValidationError("--format", "unknown format: " + s);
}

std::optional<StrategyKind> parse_strategy(const std::string& s) {
    for (StrategyKind k : {StrategyKind::naive_rational, StrategyKind::naive_float,
                           StrategyKind::pairwise_float, StrategyKind::binsplit_rational,
                           StrategyKind::binsplit_parallel}) {
        if (s == strategy_name(k))
            return k;
    }
    return std::nullopt;
}

std::optional<ProductId> parse_product(const std::string& s) {
    for (ProductId id :
         {ProductId::wallis, ProductId::even_over_odd_minus, ProductId::even_over_odd_plus}) {
        if (s == product_id_name(id))
            return id;
    }
    return std::nullopt;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(item);
    return out;
}

// Flat key=value config file; flags override config, config overrides defaults.
struct Config {
    unsigned long digits = 10;
    std::string strategy = "binsplit-rational";
    std::string format = "text";
    unsigned workers = 1;
    unsigned long exact_threshold = kExactPowerThreshold;
    unsigned precision_bits = 128;
};

Config load_config(const std::string& explicit_path) {
    Config cfg;
    std::string path = explicit_path;
    if (path.empty()) {
        if (const char* env = std::getenv("E2PI_CONFIG"))
            path = env;
        else if (const char* home = std::getenv("HOME"))
            path = std::string(home) + "/.e2pi.conf";
    }
    std::ifstream in(path);
    if (!in)
        return cfg;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.resize(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos)
            continue;
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t"));
            auto e = s.find_last_not_of(" \t");
            s.erase(e == std::string::npos ? 0 : e + 1);
            return s;
        };
        std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        if (key == "digits") cfg.digits = std::stoul(val);
        else if (key == "strategy") cfg.strategy = val;
        else if (key == "format") cfg.format = val;
        else if (key == "workers") cfg.workers = static_cast<unsigned>(std::stoul(val));
        else if (key == "exact_threshold") cfg.exact_threshold = std::stoul(val);
        else if (key == "precision_bits") cfg.precision_bits = static_cast<unsigned>(std::stoul(val));
    }
    if (cfg.digits < 6)
        cfg.digits = 6;
    if (cfg.workers < 1)
        cfg.workers = 1;
    return cfg;
}

std::string seconds_string(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", s);
    return buf;
}

struct Envelope {
    std::string command;
    json parameters = json::object();
    json results = json::object();
    double timing = 0.0;
};

void emit_json(const Envelope& env) {
    json out;
    out["command"] = env.command;
    out["parameters"] = env.parameters;
    out["results"] = env.results;
    out["timing"] = seconds_string(env.timing);
    out["tool_version"] = kVersion;
    std::cout << out.dump() << "\n";
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

// CSV: a "rows" array in the results becomes a table, scalars become
// key,value lines. Text: aligned human listing of the same content.
void emit_csv(const Envelope& env) {
    if (env.results.contains("rows")) {
        const json& rows = env.results["rows"];
        std::vector<std::string> cols;
        for (auto& [k, v] : rows.front().items())
            cols.push_back(k);
        for (std::size_t i = 0; i < cols.size(); ++i)
            std::cout << (i ? "," : "") << csv_quote(cols[i]);
        std::cout << "\n";
        for (const json& row : rows) {
            for (std::size_t i = 0; i < cols.size(); ++i) {
                const json& cell = row[cols[i]];
                std::string s = cell.is_string() ? cell.get<std::string>() : cell.dump();
                std::cout << (i ? "," : "") << csv_quote(s);
            }
            std::cout << "\n";
        }
        return;
    }
    std::cout << "key,value\n";
    for (auto& [k, v] : env.results.items()) {
        std::string s = v.is_string() ? v.get<std::string>() : v.dump();
        std::cout << csv_quote(k) << "," << csv_quote(s) << "\n";
    }
}

void emit_text(const Envelope& env) {
    std::cout << "e2pi " << env.command << "\n";
    if (env.results.contains("rows")) {
        const json& rows = env.results["rows"];
        for (const json& row : rows) {
            bool first = true;
            for (auto& [k, v] : row.items()) {
                std::string s = v.is_string() ? v.get<std::string>() : v.dump();
                std::cout << (first ? "  " : "  ") << k << "=" << s;
                first = false;
            }
            std::cout << "\n";
        }
    }
    for (auto& [k, v] : env.results.items()) {
        if (k == "rows")
            continue;
        std::string s = v.is_string() ? v.get<std::string>() : v.dump();
        std::cout << "  " << k << ": " << s << "\n";
    }
}

void emit(const Envelope& env, Format f) {
    switch (f) {
        case Format::json_fmt: emit_json(env); break;
        case Format::csv: emit_csv(env); break;
        case Format::text: emit_text(env); break;
    }
}

std::string hp_str(const HPReal& x, unsigned long digits) {
    if (x.is_zero())
        return "0";
    return hp_to_decimal(x, digits);
}

Perturbation parse_mutation(const std::string& s) {
    // "<product-id>:<delta>", e.g. "wallis:1"
    Perturbation p;
    auto colon = s.find(':');
    if (colon == std::string::npos)
        throw CLI::ValidationError("--mutate", "expected <product>:<delta>");
    auto id = parse_product(s.substr(0, colon));
    if (!id)
        throw CLI::ValidationError("--mutate", "unknown product: " + s.substr(0, colon));
    p.target = *id;
    p.numerator_delta = std::stol(s.substr(colon + 1));
    return p;
}

int run_pi(const Config& cfg, unsigned long digits, const std::string& terms_str,
           const std::string& strategy_str, bool accelerate, unsigned levels, unsigned workers,
           unsigned bits, Format fmt) {
    auto t0 = std::chrono::steady_clock::now();
    auto kind = parse_strategy(strategy_str);
    if (!kind)
        throw CLI::ValidationError("--strategy", "unknown strategy: " + strategy_str);
    EvalStrategy strategy{*kind, workers};
    PrecisionSpec p(std::max<unsigned>(bits, 64));

    constexpr unsigned long kAutoCap = 100000000ul;  // 10^8
    unsigned long n = 0;
    bool auto_terms = (terms_str == "auto");
    Envelope env;
    env.command = "pi";
    if (auto_terms) {
        // error ~ pi/(4n): n for 10^-digits target
        double need = 0.7853981633974483 * std::pow(10.0, static_cast<double>(digits));
        if (need > static_cast<double>(kAutoCap) && !accelerate) {
            std::cerr << "e2pi pi: " << digits << " digits needs ~" << need
                      << " Wallis terms (order-1 convergence); capped at 1e8.\n"
                      << "The raw product gains ~1 digit per 10x terms; "
                         "use --accelerate for Richardson extrapolation.\n";
            return 1;
        }
        n = static_cast<unsigned long>(std::min(need + 1.0, static_cast<double>(kAutoCap)));
        env.results["auto_terms_note"] =
            "n chosen so pi/(4n) < 10^-digits; raw Wallis needs ~10^digits terms per digit target";
    } else {
        n = std::stoul(terms_str);
        if (n < 1)
            throw CLI::ValidationError("--terms", "terms must be >= 1 or auto");
    }

    HPReal pi_ref = constant_to_hp(constant_pi(), p);
    HPReal estimate(p);
    if (accelerate) {
        if (levels < 1)
            throw CLI::ValidationError("--levels", "levels must be >= 1");
        unsigned long top = n;
        std::vector<std::pair<unsigned long, HPReal>> samples;
        unsigned long start = top >> levels;
        if (start < 1)
            throw CLI::ValidationError("--terms", "terms too small for the level count");
        PrecisionSpec wp(std::max<unsigned>(p.bits, 192));
        for (unsigned long m = start; m <= top; m <<= 1)
            samples.emplace_back(m, wallis_pi_estimate(m, strategy, wp));
        estimate = richardson(samples, levels, 1).round_to(p);
    } else {
        estimate = wallis_pi_estimate(n, strategy, p);
    }
    HPReal err = hp_sub(estimate, pi_ref, p).abs();

    env.parameters["digits"] = std::to_string(digits);
    env.parameters["terms"] = std::to_string(n);
    env.parameters["strategy"] = strategy_str;
    env.parameters["accelerate"] = accelerate ? "true" : "false";
    env.parameters["precision_bits"] = std::to_string(p.bits);
    env.results["estimate"] = hp_str(estimate, digits + 5);
    env.results["reference"] = hp_str(pi_ref, digits + 5);
    env.results["abs_error"] = err.is_zero() ? "0" : hp_str(err, 6);
    env.timing = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    (void)cfg;
    emit(env, fmt);
    return 0;
}

int run_e(unsigned long digits, unsigned long n, unsigned bits, Format fmt) {
    auto t0 = std::chrono::steady_clock::now();
    if (n < 1)
        throw CLI::ValidationError("--n", "n must be >= 1");
    PrecisionSpec p(std::max<unsigned>(bits, 64));
    HPReal e_ref = constant_to_hp(constant_e(), p);
    HPReal value = term_bernoulli(n, p);
    HPReal err = hp_sub(value, e_ref, p).abs();

    Envelope env;
    env.command = "e";
    env.parameters["digits"] = std::to_string(digits);
    env.parameters["n"] = std::to_string(n);
    env.parameters["precision_bits"] = std::to_string(p.bits);
    env.results["value"] = hp_str(value, digits + 5);
    env.results["reference"] = hp_str(e_ref, digits + 5);
    env.results["abs_error"] = err.is_zero() ? "0" : hp_str(err, 6);
    if (n >= 2) {
        HPReal err_half = hp_sub(term_bernoulli(n / 2, p), e_ref, p).abs();
        if (!err.is_zero() && !err_half.is_zero()) {
            double order = (err_half.log2_abs() - err.log2_abs()) /
                           (std::log2(double(n)) - std::log2(double(n / 2)));
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.4f", order);
            env.results["local_order"] = buf;
        }
    }
    env.timing = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    emit(env, fmt);
    return 0;
}

json step_to_json(const StepResult& r, unsigned long digits) {
    json j;
    j["step"] = step_name(r.id);
    j["kind"] = r.kind == StepKind::exact_identity ? "exact-identity" : "limit-claim";
    j["pass"] = r.pass;
    j["exact_zero"] = r.exact_zero;
    if (r.fitted_order) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4f", *r.fitted_order);
        j["fitted_order"] = buf;
    }
    json rows = json::array();
    for (std::size_t i = 0; i < r.grid.size(); ++i) {
        json row;
        row["n"] = std::to_string(r.grid[i]);
        row["residual"] = r.residuals[i].is_zero() ? "0" : hp_str(r.residuals[i], digits);
        rows.push_back(row);
    }
    j["samples"] = rows;
    if (!r.notes.empty())
        j["notes"] = r.notes;
    return j;
}

int run_verify(const std::string& steps_str, unsigned long grid_start, unsigned grid_count,
               unsigned bits, const std::string& mutate, Format fmt) {
    auto t0 = std::chrono::steady_clock::now();
    Perturbation perturb;
    if (!mutate.empty())
        perturb = parse_mutation(mutate);

    std::vector<StepId> steps;
    if (steps_str == "all") {
        steps = {StepId::S1, StepId::S2, StepId::S3, StepId::S4, StepId::S5, StepId::S6};
    } else {
        for (const std::string& s : split_list(steps_str)) {
            auto id = parse_step(s);
            if (!id) {
                std::cerr << "e2pi verify: unknown step '" << s << "'\n";
                return 2;
            }
            steps.push_back(*id);
        }
    }
    if (steps.empty()) {
        std::cerr << "e2pi verify: no steps selected\n";
        return 2;
    }

    GridPolicy policy = GridPolicy::defaults();
    if (grid_start > 0) {
        policy.limit_grid.clear();
        unsigned long n = grid_start;
        for (unsigned i = 0; i < std::max(1u, grid_count); ++i, n <<= 1)
            policy.limit_grid.push_back(n);
    }
    PrecisionSpec p(std::max<unsigned>(bits, 64));

    Envelope env;
    env.command = "verify";
    env.parameters["steps"] = steps_str;
    env.parameters["precision_bits"] = std::to_string(p.bits);
    if (!mutate.empty())
        env.parameters["mutate"] = mutate;

    bool all_pass = true;
    json out_steps = json::array();
    json rows = json::array();  // flattened per-sample rows for CSV
    for (StepId id : steps) {
        const auto& grid =
            step_kind(id) == StepKind::limit_claim ? policy.limit_grid : policy.exact_grid;
        StepResult r = verify_step(id, grid, p, perturb);
        all_pass = all_pass && r.pass;
        out_steps.push_back(step_to_json(r, 6));
        for (std::size_t i = 0; i < r.grid.size(); ++i) {
            json row;
            row["step"] = step_name(r.id);
            row["n"] = std::to_string(r.grid[i]);
            row["residual"] = r.residuals[i].is_zero() ? "0" : hp_str(r.residuals[i], 6);
            row["pass"] = r.pass ? "true" : "false";
            rows.push_back(row);
        }
    }
    env.results["steps"] = out_steps;
    env.results["rows"] = rows;
    env.results["all_pass"] = all_pass ? "true" : "false";
    env.timing = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    emit(env, fmt);
    return all_pass ? 0 : 1;
}

int run_convergence(const std::string& target, unsigned long start, unsigned count, unsigned ratio,
                    unsigned bits, Format fmt) {
    auto t0 = std::chrono::steady_clock::now();
    if (ratio != 2)
        throw CLI::ValidationError("--ratio", "only ratio 2 grids are supported");
    if (start < 1 || count < 1)
        throw CLI::ValidationError("--start/--count", "must be >= 1");
    PrecisionSpec p(std::max<unsigned>(bits, 64));
    std::vector<unsigned long> grid;
    unsigned long n = start;
    for (unsigned i = 0; i < count; ++i, n <<= 1)
        grid.push_back(n);

    ConvergenceReport rep;
    if (target == "pi") {
        rep = sample_sequence_with(
            "wallis-pi",
            [](unsigned long m, PrecisionSpec q) {
                return wallis_pi_estimate(m, {StrategyKind::binsplit_rational}, q);
            },
            constant_to_hp(constant_pi(), p), grid, p);
    } else if (target == "e") {
        rep = sample_sequence(FamilyId::bernoulli, grid, p);
    } else if (target == "gamma-ratio") {
        rep = sample_sequence_with(
            "gamma-ratio-product",
            [](unsigned long m, PrecisionSpec q) {
                SqrtPiScaled prod = gamma_ratio_np1_over_nph(m) * gamma_ratio_np1_over_np3h(m);
                return prod.to_hp(q);
            },
            HPReal::from_long(1, p), grid, p);
    } else {
        std::cerr << "e2pi convergence: unknown target '" << target << "'\n";
        return 2;
    }

    Envelope env;
    env.command = "convergence";
    env.parameters["target"] = target;
    env.parameters["start"] = std::to_string(start);
    env.parameters["count"] = std::to_string(count);
    env.parameters["precision_bits"] = std::to_string(p.bits);
    json rows = json::array();
    for (std::size_t i = 0; i < rep.samples.size(); ++i) {
        const auto& s = rep.samples[i];
        json row;
        row["n"] = std::to_string(s.n);
        row["value"] = hp_str(s.value, 20);
        row["error"] = s.underflowed ? "0" : hp_str(s.abs_error, 6);
        std::string local;
        if (i + 1 < rep.samples.size() && !s.underflowed && !rep.samples[i + 1].underflowed) {
            double o = (s.abs_error.log2_abs() - rep.samples[i + 1].abs_error.log2_abs()) /
                       (std::log2(double(rep.samples[i + 1].n)) - std::log2(double(s.n)));
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.4f", o);
            local = buf;
        }
        row["local_order"] = local;
        rows.push_back(row);
    }
    env.results["rows"] = rows;
    if (rep.fitted_order) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4f", *rep.fitted_order);
        env.results["fitted_order"] = buf;
    }
    env.timing = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    emit(env, fmt);
    return 0;
}

int run_bench(const std::string& spec_str, const std::string& n_str,
              const std::string& strategies_str, unsigned repeats, unsigned workers, unsigned bits,
              Format fmt) {
    auto t0 = std::chrono::steady_clock::now();
    auto spec_id = parse_product(spec_str);
    if (!spec_id) {
        std::cerr << "e2pi bench: unknown spec '" << spec_str << "'\n";
        return 2;
    }
    std::vector<unsigned long> n_list;
    for (const std::string& s : split_list(n_str))
        n_list.push_back(std::stoul(s));
    std::vector<EvalStrategy> strategies;
    for (const std::string& s : split_list(strategies_str)) {
        auto kind = parse_strategy(s);
        if (!kind) {
            std::cerr << "e2pi bench: unknown strategy '" << s << "'\n";
            return 2;
        }
        strategies.push_back({*kind, workers});
    }
    if (n_list.empty() || strategies.empty()) {
        std::cerr << "e2pi bench: need at least one n and one strategy\n";
        return 2;
    }
    if (repeats < 1)
        throw CLI::ValidationError("--repeats", "repeats must be >= 1");

    ProductSpec spec{*spec_id};
    auto records = bench_product(spec, n_list, strategies, repeats, PrecisionSpec(std::max(bits, 64u)));

    // Correctness outranks benchmarking: exact strategies must agree.
    bool digests_ok = true;
    for (unsigned long n : n_list) {
        std::optional<std::uint64_t> expected;
        for (const auto& r : records) {
            if (r.n != n || !r.ok || !r.strategy.exact())
                continue;
            if (!expected)
                expected = r.result_digest;
            else if (*expected != r.result_digest)
                digests_ok = false;
        }
    }

    Envelope env;
    env.command = "bench";
    env.parameters["spec"] = spec_str;
    env.parameters["n"] = n_str;
    env.parameters["strategies"] = strategies_str;
    env.parameters["repeats"] = std::to_string(repeats);
    json rows = json::array();
    for (const auto& r : records) {
        json row;
        row["spec"] = product_id_name(r.spec_id);
        row["strategy"] = strategy_name(r.strategy.kind);
        row["n"] = std::to_string(r.n);
        row["median_seconds"] = seconds_string(r.wall_time);
        row["peak_bytes"] = std::to_string(r.peak_bytes);
        char dig[32];
        std::snprintf(dig, sizeof dig, "%016llx", static_cast<unsigned long long>(r.result_digest));
        row["digest"] = r.ok ? dig : "";
        row["status"] = r.ok ? "ok" : ("error: " + r.error);
        rows.push_back(row);
    }
    env.results["rows"] = rows;
    env.results["digests_equal"] = digests_ok ? "true" : "false";
    env.results["machine"] = "generic build machine; timings are machine-relative";
    env.timing = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    emit(env, fmt);
    if (!digests_ok) {
        std::cerr << "e2pi bench: digest mismatch across exact strategies\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"e2pi: high-precision verification of the Wallis product for pi "
                 "derived from the Bernoulli limit for e"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "config file (flat key=value)");

    // Parse config early so flag defaults can come from it; flags still win.
    Config cfg = load_config([&] {
        for (int i = 1; i + 1 < argc; ++i)
            if (std::string(argv[i]) == "--config")
                return std::string(argv[i + 1]);
        return std::string();
    }());

    std::string format_str = cfg.format;
    unsigned bits = cfg.precision_bits;
    unsigned workers = cfg.workers;

    auto* pi_cmd = app.add_subcommand("pi", "Wallis-product estimate of pi");
    unsigned long pi_digits = cfg.digits;
    std::string pi_terms = "auto";
    std::string pi_strategy = cfg.strategy;
    bool pi_accel = false;
    unsigned pi_levels = 3;
    pi_cmd->add_option("--digits", pi_digits, "target decimal digits");
    pi_cmd->add_option("--terms", pi_terms, "number of product terms, or 'auto'");
    pi_cmd->add_option("--strategy", pi_strategy, "evaluation strategy");
    pi_cmd->add_flag("--accelerate", pi_accel, "Richardson-extrapolate the estimate");
    pi_cmd->add_option("--levels", pi_levels, "Richardson levels");
    pi_cmd->add_option("--workers", workers, "worker threads for binsplit-parallel");
    pi_cmd->add_option("--precision-bits", bits, "working precision in bits");
    pi_cmd->add_option("--format", format_str, "json|csv|text");

    auto* e_cmd = app.add_subcommand("e", "Bernoulli approximant (1+1/n)^n");
    unsigned long e_digits = cfg.digits;
    unsigned long e_n = 1000;
    e_cmd->add_option("--digits", e_digits, "target decimal digits");
    e_cmd->add_option("--n", e_n, "index n");
    e_cmd->add_option("--precision-bits", bits, "working precision in bits");
    e_cmd->add_option("--format", format_str, "json|csv|text");

    auto* verify_cmd = app.add_subcommand("verify", "verify derivation steps S1..S6");
    std::string verify_steps = "all";
    unsigned long verify_start = 0;
    unsigned verify_count = 8;
    std::string mutate;
    verify_cmd->add_option("--steps", verify_steps, "comma list of S1..S6, or 'all'");
    verify_cmd->add_option("--grid-start", verify_start, "limit-step grid start (ratio-2)");
    verify_cmd->add_option("--grid-count", verify_count, "limit-step grid point count");
    verify_cmd->add_option("--precision-bits", bits, "working precision in bits");
    verify_cmd->add_option("--format", format_str, "json|csv|text");
    verify_cmd->add_option("--mutate", mutate, "testing hook: perturb a product factor, <spec>:<delta>")
        ->group("");  // hidden

    auto* conv_cmd = app.add_subcommand("convergence", "emit a convergence table");
    std::string conv_target = "pi";
    unsigned long conv_start = 128;
    unsigned conv_count = 6;
    unsigned conv_ratio = 2;
    conv_cmd->add_option("--target", conv_target, "pi|e|gamma-ratio");
    conv_cmd->add_option("--start", conv_start, "first grid index");
    conv_cmd->add_option("--count", conv_count, "grid point count");
    conv_cmd->add_option("--ratio", conv_ratio, "grid ratio (must be 2)");
    conv_cmd->add_option("--precision-bits", bits, "working precision in bits");
    conv_cmd->add_option("--format", format_str, "json|csv|text");

    auto* bench_cmd = app.add_subcommand("bench", "benchmark product strategies");
    std::string bench_spec = "wallis";
    std::string bench_n = "10000";
    std::string bench_strategies = "naive-rational,binsplit-rational";
    unsigned bench_repeats = 3;
    bench_cmd->add_option("--spec", bench_spec, "product id");
    bench_cmd->add_option("--n", bench_n, "comma list of term counts");
    bench_cmd->add_option("--strategies", bench_strategies, "comma list of strategies");
    bench_cmd->add_option("--repeats", bench_repeats, "timing repeats (median reported)");
    bench_cmd->add_option("--workers", workers, "worker threads for binsplit-parallel");
    bench_cmd->add_option("--precision-bits", bits, "working precision in bits");
    bench_cmd->add_option("--format", format_str, "json|csv|text");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
            e.get_name() == "CallForVersion")
            return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        Format fmt = parse_format(format_str);
        if (pi_cmd->parsed())
            return run_pi(cfg, pi_digits, pi_terms, pi_strategy, pi_accel, pi_levels, workers, bits,
                          fmt);
        if (e_cmd->parsed())
            return run_e(e_digits, e_n, bits, fmt);
        if (verify_cmd->parsed())
            return run_verify(verify_steps, verify_start, verify_count, bits, mutate, fmt);
        if (conv_cmd->parsed())
            return run_convergence(conv_target, conv_start, conv_count, conv_ratio, bits, fmt);
        if (bench_cmd->parsed())
            return run_bench(bench_spec, bench_n, bench_strategies, bench_repeats, workers, bits,
                             fmt);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "e2pi: " << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "e2pi: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "e2pi: bad numeric argument: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "e2pi: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
