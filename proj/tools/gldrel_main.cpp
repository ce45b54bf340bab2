// Command-line front end: distribution curves, system reliability, MTTF,
// sensitivity grids, Monte Carlo estimates, and the self-verification
// battery, emitted as CSV or JSON.
//
// Exit codes: 0 success, 1 verification failure, 2 usage/config error,
// 3 numerical error.

#include <cstdint>
#include <fstream>
#include <functional>
#include <limits>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gldrel/gldrel.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Resolved run configuration; field names double as the JSON config keys.
struct RunSpec {
    std::string command;
    std::optional<double> alpha, beta, theta, gamma, eta;
    std::string switch_kind = "perfect";
    std::optional<double> switch_alpha, switch_beta, switch_theta, switch_gamma, switch_eta;
    std::vector<int> n_list;
    double mission = 100.0;
    int grid = 201;
    std::string param;
    std::vector<double> values;
    std::string target = "mttf";
    long long reps = 1'000'000;
    std::uint64_t seed = 42;
    std::string format = "csv";
    std::string out;
    int threads = 0;
};

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> parts;
    std::string cur;
    std::stringstream ss(s);
    while (std::getline(ss, cur, ',')) parts.push_back(cur);
    return parts;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    for (const auto& p : split_commas(s)) {
        try {
            std::size_t pos = 0;
            const int v = std::stoi(p, &pos);
            if (pos != p.size()) throw std::invalid_argument(p);
            out.push_back(v);
        } catch (const std::exception&) {
            throw UsageError("invalid integer '" + p + "' in list '" + s + "'");
        }
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    for (const auto& p : split_commas(s)) {
        try {
            std::size_t pos = 0;
            const double v = std::stod(p, &pos);
            if (pos != p.size()) throw std::invalid_argument(p);
            out.push_back(v);
        } catch (const std::exception&) {
            throw UsageError("invalid number '" + p + "' in list '" + s + "'");
        }
    }
    return out;
}

/// Raw CLI capture: strings for list-valued flags, presence tracked by CLI11.
struct RawArgs {
    RunSpec spec;
    std::string n_text, values_text, config_path;
};

void apply_config_file(RunSpec& spec, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file '" + path + "'");
    json cfg;
    try {
        in >> cfg;
    } catch (const json::exception& e) {
        throw UsageError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    if (!cfg.is_object()) throw UsageError("config file must hold a JSON object");

    auto num = [&](const json& v, const char* key) -> double {
        if (!v.is_number()) throw UsageError(std::string("config key '") + key + "' must be a number");
        return v.get<double>();
    };
    for (const auto& [key, v] : cfg.items()) {
        if (key == "command") {
            // The subcommand given on the command line always wins; the key
            // is accepted so a full RunSpec echo can be replayed.
            continue;
        } else if (key == "alpha") spec.alpha = num(v, "alpha");
        else if (key == "beta") spec.beta = num(v, "beta");
        else if (key == "theta") spec.theta = num(v, "theta");
        else if (key == "gamma") spec.gamma = num(v, "gamma");
        else if (key == "eta") spec.eta = num(v, "eta");
        else if (key == "switch") spec.switch_kind = v.get<std::string>();
        else if (key == "switch_alpha") spec.switch_alpha = num(v, "switch_alpha");
        else if (key == "switch_beta") spec.switch_beta = num(v, "switch_beta");
        else if (key == "switch_theta") spec.switch_theta = num(v, "switch_theta");
        else if (key == "switch_gamma") spec.switch_gamma = num(v, "switch_gamma");
        else if (key == "switch_eta") spec.switch_eta = num(v, "switch_eta");
        else if (key == "n") {
            if (v.is_array()) {
                spec.n_list.clear();
                for (const auto& e : v) spec.n_list.push_back(e.get<int>());
            } else if (v.is_string()) {
                spec.n_list = parse_int_list(v.get<std::string>());
            } else if (v.is_number_integer()) {
                spec.n_list = {v.get<int>()};
            } else throw UsageError("config key 'n' must be an array, integer or comma string");
        } else if (key == "values") {
            if (v.is_array()) {
                spec.values.clear();
                for (const auto& e : v) spec.values.push_back(e.get<double>());
            } else if (v.is_string()) {
                spec.values = parse_double_list(v.get<std::string>());
            } else throw UsageError("config key 'values' must be an array or comma string");
        } else if (key == "mission") spec.mission = num(v, "mission");
        else if (key == "grid") spec.grid = static_cast<int>(num(v, "grid"));
        else if (key == "param") spec.param = v.get<std::string>();
        else if (key == "target") spec.target = v.get<std::string>();
        else if (key == "reps") spec.reps = static_cast<long long>(num(v, "reps"));
        else if (key == "seed") spec.seed = v.get<std::uint64_t>();
        else if (key == "format") spec.format = v.get<std::string>();
        else if (key == "out") spec.out = v.get<std::string>();
        else if (key == "threads") spec.threads = static_cast<int>(num(v, "threads"));
        else throw UsageError("unknown config key '" + key + "'");
    }
}

gldrel::GldParams component_params(const RunSpec& s) {
    if (!s.alpha || !s.beta || !s.theta || !s.gamma || !s.eta)
        throw UsageError("missing distribution parameters: --alpha --beta --theta --gamma --eta are required");
    return gldrel::GldParams(*s.alpha, *s.beta, *s.theta, *s.gamma, *s.eta);
}

gldrel::GldParams switch_params(const RunSpec& s) {
    if (!s.switch_alpha || !s.switch_beta || !s.switch_theta || !s.switch_gamma || !s.switch_eta)
        throw UsageError("switch gld requires --switch-alpha --switch-beta --switch-theta "
                         "--switch-gamma --switch-eta");
    return gldrel::GldParams(*s.switch_alpha, *s.switch_beta, *s.switch_theta,
                             *s.switch_gamma, *s.switch_eta);
}

void validate_common(const RunSpec& s) {
    if (!(s.mission > 0.0)) throw UsageError("--mission must be positive");
    if (s.grid < 2) throw UsageError("--grid must be at least 2");
    if (s.format != "csv" && s.format != "json")
        throw UsageError("--format must be csv or json");
    if (s.switch_kind != "perfect" && s.switch_kind != "gld")
        throw UsageError("--switch must be perfect or gld");
    if (s.reps < 100) throw UsageError("--reps must be at least 100");
    if (s.threads < 0) throw UsageError("--threads must be non-negative");
}

gldrel::ParamId parse_param_id(const std::string& name) {
    if (name == "alpha") return gldrel::ParamId::alpha;
    if (name == "beta") return gldrel::ParamId::beta;
    if (name == "theta") return gldrel::ParamId::theta;
    if (name == "gamma") return gldrel::ParamId::gamma_w;
    if (name == "eta") return gldrel::ParamId::eta;
    throw UsageError("--param must be one of alpha|beta|theta|gamma|eta");
}

// ---- output ---------------------------------------------------------------

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> text_rows;  // csv form
    std::vector<json> json_rows;                      // same rows, typed
};

json spec_echo(const RunSpec& s) {
    json meta;
    meta["command"] = s.command;
    if (s.alpha) meta["alpha"] = *s.alpha;
    if (s.beta) meta["beta"] = *s.beta;
    if (s.theta) meta["theta"] = *s.theta;
    if (s.gamma) meta["gamma"] = *s.gamma;
    if (s.eta) meta["eta"] = *s.eta;
    meta["switch"] = s.switch_kind;
    if (s.switch_kind == "gld") {
        if (s.switch_alpha) meta["switch_alpha"] = *s.switch_alpha;
        if (s.switch_beta) meta["switch_beta"] = *s.switch_beta;
        if (s.switch_theta) meta["switch_theta"] = *s.switch_theta;
        if (s.switch_gamma) meta["switch_gamma"] = *s.switch_gamma;
        if (s.switch_eta) meta["switch_eta"] = *s.switch_eta;
    }
    if (!s.n_list.empty()) meta["n"] = s.n_list;
    meta["mission"] = s.mission;
    meta["grid"] = s.grid;
    if (!s.param.empty()) meta["param"] = s.param;
    if (!s.values.empty()) meta["values"] = s.values;
    meta["target"] = s.target;
    meta["reps"] = s.reps;
    meta["seed"] = s.seed;
    meta["format"] = s.format;
    if (!s.out.empty()) meta["out"] = s.out;
    meta["threads"] = s.threads;
    meta["version"] = gldrel::kVersion;
    return meta;
}

void emit(const RunSpec& s, const Table& table, json extra_meta = json::object()) {
    std::ostringstream body;
    if (s.format == "csv") {
        for (std::size_t i = 0; i < table.header.size(); ++i) {
            if (i) body << ',';
            body << gldrel::csv_field(table.header[i]);
        }
        body << '\n';
        for (const auto& row : table.text_rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) body << ',';
                body << gldrel::csv_field(row[i]);
            }
            body << '\n';
        }
    } else {
        json doc;
        doc["meta"] = spec_echo(s);
        for (const auto& [k, v] : extra_meta.items()) doc["meta"][k] = v;
        doc["data"] = table.json_rows;
        body << doc.dump(2) << '\n';
    }
    if (s.out.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream f(s.out, std::ios::binary);
        if (!f) throw UsageError("cannot open output file '" + s.out + "'");
        f << body.str();
    }
}

// ---- commands --------------------------------------------------------------

std::vector<double> time_grid(double mission, int points) {
    std::vector<double> g(points);
    for (int i = 0; i < points; ++i)
        g[i] = i + 1 == points ? mission : mission * i / (points - 1);
    return g;
}

int cmd_dist(const RunSpec& s) {
    const auto p = component_params(s);
    Table tab;
    tab.header = {"t", "pdf", "cdf", "survival", "hazard"};
    for (double t : time_grid(s.mission, s.grid)) {
        const double f = gldrel::pdf(p, t);
        const double sv = gldrel::survival(p, t);
        double hz;
        try {
            hz = gldrel::hazard(p, t);
        } catch (const std::exception&) {
            hz = std::numeric_limits<double>::quiet_NaN(); // diverging or underflowed
        }
        tab.text_rows.push_back({gldrel::format_sig(t), gldrel::format_sig(f),
                                 gldrel::format_sig(1.0 - sv), gldrel::format_sig(sv),
                                 gldrel::format_sig(hz)});
        tab.json_rows.push_back(
            {{"t", t}, {"pdf", f}, {"cdf", 1.0 - sv}, {"survival", sv}, {"hazard", hz}});
    }
    emit(s, tab);
    return kExitOk;
}

int cmd_sysrel(const RunSpec& s) {
    const auto p = component_params(s);
    if (s.n_list.empty()) throw UsageError("--n is required for sysrel");
    const bool imperfect = s.switch_kind == "gld";
    std::optional<gldrel::GldParams> sw;
    if (imperfect) sw = switch_params(s);

    std::vector<gldrel::Curve> perfect, lower;
    for (int n : s.n_list) {
        perfect.push_back(gldrel::reliability_curve_perfect(p, n, s.mission, s.grid, s.threads));
        if (imperfect)
            lower.push_back(gldrel::reliability_curve_imperfect_lower(p, *sw, n, s.mission,
                                                                      s.grid, s.threads));
    }

    Table tab;
    tab.header = {"t"};
    for (std::size_t k = 0; k < s.n_list.size(); ++k) {
        const std::string base = "R_n" + std::to_string(s.n_list[k]);
        if (imperfect) {
            tab.header.push_back(base + "_perfect");
            tab.header.push_back(base + "_lower");
        } else {
            tab.header.push_back(base);
        }
    }
    const auto& grid = perfect.front().grid;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::vector<std::string> row{gldrel::format_sig(grid[i].t)};
        json jrow{{"t", grid[i].t}};
        for (std::size_t k = 0; k < s.n_list.size(); ++k) {
            row.push_back(gldrel::format_sig(perfect[k].grid[i].value));
            jrow[tab.header[imperfect ? 1 + 2 * k : 1 + k]] = perfect[k].grid[i].value;
            if (imperfect) {
                row.push_back(gldrel::format_sig(lower[k].grid[i].value));
                jrow[tab.header[2 + 2 * k]] = lower[k].grid[i].value;
            }
        }
        tab.text_rows.push_back(std::move(row));
        tab.json_rows.push_back(std::move(jrow));
    }
    emit(s, tab);
    return kExitOk;
}

int cmd_mttf(const RunSpec& s) {
    const auto p = component_params(s);
    if (s.n_list.empty()) throw UsageError("--n is required for mttf");
    Table tab;
    tab.header = {"n", "mttf"};
    for (int n : s.n_list) {
        gldrel::SystemConfig cfg(n, p);
        const double v = gldrel::mttf_perfect(cfg);
        tab.text_rows.push_back({std::to_string(n), gldrel::format_fixed(v, 4)});
        tab.json_rows.push_back({{"n", n}, {"mttf", v}});
    }
    emit(s, tab);
    return kExitOk;
}

int cmd_sens(const RunSpec& s) {
    const auto p = component_params(s);
    if (s.n_list.empty()) throw UsageError("--n is required for sens");
    if (s.param.empty()) throw UsageError("--param is required for sens");
    if (s.values.empty()) throw UsageError("--values is required for sens");
    if (s.target != "mttf" && s.target != "reliability")
        throw UsageError("--target must be mttf or reliability");

    const auto pid = parse_param_id(s.param);
    const auto target =
        s.target == "mttf" ? gldrel::SensTarget::mttf : gldrel::SensTarget::reliability;
    gldrel::SystemConfig base(s.n_list.front(), p);
    const auto table =
        gldrel::sensitivity_table(target, pid, s.values, s.n_list, base, s.mission);

    const bool fixed4 = target == gldrel::SensTarget::mttf;
    Table tab;
    tab.header = {s.param};
    for (int n : s.n_list) tab.header.push_back("n=" + std::to_string(n));
    for (std::size_t r = 0; r < table.param_values.size(); ++r) {
        std::vector<std::string> row{gldrel::format_sig(table.param_values[r])};
        json jrow{{s.param, table.param_values[r]}};
        for (std::size_t c = 0; c < table.n_values.size(); ++c) {
            const double v = table.at(r, c);
            row.push_back(fixed4 ? gldrel::format_fixed(v, 4) : gldrel::format_sig(v));
            jrow[tab.header[c + 1]] = v;
        }
        tab.text_rows.push_back(std::move(row));
        tab.json_rows.push_back(std::move(jrow));
    }
    json extra;
    extra["method"] = fixed4 ? "analytic" : "finite_difference";
    if (!fixed4) extra["t_eval"] = s.mission;
    emit(s, tab, extra);
    return kExitOk;
}

int cmd_sim(const RunSpec& s) {
    const auto p = component_params(s);
    if (s.n_list.size() != 1)
        throw UsageError("sim requires exactly one value in --n");
    gldrel::SimConfig sim;
    sim.replications = static_cast<std::size_t>(s.reps);
    sim.seed = s.seed;
    sim.t_grid = time_grid(s.mission, s.grid);

    gldrel::SimResult r;
    if (s.switch_kind == "gld") {
        gldrel::SystemConfig cfg(s.n_list.front(), p, gldrel::ImperfectSwitch{switch_params(s)});
        r = gldrel::simulate_imperfect(cfg, sim, s.threads);
    } else {
        gldrel::SystemConfig cfg(s.n_list.front(), p);
        r = gldrel::simulate_perfect(cfg, sim, s.threads);
    }

    Table tab;
    tab.header = {"t", "estimate", "stderr"};
    for (const auto& e : r.estimates) {
        tab.text_rows.push_back({gldrel::format_sig(e.t), gldrel::format_sig(e.reliability),
                                 gldrel::format_sig(e.std_error)});
        tab.json_rows.push_back(
            {{"t", e.t}, {"estimate", e.reliability}, {"stderr", e.std_error}});
    }
    tab.text_rows.push_back(
        {"mttf", gldrel::format_sig(r.mttf_value), gldrel::format_sig(r.mttf_std_error)});
    json extra;
    extra["mttf_estimate"] = {{"value", r.mttf_value}, {"stderr", r.mttf_std_error}};
    extra["replications_used"] = r.replications_used;
    emit(s, tab, extra);
    return kExitOk;
}

int cmd_verify(const RunSpec& s) {
    gldrel::VerifyOptions opt;
    opt.replications = static_cast<std::size_t>(s.reps);
    opt.seed = s.seed;
    opt.threads = s.threads;
    const auto suites = gldrel::run_verification(opt);
    int failed = 0;
    for (const auto& suite : suites) {
        if (suite.passed()) {
            std::cout << "[PASS] " << suite.name << " (" << suite.checks << " checks)\n";
        } else {
            ++failed;
            std::cout << "[FAIL] " << suite.name << " (" << suite.failures << " of "
                      << suite.checks << " checks failed)\n";
            for (const auto& note : suite.notes) std::cout << "       " << note << "\n";
        }
    }
    std::cout << (failed == 0 ? "verification passed: " : "verification FAILED: ")
              << (suites.size() - failed) << "/" << suites.size() << " suites passed\n";
    return failed == 0 ? kExitOk : kExitVerifyFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reliability analysis of 1-out-of-n cold-standby systems with "
                 "generalized Lindley lifetimes"};
    app.set_version_flag("--version", gldrel::kVersion);
    app.require_subcommand(1);

    RawArgs raw;
    std::vector<std::pair<CLI::Option*, std::function<void()>>> overrides;

    auto add_common = [&](CLI::App* sub) {
        auto track = [&overrides](CLI::Option* o, std::function<void()> fn) {
            overrides.emplace_back(o, std::move(fn));
            return o;
        };
        // Values are captured into temporaries; the tracked lambdas replay
        // command-line values over whatever the config file set.
        static double a, b, th, ga, et, sa, sb, sth, sga, set_, mission;
        static int grid, threads;
        static long long reps;
        static std::uint64_t seed;
        static std::string swk, param, target, format, out, ntext, vtext;
        track(sub->add_option("--alpha", a, "component shape alpha"), [&raw] { raw.spec.alpha = a; });
        track(sub->add_option("--beta", b, "component shape beta"), [&raw] { raw.spec.beta = b; });
        track(sub->add_option("--theta", th, "component rate theta"), [&raw] { raw.spec.theta = th; });
        track(sub->add_option("--gamma", ga, "component weight gamma"), [&raw] { raw.spec.gamma = ga; });
        track(sub->add_option("--eta", et, "component exponent eta"), [&raw] { raw.spec.eta = et; });
        track(sub->add_option("--switch", swk, "switch model: perfect|gld"),
              [&raw] { raw.spec.switch_kind = swk; });
        track(sub->add_option("--switch-alpha", sa, "switch shape alpha"),
              [&raw] { raw.spec.switch_alpha = sa; });
        track(sub->add_option("--switch-beta", sb, "switch shape beta"),
              [&raw] { raw.spec.switch_beta = sb; });
        track(sub->add_option("--switch-theta", sth, "switch rate theta"),
              [&raw] { raw.spec.switch_theta = sth; });
        track(sub->add_option("--switch-gamma", sga, "switch weight gamma"),
              [&raw] { raw.spec.switch_gamma = sga; });
        track(sub->add_option("--switch-eta", set_, "switch exponent eta"),
              [&raw] { raw.spec.switch_eta = set_; });
        track(sub->add_option("--n", ntext, "component counts, comma separated"),
              [&raw] { raw.spec.n_list = parse_int_list(ntext); });
        track(sub->add_option("--mission", mission, "mission time"),
              [&raw] { raw.spec.mission = mission; });
        track(sub->add_option("--grid", grid, "grid points over [0, mission]"),
              [&raw] { raw.spec.grid = grid; });
        track(sub->add_option("--param", param, "sensitivity parameter"),
              [&raw] { raw.spec.param = param; });
        track(sub->add_option("--values", vtext, "sensitivity parameter values, comma separated"),
              [&raw] { raw.spec.values = parse_double_list(vtext); });
        track(sub->add_option("--target", target, "sensitivity target: mttf|reliability"),
              [&raw] { raw.spec.target = target; });
        track(sub->add_option("--reps", reps, "Monte Carlo replications"),
              [&raw] { raw.spec.reps = reps; });
        track(sub->add_option("--seed", seed, "random seed"), [&raw] { raw.spec.seed = seed; });
        track(sub->add_option("--format", format, "output format: csv|json"),
              [&raw] { raw.spec.format = format; });
        track(sub->add_option("--out", out, "output path (default: stdout)"),
              [&raw] { raw.spec.out = out; });
        track(sub->add_option("--threads", threads, "worker threads (0 = all cores)"),
              [&raw] { raw.spec.threads = threads; });
        sub->add_option("--config", raw.config_path,
                        "JSON config file; command-line flags override it");
    };

    for (const char* name : {"dist", "sysrel", "mttf", "sens", "sim", "verify"})
        add_common(app.add_subcommand(name, ""));

    app.get_subcommand("dist")->description("density, cdf, survival and hazard over a time grid");
    app.get_subcommand("sysrel")->description("system reliability curves per component count");
    app.get_subcommand("mttf")->description("mean time to failure per component count");
    app.get_subcommand("sens")->description("sensitivity table of mttf or reliability");
    app.get_subcommand("sim")->description("Monte Carlo reliability and MTTF estimates");
    app.get_subcommand("verify")->description("run the built-in cross-check battery");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        raw.spec.command = sub->get_name();
        if (!raw.config_path.empty()) apply_config_file(raw.spec, raw.config_path);
        for (auto& [opt, replay] : overrides)
            if (opt->count() > 0) replay();
        validate_common(raw.spec);

        const std::string& cmd = raw.spec.command;
        if (cmd == "dist") return cmd_dist(raw.spec);
        if (cmd == "sysrel") return cmd_sysrel(raw.spec);
        if (cmd == "mttf") return cmd_mttf(raw.spec);
        if (cmd == "sens") return cmd_sens(raw.spec);
        if (cmd == "sim") return cmd_sim(raw.spec);
        if (cmd == "verify") return cmd_verify(raw.spec);
        throw UsageError("unknown command '" + cmd + "'");
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const gldrel::numerical_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    }
}
