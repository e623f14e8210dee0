#include "seplab/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "seplab/diagnostics.hpp"
#include "seplab/rng.hpp"

namespace seplab {

namespace {

using json = nlohmann::ordered_json;

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double need_num(const json& j, const std::string& field) {
    if (!j.contains(field) || !j[field].is_number())
        throw ConfigError("field " + field + ": required number missing");
    return j[field].get<double>();
}

long long need_int(const json& j, const std::string& field) {
    if (!j.contains(field) || !j[field].is_number_integer())
        throw ConfigError("field " + field + ": required integer missing");
    return j[field].get<long long>();
}

std::string need_str(const json& j, const std::string& field) {
    if (!j.contains(field) || !j[field].is_string())
        throw ConfigError("field " + field + ": required string missing");
    return j[field].get<std::string>();
}

double opt_num(const json& j, const std::string& field, double dflt) {
    return j.contains(field) ? need_num(j, field) : dflt;
}

ModelDescriptor parse_model(const json& cfg) {
    if (!cfg.contains("model")) throw ConfigError("field model: required object missing");
    const json& m = cfg["model"];
    const std::string kind = need_str(m, "kind");
    ModelDescriptor md;
    if (kind == "iid") {
        md.kind = ModelDescriptor::Kind::Iid;
        const std::string mk = m.contains("marginal") ? need_str(m, "marginal") : "uniform01";
        if (mk == "uniform01") {
            md.marginal.kind = Marginal::Kind::Uniform01;
        } else if (mk == "gauss") {
            md.marginal.kind = Marginal::Kind::Gauss;
            const double mean = opt_num(m, "mean", 0.0);
            const double sd = opt_num(m, "sd", 1.0);
            const double shift = opt_num(m, "shift", 0.0);
            const double shift_at = opt_num(m, "shift_at", 0.5);
            if (!(sd > 0.0)) throw ConfigError("field model.sd: must be positive");
            md.marginal.mean_fn = [mean, shift, shift_at](double u) {
                return mean + (u > shift_at ? shift : 0.0);
            };
            md.marginal.sd_fn = [sd](double) { return sd; };
        } else {
            throw ConfigError("field model.marginal: unknown kind '" + mk + "'");
        }
    } else if (kind == "m_dependent") {
        md.kind = ModelDescriptor::Kind::MDependent;
        md.m = static_cast<int>(need_int(m, "m"));
        if (md.m < 0) throw ConfigError("field model.m: must be >= 0");
    } else if (kind == "tv_ar1") {
        md.kind = ModelDescriptor::Kind::TvAr1;
        const double coef = need_num(m, "coef");
        if (!(std::abs(coef) < 1.0)) throw ConfigError("field model.coef: need |coef| < 1");
        md.coef_fn = [coef](double) { return coef; };
        md.innovation_sd = opt_num(m, "innovation_sd", 1.0);
        if (!(md.innovation_sd > 0.0))
            throw ConfigError("field model.innovation_sd: must be positive");
    } else {
        throw ConfigError("field model.kind: unknown kind '" + kind + "'");
    }
    return md;
}

FunctionClass parse_class(const json& cfg) {
    FunctionClass cls;
    const std::string kind =
        cfg.contains("class") ? need_str(cfg["class"], "kind") : "halfline";
    if (kind == "halfline")
        cls.kind = FunctionClass::Kind::HalflineIndicators;
    else if (kind == "lipschitz")
        cls.kind = FunctionClass::Kind::LipschitzBall;
    else
        throw ConfigError("field class.kind: unknown kind '" + kind + "'");
    return cls;
}

int need_even_nu(const json& cfg) {
    const long long nu = need_int(cfg, "nu");
    if (nu < 2 || nu % 2 != 0)
        throw ConfigError("field nu: mixing moment experiments require an even integer >= 2, got " +
                          std::to_string(nu));
    return static_cast<int>(nu);
}

std::vector<int> need_int_list(const json& cfg, const std::string& field) {
    if (!cfg.contains(field) || !cfg[field].is_array() || cfg[field].empty())
        throw ConfigError("field " + field + ": required nonempty array missing");
    std::vector<int> out;
    for (const auto& v : cfg[field]) out.push_back(v.get<int>());
    return out;
}

std::vector<double> need_num_list(const json& cfg, const std::string& field) {
    if (!cfg.contains(field) || !cfg[field].is_array() || cfg[field].empty())
        throw ConfigError("field " + field + ": required nonempty array missing");
    std::vector<double> out;
    for (const auto& v : cfg[field]) out.push_back(v.get<double>());
    return out;
}

// Deterministic sign-flip family: w_p[k] flips with bit (p mod B) of k-1.
std::vector<std::vector<double>> sign_flip_family(int n, int size) {
    int bits = 1;
    while ((1 << bits) < n) ++bits;
    std::vector<std::vector<double>> w(size, std::vector<double>(n));
    for (int p = 0; p < size; ++p)
        for (int k = 1; k <= n; ++k)
            w[p][k - 1] = ((k - 1) >> (p % bits)) & 1 ? -1.0 : 1.0;
    return w;
}

json estimate_json(const MCEstimate& e) {
    return json{{"mean", e.mean}, {"std_error", e.std_error}, {"replicates", e.replicates}};
}

json maximal_report_json(const MaximalReport& rep) {
    json pairs = json::array();
    for (const auto& pc : rep.pairs)
        pairs.push_back(json{{"i", pc.i},
                             {"j", pc.j},
                             {"s_moment", estimate_json(pc.s_moment)},
                             {"m_moment", estimate_json(pc.m_moment)},
                             {"bound", pc.bound},
                             {"margin", pc.margin}});
    return json{{"C_hat", rep.C_hat},    {"A", rep.A},
                {"alpha", rep.alpha},    {"nu", rep.nu},
                {"pass", rep.pass},      {"inconclusive", rep.inconclusive},
                {"pairs", pairs}};
}

struct Run {
    std::filesystem::path out;
    std::uint64_t seed = 0;
    std::uint64_t config_hash = 0;

    void write_json(const std::string& name, json body) const {
        json doc{{"config_hash", config_hash}, {"seed", seed}};
        doc["report"] = std::move(body);
        std::ofstream os(out / name);
        os << doc.dump(2) << "\n";
        if (!os) throw ConfigError("output dir not writable: " + (out / name).string());
    }

    std::ofstream open_csv(const std::string& name, const std::string& header) const {
        std::ofstream os(out / name);
        os.precision(17);
        os << header << "\n";
        if (!os) throw ConfigError("output dir not writable: " + (out / name).string());
        return os;
    }
};

void cmd_simulate(const json& cfg, Run& run, long long replicates) {
    const auto model = parse_model(cfg);
    const int n = static_cast<int>(need_int(cfg, "n"));
    auto csv = run.open_csv("rows.csv", "replicate,i,value");
    for (long long r = 0; r < replicates; ++r) {
        const auto row = generate_row(model, n, rng::replicate_seed(run.seed, r));
        for (int i = 1; i <= n; ++i)
            csv << r << "," << i << "," << row.values[i - 1] << "\n";
    }
}

void cmd_verify_maximal(const json& cfg, Run& run, long long replicates) {
    WProcessSpec spec;
    spec.n = static_cast<int>(need_int(cfg, "n"));
    const int fam = static_cast<int>(need_int(cfg, "family_size"));
    if (fam < 1) throw ConfigError("field family_size: must be >= 1");
    spec.weights = sign_flip_family(spec.n, fam);
    const double nu = need_num(cfg, "nu");
    const double alpha = need_num(cfg, "alpha");
    if (!(alpha > 1.0)) throw ConfigError("field alpha: must exceed 1");
    const auto rep = verify_maximal_inequality(spec, nu, alpha, replicates, run.seed);
    run.write_json("report.json", maximal_report_json(rep));
}

void cmd_moment_fit(const json& cfg, Run& run, long long replicates) {
    const auto model = parse_model(cfg);
    const auto cls = parse_class(cfg);
    const int nu = need_even_nu(cfg);
    const double lambda = need_num(cfg, "lambda");
    const auto net = equispaced_halfline_net(static_cast<int>(need_int(cfg, "net_size")));
    const auto m_grid = need_int_list(cfg, "m_grid");
    const auto rep =
        fit_moment_constant(model, cls, net, lambda, nu, m_grid, replicates, run.seed);
    auto csv = run.open_csv("chat.csv", "m,C_hat");
    for (std::size_t i = 0; i < rep.m_values.size(); ++i)
        csv << rep.m_values[i] << "," << rep.C_hat[i] << "\n";
    run.write_json("report.json", json{{"stable", rep.stable},
                                       {"zeta_value", rep.zeta_value}});
}

void cmd_covariance(const json& cfg, Run& run, long long replicates) {
    const auto model = parse_model(cfg);
    const auto cls = parse_class(cfg);
    const int n = static_cast<int>(need_int(cfg, "n"));
    const auto f = MemberRef::of_param(need_num(cfg, "member_param"));
    const auto past = need_int_list(cfg, "past");
    const auto fut = need_int_list(cfg, "future");
    const double lambda = need_num(cfg, "lambda");
    const double M = need_num(cfg, "M");
    const auto rep = check_covariance_inequality(model, cls, f, n, past, fut, lambda, M,
                                                 replicates, run.seed);
    run.write_json("report.json", json{{"lhs", estimate_json(rep.lhs)},
                                       {"rhs", rep.rhs},
                                       {"gap", rep.gap},
                                       {"pass", rep.pass}});
}

void cmd_chaining(const json& cfg, Run& run, long long replicates) {
    const auto model = parse_model(cfg);
    const auto cls = parse_class(cfg);
    const int nu = need_even_nu(cfg);
    const double lambda = need_num(cfg, "lambda");
    const double kappa = need_num(cfg, "kappa");
    const double kmax = std::min(0.5 - 1.0 / nu, lambda / 4.0);
    if (!(kappa > 0.0 && kappa < kmax))
        throw ConfigError("field kappa: must lie in (0, " + std::to_string(kmax) + ")");
    if (cls.kind == FunctionClass::Kind::HalflineIndicators &&
        !halfline_integral_feasible(lambda, nu))
        throw ConfigError("fields lambda/nu: bracketing integral certified divergent "
                          "(lambda/(2+lambda) + 2/nu >= 1)");
    const double eta = opt_num(cfg, "eta", 1.0);
    const auto net = equispaced_halfline_net(static_cast<int>(need_int(cfg, "net_size")));
    const auto N_fn = bracketing_growth(cls);
    const auto rep = chaining_scaling_check(model, cls, net, nu, lambda, kappa, eta, N_fn,
                                            need_int_list(cfg, "m_grid"),
                                            need_num_list(cfg, "delta_grid"),
                                            replicates, run.seed);
    auto csv = run.open_csv("table.csv", "m,delta,lhs,rhs_unit,C_hat");
    for (const auto& e : rep.entries)
        csv << e.m << "," << e.delta << "," << e.lhs << "," << e.rhs1 << "," << e.C_hat
            << "\n";
    run.write_json("report.json", json{{"stable", rep.stable}});
}

void cmd_aec(const json& cfg, Run& run, long long replicates) {
    const auto model = parse_model(cfg);
    const auto cls = parse_class(cfg);
    const auto net = equispaced_halfline_net(static_cast<int>(need_int(cfg, "net_size")));
    const bool smoothed = cfg.contains("smoothed") && cfg["smoothed"].get<bool>();
    const double eps = opt_num(cfg, "eps", 0.75);
    const int time_grid = static_cast<int>(need_int(cfg, "time_grid"));
    const auto table = aec_table(model, cls, net, smoothed,
                                 need_num_list(cfg, "delta_grid"),
                                 need_int_list(cfg, "n_grid"), eps, time_grid,
                                 replicates, run.seed);
    auto csv = run.open_csv("table.csv", "delta,n,p_hat,se,split_time,split_fn");
    for (const auto& e : table.entries)
        csv << e.delta << "," << e.n << "," << e.p_hat << "," << e.se << ","
            << e.p_split_time << "," << e.p_split_fn << "\n";
}

void cmd_lipschitz(const json& cfg, Run& run, long long replicates) {
    const auto model = parse_model(cfg);
    const auto cls = parse_class(cfg);
    const int n = static_cast<int>(need_int(cfg, "n"));
    const auto f = MemberRef::of_param(opt_num(cfg, "member_param", 0.5));
    const int num_pairs = static_cast<int>(need_int(cfg, "num_pairs"));
    if (num_pairs < 2) throw ConfigError("field num_pairs: must be >= 2");
    // interval pairs (0, 0.25] vs (0, 0.25 + d] with d geometric in [1/n, 0.5]
    std::vector<IntervalPair> ipairs;
    const double lo = 1.0 / n, hi = 0.5;
    for (int k = 0; k < num_pairs; ++k) {
        const double d = lo * std::pow(hi / lo, static_cast<double>(k) / (num_pairs - 1));
        ipairs.push_back({0.0, 0.25, 0.0, std::min(1.0, 0.25 + d)});
    }
    const double p = opt_num(cfg, "p", 2.0);
    const auto rep = lipschitz_increments(model, cls, f, ipairs, {}, 0.0, 0.5, n, p,
                                          replicates, run.seed);
    auto csv = run.open_csv("pairs.csv", "sym_diff,norm");
    for (std::size_t k = 0; k < rep.set_norms.size(); ++k)
        csv << rep.set_dists[k] << "," << rep.set_norms[k] << "\n";
    run.write_json("report.json", json{{"C1", rep.C1},
                                       {"C2", rep.C2},
                                       {"set_slope", rep.set_slope},
                                       {"degenerate_flagged", rep.degenerate_flagged}});
}

void cmd_bracketing(const json& cfg, Run& run) {
    const double eps = need_num(cfg, "epsilon");
    const auto cov = build_brackets_halfline(eps);
    auto csv = run.open_csv("cover.csv", "k,x_k");
    for (std::size_t k = 0; k < cov.grid.size(); ++k) csv << k << "," << cov.grid[k] << "\n";
    const double lambda = need_num(cfg, "lambda");
    const double nu = need_num(cfg, "nu");
    const double eta = opt_num(cfg, "eta", 1.0);
    FunctionClass cls;  // halfline
    const auto N_fn = bracketing_growth(cls);
    const auto integ = bracketing_integral(N_fn, lambda, nu, eta);
    run.write_json("integral.json",
                   json{{"divergent", integ.divergent},
                        {"value", integ.value},
                        {"error_estimate", integ.error_estimate},
                        {"bracket_count", cov.size()}});
}

void cmd_pipeline(const json& cfg, Run& run) {
    const auto model = parse_model(cfg);
    const auto cls = parse_class(cfg);
    const int nu = need_even_nu(cfg);
    const double lambda = need_num(cfg, "lambda");
    const double kappa = need_num(cfg, "kappa");
    const double K = opt_num(cfg, "K", 1.0);
    const double eta = opt_num(cfg, "eta", 1.0);
    const auto rep = pipeline_check(model, cls, nu, lambda, kappa, K, eta, run.seed);
    run.write_json("verdict.json", json::parse(rep.to_json()));
}

void cmd_cusum(const json& cfg, Run& run, long long replicates) {
    const auto model = parse_model(cfg);
    const auto cls = parse_class(cfg);
    const int n = static_cast<int>(need_int(cfg, "n"));
    const auto net = equispaced_halfline_net(static_cast<int>(need_int(cfg, "net_size")));
    const auto ctx = model_context(model, n);
    auto csv = run.open_csv("stats.csv", "replicate,stat");
    for (long long r = 0; r < replicates; ++r) {
        const auto row = generate_row(model, n, rng::replicate_seed(run.seed, r));
        csv << r << "," << changepoint_cusum(row, cls, net, ctx) << "\n";
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"sequential empirical process laboratory"};
    std::string subcommand, config_path, out_dir = ".";
    std::uint64_t seed = 0;
    long long replicates_override = -1;
    int threads = 1;
    app.add_option("subcommand", subcommand,
                   "simulate | verify-maximal | moment-fit | covariance | "
                   "chaining-scaling | aec | lipschitz | bracketing | pipeline | cusum")
        ->required();
    app.add_option("--config", config_path, "JSON config file")->required();
    app.add_option("--seed", seed, "master seed");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--replicates", replicates_override, "override replicate count");
    app.add_option("--threads", threads, "worker pool size")->check(CLI::PositiveNumber);

    std::vector<const char*> argv{"seplab"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    const auto t0 = std::chrono::steady_clock::now();
    try {
        std::ifstream is(config_path);
        if (!is) throw ConfigError("config file not readable: " + config_path);
        json cfg = json::parse(is);

        Run run;
        run.out = out_dir;
        run.seed = seed;
        run.config_hash = fnv1a(cfg.dump());
        std::error_code ec;
        std::filesystem::create_directories(run.out, ec);
        if (ec) throw ConfigError("output dir not writable: " + out_dir);

        long long replicates = replicates_override >= 0
                                   ? replicates_override
                                   : static_cast<long long>(opt_num(cfg, "replicates", 1000));
        if (replicates < 1) throw ConfigError("field replicates: must be >= 1");

        if (subcommand == "simulate")
            cmd_simulate(cfg, run, replicates);
        else if (subcommand == "verify-maximal")
            cmd_verify_maximal(cfg, run, replicates);
        else if (subcommand == "moment-fit")
            cmd_moment_fit(cfg, run, replicates);
        else if (subcommand == "covariance")
            cmd_covariance(cfg, run, replicates);
        else if (subcommand == "chaining-scaling")
            cmd_chaining(cfg, run, replicates);
        else if (subcommand == "aec")
            cmd_aec(cfg, run, replicates);
        else if (subcommand == "lipschitz")
            cmd_lipschitz(cfg, run, replicates);
        else if (subcommand == "bracketing")
            cmd_bracketing(cfg, run);
        else if (subcommand == "pipeline")
            cmd_pipeline(cfg, run);
        else if (subcommand == "cusum")
            cmd_cusum(cfg, run, replicates);
        else
            throw ConfigError("unknown subcommand '" + subcommand + "'");

        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
        json manifest{{"subcommand", subcommand},
                      {"config_hash", run.config_hash},
                      {"seed", run.seed},
                      {"versions", json{{"seplab", "1.0.0"}}},
                      {"wall_time_ms", ms}};
        std::ofstream os(run.out / "manifest.json");
        os << manifest.dump(2) << "\n";
        if (!os) throw ConfigError("output dir not writable: " + out_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace seplab
