#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ibnet/contagion.hpp"
#include "ibnet/errors.hpp"
#include "ibnet/io.hpp"
#include "ibnet/metrics.hpp"
#include "ibnet/netgen.hpp"
#include "ibnet/reconstruct.hpp"
#include "ibnet/sweep.hpp"
#include "ibnet/types.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitIo = 2;
constexpr int kExitSolver = 3;

struct Grid {
    double min = 0.0;
    double max = 0.0;
    std::size_t steps = 0;
};

// "min:max:steps"
Grid parse_grid(const std::string& s) {
    Grid g;
    const auto c1 = s.find(':');
    const auto c2 = s.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw CLI::ValidationError("grid must be min:max:steps, got " + s);
    g.min = std::stod(s.substr(0, c1));
    g.max = std::stod(s.substr(c1 + 1, c2 - c1 - 1));
    g.steps = std::stoul(s.substr(c2 + 1));
    if (g.steps == 0 || !(g.max > g.min))
        throw CLI::ValidationError("grid needs max > min and steps >= 1: " + s);
    return g;
}

std::uint64_t ensure_seed(std::uint64_t seed, bool seed_given) {
    if (seed_given) return seed;
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::string timestamp_utc() {
    char buf[32];
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_manifest(const std::string& out_dir, const std::string& subcommand,
                    const nlohmann::json& config, const std::vector<std::string>& outputs) {
    nlohmann::json m;
    m["subcommand"] = subcommand;
    m["config"] = config;
    m["seed"] = config.contains("seed") ? config["seed"] : nlohmann::json();
    m["code_version"] = kVersion;
    m["timestamp"] = timestamp_utc();
    m["outputs"] = outputs;
    m["config_hash"] = ibnet::config_hash(config.dump());
    std::ofstream f(out_dir + "/manifest.json");
    if (!f) throw ibnet::IoError("cannot write manifest in " + out_dir);
    f << m.dump(2) << '\n';
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw ibnet::IoError("cannot create output directory " + dir);
}

// ---- subcommand runners; each returns a process exit code ------------------

int run_generate(const nlohmann::json& cfg) {
    const std::string out = cfg["out"];
    ensure_dir(out);
    ibnet::RngStream rng(cfg["seed"], cfg["stream_id"]);
    const ibnet::GroundTruth gt =
        ibnet::random_ground_truth(cfg["n"], cfg["kappa"], cfg["lambda"], rng);
    ibnet::write_matrix_csv(out + "/exposures.csv", gt.exposures);
    ibnet::write_matrix_csv(out + "/adjacency.csv", gt.adjacency.m);
    ibnet::write_balance_csv(out + "/balance.csv", gt.balance);
    write_manifest(out, "generate", cfg,
                   {"exposures.csv", "adjacency.csv", "balance.csv"});
    return kExitOk;
}

int run_reconstruct(const nlohmann::json& cfg) {
    const std::string out = cfg["out"];
    ensure_dir(out);
    const ibnet::BalanceSheet bs = ibnet::read_balance_csv(cfg["balance"]);
    const std::string method = cfg["method"];
    ibnet::SolverConfig scfg;
    scfg.delta = cfg["delta"];
    scfg.max_iterations = cfg["max_iterations"];

    ibnet::ReconstructionReport rep;
    if (method == "me") {
        rep.solution = ibnet::me_dense(bs.normalized());
        rep.converged = true;
        rep.deviation = ibnet::constraint_deviation(rep.solution, bs.normalized());
    } else if (method == "ras") {
        rep = ibnet::ras(bs, scfg);
    } else {
        ibnet::AdjacencyMatrix q;
        if (!cfg["adjacency"].get<std::string>().empty()) {
            q.m = ibnet::read_matrix_csv(cfg["adjacency"]);
        } else if (cfg["kappa"].get<double>() > 0.0) {
            ibnet::RngStream rng(cfg["seed"], cfg["stream_id"]);
            q = ibnet::random_adjacency(bs.n, cfg["kappa"], rng);
        } else {
            std::cerr << "sras needs --adjacency or --kappa\n";
            return kExitConfig;
        }
        rep = ibnet::sras(bs, q, scfg);
    }

    ibnet::write_matrix_csv(out + "/solution.csv", rep.solution);
    ibnet::write_report_json(out + "/report.json", method, bs.n, scfg.delta, rep,
                             "solution.csv");
    write_manifest(out, "reconstruct", cfg, {"solution.csv", "report.json"});
    return rep.converged ? kExitOk : kExitSolver;
}

int run_stress(const nlohmann::json& cfg) {
    const std::string out = cfg["out"];
    ensure_dir(out);
    const ibnet::ExposureMatrix x = ibnet::read_matrix_csv(cfg["exposures"]);
    const Grid tg = parse_grid(cfg["theta_grid"]);
    const double kappa = ibnet::connectivity(ibnet::theta_pattern(x));

    std::vector<ibnet::ContagionRecord> records;
    for (std::size_t t = 0; t <= tg.steps; ++t) {
        const double theta =
            tg.min + (tg.max - tg.min) * static_cast<double>(t) / static_cast<double>(tg.steps);
        const ibnet::StressConfig scfg =
            ibnet::StressConfig::homogeneous(x.n(), cfg["capital"], theta);
        double xi_min = 1.0, xi_max = 0.0, xi_sum = 0.0;
        for (std::size_t origin = 0; origin < x.n(); ++origin) {
            const double xi = ibnet::cascade(x, scfg, origin).fraction;
            xi_sum += xi;
            xi_min = std::min(xi_min, xi);
            xi_max = std::max(xi_max, xi);
        }
        ibnet::ContagionRecord rec;
        rec.theta = theta;
        rec.kappa = kappa;
        rec.arm = ibnet::Arm::TRUE_MATRIX;
        rec.xi_mean = xi_sum / static_cast<double>(x.n());
        rec.xi_min = xi_min;
        rec.xi_max = xi_max;
        records.push_back(rec);
    }
    ibnet::write_contagion_csv(out + "/stress.csv", records);
    write_manifest(out, "stress", cfg, {"stress.csv"});
    return kExitOk;
}

int run_sweep_feasibility(const nlohmann::json& cfg) {
    const std::string out = cfg["out"];
    ensure_dir(out);
    ibnet::SweepPlan plan;
    plan.n_values = cfg["n"].get<std::vector<std::size_t>>();
    if (!cfg["kappa_grid"].get<std::string>().empty()) {
        const Grid g = parse_grid(cfg["kappa_grid"]);
        plan.kappa_min = g.min;
        plan.kappa_max = g.max;
        plan.steps = g.steps;
    } else {
        plan.steps = cfg["steps"];
    }
    plan.trials = cfg["trials"];
    plan.delta = cfg["delta"];
    plan.seed = cfg["seed"];
    plan.epsilon_star = cfg["epsilon_star"];

    const ibnet::FeasibilitySweepResult res = ibnet::sweep_feasibility(plan);
    ibnet::write_feasibility_csv(out + "/feasibility.csv", res.records);
    write_manifest(out, "sweep-feasibility", cfg, {"feasibility.csv"});

    const std::size_t runs =
        plan.n_values.size() * (plan.steps + 1) * plan.trials;
    if (res.solver_failures * 10 > runs) {
        std::cerr << "solver failure budget exceeded: " << res.solver_failures << "/" << runs
                  << " runs hit the iteration cap\n";
        return kExitSolver;
    }
    return kExitOk;
}

int run_sweep_contagion(const nlohmann::json& cfg) {
    const std::string out = cfg["out"];
    ensure_dir(out);
    ibnet::ContagionPlan plan;
    plan.n = cfg["n"];
    plan.kappas = cfg["kappa"].get<std::vector<double>>();
    std::sort(plan.kappas.begin(), plan.kappas.end());
    const Grid tg = parse_grid(cfg["theta_grid"]);
    plan.theta_min = tg.min;
    plan.theta_max = tg.max;
    plan.theta_steps = tg.steps;
    plan.trials = cfg["trials"];
    plan.capital = cfg["capital"];
    plan.lambda = cfg["lambda"];
    plan.delta = cfg["delta"];
    plan.seed = cfg["seed"];
    plan.use_true_support = cfg["use_true_support"];

    const ibnet::ContagionSweepResult res = ibnet::sweep_contagion(plan);
    ibnet::write_contagion_csv(out + "/contagion.csv", res.records);
    write_manifest(out, "sweep-contagion", cfg, {"contagion.csv"});

    const std::size_t runs = plan.kappas.size() * plan.trials * 2;  // ras + sras per trial
    if (res.solver_failures * 10 > runs) {
        std::cerr << "solver failure budget exceeded: " << res.solver_failures << "/" << runs
                  << " reconstruction runs hit the iteration cap\n";
        return kExitSolver;
    }
    return kExitOk;
}

int run_fit(const nlohmann::json& cfg) {
    const std::string out = cfg["out"];
    ensure_dir(out);
    const std::vector<ibnet::ContagionRecord> records =
        ibnet::read_contagion_csv(cfg["input"]);
    const std::vector<ibnet::ArmFit> fits = ibnet::fit_sweep(records);
    ibnet::write_fits_json(out + "/fits.json", fits);
    write_manifest(out, "fit", cfg, {"fits.json"});
    return kExitOk;
}

int dispatch(const std::string& subcommand, const nlohmann::json& cfg) {
    if (subcommand == "generate") return run_generate(cfg);
    if (subcommand == "reconstruct") return run_reconstruct(cfg);
    if (subcommand == "stress") return run_stress(cfg);
    if (subcommand == "sweep-feasibility") return run_sweep_feasibility(cfg);
    if (subcommand == "sweep-contagion") return run_sweep_contagion(cfg);
    if (subcommand == "fit") return run_fit(cfg);
    std::cerr << "unknown subcommand in manifest: " << subcommand << "\n";
    return kExitConfig;
}

int run_replay(const std::string& manifest_path, const std::string& out_override, bool force) {
    std::ifstream f(manifest_path);
    if (!f) throw ibnet::IoError("cannot read manifest " + manifest_path);
    nlohmann::json m = nlohmann::json::parse(f);
    nlohmann::json cfg = m["config"];
    const std::uint64_t expect = m["config_hash"];
    if (ibnet::config_hash(cfg.dump()) != expect && !force) {
        std::cerr << "manifest config hash mismatch (edited config?); use --force to replay "
                     "anyway\n";
        return kExitConfig;
    }
    if (!out_override.empty()) cfg["out"] = out_override;
    return dispatch(m["subcommand"], cfg);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"interbank network reconstruction and contagion experiments"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "draw a random ground-truth network");
    std::size_t gen_n = 50;
    double gen_kappa = 0.2, gen_lambda = 0.0;
    std::uint64_t gen_seed = 0, gen_stream = 0;
    std::string gen_out = "out";
    gen->add_option("--n", gen_n, "bank count");
    gen->add_option("--kappa", gen_kappa, "connectivity")->required();
    gen->add_option("--lambda", gen_lambda, "total volume (default n)");
    auto* gen_seed_opt = gen->add_option("--seed", gen_seed, "rng seed");
    gen->add_option("--stream-id", gen_stream, "rng stream id");
    gen->add_option("--out", gen_out, "output directory");

    // reconstruct
    auto* rec = app.add_subcommand("reconstruct", "reconstruct exposures from marginals");
    std::string rec_method, rec_balance, rec_adjacency, rec_out = "out";
    double rec_delta = 1e-7, rec_kappa = 0.0;
    std::size_t rec_maxit = 100000;
    std::uint64_t rec_seed = 0, rec_stream = 0;
    rec->add_option("--method", rec_method, "me | ras | sras")
        ->required()
        ->check(CLI::IsMember({"me", "ras", "sras"}));
    rec->add_option("--balance", rec_balance, "balance sheet csv")->required();
    rec->add_option("--adjacency", rec_adjacency, "support csv (sras)");
    rec->add_option("--kappa", rec_kappa, "draw a random support at this connectivity (sras)");
    rec->add_option("--delta", rec_delta, "convergence tolerance");
    rec->add_option("--max-iterations", rec_maxit, "iteration cap");
    auto* rec_seed_opt = rec->add_option("--seed", rec_seed, "rng seed");
    rec->add_option("--stream-id", rec_stream, "rng stream id");
    rec->add_option("--out", rec_out, "output directory");

    // stress
    auto* str = app.add_subcommand("stress", "default cascade over a theta grid");
    std::string str_exposures, str_theta = "0:1:50", str_out = "out";
    double str_capital = 0.01;
    str->add_option("--exposures", str_exposures, "exposure matrix csv")->required();
    str->add_option("--theta-grid", str_theta, "min:max:steps");
    str->add_option("--capital", str_capital, "homogeneous initial capital");
    str->add_option("--out", str_out, "output directory");

    // sweep-feasibility
    auto* swf = app.add_subcommand("sweep-feasibility", "mean deviation over a kappa grid");
    std::vector<std::size_t> swf_n = {25, 50};
    std::string swf_grid, swf_out = "out";
    std::size_t swf_steps = 100, swf_trials = 100;
    double swf_delta = 1e-7, swf_eps_star = 0.005;
    std::uint64_t swf_seed = 0;
    swf->add_option("--n", swf_n, "network sizes");
    swf->add_option("--kappa-grid", swf_grid, "min:max:steps (default 1/n:1-1/n:steps)");
    swf->add_option("--steps", swf_steps, "grid intervals when --kappa-grid is not given");
    swf->add_option("--trials", swf_trials, "trials per grid point");
    swf->add_option("--delta", swf_delta, "solver tolerance");
    auto* swf_seed_opt = swf->add_option("--seed", swf_seed, "rng seed");
    swf->add_option("--epsilon-star", swf_eps_star, "feasibility threshold");
    swf->add_option("--out", swf_out, "output directory");

    // sweep-contagion
    auto* swc = app.add_subcommand("sweep-contagion", "stress tests for true/me/sme matrices");
    std::size_t swc_n = 50, swc_trials = 100;
    std::vector<double> swc_kappas = {0.05, 0.1, 0.2};
    std::string swc_theta = "0:1:50", swc_out = "out";
    double swc_capital = 0.01, swc_lambda = 0.0, swc_delta = 1e-7;
    std::uint64_t swc_seed = 0;
    bool swc_true_support = false;
    swc->add_option("--n", swc_n, "bank count");
    swc->add_option("--kappa", swc_kappas, "connectivity values");
    swc->add_option("--theta-grid", swc_theta, "min:max:steps");
    swc->add_option("--trials", swc_trials, "trials per kappa");
    swc->add_option("--capital", swc_capital, "homogeneous initial capital");
    swc->add_option("--lambda", swc_lambda, "total volume (default n)");
    swc->add_option("--delta", swc_delta, "solver tolerance");
    auto* swc_seed_opt = swc->add_option("--seed", swc_seed, "rng seed");
    swc->add_flag("--use-true-support", swc_true_support,
                  "sme reconstructs on the true pattern instead of a fresh draw");
    swc->add_option("--out", swc_out, "output directory");

    // fit
    auto* fit = app.add_subcommand("fit", "logistic fits of a contagion csv");
    std::string fit_input, fit_out = "out";
    fit->add_option("--input", fit_input, "contagion csv")->required();
    fit->add_option("--out", fit_out, "output directory");

    // replay
    auto* rep = app.add_subcommand("replay", "re-run a recorded manifest");
    std::string rep_manifest, rep_out;
    bool rep_force = false;
    rep->add_option("manifest", rep_manifest, "manifest.json path")->required();
    rep->add_option("--out", rep_out, "override output directory");
    rep->add_flag("--force", rep_force, "replay even if the config hash mismatches");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            nlohmann::json cfg;
            cfg["n"] = gen_n;
            cfg["kappa"] = gen_kappa;
            cfg["lambda"] = gen_lambda > 0.0 ? gen_lambda : static_cast<double>(gen_n);
            cfg["seed"] = ensure_seed(gen_seed, gen_seed_opt->count() > 0);
            cfg["stream_id"] = gen_stream;
            cfg["out"] = gen_out;
            return run_generate(cfg);
        }
        if (rec->parsed()) {
            nlohmann::json cfg;
            cfg["method"] = rec_method;
            cfg["balance"] = rec_balance;
            cfg["adjacency"] = rec_adjacency;
            cfg["kappa"] = rec_kappa;
            cfg["delta"] = rec_delta;
            cfg["max_iterations"] = rec_maxit;
            cfg["seed"] = ensure_seed(rec_seed, rec_seed_opt->count() > 0);
            cfg["stream_id"] = rec_stream;
            cfg["out"] = rec_out;
            return run_reconstruct(cfg);
        }
        if (str->parsed()) {
            nlohmann::json cfg;
            cfg["exposures"] = str_exposures;
            cfg["theta_grid"] = str_theta;
            cfg["capital"] = str_capital;
            cfg["out"] = str_out;
            return run_stress(cfg);
        }
        if (swf->parsed()) {
            nlohmann::json cfg;
            cfg["n"] = swf_n;
            cfg["kappa_grid"] = swf_grid;
            cfg["steps"] = swf_steps;
            cfg["trials"] = swf_trials;
            cfg["delta"] = swf_delta;
            cfg["seed"] = ensure_seed(swf_seed, swf_seed_opt->count() > 0);
            cfg["epsilon_star"] = swf_eps_star;
            cfg["out"] = swf_out;
            return run_sweep_feasibility(cfg);
        }
        if (swc->parsed()) {
            nlohmann::json cfg;
            cfg["n"] = swc_n;
            cfg["kappa"] = swc_kappas;
            cfg["theta_grid"] = swc_theta;
            cfg["trials"] = swc_trials;
            cfg["capital"] = swc_capital;
            cfg["lambda"] = swc_lambda;
            cfg["delta"] = swc_delta;
            cfg["seed"] = ensure_seed(swc_seed, swc_seed_opt->count() > 0);
            cfg["use_true_support"] = swc_true_support;
            cfg["out"] = swc_out;
            return run_sweep_contagion(cfg);
        }
        if (fit->parsed()) {
            nlohmann::json cfg;
            cfg["input"] = fit_input;
            cfg["out"] = fit_out;
            return run_fit(cfg);
        }
        if (rep->parsed()) return run_replay(rep_manifest, rep_out, rep_force);
    } catch (const ibnet::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const ibnet::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
