// qport: build QUBOs for cardinality-constrained multi-criteria portfolio
// selection, run warm-started QAOA with an XY mixer under trajectory noise,
// extrapolate to the zero-noise limit, benchmark classical baselines, and
// reproduce the statistical comparison from recorded run tables.

#include "qport/classical.hpp"
#include "qport/data.hpp"
#include "qport/ising.hpp"
#include "qport/qaoa.hpp"
#include "qport/qubo.hpp"
#include "qport/rng.hpp"
#include "qport/serialize.hpp"
#include "qport/stats.hpp"
#include "qport/zne.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using qport::Json;

namespace {

struct ExperimentConfig {
    std::string name = "experiment";
    // data source: either a scores CSV (with sibling matrices) or a synthetic spec
    std::optional<fs::path> scores_csv;
    int synth_n = 20;
    std::uint64_t synth_seed = 42;
    bool use_synth = true;

    qport::ObjectiveWeights weights;
    int k = 5;
    double penalty_weight = 100.0;
    double threshold = 0.01;

    double gamma = -1.0;  // < 0: warm-start heuristic value
    double beta = 0.20;
    int layers = 1;
    std::string topology = "ring";
    std::string convention = "quarter";

    double noise_p2 = 0.01;
    int trajectories = 256;
    std::vector<double> lambdas{1.0, 2.0, 3.0};
    std::int64_t shots = 8192;
    std::vector<std::uint64_t> seeds{42};

    int bootstrap_b = 100;
    std::uint64_t bootstrap_seed = 42;

    std::int64_t sa_max_evaluations = 100000;
    double sa_wall_clock_seconds = 0.0;
    bool sa_greedy_start = false;
    std::int64_t random_iterations = 10000;

    fs::path out_dir;  // resolved from config / QPORT_OUT_DIR / "out"

    Json raw;  // canonical parsed config, hashed into outputs
};

double json_num(const Json& j, const char* key, double fallback) {
    return j.contains(key) ? j.at(key).get<double>() : fallback;
}

ExperimentConfig load_config(const fs::path& path) {
    ExperimentConfig cfg;
    const Json j = qport::read_json_file(path);
    cfg.raw = j;
    cfg.name = j.value("name", std::string{"experiment"});

    if (j.contains("data")) {
        cfg.use_synth = false;
        cfg.scores_csv = fs::path(j.at("data").at("scores_csv").get<std::string>());
    } else if (j.contains("synth")) {
        cfg.use_synth = true;
        cfg.synth_n = j.at("synth").value("n", 20);
        cfg.synth_seed = j.at("synth").value("seed", std::uint64_t{42});
    } else {
        throw std::invalid_argument(path.string() + ": config needs a 'data' or 'synth' section");
    }

    if (j.contains("weights")) {
        const Json& w = j.at("weights");
        cfg.weights.w_carbon = json_num(w, "carbon", cfg.weights.w_carbon);
        cfg.weights.w_biodiversity = json_num(w, "biodiversity", cfg.weights.w_biodiversity);
        cfg.weights.w_social = json_num(w, "social", cfg.weights.w_social);
        cfg.weights.lambda_carbon = json_num(w, "lambda_carbon", cfg.weights.lambda_carbon);
        cfg.weights.lambda_biodiversity =
            json_num(w, "lambda_biodiversity", cfg.weights.lambda_biodiversity);
        cfg.weights.lambda_social = json_num(w, "lambda_social", cfg.weights.lambda_social);
        cfg.weights.n_biomes = w.value("n_biomes", cfg.weights.n_biomes);
    }
    cfg.weights.validate();

    cfg.k = j.value("k", cfg.k);
    cfg.penalty_weight = json_num(j, "penalty_weight", cfg.penalty_weight);
    cfg.threshold = json_num(j, "threshold", cfg.threshold);

    if (j.contains("qaoa")) {
        const Json& q = j.at("qaoa");
        cfg.gamma = json_num(q, "gamma", cfg.gamma);
        cfg.beta = json_num(q, "beta", cfg.beta);
        cfg.layers = q.value("layers", cfg.layers);
        cfg.topology = q.value("topology", cfg.topology);
        cfg.convention = q.value("convention", cfg.convention);
    }
    if (j.contains("noise")) {
        const Json& n = j.at("noise");
        cfg.noise_p2 = json_num(n, "p2", cfg.noise_p2);
        cfg.trajectories = n.value("trajectories", cfg.trajectories);
    }
    if (j.contains("lambdas")) cfg.lambdas = j.at("lambdas").get<std::vector<double>>();
    cfg.shots = j.value("shots", cfg.shots);
    if (j.contains("seeds")) cfg.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    if (cfg.seeds.empty()) throw std::invalid_argument("config seeds must be non-empty");

    if (j.contains("bootstrap")) {
        cfg.bootstrap_b = j.at("bootstrap").value("b", cfg.bootstrap_b);
        cfg.bootstrap_seed = j.at("bootstrap").value("seed", cfg.bootstrap_seed);
    }
    if (j.contains("sa")) {
        const Json& s = j.at("sa");
        cfg.sa_max_evaluations = s.value("max_evaluations", cfg.sa_max_evaluations);
        cfg.sa_wall_clock_seconds = json_num(s, "wall_clock_seconds", cfg.sa_wall_clock_seconds);
        cfg.sa_greedy_start = s.value("greedy_start", cfg.sa_greedy_start);
    }
    cfg.random_iterations = j.value("random_iterations", cfg.random_iterations);

    if (j.contains("out_dir")) {
        cfg.out_dir = fs::path(j.at("out_dir").get<std::string>());
    } else if (const char* env = std::getenv("QPORT_OUT_DIR")) {
        cfg.out_dir = fs::path(env);
    } else {
        cfg.out_dir = "out";
    }
    return cfg;
}

qport::MunicipalityTable load_table_for(const ExperimentConfig& cfg) {
    if (cfg.use_synth) return qport::synthesize_table(cfg.synth_n, cfg.synth_seed);
    return qport::load_table(*cfg.scores_csv);
}

qport::QaoaParams qaoa_params_for(const ExperimentConfig& cfg, const qport::MunicipalityTable& table) {
    qport::QaoaParams params = qport::warm_params(table, cfg.weights);
    if (cfg.gamma >= 0.0) params.gamma = cfg.gamma;
    params.beta = cfg.beta;
    params.layers = cfg.layers;
    if (cfg.topology == "ring") {
        params.topology = qport::MixerTopology::ring;
    } else if (cfg.topology == "complete") {
        params.topology = qport::MixerTopology::complete;
    } else {
        throw std::invalid_argument("unknown mixer topology: " + cfg.topology);
    }
    if (cfg.convention == "quarter") {
        params.convention = qport::MixerConvention::quarter_generator;
    } else if (cfg.convention == "full") {
        params.convention = qport::MixerConvention::full_generator;
    } else {
        throw std::invalid_argument("unknown mixer convention: " + cfg.convention);
    }
    return params;
}

Json provenance(const ExperimentConfig& cfg) {
    return Json{{"version", qport::kVersion},
                {"config_hash", qport::config_hash(cfg.raw)},
                {"seeds", cfg.seeds}};
}

fs::path experiment_dir(const ExperimentConfig& cfg) { return cfg.out_dir / cfg.name; }

void ensure_writable(const fs::path& file, bool force) {
    if (!force && fs::exists(file)) {
        throw std::runtime_error(file.string() +
                                 " already exists; outputs are write-once (use --force to replace)");
    }
    fs::create_directories(file.parent_path());
}

Json qaoa_params_to_json(const qport::QaoaParams& params) {
    return Json{{"gamma", params.gamma},
                {"beta", params.beta},
                {"layers", params.layers},
                {"topology", params.topology == qport::MixerTopology::ring ? "ring" : "complete"},
                {"convention",
                 params.convention == qport::MixerConvention::quarter_generator ? "quarter" : "full"}};
}

// ---- subcommand bodies ----

int cmd_synth(int n, std::uint64_t seed, const fs::path& out) {
    const qport::MunicipalityTable table = qport::synthesize_table(n, seed);
    qport::save_table(table, out);
    std::printf("wrote %d-candidate table to %s\n", n, out.string().c_str());
    return 0;
}

int cmd_build(const ExperimentConfig& cfg, bool force) {
    const qport::MunicipalityTable table = load_table_for(cfg);
    const qport::QuboProblem qubo =
        qport::build_qubo(table, cfg.weights, cfg.k, cfg.penalty_weight, cfg.threshold);
    Json out = qport::qubo_to_json(qubo);
    out["provenance"] = provenance(cfg);
    const fs::path file = experiment_dir(cfg) / "qubo.json";
    ensure_writable(file, force);
    qport::write_json_file(file, out);

    Json ising = qport::ising_to_json(qport::qubo_to_ising(qubo));
    ising["provenance"] = provenance(cfg);
    const fs::path ising_file = experiment_dir(cfg) / "ising.json";
    ensure_writable(ising_file, force);
    qport::write_json_file(ising_file, ising);

    std::printf("qubo: n=%lld k=%d q_max=%.6f dropped=%lld constant=%.6f -> %s\n",
                static_cast<long long>(qubo.n), qubo.k, qubo.scale,
                static_cast<long long>(qubo.dropped_count), qubo.constant, file.string().c_str());
    return 0;
}

int cmd_solve(const ExperimentConfig& cfg, const std::string& method, const std::vector<int>& ks,
              bool force) {
    const qport::MunicipalityTable table = load_table_for(cfg);
    const fs::path dir = experiment_dir(cfg);

    if (!ks.empty()) {
        if (method != "greedy") throw std::invalid_argument("--ks is only valid with --method greedy");
        const qport::KSweepResult sweep = qport::greedy_k_sweep(table, cfg.weights, ks);
        Json runs = Json::array();
        for (const auto& r : sweep.results) {
            Json item = qport::solver_result_to_json(r);
            item["k"] = r.portfolio.cardinality();
            runs.push_back(std::move(item));
        }
        Json out{{"method", "greedy_k_sweep"},
                 {"results", std::move(runs)},
                 {"nested", sweep.nested},
                 {"provenance", provenance(cfg)}};
        const fs::path file = dir / "solve_greedy_sweep.json";
        ensure_writable(file, force);
        qport::write_json_file(file, out);
        for (const auto& r : sweep.results) {
            std::printf("greedy k=%d score=%.4f\n", r.portfolio.cardinality(), r.score);
        }
        std::printf("nested=%s -> %s\n", sweep.nested ? "true" : "false", file.string().c_str());
        return 0;
    }

    Json out;
    std::string label = method;
    if (method == "greedy") {
        out = qport::solver_result_to_json(qport::greedy(table, cfg.weights, cfg.k));
    } else if (method == "sa") {
        qport::AnnealConfig anneal;
        anneal.max_evaluations = cfg.sa_max_evaluations;
        anneal.wall_clock_seconds = cfg.sa_wall_clock_seconds;
        anneal.greedy_start = cfg.sa_greedy_start;
        const bool wall = anneal.max_evaluations <= 0 && anneal.wall_clock_seconds > 0.0;
        out = qport::solver_result_to_json(
            qport::simulated_annealing(table, cfg.weights, cfg.k, anneal, cfg.seeds.front()), wall);
        label = "simulated_annealing";
    } else if (method == "random") {
        const qport::RandomSearchResult r =
            qport::random_search(table, cfg.weights, cfg.k, cfg.random_iterations, cfg.seeds.front());
        out = qport::solver_result_to_json(r.best);
        out["mean"] = r.mean;
        out["sd"] = r.sd;
        out["iterations"] = cfg.random_iterations;
        label = "random_search";
    } else if (method == "exact") {
        out = qport::solver_result_to_json(qport::enumerate_exact(table, cfg.weights, cfg.k));
    } else {
        throw std::invalid_argument("unknown method: " + method +
                                    " (expected greedy|sa|random|exact)");
    }
    out["provenance"] = provenance(cfg);
    const fs::path file = dir / ("solve_" + method + ".json");
    ensure_writable(file, force);
    qport::write_json_file(file, out);
    std::printf("%s score=%.4f bitstring=%s -> %s\n", label.c_str(), out["score"].get<double>(),
                out["bitstring"].get<std::string>().c_str(), file.string().c_str());
    return 0;
}

int cmd_qaoa(const ExperimentConfig& cfg, bool force) {
    const qport::MunicipalityTable table = load_table_for(cfg);
    const qport::QuboProblem qubo =
        qport::build_qubo(table, cfg.weights, cfg.k, cfg.penalty_weight, cfg.threshold);
    const qport::IsingModel model = qport::qubo_to_ising(qubo);
    const qport::QaoaParams params = qaoa_params_for(cfg, table);
    const qport::SolverResult warm = qport::greedy(table, cfg.weights, cfg.k);

    const qport::Statevector state = qport::run_qaoa(model, params, warm.portfolio);
    const double energy = qport::expectation(state, model);
    const qport::ShotRecord record = qport::sample_shots(state, cfg.shots, cfg.seeds.front());
    const qport::Portfolio mode = qport::mode_bitstring(record, cfg.k);

    Json out{{"params", qaoa_params_to_json(params)},
             {"warm_start", qport::to_bitstring(warm.portfolio)},
             {"expectation_energy", energy},
             {"expectation_score", qport::objective_from_energy(qubo, energy)},
             {"feasible_weight", qport::subspace_weight(state, cfg.k)},
             {"feasible_shot_rate", qport::feasible_shot_rate(record, cfg.k)},
             {"shot_record", qport::shot_record_to_json(record)},
             {"mode_bitstring", qport::to_bitstring(mode)},
             {"mode_score", qport::objective_score(table, cfg.weights, mode)},
             {"provenance", provenance(cfg)}};
    const fs::path file = experiment_dir(cfg) / "qaoa.json";
    ensure_writable(file, force);
    qport::write_json_file(file, out);
    std::printf("qaoa: energy=%.6f score=%.4f feasible=%.4f -> %s\n", energy,
                out["expectation_score"].get<double>(),
                out["feasible_shot_rate"].get<double>(), file.string().c_str());
    return 0;
}

int cmd_zne(const ExperimentConfig& cfg, bool force) {
    const qport::MunicipalityTable table = load_table_for(cfg);
    const qport::QuboProblem qubo =
        qport::build_qubo(table, cfg.weights, cfg.k, cfg.penalty_weight, cfg.threshold);
    const qport::IsingModel model = qport::qubo_to_ising(qubo);
    const qport::QaoaParams params = qaoa_params_for(cfg, table);
    const qport::SolverResult warm = qport::greedy(table, cfg.weights, cfg.k);
    if (cfg.lambdas.size() != 3) {
        throw std::invalid_argument("the extrapolation protocol needs exactly three lambdas");
    }

    const qport::Statevector ideal = qport::run_qaoa(model, params, warm.portfolio);
    const double ideal_energy = qport::expectation(ideal, model);
    // run-level scores average the reporting objective over feasible shots;
    // the H_C expectation is recorded alongside as a diagnostic
    const auto score_of = [&](const qport::ShotRecord& r) {
        return qport::feasible_score_expectation(r, table, cfg.weights, cfg.k);
    };

    const fs::path dir = experiment_dir(cfg);
    Json summaries = Json::array();
    for (const std::uint64_t seed : cfg.seeds) {
        std::vector<qport::ShotRecord> records;
        Json per_lambda = Json::array();
        for (const double lambda : cfg.lambdas) {
            qport::NoiseConfig noise;
            noise.two_qubit_depolarizing_prob = cfg.noise_p2;
            noise.fold_factor = lambda;
            // one stream per seed, shared by all fold levels: error events of
            // lower levels recur identically under higher ones
            noise.seed = qport::Rng::derive_stream(seed, 1001);
            noise.trajectories = cfg.trajectories;
            qport::ShotRecord record = qport::noisy_run(model, params, warm.portfolio, noise, cfg.shots);
            per_lambda.push_back(Json{{"lambda", lambda},
                                      {"expectation_energy", qport::shot_expectation(record, model)},
                                      {"score", score_of(record)},
                                      {"feasible_shot_rate", qport::feasible_shot_rate(record, cfg.k)},
                                      {"shot_record", qport::shot_record_to_json(record)}});
            records.push_back(std::move(record));
        }
        const qport::ZneEstimate est =
            qport::zne_estimate(records, cfg.lambdas, score_of, cfg.bootstrap_b, cfg.bootstrap_seed);

        Json run{{"seed", seed},
                 {"ideal", Json{{"energy", ideal_energy},
                                {"score", qport::objective_from_energy(qubo, ideal_energy)}}},
                 {"per_lambda", std::move(per_lambda)},
                 {"zne", qport::zne_estimate_to_json(est)},
                 {"provenance", provenance(cfg)}};
        try {
            const qport::Portfolio mode = qport::mode_bitstring(records.front(), cfg.k);
            run["mode"] = Json{{"bitstring", qport::to_bitstring(mode)},
                               {"score", qport::objective_score(table, cfg.weights, mode)},
                               {"jaccard_to_greedy", qport::jaccard(mode, warm.portfolio)}};
        } catch (const std::exception& e) {
            run["mode"] = Json{{"error", e.what()}};
        }
        const fs::path file = dir / "runs" / ("run_" + std::to_string(seed) + ".json");
        ensure_writable(file, force);
        qport::write_json_file(file, run);
        summaries.push_back(Json{{"seed", seed},
                                 {"linear_e0", est.linear_e0},
                                 {"quadratic_e0", est.quadratic_e0},
                                 {"richardson_e0", est.richardson_e0},
                                 {"linear_r2", est.linear_r2},
                                 {"values", est.values}});
        std::printf("seed %llu: values=[%.4f %.4f %.4f] quad_e0=%.4f rich_e0=%.4f\n",
                    static_cast<unsigned long long>(seed), est.values[0], est.values[1],
                    est.values[2], est.quadratic_e0, est.richardson_e0);
    }
    Json out{{"greedy_score", warm.score},
             {"ideal_score", qport::objective_from_energy(qubo, ideal_energy)},
             {"runs", std::move(summaries)},
             {"provenance", provenance(cfg)}};
    const fs::path file = dir / "zne.json";
    ensure_writable(file, force);
    qport::write_json_file(file, out);
    std::printf("-> %s\n", file.string().c_str());
    return 0;
}

// ---- report building ----

struct ReportInput {
    std::vector<double> zne_scores;
    std::vector<double> raw_scores;
    std::vector<double> valid_rates;
    std::vector<double> days;
    std::vector<std::string> labels;   // backend or seed label per run
    std::vector<double> jaccards;      // only the recorded ones
    std::optional<double> baseline;    // greedy reference score
    std::string baseline_method = "greedy";
    // per-run three-level values when available (replay lambda_scores or zne runs)
    std::vector<std::array<double, 3>> lambda_scores;
};

ReportInput report_input_from_replay(const fs::path& path) {
    const qport::ReplayFile file = qport::load_replay(path);
    ReportInput in;
    in.baseline = file.baseline_score;
    if (!file.baseline_method.empty()) in.baseline_method = file.baseline_method;
    for (const auto& r : file.runs) {
        in.zne_scores.push_back(r.zne_score);
        in.raw_scores.push_back(r.raw_score);
        in.valid_rates.push_back(r.valid_rate);
        in.days.push_back(r.day);
        in.labels.push_back(r.backend);
        if (r.jaccard) in.jaccards.push_back(*r.jaccard);
        if (r.lambda_scores) in.lambda_scores.push_back(*r.lambda_scores);
    }
    return in;
}

ReportInput report_input_from_dir(const fs::path& dir) {
    ReportInput in;
    const fs::path zne_file = dir / "zne.json";
    if (!fs::exists(zne_file)) {
        throw std::invalid_argument("no zne.json under " + dir.string() +
                                    "; run the zne command first or use --replay");
    }
    const Json zne = qport::read_json_file(zne_file);
    for (const auto& run : zne.at("runs")) {
        in.zne_scores.push_back(run.at("quadratic_e0").get<double>());
        const auto values = run.at("values").get<std::vector<double>>();
        in.raw_scores.push_back(values.front());
        in.labels.push_back("seed " + std::to_string(run.at("seed").get<std::uint64_t>()));
        if (values.size() == 3) in.lambda_scores.push_back({values[0], values[1], values[2]});
    }
    for (const auto& run : zne.at("runs")) {
        const fs::path run_file =
            dir / "runs" / ("run_" + std::to_string(run.at("seed").get<std::uint64_t>()) + ".json");
        if (!fs::exists(run_file)) continue;
        const Json detail = qport::read_json_file(run_file);
        double mean_valid = 0.0;
        int count = 0;
        for (const auto& pl : detail.at("per_lambda")) {
            mean_valid += pl.at("feasible_shot_rate").get<double>();
            ++count;
        }
        if (count) in.valid_rates.push_back(mean_valid / count);
        if (detail.contains("mode") && detail["mode"].contains("jaccard_to_greedy")) {
            in.jaccards.push_back(detail["mode"]["jaccard_to_greedy"].get<double>());
        }
    }
    in.baseline = zne.at("greedy_score").get<double>();
    return in;
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double sd_of(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double m = mean_of(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

int cmd_report(const ReportInput& in, const Json& prov, const fs::path& json_file,
               const fs::path& text_file, bool force) {
    Json report;
    report["provenance"] = prov;
    std::string text;
    char line[256];

    const std::size_t n = in.zne_scores.size();
    if (n == 0) throw std::invalid_argument("report: no runs found");

    // method comparison
    Json methods = Json::array();
    if (in.baseline) {
        methods.push_back(Json{{"method", in.baseline_method}, {"score", *in.baseline}});
    }
    methods.push_back(Json{{"method", "qaoa_raw"},
                           {"mean", mean_of(in.raw_scores)},
                           {"sd", sd_of(in.raw_scores)}});
    methods.push_back(Json{{"method", "qaoa_zne"},
                           {"mean", mean_of(in.zne_scores)},
                           {"sd", sd_of(in.zne_scores)}});
    report["methods"] = methods;

    text += "method comparison\n";
    if (in.baseline) {
        std::snprintf(line, sizeof(line), "  %-12s %8.2f\n", in.baseline_method.c_str(), *in.baseline);
        text += line;
    }
    std::snprintf(line, sizeof(line), "  %-12s %8.2f +- %.2f\n", "qaoa raw", mean_of(in.raw_scores),
                  sd_of(in.raw_scores));
    text += line;
    std::snprintf(line, sizeof(line), "  %-12s %8.2f +- %.2f\n", "qaoa zne", mean_of(in.zne_scores),
                  sd_of(in.zne_scores));
    text += line;

    // run details
    Json runs = Json::array();
    text += "\nrun details\n";
    for (std::size_t i = 0; i < n; ++i) {
        Json run{{"label", in.labels[i]},
                 {"raw_score", in.raw_scores[i]},
                 {"zne_score", in.zne_scores[i]}};
        if (i < in.valid_rates.size()) run["valid_rate"] = in.valid_rates[i];
        runs.push_back(run);
        std::snprintf(line, sizeof(line), "  %zu  %-12s raw=%7.2f zne=%7.2f", i + 1,
                      in.labels[i].c_str(), in.raw_scores[i], in.zne_scores[i]);
        text += line;
        if (i < in.valid_rates.size()) {
            std::snprintf(line, sizeof(line), " valid=%5.1f%%", 100.0 * in.valid_rates[i]);
            text += line;
        }
        text += '\n';
    }
    report["runs"] = runs;

    // extrapolation reliability across runs
    if (!in.lambda_scores.empty()) {
        std::vector<double> lin, quad, rich, r2;
        for (const auto& v : in.lambda_scores) {
            const std::vector<std::pair<double, double>> pts{{1, v[0]}, {2, v[1]}, {3, v[2]}};
            const qport::LinearFit fit = qport::extrapolate_linear(pts);
            lin.push_back(fit.e0);
            r2.push_back(fit.r2);
            quad.push_back(qport::extrapolate_quadratic(pts));
            rich.push_back(qport::richardson(v[0], v[1], v[2]));
        }
        report["zne_reliability"] = Json{
            {"linear", Json{{"mean", mean_of(lin)}, {"sd", sd_of(lin)}, {"r2_mean", mean_of(r2)}}},
            {"quadratic", Json{{"mean", mean_of(quad)}, {"sd", sd_of(quad)}, {"r2_mean", nullptr}}},
            {"richardson", Json{{"mean", mean_of(rich)}, {"sd", sd_of(rich)}, {"r2_mean", nullptr}}}};
        text += "\nextrapolation reliability (per-run three-level values)\n";
        std::snprintf(line, sizeof(line), "  linear     %8.2f +- %5.2f (r2 %.3f)\n", mean_of(lin),
                      sd_of(lin), mean_of(r2));
        text += line;
        std::snprintf(line, sizeof(line), "  quadratic  %8.2f +- %5.2f\n", mean_of(quad), sd_of(quad));
        text += line;
        std::snprintf(line, sizeof(line), "  richardson %8.2f +- %5.2f\n", mean_of(rich), sd_of(rich));
        text += line;
    } else {
        report["zne_reliability"] = "unavailable (no per-run three-level values)";
        text += "\nextrapolation reliability: unavailable (no per-run three-level values)\n";
    }

    // inferential block
    if (in.baseline && n >= 2) {
        try {
            const qport::ComparisonReport cmp = qport::compare_to_baseline(in.zne_scores, *in.baseline);
            report["comparison"] = qport::comparison_report_to_json(cmp);
            std::snprintf(line, sizeof(line),
                          "\nzne vs %s: mean_diff=%.2f t(%d)=%.2f p=%.4f d=%.2f ci=[%.2f, %.2f]\n",
                          in.baseline_method.c_str(), cmp.mean_diff, cmp.df, cmp.t_stat,
                          cmp.p_one_sided, cmp.cohen_d, cmp.ci95[0], cmp.ci95[1]);
            text += line;
            std::snprintf(line, sizeof(line), "wilcoxon W=%.0f p=%.6f\n", cmp.wilcoxon_w,
                          cmp.wilcoxon_p);
            text += line;
        } catch (const std::exception& e) {
            report["comparison"] = Json{{"error", e.what()}};
            text += std::string("\ncomparison unavailable: ") + e.what() + '\n';
        }
        const auto boot = qport::run_bootstrap_mean(in.zne_scores, 100, 42);
        report["bootstrap_mean_ci"] = boot;
        std::snprintf(line, sizeof(line), "bootstrap mean ci=[%.2f, %.2f]\n", boot[0], boot[1]);
        text += line;
        if (n >= 3) {
            Json loo = Json::array();
            for (const auto& entry : qport::leave_one_out(in.zne_scores, *in.baseline)) {
                Json e{{"excluded", entry.excluded}};
                if (entry.report) {
                    e["report"] = qport::comparison_report_to_json(*entry.report);
                } else {
                    e["error"] = entry.error;
                }
                loo.push_back(std::move(e));
            }
            report["leave_one_out"] = std::move(loo);
        }
    } else {
        report["comparison"] = "unavailable (need a baseline and at least two runs)";
        text += "\ncomparison unavailable (need a baseline and at least two runs)\n";
    }

    // temporal stability
    if (in.days.size() == n && n >= 3) {
        const qport::SpearmanResult sp = qport::spearman(in.zne_scores, in.days);
        report["spearman_day"] = Json{{"rho", sp.rho}, {"p_two_sided", sp.p_two_sided}};
        std::snprintf(line, sizeof(line), "spearman(zne, day): rho=%.3f p=%.3f\n", sp.rho,
                      sp.p_two_sided);
        text += line;
    } else {
        report["spearman_day"] = "unavailable";
    }

    // backend comparison over exactly two groups
    {
        std::vector<double> group_a, group_b;
        std::string name_a, name_b;
        for (std::size_t i = 0; i < n; ++i) {
            if (name_a.empty() || in.labels[i] == name_a) {
                name_a = in.labels[i];
                group_a.push_back(in.zne_scores[i]);
            } else if (name_b.empty() || in.labels[i] == name_b) {
                name_b = in.labels[i];
                group_b.push_back(in.zne_scores[i]);
            } else {
                group_a.clear();
                break;
            }
        }
        if (!group_a.empty() && !group_b.empty()) {
            const qport::MannWhitneyResult mw = qport::mann_whitney_u(group_a, group_b);
            report["mann_whitney"] =
                Json{{"groups", {name_a, name_b}}, {"u", mw.u}, {"p_two_sided", mw.p_two_sided}};
            std::snprintf(line, sizeof(line), "mann-whitney %s vs %s: U=%.1f p=%.3f\n",
                          name_a.c_str(), name_b.c_str(), mw.u, mw.p_two_sided);
            text += line;
        } else {
            report["mann_whitney"] = "unavailable (need exactly two groups)";
        }
    }

    if (!in.jaccards.empty()) {
        report["jaccard_mean"] = mean_of(in.jaccards);
        std::snprintf(line, sizeof(line), "mean overlap with baseline: %.3f (n=%zu)\n",
                      mean_of(in.jaccards), in.jaccards.size());
        text += line;
    }
    if (!in.valid_rates.empty()) {
        report["valid_rate_mean"] = mean_of(in.valid_rates);
    }

    ensure_writable(json_file, force);
    qport::write_json_file(json_file, report);
    ensure_writable(text_file, force);
    std::ofstream out(text_file);
    out << text;
    std::fputs(text.c_str(), stdout);
    std::printf("-> %s\n", json_file.string().c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cardinality-constrained portfolio optimization: QUBO construction, "
                 "warm-started QAOA with XY mixer, zero-noise extrapolation, classical "
                 "baselines, and run statistics"};
    app.require_subcommand(1);

    std::string config_path;
    std::string method = "greedy";
    std::string replay_path;
    std::string out_override;
    std::vector<int> ks;
    std::vector<double> lambda_override;
    std::int64_t shots_override = -1;
    std::int64_t seed_override = -1;
    bool force = false;

    int synth_n = 20;
    std::uint64_t synth_seed = 42;
    std::string synth_out = "synth";

    auto* synth = app.add_subcommand("synth", "write a synthetic candidate table");
    synth->add_option("--n", synth_n, "number of candidates")->check(CLI::Range(2, 4096));
    synth->add_option("--seed", synth_seed, "generator seed");
    synth->add_option("--out", synth_out, "output directory")->required();

    auto add_common = [&](CLI::App* cmd, bool needs_config) {
        auto* opt = cmd->add_option("--config", config_path, "experiment config JSON");
        if (needs_config) opt->required();
        cmd->add_option("--out", out_override, "output root (overrides config out_dir)");
        cmd->add_flag("--force", force, "replace existing output files");
        cmd->add_option("--seed", seed_override, "override config seeds with a single seed");
        cmd->add_option("--shots", shots_override, "override config shots");
    };

    auto* build = app.add_subcommand("build", "construct and persist the scaled QUBO");
    add_common(build, true);

    auto* solve = app.add_subcommand("solve", "run a classical baseline");
    add_common(solve, true);
    solve->add_option("--method", method, "greedy|sa|random|exact");
    solve->add_option("--ks", ks, "cardinality sweep for greedy");

    auto* qaoa_cmd = app.add_subcommand("qaoa", "noiseless warm-started circuit run");
    add_common(qaoa_cmd, true);

    auto* zne_cmd = app.add_subcommand("zne", "three-level noisy protocol with extrapolation");
    add_common(zne_cmd, true);
    zne_cmd->add_option("--lambda", lambda_override, "noise scales (three values)");

    auto* stats_cmd = app.add_subcommand("stats", "inferential statistics from a run table");
    stats_cmd->add_option("--replay", replay_path, "recorded run table JSON")->required();
    stats_cmd->add_option("--out", out_override, "output directory");
    stats_cmd->add_flag("--force", force, "replace existing output files");

    auto* report_cmd = app.add_subcommand("report", "tables and statistics for an experiment");
    report_cmd->add_option("--config", config_path, "experiment config JSON");
    report_cmd->add_option("--replay", replay_path, "recorded run table JSON");
    report_cmd->add_option("--out", out_override, "output directory");
    report_cmd->add_flag("--force", force, "replace existing output files");

    CLI11_PARSE(app, argc, argv);

    try {
        if (synth->parsed()) return cmd_synth(synth_n, synth_seed, synth_out);

        auto configured = [&]() {
            ExperimentConfig cfg = load_config(config_path);
            if (!out_override.empty()) cfg.out_dir = out_override;
            if (seed_override >= 0) cfg.seeds = {static_cast<std::uint64_t>(seed_override)};
            if (shots_override > 0) cfg.shots = shots_override;
            if (!lambda_override.empty()) cfg.lambdas = lambda_override;
            return cfg;
        };

        if (build->parsed()) return cmd_build(configured(), force);
        if (solve->parsed()) return cmd_solve(configured(), method, ks, force);
        if (qaoa_cmd->parsed()) return cmd_qaoa(configured(), force);
        if (zne_cmd->parsed()) return cmd_zne(configured(), force);
        if (stats_cmd->parsed() || report_cmd->parsed()) {
            ReportInput input;
            fs::path dir;
            Json prov;
            if (!replay_path.empty()) {
                input = report_input_from_replay(replay_path);
                dir = out_override.empty() ? fs::path(".") : fs::path(out_override);
                prov = Json{{"version", qport::kVersion},
                            {"config_hash", qport::config_hash(qport::read_json_file(replay_path))},
                            {"replay", fs::path(replay_path).filename().string()}};
            } else {
                if (config_path.empty()) {
                    throw std::invalid_argument("report needs --replay or --config");
                }
                const ExperimentConfig cfg = configured();
                dir = experiment_dir(cfg);
                input = report_input_from_dir(dir);
                prov = provenance(cfg);
            }
            return cmd_report(input, prov, dir / "report.json", dir / "report.txt", force);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
