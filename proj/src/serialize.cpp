#include "qport/serialize.hpp"

#include <cstdio>
#include <fstream>

namespace qport {

Json qubo_to_json(const QuboProblem& qubo) {
    Json entries = Json::array();
    for (Index i = 0; i < qubo.n; ++i) {
        for (Index j = i; j < qubo.n; ++j) {
            if (qubo.q(i, j) != 0.0) entries.push_back({i, j, qubo.q(i, j)});
        }
    }
    return Json{{"n", qubo.n},
                {"k", qubo.k},
                {"penalty_weight", qubo.penalty_weight},
                {"scale", qubo.scale},
                {"threshold", qubo.sparsity_threshold},
                {"dropped_count", qubo.dropped_count},
                {"entries", std::move(entries)},
                {"constant", qubo.constant}};
}

QuboProblem qubo_from_json(const Json& j) {
    QuboProblem qubo;
    qubo.n = j.at("n").get<Index>();
    qubo.k = j.at("k").get<int>();
    qubo.penalty_weight = j.at("penalty_weight").get<double>();
    qubo.scale = j.at("scale").get<double>();
    qubo.sparsity_threshold = j.at("threshold").get<double>();
    qubo.dropped_count = j.value("dropped_count", Index{0});
    qubo.constant = j.at("constant").get<double>();
    qubo.q = Matrix::Zero(qubo.n, qubo.n);
    for (const auto& e : j.at("entries")) {
        const auto row = e.at(0).get<Index>();
        const auto col = e.at(1).get<Index>();
        if (row < 0 || col < row || col >= qubo.n) {
            throw std::invalid_argument("qubo entries must be upper-triangular and in range");
        }
        qubo.q(row, col) = e.at(2).get<double>();
    }
    return qubo;
}

Json ising_to_json(const IsingModel& model) {
    Json couplings = Json::array();
    for (const auto& [key, value] : model.j) {
        couplings.push_back({key.first, key.second, value});
    }
    Json h = Json::array();
    for (Index i = 0; i < model.n; ++i) h.push_back(model.h[i]);
    return Json{{"n", model.n}, {"h", std::move(h)}, {"j", std::move(couplings)}, {"offset", model.offset}};
}

IsingModel ising_from_json(const Json& j) {
    IsingModel model;
    model.n = j.at("n").get<Index>();
    model.offset = j.at("offset").get<double>();
    model.h = Vector::Zero(model.n);
    const auto& h = j.at("h");
    if (static_cast<Index>(h.size()) != model.n) throw std::invalid_argument("ising h length mismatch");
    for (Index i = 0; i < model.n; ++i) model.h[i] = h[static_cast<std::size_t>(i)].get<double>();
    for (const auto& e : j.at("j")) {
        const auto a = e.at(0).get<Index>();
        const auto b = e.at(1).get<Index>();
        if (a < 0 || b <= a || b >= model.n) throw std::invalid_argument("ising couplings must satisfy i<j");
        model.j[{a, b}] = e.at(2).get<double>();
    }
    return model;
}

Json shot_record_to_json(const ShotRecord& record) {
    Json counts = Json::object();
    for (const auto& [bits, count] : record.counts) counts[bits] = count;
    return Json{{"counts", std::move(counts)},
                {"shots", record.shots},
                {"noise_scale", record.noise_scale},
                {"seed", record.seed}};
}

ShotRecord shot_record_from_json(const Json& j) {
    ShotRecord record;
    record.shots = j.at("shots").get<std::int64_t>();
    record.noise_scale = j.at("noise_scale").get<double>();
    record.seed = j.value("seed", std::uint64_t{0});
    std::int64_t total = 0;
    for (const auto& [bits, count] : j.at("counts").items()) {
        record.counts[bits] = count.get<std::int64_t>();
        total += record.counts[bits];
    }
    if (total != record.shots) throw std::invalid_argument("shot record counts do not sum to shots");
    return record;
}

Json solver_result_to_json(const SolverResult& result, bool include_elapsed) {
    Json j{{"method", method_name(result.method)},
           {"score", result.score},
           {"bitstring", to_bitstring(result.portfolio)},
           {"cardinality", result.portfolio.cardinality()},
           {"evaluations", result.evaluations},
           {"elapsed_ms", nullptr},
           {"seed", nullptr}};
    if (include_elapsed) j["elapsed_ms"] = result.elapsed_ms;
    if (result.seed) j["seed"] = *result.seed;
    return j;
}

Json zne_estimate_to_json(const ZneEstimate& estimate) {
    return Json{{"lambdas", estimate.lambdas},
                {"values", estimate.values},
                {"linear_e0", estimate.linear_e0},
                {"quadratic_e0", estimate.quadratic_e0},
                {"richardson_e0", estimate.richardson_e0},
                {"linear_r2", estimate.linear_r2},
                {"quadratic_r2", estimate.quadratic_r2 ? Json(*estimate.quadratic_r2) : Json(nullptr)},
                {"linear_ci", estimate.linear_ci},
                {"quadratic_ci", estimate.quadratic_ci},
                {"richardson_ci", estimate.richardson_ci},
                {"bootstrap_resamples", estimate.bootstrap_resamples},
                {"bootstrap_seed", estimate.bootstrap_seed}};
}

Json comparison_report_to_json(const ComparisonReport& report) {
    return Json{{"mean_diff", report.mean_diff},
                {"t_stat", report.t_stat},
                {"df", report.df},
                {"p_one_sided", report.p_one_sided},
                {"cohen_d", report.cohen_d},
                {"ci95", report.ci95},
                {"wilcoxon_w", report.wilcoxon_w},
                {"wilcoxon_p", report.wilcoxon_p}};
}

std::string config_hash(const Json& j) {
    const std::string dump = j.dump();
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char c : dump) {
        hash ^= c;
        hash *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path.string());
    Json j;
    in >> j;
    return j;
}

}  // namespace qport
