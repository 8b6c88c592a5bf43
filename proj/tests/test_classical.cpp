#include "qport/classical.hpp"

#include "support.hpp"

#include <doctest.h>

#include <algorithm>

using namespace qport;
using namespace qport::testing;

namespace {

// frozen by one-time exhaustive enumeration of the n=20, k=5, seed=42
// calibration instance (C(20,5) = 15504 portfolios)
constexpr double kCalibrationOptimum = 3.948203257286935;
constexpr const char* kCalibrationOptimumBits = "01000010010100000001";
constexpr double kCalibrationGreedy = 3.848644392451933;

MunicipalityTable ranked_linear_table(int n) {
    // candidate i has weighted score proportional to i, no synergies
    MunicipalityTable table;
    for (int i = 0; i < n; ++i) {
        const double v = static_cast<double>(i) / static_cast<double>(n - 1);
        table.records.push_back({"r" + std::to_string(i), v, v, v});
    }
    table.adjacency = Matrix::Zero(n, n);
    table.bio_synergy = Matrix::Zero(n, n);
    table.soc_synergy = Matrix::Zero(n, n);
    return table;
}

}  // namespace

TEST_SUITE_BEGIN("classical");

TEST_CASE("greedy reduces to top-k selection without synergies") {
    const MunicipalityTable table = ranked_linear_table(10);
    const SolverResult r = greedy(table, ObjectiveWeights{}, 4);
    for (Index i = 0; i < 10; ++i) {
        CHECK(r.portfolio.bits[i] == (i >= 6 ? 1 : 0));
    }
    CHECK(feasibility(r.portfolio, 4));
}

TEST_CASE("greedy ties break to the lowest index") {
    MunicipalityTable table = ranked_linear_table(6);
    for (auto& rec : table.records) rec = {rec.id, 0.5, 0.5, 0.5};
    const SolverResult r = greedy(table, ObjectiveWeights{}, 3);
    CHECK(r.portfolio.bits[0] == 1);
    CHECK(r.portfolio.bits[1] == 1);
    CHECK(r.portfolio.bits[2] == 1);
}

TEST_CASE("greedy never beats exhaustive enumeration") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull, 5ull}) {
        const MunicipalityTable table = random_dense_table(8, seed);
        const ObjectiveWeights w;
        const SolverResult g = greedy(table, w, 3);
        const SolverResult e = enumerate_exact(table, w, 3);
        CHECK(g.score <= e.score + 1e-12);
        CHECK(feasibility(g.portfolio, 3));
    }
}

TEST_CASE("greedy score matches the objective of its portfolio") {
    const MunicipalityTable table = random_dense_table(15, 8);
    const ObjectiveWeights w;
    const SolverResult g = greedy(table, w, 6);
    CHECK(g.score == doctest::Approx(objective_score(table, w, g.portfolio)).epsilon(1e-12));
}

TEST_CASE("greedy k-sweep is nested on zero-synergy instances") {
    const MunicipalityTable table = ranked_linear_table(12);
    const KSweepResult sweep = greedy_k_sweep(table, ObjectiveWeights{}, {2, 4, 6});
    CHECK(sweep.nested);
    CHECK(sweep.results.size() == 3);
    CHECK(sweep.results[2].score > sweep.results[0].score);
}

TEST_CASE("greedy k-sweep reports nesting on the calibration instance") {
    const MunicipalityTable table = synthesize_table(20, 42);
    const KSweepResult sweep = greedy_k_sweep(table, ObjectiveWeights{}, {3, 5, 7});
    // constructive greedy extends its own prefix, so nesting holds here
    CHECK(sweep.nested);
}

TEST_CASE("annealing with zero budget returns the feasible start") {
    const MunicipalityTable table = random_dense_table(12, 3);
    AnnealConfig cfg;
    cfg.max_evaluations = 0;
    const SolverResult r = simulated_annealing(table, ObjectiveWeights{}, 4, cfg, 11);
    CHECK(feasibility(r.portfolio, 4));
    CHECK(r.evaluations == 0);
}

TEST_CASE("annealing reaches the top-k optimum on zero-synergy instances") {
    const MunicipalityTable table = ranked_linear_table(12);
    AnnealConfig cfg;
    cfg.max_evaluations = 20000;
    const SolverResult sa = simulated_annealing(table, ObjectiveWeights{}, 4, cfg, 9);
    const SolverResult g = greedy(table, ObjectiveWeights{}, 4);
    CHECK(sa.score == doctest::Approx(g.score).epsilon(1e-12));
}

TEST_CASE("annealing lands within one percent of the optimum on most seeds") {
    const MunicipalityTable table = random_dense_table(8, 4);
    const ObjectiveWeights w;
    const SolverResult exact = enumerate_exact(table, w, 3);
    AnnealConfig cfg;
    cfg.max_evaluations = 100000;
    int good = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const SolverResult sa = simulated_annealing(table, w, 3, cfg, seed);
        CHECK(feasibility(sa.portfolio, 3));
        if (sa.score >= 0.99 * exact.score) ++good;
    }
    CHECK(good >= 95);
}

TEST_CASE("hill climbing from the greedy start never loses ground") {
    const MunicipalityTable table = random_dense_table(14, 6);
    const ObjectiveWeights w;
    const SolverResult g = greedy(table, w, 5);
    AnnealConfig cfg;
    cfg.max_evaluations = 5000;
    cfg.initial_temperature = 0.0;
    cfg.temperature_floor = 0.0;
    cfg.greedy_start = true;
    const SolverResult sa = simulated_annealing(table, w, 5, cfg, 2);
    CHECK(sa.score >= g.score - 1e-12);
}

TEST_CASE("annealing is deterministic for fixed seed and evaluation budget") {
    const MunicipalityTable table = random_dense_table(12, 5);
    AnnealConfig cfg;
    cfg.max_evaluations = 30000;
    const SolverResult a = simulated_annealing(table, ObjectiveWeights{}, 4, cfg, 31);
    const SolverResult b = simulated_annealing(table, ObjectiveWeights{}, 4, cfg, 31);
    CHECK(a.portfolio == b.portfolio);
    CHECK(a.score == b.score);
    CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("random search with a single iteration") {
    const MunicipalityTable table = random_dense_table(10, 7);
    const RandomSearchResult r = random_search(table, ObjectiveWeights{}, 3, 1, 5);
    CHECK(r.best.score == doctest::Approx(r.mean));
    CHECK(r.sd == 0.0);
    CHECK(feasibility(r.best.portfolio, 3));
}

TEST_CASE("random search determinism and feasibility") {
    const MunicipalityTable table = random_dense_table(10, 7);
    const RandomSearchResult a = random_search(table, ObjectiveWeights{}, 3, 500, 5);
    const RandomSearchResult b = random_search(table, ObjectiveWeights{}, 3, 500, 5);
    CHECK(a.best.portfolio == b.best.portfolio);
    CHECK(a.mean == b.mean);
    CHECK(a.sd == b.sd);
}

TEST_CASE("random search best lands in the top tail with enough draws") {
    const MunicipalityTable table = random_dense_table(8, 10);
    const ObjectiveWeights w;
    // all C(8,3) = 56 scores, sorted
    std::vector<double> all_scores;
    for (std::uint64_t mask = 0; mask < 256; ++mask) {
        if (hamming_weight(mask) == 3) {
            all_scores.push_back(objective_score(table, w, portfolio_from_basis_index(mask, 8)));
        }
    }
    std::sort(all_scores.begin(), all_scores.end());
    const double top5 = all_scores[static_cast<std::size_t>(0.95 * (all_scores.size() - 1))];
    const RandomSearchResult r = random_search(table, w, 3, 226, 3);
    CHECK(r.best.score >= top5);
}

TEST_CASE("exhaustive enumeration trivial cardinalities") {
    const MunicipalityTable table = random_dense_table(7, 12);
    const ObjectiveWeights w;
    const SolverResult full = enumerate_exact(table, w, 7);
    CHECK(full.portfolio.cardinality() == 7);
    CHECK(full.score ==
          doctest::Approx(objective_score(table, w, Portfolio(IntVector::Ones(7)))).epsilon(1e-12));

    const SolverResult single = enumerate_exact(table, w, 1);
    // no pair synergies active: the best single candidate by weighted score
    double best = -1.0;
    for (Index i = 0; i < 7; ++i) {
        IntVector bits = IntVector::Zero(7);
        bits[i] = 1;
        best = std::max(best, objective_score(table, w, Portfolio(bits)));
    }
    CHECK(single.score == doctest::Approx(best).epsilon(1e-12));
}

TEST_CASE("exhaustive enumeration refuses oversized instances") {
    const MunicipalityTable table = random_dense_table(40, 2);
    CHECK_THROWS_WITH_AS(enumerate_exact(table, ObjectiveWeights{}, 20),
                         doctest::Contains("refusing"), std::invalid_argument);
}

TEST_CASE("frozen optimum of the calibration instance") {
    const MunicipalityTable table = synthesize_table(20, 42);
    const ObjectiveWeights w;
    const SolverResult exact = enumerate_exact(table, w, 5);
    CHECK(exact.score == doctest::Approx(kCalibrationOptimum).epsilon(1e-12));
    CHECK(to_bitstring(exact.portfolio) == kCalibrationOptimumBits);
    CHECK(exact.evaluations == 15504);

    const SolverResult g = greedy(table, w, 5);
    CHECK(g.score == doctest::Approx(kCalibrationGreedy).epsilon(1e-12));
}

TEST_CASE("method hierarchy on the calibration instance") {
    const MunicipalityTable table = synthesize_table(20, 42);
    const ObjectiveWeights w;
    const SolverResult exact = enumerate_exact(table, w, 5);
    const SolverResult g = greedy(table, w, 5);
    const RandomSearchResult rs = random_search(table, w, 5, 10000, 42);
    CHECK(exact.score >= g.score);
    CHECK(g.score >= rs.mean);
    CHECK(exact.score >= rs.best.score - 1e-12);
}

TEST_SUITE_END();
