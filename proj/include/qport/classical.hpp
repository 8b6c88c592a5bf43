#pragma once

#include "qport/qubo.hpp"
#include "qport/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qport {

enum class SolverMethod { greedy, simulated_annealing, random_search, exact };

std::string method_name(SolverMethod method);

struct SolverResult {
    Portfolio portfolio;
    double score = 0.0;  // maximization objective, no penalty
    std::int64_t evaluations = 0;
    double elapsed_ms = 0.0;
    SolverMethod method = SolverMethod::greedy;
    std::optional<std::uint64_t> seed;
};

/// Constructive heuristic: k rounds, each adding the candidate with the
/// largest marginal objective gain (linear benefit plus synergy with the
/// current selection); ties go to the lowest index.
SolverResult greedy(const MunicipalityTable& table, const ObjectiveWeights& weights, int k);

struct KSweepResult {
    std::vector<SolverResult> results;
    bool nested = false;  // every smaller-k selection contained in the next
};

KSweepResult greedy_k_sweep(const MunicipalityTable& table, const ObjectiveWeights& weights,
                            const std::vector<int>& ks);

/// Cooling schedule and budget for simulated annealing. Exactly one budget
/// applies: `max_evaluations` when positive (deterministic mode used by all
/// tests), otherwise `wall_clock_seconds`.
struct AnnealConfig {
    std::int64_t max_evaluations = 100000;
    double wall_clock_seconds = 0.0;
    double cooling = 0.995;
    double temperature_floor = 1e-6;
    double initial_temperature = -1.0;  // < 0: calibrate from random feasible samples
    bool greedy_start = false;
};

/// Metropolis over cardinality-preserving swap moves with geometric cooling;
/// the initial temperature is the score spread of 100 random feasible
/// portfolios. Returns the best feasible portfolio seen.
SolverResult simulated_annealing(const MunicipalityTable& table, const ObjectiveWeights& weights,
                                 int k, const AnnealConfig& config, std::uint64_t seed);

struct RandomSearchResult {
    SolverResult best;
    double mean = 0.0;
    double sd = 0.0;  // sample standard deviation; 0 for a single iteration
};

RandomSearchResult random_search(const MunicipalityTable& table, const ObjectiveWeights& weights,
                                 int k, std::int64_t iterations, std::uint64_t seed);

/// Exhaustive optimum over all k-subsets; refuses instances with more than
/// ten million portfolios. Ties break to the lexicographically smallest
/// bitstring.
SolverResult enumerate_exact(const MunicipalityTable& table, const ObjectiveWeights& weights, int k);

}  // namespace qport
