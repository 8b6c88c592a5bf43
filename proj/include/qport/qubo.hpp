#pragma once

#include "qport/data.hpp"
#include "qport/types.hpp"

namespace qport {

/// Objective weights and synergy scalings. Defaults are the study values:
/// w = (0.33, 0.33, 0.34), lambda = (0.15, 0.25, 0.20), single biome.
struct ObjectiveWeights {
    double w_carbon = 0.33;
    double w_biodiversity = 0.33;
    double w_social = 0.34;
    double lambda_carbon = 0.15;
    double lambda_biodiversity = 0.25;
    double lambda_social = 0.20;
    int n_biomes = 1;

    void validate() const;
    double biome_factor() const { return std::sqrt(static_cast<double>(n_biomes)); }
};

/// Penalized, sparsified, globally scaled QUBO.
///
/// Sign convention: benefit terms enter negated so that minimizing x^T q x
/// maximizes the reporting objective; the cardinality penalty enters
/// positive. `q` holds the scaled upper-triangular matrix (max |entry| = 1),
/// `scale` the divisor that was applied, and `constant` the penalty constant
/// lambda_pen * k^2 expressed in the same scaled units, kept out of the
/// matrix so energies stay comparable.
struct QuboProblem {
    Matrix q;  // upper triangular, diagonal included, already scaled
    Index n = 0;
    int k = 0;
    double penalty_weight = 0.0;
    double scale = 1.0;  // Q_max before scaling
    double sparsity_threshold = 0.0;
    Index dropped_count = 0;  // nonzero synergy couplings zeroed by the threshold
    double constant = 0.0;    // lambda_pen * k^2 / scale
};

/// Reporting objective of Eq-style linear + synergy form; no penalty term.
double objective_score(const MunicipalityTable& table, const ObjectiveWeights& weights,
                       const Portfolio& x);

/// Combined n x n synergy matrix w_C*l_C*A + w_B*sqrt(biomes)*l_B*B + w_S*l_S*S
/// (symmetric, zero diagonal); the quadratic part of the objective is the
/// sum over selected pairs i<j.
Matrix combined_synergy(const MunicipalityTable& table, const ObjectiveWeights& weights);

/// Per-candidate linear benefit w_C*c + w_B*b + w_S*s.
Vector combined_linear(const MunicipalityTable& table, const ObjectiveWeights& weights);

QuboProblem build_qubo(const MunicipalityTable& table, const ObjectiveWeights& weights, int k,
                       double penalty_weight, double sparsity_threshold);

/// x^T q x over the scaled matrix; add `qubo.constant` for the full penalized
/// energy. Minimizing this over feasible portfolios maximizes objective_score.
double penalized_energy(const QuboProblem& qubo, const Portfolio& x);

/// Maximization-scale objective recovered from a full scaled energy
/// (energy + constant); exact for feasible portfolios.
double objective_from_energy(const QuboProblem& qubo, double full_energy);

bool feasibility(const Portfolio& x, int k);

}  // namespace qport
