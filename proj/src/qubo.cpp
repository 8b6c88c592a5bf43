#include "qport/qubo.hpp"

#include <cmath>

namespace qport {

void ObjectiveWeights::validate() const {
    if (w_carbon < 0.0 || w_biodiversity < 0.0 || w_social < 0.0) {
        throw std::invalid_argument("objective weights must be nonnegative");
    }
    if (std::abs(w_carbon + w_biodiversity + w_social - 1.0) > 1e-12) {
        throw std::invalid_argument("objective weights must sum to 1");
    }
    if (lambda_carbon < 0.0 || lambda_biodiversity < 0.0 || lambda_social < 0.0) {
        throw std::invalid_argument("synergy scalings must be nonnegative");
    }
    if (n_biomes < 1) throw std::invalid_argument("n_biomes must be positive");
}

Vector combined_linear(const MunicipalityTable& table, const ObjectiveWeights& weights) {
    return weights.w_carbon * table.carbon_scores() +
           weights.w_biodiversity * table.biodiversity_scores() +
           weights.w_social * table.social_scores();
}

Matrix combined_synergy(const MunicipalityTable& table, const ObjectiveWeights& weights) {
    return weights.w_carbon * weights.lambda_carbon * table.adjacency +
           weights.w_biodiversity * weights.biome_factor() * weights.lambda_biodiversity *
               table.bio_synergy +
           weights.w_social * weights.lambda_social * table.soc_synergy;
}

double objective_score(const MunicipalityTable& table, const ObjectiveWeights& weights,
                       const Portfolio& x) {
    weights.validate();
    if (x.size() != table.size()) throw std::invalid_argument("objective_score: dimension mismatch");
    const Vector xv = x.bits.cast<double>();
    const double linear = combined_linear(table, weights).dot(xv);
    // synergy matrices are symmetric with zero diagonal, so the i<j pair sum
    // is half the full quadratic form
    const double quad = 0.5 * xv.dot(combined_synergy(table, weights) * xv);
    return linear + quad;
}

QuboProblem build_qubo(const MunicipalityTable& table, const ObjectiveWeights& weights, int k,
                       double penalty_weight, double sparsity_threshold) {
    weights.validate();
    const Index n = table.size();
    if (k <= 0 || k >= n) throw std::invalid_argument("build_qubo: need 0 < k < n");
    if (penalty_weight <= 0.0) throw std::invalid_argument("build_qubo: penalty weight must be positive");
    if (sparsity_threshold < 0.0) throw std::invalid_argument("build_qubo: negative threshold");

    QuboProblem qubo;
    qubo.n = n;
    qubo.k = k;
    qubo.penalty_weight = penalty_weight;
    qubo.sparsity_threshold = sparsity_threshold;
    qubo.q = Matrix::Zero(n, n);

    const Vector linear = combined_linear(table, weights);
    const Matrix synergy = combined_synergy(table, weights);

    const double diag_penalty = penalty_weight * (1.0 - 2.0 * static_cast<double>(k));
    for (Index i = 0; i < n; ++i) {
        qubo.q(i, i) = -linear[i] + diag_penalty;
    }
    qubo.dropped_count = 0;
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            double syn = synergy(i, j);
            // the threshold prunes only the synergy contribution; the
            // cardinality coupling 2*lambda_pen must always survive
            if (syn != 0.0 && std::abs(syn) < sparsity_threshold) {
                syn = 0.0;
                ++qubo.dropped_count;
            }
            qubo.q(i, j) = -syn + 2.0 * penalty_weight;
        }
    }

    const double q_max = qubo.q.cwiseAbs().maxCoeff();
    qubo.scale = q_max > 0.0 ? q_max : 1.0;
    qubo.q /= qubo.scale;
    qubo.constant = penalty_weight * static_cast<double>(k) * static_cast<double>(k) / qubo.scale;
    return qubo;
}

double penalized_energy(const QuboProblem& qubo, const Portfolio& x) {
    if (x.size() != qubo.n) throw std::invalid_argument("penalized_energy: dimension mismatch");
    double e = 0.0;
    for (Index i = 0; i < qubo.n; ++i) {
        if (!x.bits[i]) continue;
        e += qubo.q(i, i);
        for (Index j = i + 1; j < qubo.n; ++j) {
            if (x.bits[j]) e += qubo.q(i, j);
        }
    }
    return e;
}

double objective_from_energy(const QuboProblem& qubo, double full_energy) {
    return -full_energy * qubo.scale;
}

bool feasibility(const Portfolio& x, int k) { return x.cardinality() == k; }

}  // namespace qport
