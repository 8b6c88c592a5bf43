#include "qport/qaoa.hpp"

#include "qport/rng.hpp"

#include <algorithm>
#include <cmath>

namespace qport {

namespace {

void check_qubit_count(Index n) {
    if (n < 1) throw std::invalid_argument("need at least one qubit");
    if (n > kMaxQubits) {
        throw std::invalid_argument("instance with " + std::to_string(n) +
                                    " qubits exceeds the dense statevector limit of " +
                                    std::to_string(kMaxQubits));
    }
}

}  // namespace

Statevector warm_start_state(Index n, const Portfolio& x0) {
    check_qubit_count(n);
    if (x0.size() != n) throw std::invalid_argument("warm_start_state: length mismatch");
    Statevector state;
    state.n = n;
    state.amplitudes = ComplexVector::Zero(Index{1} << n);
    state.amplitudes[static_cast<Index>(x0.basis_index())] = Complex{1.0, 0.0};
    return state;
}

Vector cost_diagonal(const IsingModel& model) {
    check_qubit_count(model.n);
    const Index dim = Index{1} << model.n;
    Vector diag = Vector::Zero(dim);
    for (Index i = 0; i < model.n; ++i) {
        const double hi = model.h[i];
        if (hi == 0.0) continue;
        const std::uint64_t bit = std::uint64_t{1} << i;
        for (Index s = 0; s < dim; ++s) {
            diag[s] += (static_cast<std::uint64_t>(s) & bit) ? -hi : hi;
        }
    }
    for (const auto& [key, coupling] : model.j) {
        const std::uint64_t bi = std::uint64_t{1} << key.first;
        const std::uint64_t bj = std::uint64_t{1} << key.second;
        for (Index s = 0; s < dim; ++s) {
            const auto u = static_cast<std::uint64_t>(s);
            const bool same = static_cast<bool>(u & bi) == static_cast<bool>(u & bj);
            diag[s] += same ? coupling : -coupling;
        }
    }
    return diag;
}

void apply_cost_layer(Statevector& state, const Vector& diagonal, double gamma) {
    if (diagonal.size() != state.amplitudes.size()) {
        throw std::invalid_argument("apply_cost_layer: diagonal size mismatch");
    }
    if (gamma == 0.0) return;
    for (Index s = 0; s < diagonal.size(); ++s) {
        state.amplitudes[s] *= std::polar(1.0, -gamma * diagonal[s]);
    }
}

void apply_cost_layer(Statevector& state, const IsingModel& model, double gamma) {
    apply_cost_layer(state, cost_diagonal(model), gamma);
}

void apply_xy_rotation(Statevector& state, Index i, Index j, double theta) {
    if (i == j || i < 0 || j < 0 || i >= state.n || j >= state.n) {
        throw std::invalid_argument("apply_xy_rotation: invalid qubit pair");
    }
    const double c = std::cos(theta);
    const Complex mis{0.0, -std::sin(theta)};
    const std::uint64_t bi = std::uint64_t{1} << i;
    const std::uint64_t bj = std::uint64_t{1} << j;
    const Index dim = state.amplitudes.size();
    for (Index s = 0; s < dim; ++s) {
        const auto u = static_cast<std::uint64_t>(s);
        // visit each {|01>,|10>} pair once, from its bit_i=1, bit_j=0 member
        if ((u & bi) && !(u & bj)) {
            const auto t = static_cast<Index>((u ^ bi) | bj);
            const Complex a10 = state.amplitudes[s];
            const Complex a01 = state.amplitudes[t];
            state.amplitudes[t] = c * a01 + mis * a10;
            state.amplitudes[s] = mis * a01 + c * a10;
        }
    }
}

double xy_block_angle(double beta, MixerConvention convention) {
    switch (convention) {
        case MixerConvention::quarter_generator: return beta / 2.0;
        case MixerConvention::full_generator: return 2.0 * beta;
    }
    throw std::logic_error("unknown mixer convention");
}

EdgeList mixer_edges(Index n, MixerTopology topology, const EdgeList& custom) {
    EdgeList edges;
    switch (topology) {
        case MixerTopology::ring:
            for (Index i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
            if (n > 2) edges.emplace_back(0, n - 1);
            break;
        case MixerTopology::complete:
            for (Index i = 0; i < n; ++i)
                for (Index j = i + 1; j < n; ++j) edges.emplace_back(i, j);
            break;
        case MixerTopology::custom:
            for (auto [a, b] : custom) {
                if (a == b || a < 0 || b < 0 || a >= n || b >= n) {
                    throw std::invalid_argument("mixer_edges: invalid custom edge");
                }
                edges.emplace_back(std::min(a, b), std::max(a, b));
            }
            break;
    }
    std::sort(edges.begin(), edges.end());
    return edges;
}

void apply_xy_mixer(Statevector& state, const EdgeList& edges, double beta,
                    MixerConvention convention) {
    const double theta = xy_block_angle(beta, convention);
    for (const auto& [i, j] : edges) apply_xy_rotation(state, i, j, theta);
}

Statevector run_qaoa(const IsingModel& model, const QaoaParams& params, const Portfolio& x0) {
    if (params.layers < 1) throw std::invalid_argument("run_qaoa: layers must be >= 1");
    Statevector state = warm_start_state(model.n, x0);
    const Vector diagonal = cost_diagonal(model);
    const EdgeList edges = mixer_edges(model.n, params.topology, params.custom_edges);
    for (int layer = 0; layer < params.layers; ++layer) {
        apply_cost_layer(state, diagonal, params.gamma);
        apply_xy_mixer(state, edges, params.beta, params.convention);
    }
    return state;
}

double expectation(const Statevector& state, const Vector& diagonal, double offset) {
    if (diagonal.size() != state.amplitudes.size()) {
        throw std::invalid_argument("expectation: diagonal size mismatch");
    }
    return state.amplitudes.cwiseAbs2().dot(diagonal) + offset;
}

double expectation(const Statevector& state, const IsingModel& model) {
    return expectation(state, cost_diagonal(model), model.offset);
}

ShotRecord sample_shots(const Statevector& state, std::int64_t shots, std::uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("sample_shots: shots must be >= 1");
    if (std::abs(state.norm_sq() - 1.0) > 1e-6) {
        throw std::invalid_argument("sample_shots: state is not normalized");
    }
    Rng rng(seed);
    std::vector<double> u(static_cast<std::size_t>(shots));
    for (auto& v : u) v = rng.uniform();
    std::sort(u.begin(), u.end());

    ShotRecord record;
    record.shots = shots;
    record.seed = seed;
    const Index dim = state.amplitudes.size();
    double cum = 0.0;
    std::size_t next = 0;
    Index last_support = -1;
    for (Index s = 0; s < dim && next < u.size(); ++s) {
        const double p = std::norm(state.amplitudes[s]);
        if (p == 0.0) continue;
        last_support = s;
        cum += p;
        std::int64_t hits = 0;
        while (next < u.size() && u[next] < cum) {
            ++hits;
            ++next;
        }
        if (hits > 0) record.counts[basis_index_to_bitstring(static_cast<std::uint64_t>(s), state.n)] += hits;
    }
    // rounding can leave cum marginally below the largest uniforms
    if (next < u.size()) {
        if (last_support < 0) {
            for (Index s = dim - 1; s >= 0; --s) {
                if (std::norm(state.amplitudes[s]) > 0.0) {
                    last_support = s;
                    break;
                }
            }
        }
        record.counts[basis_index_to_bitstring(static_cast<std::uint64_t>(last_support), state.n)] +=
            static_cast<std::int64_t>(u.size() - next);
    }
    return record;
}

double shot_expectation(const ShotRecord& record, const IsingModel& model) {
    if (record.shots <= 0) throw std::invalid_argument("shot_expectation: empty record");
    double total = 0.0;
    for (const auto& [bitstring, count] : record.counts) {
        const Portfolio p = portfolio_from_bitstring(bitstring);
        total += static_cast<double>(count) * ising_energy_of_basis(model, p.basis_index());
    }
    return total / static_cast<double>(record.shots);
}

double subspace_weight(const Statevector& state, int k) {
    double w = 0.0;
    for (Index s = 0; s < state.amplitudes.size(); ++s) {
        if (hamming_weight(static_cast<std::uint64_t>(s)) == k) {
            w += std::norm(state.amplitudes[s]);
        }
    }
    return w;
}

QaoaParams warm_params(const MunicipalityTable& table, const ObjectiveWeights& weights) {
    if (table.size() == 0) throw std::invalid_argument("warm_params: empty table");
    const Vector combined = combined_linear(table, weights);
    const double mean = combined.mean();
    const double sigma = std::sqrt((combined.array() - mean).square().mean());
    QaoaParams params;
    params.gamma = 0.05 * (1.0 + sigma);
    params.beta = 0.20;
    params.layers = 1;
    params.topology = MixerTopology::ring;
    return params;
}

}  // namespace qport
