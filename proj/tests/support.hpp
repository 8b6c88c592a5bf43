#pragma once

#include "qport/data.hpp"
#include "qport/ising.hpp"
#include "qport/qaoa.hpp"
#include "qport/qubo.hpp"
#include "qport/rng.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <vector>

namespace qport::testing {

/// Table with fully dense random synergies (not adjacency-masked); exercises
/// the general quadratic structure harder than the planar-like synth graphs.
inline MunicipalityTable random_dense_table(int n, std::uint64_t seed) {
    Rng rng(Rng::derive_stream(seed, 7));
    MunicipalityTable table;
    Vector c(n), b(n), s(n);
    for (int i = 0; i < n; ++i) {
        c[i] = rng.uniform();
        b[i] = rng.uniform();
        s[i] = rng.uniform();
    }
    c = min_max_normalize(c);
    b = min_max_normalize(b);
    s = min_max_normalize(s);
    for (int i = 0; i < n; ++i) {
        table.records.push_back({"t" + std::to_string(i), c[i], b[i], s[i]});
    }
    table.adjacency = Matrix::Zero(n, n);
    table.bio_synergy = Matrix::Zero(n, n);
    table.soc_synergy = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            table.adjacency(i, j) = table.adjacency(j, i) = rng.uniform() < 0.4 ? 1.0 : 0.0;
            table.bio_synergy(i, j) = table.bio_synergy(j, i) = rng.uniform();
            table.soc_synergy(i, j) = table.soc_synergy(j, i) = rng.uniform();
        }
    }
    table.validate();
    return table;
}

/// Term-by-term objective, written directly from the component definitions;
/// deliberately independent of combined_linear/combined_synergy.
inline double oracle_objective(const MunicipalityTable& table, const ObjectiveWeights& w,
                               const Portfolio& x) {
    double c_lin = 0.0, b_lin = 0.0, s_lin = 0.0;
    for (Index i = 0; i < table.size(); ++i) {
        if (!x.bits[i]) continue;
        c_lin += table.records[static_cast<std::size_t>(i)].carbon;
        b_lin += table.records[static_cast<std::size_t>(i)].biodiversity;
        s_lin += table.records[static_cast<std::size_t>(i)].social;
    }
    double c_quad = 0.0, b_quad = 0.0, s_quad = 0.0;
    for (Index i = 0; i < table.size(); ++i) {
        for (Index j = i + 1; j < table.size(); ++j) {
            if (x.bits[i] && x.bits[j]) {
                c_quad += table.adjacency(i, j);
                b_quad += table.bio_synergy(i, j);
                s_quad += table.soc_synergy(i, j);
            }
        }
    }
    return w.w_carbon * (c_lin + w.lambda_carbon * c_quad) +
           w.w_biodiversity * (b_lin + w.biome_factor() * w.lambda_biodiversity * b_quad) +
           w.w_social * (s_lin + w.lambda_social * s_quad);
}

/// Full penalized energy on the maximization problem, pre-scaling:
/// penalty(x) - objective(x) with penalty lambda*(sum x - k)^2.
inline double oracle_penalized(const MunicipalityTable& table, const ObjectiveWeights& w,
                               const Portfolio& x, int k, double penalty_weight) {
    const double violation = static_cast<double>(x.cardinality() - k);
    return penalty_weight * violation * violation - oracle_objective(table, w, x);
}

inline Portfolio random_portfolio(Index n, Rng& rng) {
    IntVector bits(n);
    for (Index i = 0; i < n; ++i) bits[i] = rng.uniform() < 0.5 ? 1 : 0;
    return Portfolio(std::move(bits));
}

inline Portfolio random_feasible_portfolio(Index n, int k, Rng& rng) {
    IntVector bits = IntVector::Zero(n);
    int placed = 0;
    while (placed < k) {
        const auto i = static_cast<Index>(rng.uniform_int(static_cast<std::uint64_t>(n)));
        if (!bits[i]) {
            bits[i] = 1;
            ++placed;
        }
    }
    return Portfolio(std::move(bits));
}

// ---- dense-matrix circuit oracle (n <= 5) ----

using CMatrix = Eigen::MatrixXcd;

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

/// Single-qubit operator on qubit q (LSB convention) embedded in n qubits.
inline CMatrix embed_single(const CMatrix& op, Index q, Index n) {
    CMatrix out = CMatrix::Identity(1, 1);
    for (Index bit = n - 1; bit >= 0; --bit) {
        out = kron(out, bit == q ? op : CMatrix::Identity(2, 2));
    }
    return out;
}

inline CMatrix pauli_x() {
    CMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}
inline CMatrix pauli_y() {
    CMatrix m(2, 2);
    m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    return m;
}
inline CMatrix pauli_z() {
    CMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

/// Dense cost Hamiltonian sum h_i Z_i + sum J_ij Z_i Z_j (offset excluded).
inline CMatrix dense_cost_hamiltonian(const IsingModel& model) {
    const Index dim = Index{1} << model.n;
    CMatrix h = CMatrix::Zero(dim, dim);
    for (Index i = 0; i < model.n; ++i) {
        if (model.h[i] != 0.0) h += model.h[i] * embed_single(pauli_z(), i, model.n);
    }
    for (const auto& [key, coupling] : model.j) {
        h += coupling * (embed_single(pauli_z(), key.first, model.n) *
                         embed_single(pauli_z(), key.second, model.n));
    }
    return h;
}

/// Dense XY edge generator X_i X_j + Y_i Y_j.
inline CMatrix dense_xy_generator(Index i, Index j, Index n) {
    return embed_single(pauli_x(), i, n) * embed_single(pauli_x(), j, n) +
           embed_single(pauli_y(), i, n) * embed_single(pauli_y(), j, n);
}

/// Whole p=1..p circuit as one explicit 2^n x 2^n unitary, built with matrix
/// exponentials. Block angle theta corresponds to exp(-i*(theta/2)*(XX+YY)).
inline CMatrix dense_circuit_unitary(const IsingModel& model, const QaoaParams& params) {
    const Index dim = Index{1} << model.n;
    const CMatrix hc = dense_cost_hamiltonian(model);
    const CMatrix ucost = (Complex(0, -params.gamma) * hc).exp();
    const double theta = xy_block_angle(params.beta, params.convention);
    CMatrix layer = CMatrix::Identity(dim, dim);
    for (const auto& [i, j] : mixer_edges(model.n, params.topology, params.custom_edges)) {
        const CMatrix gen = dense_xy_generator(i, j, model.n);
        layer = (Complex(0, -theta / 2.0) * gen).exp() * layer;
    }
    CMatrix u = CMatrix::Identity(dim, dim);
    for (int p = 0; p < params.layers; ++p) u = layer * ucost * u;
    return u;
}

}  // namespace qport::testing
