#pragma once

#include "qport/ising.hpp"
#include "qport/types.hpp"

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace qport {

/// Dense statevector limit: 2^24 complex doubles is 256 MB; anything larger
/// is out of desk-scale reach and must come from recorded runs instead.
inline constexpr Index kMaxQubits = 24;

enum class MixerTopology { ring, complete, custom };

/// Mapping from the mixer angle beta to the two-qubit XY block rotation.
/// The edge unitary acts on span{|01>,|10>} as
///   [cos(theta), -i sin(theta); -i sin(theta), cos(theta)]
/// with theta = beta/2 under `quarter_generator` (evolution of
/// (X_i X_j + Y_i Y_j)/4) and theta = 2*beta under `full_generator`
/// (evolution of X_i X_j + Y_i Y_j). Both leave |00> and |11> untouched.
enum class MixerConvention { quarter_generator, full_generator };

using EdgeList = std::vector<std::pair<Index, Index>>;

struct QaoaParams {
    double gamma = 0.05;
    double beta = 0.20;
    int layers = 1;
    MixerTopology topology = MixerTopology::ring;
    MixerConvention convention = MixerConvention::quarter_generator;
    EdgeList custom_edges;  // used when topology == custom
};

struct Statevector {
    ComplexVector amplitudes;
    Index n = 0;

    double norm_sq() const { return amplitudes.squaredNorm(); }
};

/// Measurement outcomes of one execution: bitstring (MSB-first) -> count.
struct ShotRecord {
    std::map<std::string, std::int64_t> counts;
    std::int64_t shots = 0;
    double noise_scale = 1.0;
    std::uint64_t seed = 0;
};

/// Computational basis state |x0>.
Statevector warm_start_state(Index n, const Portfolio& x0);

/// Basis-state energies h.z + J.zz (offset excluded - it is a global phase
/// for the cost layer and is re-added by expectation()).
Vector cost_diagonal(const IsingModel& model);

/// Multiplies amplitude of basis state z by exp(-i * gamma * E(z)).
void apply_cost_layer(Statevector& state, const Vector& diagonal, double gamma);
void apply_cost_layer(Statevector& state, const IsingModel& model, double gamma);

/// Exact XY block rotation by `theta` on qubits (i, j); see MixerConvention.
void apply_xy_rotation(Statevector& state, Index i, Index j, double theta);

double xy_block_angle(double beta, MixerConvention convention);

/// Edges of the requested mixer topology, normalized i<j and sorted.
EdgeList mixer_edges(Index n, MixerTopology topology, const EdgeList& custom = {});

/// One Trotterized mixer pass: edges applied in their listed order.
void apply_xy_mixer(Statevector& state, const EdgeList& edges, double beta,
                    MixerConvention convention = MixerConvention::quarter_generator);

/// Warm start followed by `layers` cost+mixer cycles.
Statevector run_qaoa(const IsingModel& model, const QaoaParams& params, const Portfolio& x0);

/// <H_C> = sum_z |amp(z)|^2 E(z), E including the model offset.
double expectation(const Statevector& state, const IsingModel& model);
double expectation(const Statevector& state, const Vector& diagonal, double offset);

/// Deterministic multinomial draw from |amplitudes|^2.
ShotRecord sample_shots(const Statevector& state, std::int64_t shots, std::uint64_t seed);

/// Mean energy of a shot record under the model (offset included).
double shot_expectation(const ShotRecord& record, const IsingModel& model);

/// Probability mass on basis states of Hamming weight k.
double subspace_weight(const Statevector& state, int k);

/// Fixed-parameter heuristic: gamma = 0.05 * (1 + sigma_scores) with
/// sigma_scores the population standard deviation of the combined weighted
/// per-candidate score, beta = 0.20, single layer, ring mixer.
QaoaParams warm_params(const MunicipalityTable& table,
                       const ObjectiveWeights& weights = ObjectiveWeights{});

}  // namespace qport
