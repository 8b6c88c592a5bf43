#include "qport/zne.hpp"

#include "qport/rng.hpp"

#include <algorithm>
#include <cmath>

namespace qport {

namespace {

// single-qubit Pauli on a statevector; global phases are irrelevant here
void apply_pauli(Statevector& state, int which, Index q) {
    const std::uint64_t bit = std::uint64_t{1} << q;
    const Index dim = state.amplitudes.size();
    switch (which) {
        case 1:  // X
            for (Index s = 0; s < dim; ++s) {
                if (!(static_cast<std::uint64_t>(s) & bit)) {
                    std::swap(state.amplitudes[s], state.amplitudes[static_cast<Index>(s | static_cast<Index>(bit))]);
                }
            }
            break;
        case 2:  // Y
            for (Index s = 0; s < dim; ++s) {
                if (!(static_cast<std::uint64_t>(s) & bit)) {
                    const Index t = static_cast<Index>(s | static_cast<Index>(bit));
                    const Complex a0 = state.amplitudes[s];
                    const Complex a1 = state.amplitudes[t];
                    state.amplitudes[s] = Complex{0.0, -1.0} * a1;
                    state.amplitudes[t] = Complex{0.0, 1.0} * a0;
                }
            }
            break;
        case 3:  // Z
            for (Index s = 0; s < dim; ++s) {
                if (static_cast<std::uint64_t>(s) & bit) state.amplitudes[s] = -state.amplitudes[s];
            }
            break;
        default: break;  // identity
    }
}

// uniformly random non-identity two-qubit Pauli keyed by a stream word
void inject_pauli_error(Statevector& state, Index i, Index j, std::uint64_t word) {
    const auto pick = static_cast<int>(Rng::bounded(word, 15)) + 1;  // 1..15
    const int pa = pick / 4;
    const int pb = pick % 4;
    if (pa) apply_pauli(state, pa, i);
    if (pb) apply_pauli(state, pb, j);
}

inline constexpr int kMaxFoldSlots = 16;  // supports lambda up to 16

// Error decisions are keyed by (trajectory stream, gate slot, fold slot)
// rather than drawn from a sequential stream. Runs at different fold factors
// that share a seed therefore share every error event of the lower factor,
// the common-random-numbers coupling that lets extrapolation differences
// cancel trajectory noise.
void maybe_apply_channel(Statevector& state, Index i, Index j, double prob, double lambda,
                         std::uint64_t traj_seed, std::uint64_t gate_slot) {
    const int whole = std::min(static_cast<int>(std::floor(lambda)), kMaxFoldSlots);
    const std::uint64_t gate_seed = Rng::derive_stream(traj_seed, gate_slot);
    for (int fold = 0; fold < whole; ++fold) {
        const std::uint64_t slot_seed = Rng::derive_stream(gate_seed, static_cast<std::uint64_t>(fold));
        if (Rng::to_unit(Rng::derive_stream(slot_seed, 0)) < prob) {
            inject_pauli_error(state, i, j, Rng::derive_stream(slot_seed, 1));
        }
    }
    const double frac = lambda - std::floor(lambda);
    if (frac > 0.0) {
        const double residual = 1.0 - std::pow(1.0 - prob, frac);
        const std::uint64_t slot_seed =
            Rng::derive_stream(gate_seed, static_cast<std::uint64_t>(whole));
        if (Rng::to_unit(Rng::derive_stream(slot_seed, 0)) < residual) {
            inject_pauli_error(state, i, j, Rng::derive_stream(slot_seed, 1));
        }
    }
}

void merge_counts(ShotRecord& into, const ShotRecord& from) {
    for (const auto& [bits, count] : from.counts) into.counts[bits] += count;
    into.shots += from.shots;
}

}  // namespace

void NoiseConfig::validate() const {
    if (two_qubit_depolarizing_prob < 0.0 || two_qubit_depolarizing_prob >= 1.0) {
        throw std::invalid_argument("two-qubit error probability must lie in [0,1)");
    }
    if (fold_factor < 1.0) throw std::invalid_argument("fold factor must be >= 1");
    if (trajectories < 1) throw std::invalid_argument("need at least one trajectory");
    const double eff = effective_error(two_qubit_depolarizing_prob, fold_factor);
    if (eff < 0.0 || eff >= 1.0) throw std::invalid_argument("effective error out of range");
}

double effective_error(double base_prob, double lambda) {
    if (base_prob < 0.0 || base_prob >= 1.0) throw std::invalid_argument("base probability outside [0,1)");
    if (lambda < 1.0) throw std::invalid_argument("lambda must be >= 1");
    return 1.0 - std::pow(1.0 - base_prob, lambda);
}

ShotRecord noisy_run(const IsingModel& model, const QaoaParams& params, const Portfolio& x0,
                     const NoiseConfig& noise, std::int64_t shots) {
    noise.validate();
    if (shots < 1) throw std::invalid_argument("noisy_run: shots must be >= 1");
    if (params.layers < 1) throw std::invalid_argument("noisy_run: layers must be >= 1");

    const Vector diagonal = cost_diagonal(model);
    const EdgeList edges = mixer_edges(model.n, params.topology, params.custom_edges);
    const double theta = xy_block_angle(params.beta, params.convention);
    const double prob = noise.two_qubit_depolarizing_prob;

    const int traj = noise.trajectories;
    ShotRecord record;
    record.noise_scale = noise.fold_factor;
    record.seed = noise.seed;
    for (int t = 0; t < traj; ++t) {
        const std::int64_t traj_shots =
            shots / traj + (static_cast<std::int64_t>(t) < shots % traj ? 1 : 0);
        if (traj_shots == 0) continue;
        const std::uint64_t traj_seed = Rng::derive_stream(noise.seed, static_cast<std::uint64_t>(t));
        Statevector state = warm_start_state(model.n, x0);
        std::uint64_t gate_slot = 0;
        for (int layer = 0; layer < params.layers; ++layer) {
            apply_cost_layer(state, diagonal, params.gamma);
            for (const auto& [i, j] : edges) {
                apply_xy_rotation(state, i, j, theta);
                if (prob > 0.0) {
                    maybe_apply_channel(state, i, j, prob, noise.fold_factor, traj_seed, gate_slot);
                }
                ++gate_slot;
            }
        }
        const std::uint64_t shot_seed =
            Rng::derive_stream(noise.seed, static_cast<std::uint64_t>(traj + t));
        merge_counts(record, sample_shots(state, traj_shots, shot_seed));
    }
    record.noise_scale = noise.fold_factor;
    return record;
}

LinearFit extrapolate_linear(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2) throw std::invalid_argument("linear extrapolation needs >= 2 points");
    const auto n = static_cast<double>(points.size());
    double sx = 0.0, sy = 0.0;
    for (const auto& [x, y] : points) {
        sx += x;
        sy += y;
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& [x, y] : points) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("linear extrapolation needs distinct lambdas");
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double ss_res = 0.0;
    for (const auto& [x, y] : points) {
        const double r = y - (intercept + slope * x);
        ss_res += r * r;
    }
    LinearFit fit;
    fit.e0 = intercept;
    fit.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    return fit;
}

double extrapolate_quadratic(const std::vector<std::pair<double, double>>& points) {
    std::vector<double> distinct;
    for (const auto& [x, y] : points) {
        (void)y;
        if (std::find(distinct.begin(), distinct.end(), x) == distinct.end()) distinct.push_back(x);
    }
    if (distinct.size() < 3) throw std::invalid_argument("quadratic extrapolation needs >= 3 distinct lambdas");

    Eigen::Matrix3d normal = Eigen::Matrix3d::Zero();
    Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
    for (const auto& [x, y] : points) {
        const Eigen::Vector3d row{1.0, x, x * x};
        normal += row * row.transpose();
        rhs += row * y;
    }
    const Eigen::Vector3d coeff = normal.ldlt().solve(rhs);
    return coeff[0];
}

double richardson(double e1, double e2, double e3) { return 3.0 * e1 - 3.0 * e2 + e3; }

namespace {

double extrapolate_by(ExtrapolationMethod method, const std::vector<double>& lambdas,
                      const std::vector<double>& values) {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(lambdas.size());
    for (std::size_t i = 0; i < lambdas.size(); ++i) pts.emplace_back(lambdas[i], values[i]);
    switch (method) {
        case ExtrapolationMethod::linear: return extrapolate_linear(pts).e0;
        case ExtrapolationMethod::quadratic: return extrapolate_quadratic(pts);
        case ExtrapolationMethod::richardson:
            if (values.size() != 3) throw std::invalid_argument("richardson needs exactly 3 points");
            return richardson(values[0], values[1], values[2]);
    }
    throw std::logic_error("unknown extrapolation method");
}

ShotRecord resample_record(const ShotRecord& record, Rng& rng) {
    // invert uniform draws against the empirical distribution
    std::vector<std::pair<const std::string*, std::int64_t>> items;
    items.reserve(record.counts.size());
    for (const auto& [bits, count] : record.counts) items.emplace_back(&bits, count);

    std::vector<double> u(static_cast<std::size_t>(record.shots));
    for (auto& v : u) v = rng.uniform();
    std::sort(u.begin(), u.end());

    ShotRecord out;
    out.shots = record.shots;
    out.noise_scale = record.noise_scale;
    const auto total = static_cast<double>(record.shots);
    double cum = 0.0;
    std::size_t next = 0;
    for (const auto& [bits, count] : items) {
        cum += static_cast<double>(count) / total;
        std::int64_t hits = 0;
        while (next < u.size() && u[next] < cum) {
            ++hits;
            ++next;
        }
        if (hits) out.counts[*bits] += hits;
    }
    if (next < u.size() && !items.empty()) {
        out.counts[*items.back().first] += static_cast<std::int64_t>(u.size() - next);
    }
    return out;
}

}  // namespace

std::array<double, 2> bootstrap_ci(const std::vector<ShotRecord>& shots_per_lambda,
                                   const std::vector<double>& lambdas, ExtrapolationMethod method,
                                   int b, std::uint64_t seed,
                                   const std::function<double(const ShotRecord&)>& scorer) {
    if (b < 1) throw std::invalid_argument("bootstrap_ci: need b >= 1");
    if (shots_per_lambda.empty() || shots_per_lambda.size() != lambdas.size()) {
        throw std::invalid_argument("bootstrap_ci: records and lambdas must match and be non-empty");
    }
    for (const auto& rec : shots_per_lambda) {
        if (rec.shots < 1 || rec.counts.empty()) throw std::invalid_argument("bootstrap_ci: empty record");
    }

    std::vector<double> estimates(static_cast<std::size_t>(b));
    for (int rep = 0; rep < b; ++rep) {
        Rng rng(Rng::derive_stream(seed, static_cast<std::uint64_t>(rep)));
        std::vector<double> values;
        values.reserve(lambdas.size());
        for (const auto& rec : shots_per_lambda) {
            values.push_back(scorer(resample_record(rec, rng)));
        }
        estimates[static_cast<std::size_t>(rep)] = extrapolate_by(method, lambdas, values);
    }
    std::sort(estimates.begin(), estimates.end());

    // percentile with linear interpolation between closest ranks
    auto percentile = [&](double q) {
        const double pos = q * static_cast<double>(estimates.size() - 1);
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        const auto hi = static_cast<std::size_t>(std::ceil(pos));
        const double w = pos - static_cast<double>(lo);
        return (1.0 - w) * estimates[lo] + w * estimates[hi];
    };
    return {percentile(0.025), percentile(0.975)};
}

ZneEstimate zne_estimate(const std::vector<ShotRecord>& shots_per_lambda,
                         const std::vector<double>& lambdas,
                         const std::function<double(const ShotRecord&)>& scorer,
                         int bootstrap_resamples, std::uint64_t bootstrap_seed) {
    if (lambdas.size() != 3 || shots_per_lambda.size() != 3) {
        throw std::invalid_argument("zne_estimate: the protocol takes exactly three noise levels");
    }
    ZneEstimate est;
    est.lambdas = lambdas;
    for (const auto& rec : shots_per_lambda) est.values.push_back(scorer(rec));

    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < lambdas.size(); ++i) pts.emplace_back(lambdas[i], est.values[i]);
    const LinearFit lin = extrapolate_linear(pts);
    est.linear_e0 = lin.e0;
    est.linear_r2 = lin.r2;
    est.quadratic_e0 = extrapolate_quadratic(pts);
    // quadratic_r2 stays empty: three points leave zero residual freedom
    est.richardson_e0 = richardson(est.values[0], est.values[1], est.values[2]);

    est.bootstrap_resamples = bootstrap_resamples;
    est.bootstrap_seed = bootstrap_seed;
    est.linear_ci = bootstrap_ci(shots_per_lambda, lambdas, ExtrapolationMethod::linear,
                                 bootstrap_resamples, Rng::derive_stream(bootstrap_seed, 101), scorer);
    est.quadratic_ci = bootstrap_ci(shots_per_lambda, lambdas, ExtrapolationMethod::quadratic,
                                    bootstrap_resamples, Rng::derive_stream(bootstrap_seed, 102), scorer);
    est.richardson_ci = bootstrap_ci(shots_per_lambda, lambdas, ExtrapolationMethod::richardson,
                                     bootstrap_resamples, Rng::derive_stream(bootstrap_seed, 103), scorer);
    return est;
}

}  // namespace qport
