#pragma once

#include "qport/qaoa.hpp"
#include "qport/types.hpp"

#include <array>
#include <functional>
#include <optional>
#include <vector>

namespace qport {

/// Stochastic Pauli-trajectory noise on the two-qubit mixer gates.
/// `fold_factor` is the abstract amplification factor lambda: the error
/// channel is applied floor(lambda) times per gate, plus once more with the
/// residual probability 1-(1-p)^(lambda-floor(lambda)) for fractional
/// lambda, so the overall per-gate error probability is 1-(1-p)^lambda.
///
/// Error decisions are keyed by (seed, trajectory, gate, fold slot). Runs at
/// different fold factors sharing one seed are therefore coupled: every
/// error event of the smaller factor also occurs under the larger one, and
/// extrapolation differences cancel the shared trajectory noise. Distinct
/// seeds give fully independent runs.
struct NoiseConfig {
    double two_qubit_depolarizing_prob = 0.0;  // in [0,1)
    double fold_factor = 1.0;                  // lambda >= 1
    std::uint64_t seed = 0;
    int trajectories = 128;  // noise realizations the shot budget is spread over

    void validate() const;
};

/// Overall per-gate error probability after lambda-fold amplification:
/// 1 - (1 - base_prob)^lambda.
double effective_error(double base_prob, double lambda);

/// Trajectory-averaged noisy execution. Each trajectory owns RNG streams
/// derived from (seed, trajectory index), so results are independent of
/// scheduling; the returned record aggregates all trajectories.
ShotRecord noisy_run(const IsingModel& model, const QaoaParams& params, const Portfolio& x0,
                     const NoiseConfig& noise, std::int64_t shots);

/// Least-squares line through (lambda, E) points; returns the intercept
/// E(0) and the coefficient of determination.
struct LinearFit {
    double e0 = 0.0;
    double r2 = 0.0;
};
LinearFit extrapolate_linear(const std::vector<std::pair<double, double>>& points);

/// Least-squares quadratic; an exact interpolation for three points.
double extrapolate_quadratic(const std::vector<std::pair<double, double>>& points);

/// Closed-form three-point elimination 3*E1 - 3*E2 + E3 for lambda = (1,2,3).
double richardson(double e1, double e2, double e3);

enum class ExtrapolationMethod { linear, quadratic, richardson };

/// Shot-level nonparametric percentile bootstrap: resample every record's
/// shots with replacement, recompute the per-lambda values with `scorer`,
/// re-extrapolate, and take the 2.5/97.5 percentiles over `b` resamples.
std::array<double, 2> bootstrap_ci(const std::vector<ShotRecord>& shots_per_lambda,
                                   const std::vector<double>& lambdas, ExtrapolationMethod method,
                                   int b, std::uint64_t seed,
                                   const std::function<double(const ShotRecord&)>& scorer);

/// Zero-noise extrapolation summary. quadratic_r2 stays empty when the fit
/// interpolates exactly (three points leave no residual degrees of freedom).
struct ZneEstimate {
    std::vector<double> lambdas;
    std::vector<double> values;
    double linear_e0 = 0.0;
    double quadratic_e0 = 0.0;
    double richardson_e0 = 0.0;
    double linear_r2 = 0.0;
    std::optional<double> quadratic_r2;
    std::array<double, 2> linear_ci{0.0, 0.0};
    std::array<double, 2> quadratic_ci{0.0, 0.0};
    std::array<double, 2> richardson_ci{0.0, 0.0};
    int bootstrap_resamples = 0;
    std::uint64_t bootstrap_seed = 0;
};

/// Runs all three extrapolators plus bootstrap intervals over measured
/// per-lambda records.
ZneEstimate zne_estimate(const std::vector<ShotRecord>& shots_per_lambda,
                         const std::vector<double>& lambdas,
                         const std::function<double(const ShotRecord&)>& scorer,
                         int bootstrap_resamples = 100, std::uint64_t bootstrap_seed = 42);

}  // namespace qport
