#pragma once

#include "qport/qaoa.hpp"
#include "qport/types.hpp"

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace qport {

// ---- distribution primitives (no statistics library assumed) ----

/// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double incomplete_beta(double a, double b, double x);
double student_t_cdf(double t, double df);
double student_t_quantile(double p, double df);
double normal_cdf(double z);

// ---- paired comparisons ----

struct TTestResult {
    double mean_diff = 0.0;
    double t_stat = 0.0;
    int df = 0;
    double p_one_sided = 1.0;
    double cohen_d = 0.0;
    std::array<double, 2> ci95{0.0, 0.0};  // two-sided t CI on the mean difference
};

/// One-sided paired t-test of scores against a fixed baseline
/// (H1: mean(score - baseline) > 0). Throws when the differences have zero
/// variance.
TTestResult paired_t_one_sided(const std::vector<double>& scores, double baseline);

struct WilcoxonResult {
    double w = 0.0;  // sum of positive-difference ranks
    double p_one_sided = 1.0;
};

/// Signed-rank test with midranks for ties; exact null distribution up to 20
/// nonzero differences, normal approximation beyond.
WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& scores, double baseline);

struct ComparisonReport {
    double mean_diff = 0.0;
    double t_stat = 0.0;
    int df = 0;
    double p_one_sided = 1.0;
    double cohen_d = 0.0;
    std::array<double, 2> ci95{0.0, 0.0};
    double wilcoxon_w = 0.0;
    double wilcoxon_p = 1.0;
};

ComparisonReport compare_to_baseline(const std::vector<double>& scores, double baseline);

// ---- set/rank statistics ----

/// |A intersect B| / |A union B| over selected indices; 1 when both empty.
double jaccard(const Portfolio& a, const Portfolio& b);

/// |A intersect B| / min(|A|, |B|); 1 when either set is empty. Reported
/// alongside jaccard because published overlap figures sometimes use this
/// definition for equal-size portfolios.
double overlap_coefficient(const Portfolio& a, const Portfolio& b);

struct SpearmanResult {
    double rho = 0.0;
    double p_two_sided = 1.0;
};

/// Rank correlation with midranks; exact permutation p for n <= 10,
/// t-approximation beyond.
SpearmanResult spearman(const std::vector<double>& x, const std::vector<double>& y);

struct MannWhitneyResult {
    double u = 0.0;  // min(U_A, U_B)
    double p_two_sided = 1.0;
};

/// Exact two-sided p by enumerating group assignments while
/// C(n1+n2, n1) <= 2e5, normal approximation with tie correction beyond.
MannWhitneyResult mann_whitney_u(const std::vector<double>& group_a,
                                 const std::vector<double>& group_b);

// ---- resampling ----

/// Percentile bootstrap of the mean, deterministic per seed.
std::array<double, 2> run_bootstrap_mean(const std::vector<double>& scores, int b,
                                         std::uint64_t seed);

struct LooEntry {
    std::size_t excluded = 0;
    std::optional<ComparisonReport> report;
    std::string error;  // set when the reduced sample is degenerate
};

std::vector<LooEntry> leave_one_out(const std::vector<double>& scores, double baseline);

// ---- shot-record diagnostics ----

/// Fraction of measured shots whose bitstring has Hamming weight k.
double feasible_shot_rate(const ShotRecord& record, int k);

/// Mean reporting objective over the feasible (weight-k) shots of a record.
/// This is the portfolio-score scale used for run-level comparisons; it
/// ignores infeasible shots, whose violation penalty would otherwise swamp
/// the score. Throws when the record holds no feasible shot.
double feasible_score_expectation(const ShotRecord& record, const MunicipalityTable& table,
                                  const ObjectiveWeights& weights, int k);

/// Highest-count weight-k bitstring; ties break to the lexicographically
/// smaller string. Throws when the record holds no feasible shot.
Portfolio mode_bitstring(const ShotRecord& record, int k);

// ---- replay of recorded hardware runs ----

struct RunSummary {
    int run_id = 0;
    std::string backend;
    double raw_score = 0.0;
    double zne_score = 0.0;
    double valid_rate = 0.0;
    std::optional<double> jaccard;
    double day = 0.0;  // days since the first run
    std::optional<std::array<double, 3>> lambda_scores;  // per-run E(1),E(2),E(3) when recorded
};

struct ReplayFile {
    std::vector<RunSummary> runs;
    std::optional<double> baseline_score;
    std::string baseline_method;
};

ReplayFile load_replay(const std::filesystem::path& path);
std::vector<RunSummary> replay_runs(const std::filesystem::path& path);

}  // namespace qport
