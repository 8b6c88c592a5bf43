#include "qport/zne.hpp"

#include "qport/classical.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace qport;
using namespace qport::testing;

namespace {

using Points = std::vector<std::pair<double, double>>;

struct Setup {
    IsingModel model;
    QaoaParams params;
    Portfolio start;
};

Setup noisy_setup(int n, int k, std::uint64_t seed) {
    const MunicipalityTable table = synthesize_table(n, seed);
    const ObjectiveWeights w;
    Setup s;
    s.model = qubo_to_ising(build_qubo(table, w, k, 100.0, 0.0));
    s.params = warm_params(table);
    s.start = greedy(table, w, k).portfolio;
    return s;
}

/// Scorer over records whose bitstrings carry one bit: fraction of ones.
double one_fraction(const ShotRecord& record) {
    std::int64_t ones = 0;
    for (const auto& [bits, count] : record.counts) {
        if (bits == "1") ones += count;
    }
    return static_cast<double>(ones) / static_cast<double>(record.shots);
}

ShotRecord binomial_record(double p, std::int64_t shots, double lambda, Rng& rng) {
    ShotRecord rec;
    rec.shots = shots;
    rec.noise_scale = lambda;
    std::int64_t ones = 0;
    for (std::int64_t i = 0; i < shots; ++i) ones += rng.uniform() < p ? 1 : 0;
    if (ones > 0) rec.counts["1"] = ones;
    if (ones < shots) rec.counts["0"] = shots - ones;
    return rec;
}

}  // namespace

TEST_SUITE_BEGIN("zne");

TEST_CASE("effective_error closed form") {
    CHECK(effective_error(0.37, 1.0) == doctest::Approx(0.37));
    CHECK(effective_error(0.0, 7.5) == 0.0);
    CHECK(effective_error(0.01, 3.0) == doctest::Approx(0.029701).epsilon(1e-12));
    CHECK_THROWS_AS(effective_error(-0.1, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(effective_error(1.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(effective_error(0.1, 0.5), std::invalid_argument);
}

TEST_CASE("effective_error increases strictly in lambda") {
    for (double q : {0.001, 0.01, 0.2, 0.9}) {
        double prev = effective_error(q, 1.0);
        for (double lambda = 1.5; lambda <= 6.0; lambda += 0.5) {
            const double cur = effective_error(q, lambda);
            CHECK(cur > prev);
            prev = cur;
        }
    }
}

TEST_CASE("linear extrapolation on an exact line") {
    const LinearFit fit = extrapolate_linear(Points{{1, 10}, {2, 8}, {3, 6}});
    CHECK(fit.e0 == doctest::Approx(12.0).epsilon(1e-12));
    CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("linear extrapolation of a constant") {
    const LinearFit fit = extrapolate_linear(Points{{1, 4.2}, {2, 4.2}, {3, 4.2}});
    CHECK(fit.e0 == doctest::Approx(4.2));
    CHECK_THROWS_AS(extrapolate_linear(Points{{2, 1}, {2, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(extrapolate_linear(Points{{1, 1}}), std::invalid_argument);
}

TEST_CASE("quadratic extrapolation interpolates three points exactly") {
    // E = 3 + 2l + l^2
    CHECK(extrapolate_quadratic(Points{{1, 6}, {2, 11}, {3, 18}}) == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(extrapolate_quadratic(Points{{1, 5}, {2, 5}, {3, 5}}) == doctest::Approx(5.0));
    CHECK_THROWS_AS(extrapolate_quadratic(Points{{1, 1}, {2, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(extrapolate_quadratic(Points{{1, 1}, {1, 2}, {2, 0}}), std::invalid_argument);
}

TEST_CASE("richardson closed form") {
    CHECK(richardson(4.4, 4.4, 4.4) == doctest::Approx(4.4));
    CHECK(richardson(10, 8, 6) == doctest::Approx(12.0));
}

TEST_CASE("quadratic equals richardson on any three points at lambda 1,2,3") {
    Rng rng(31337);
    for (int rep = 0; rep < 1000; ++rep) {
        const double e1 = 200.0 * rng.uniform() - 100.0;
        const double e2 = 200.0 * rng.uniform() - 100.0;
        const double e3 = 200.0 * rng.uniform() - 100.0;
        const double quad = extrapolate_quadratic(Points{{1, e1}, {2, e2}, {3, e3}});
        CHECK(std::abs(quad - richardson(e1, e2, e3)) < 1e-9);
    }
}

TEST_CASE("all extrapolators are fixed points on constant input") {
    const double e = -7.25;
    const Points pts{{1, e}, {2, e}, {3, e}};
    CHECK(extrapolate_linear(pts).e0 == doctest::Approx(e));
    CHECK(extrapolate_quadratic(pts) == doctest::Approx(e));
    CHECK(richardson(e, e, e) == doctest::Approx(e));
}

TEST_CASE("richardson beats the raw value on exponential-decay synthetic data") {
    // generator g(l) = base + A*exp(-C*l); target is g(0)
    for (double a : {0.1, 0.5, 1.0, 2.0, 5.0}) {
        for (double c : {0.01, 0.05, 0.1, 0.25, 0.5}) {
            const double base = -3.0;
            auto g = [&](double l) { return base + a * std::exp(-c * l); };
            const double target = g(0.0);
            const double rich = richardson(g(1.0), g(2.0), g(3.0));
            CHECK(std::abs(rich - target) < std::abs(g(1.0) - target));
        }
    }
}

TEST_CASE("noise config validation") {
    NoiseConfig nc;
    nc.two_qubit_depolarizing_prob = 1.0;
    CHECK_THROWS_AS(nc.validate(), std::invalid_argument);
    nc.two_qubit_depolarizing_prob = 0.1;
    nc.fold_factor = 0.5;
    CHECK_THROWS_AS(nc.validate(), std::invalid_argument);
    nc.fold_factor = 2.0;
    nc.trajectories = 0;
    CHECK_THROWS_AS(nc.validate(), std::invalid_argument);
}

TEST_CASE("zero noise reduces to plain sampling under the same seed discipline") {
    const Setup s = noisy_setup(8, 3, 77);
    NoiseConfig nc;
    nc.two_qubit_depolarizing_prob = 0.0;
    nc.seed = 1234;
    nc.trajectories = 1;
    const ShotRecord noisy = noisy_run(s.model, s.params, s.start, nc, 4096);
    const Statevector ideal = run_qaoa(s.model, s.params, s.start);
    // single trajectory draws its shot stream from (seed, trajectories + 0)
    const ShotRecord plain = sample_shots(ideal, 4096, Rng::derive_stream(nc.seed, 1));
    CHECK(noisy.counts == plain.counts);
}

TEST_CASE("amplified noise degrades the expectation") {
    const Setup s = noisy_setup(10, 4, 13);
    NoiseConfig base;
    base.two_qubit_depolarizing_prob = 0.01;
    base.seed = 5;
    base.trajectories = 50;
    NoiseConfig tripled = base;
    tripled.fold_factor = 3.0;
    const double e1 = shot_expectation(noisy_run(s.model, s.params, s.start, base, 8192), s.model);
    const double e3 = shot_expectation(noisy_run(s.model, s.params, s.start, tripled, 8192), s.model);
    // energies rise toward the maximally mixed value as noise grows
    CHECK(e3 > e1);
}

TEST_CASE("monotone decay across the three amplification levels") {
    const Setup s = noisy_setup(12, 4, 42);
    double prev = -1e300;
    for (double lambda : {1.0, 2.0, 3.0}) {
        NoiseConfig nc;
        nc.two_qubit_depolarizing_prob = 0.01;
        nc.fold_factor = lambda;
        nc.seed = 99;  // shared seed couples the fold levels
        nc.trajectories = 256;
        const double e = shot_expectation(noisy_run(s.model, s.params, s.start, nc, 8192), s.model);
        CHECK(e > prev);
        prev = e;
    }
}

TEST_CASE("bootstrap is deterministic and degenerate records give zero width") {
    ShotRecord degenerate;
    degenerate.shots = 100;
    degenerate.counts["1"] = 100;
    const std::vector<ShotRecord> records{degenerate, degenerate, degenerate};
    const std::vector<double> lambdas{1, 2, 3};
    const auto ci = bootstrap_ci(records, lambdas, ExtrapolationMethod::quadratic, 100, 42, one_fraction);
    CHECK(ci[0] == doctest::Approx(1.0));
    CHECK(ci[1] == doctest::Approx(1.0));
    const auto again = bootstrap_ci(records, lambdas, ExtrapolationMethod::quadratic, 100, 42, one_fraction);
    CHECK(ci == again);
}

TEST_CASE("bootstrap interval covers the true extrapolation in most repetitions") {
    // records drawn from p(l) = 0.3 + 0.05 l, so the true linear E0 is 0.3
    const std::vector<double> lambdas{1, 2, 3};
    int covered = 0;
    for (std::uint64_t rep = 0; rep < 100; ++rep) {
        Rng rng(Rng::derive_stream(rep, 5150));
        std::vector<ShotRecord> records;
        for (double l : lambdas) records.push_back(binomial_record(0.3 + 0.05 * l, 800, l, rng));
        const auto ci = bootstrap_ci(records, lambdas, ExtrapolationMethod::linear, 200,
                                     Rng::derive_stream(rep, 6060), one_fraction);
        if (ci[0] <= 0.3 && 0.3 <= ci[1]) ++covered;
    }
    CHECK(covered >= 90);
}

TEST_CASE("bootstrap rejects empty records") {
    ShotRecord empty;
    empty.shots = 0;
    CHECK_THROWS_AS(bootstrap_ci({empty}, {1.0}, ExtrapolationMethod::linear, 10, 1, one_fraction),
                    std::invalid_argument);
}

TEST_CASE("zne_estimate runs the full three-level protocol") {
    const Setup s = noisy_setup(10, 3, 21);
    std::vector<ShotRecord> records;
    const std::vector<double> lambdas{1, 2, 3};
    for (double lambda : lambdas) {
        NoiseConfig nc;
        nc.two_qubit_depolarizing_prob = 0.02;
        nc.fold_factor = lambda;
        nc.seed = 7;
        nc.trajectories = 64;
        records.push_back(noisy_run(s.model, s.params, s.start, nc, 2048));
    }
    const auto scorer = [&](const ShotRecord& r) { return shot_expectation(r, s.model); };
    const ZneEstimate est = zne_estimate(records, lambdas, scorer, 100, 42);
    CHECK(est.values.size() == 3);
    CHECK_FALSE(est.quadratic_r2.has_value());
    CHECK(est.richardson_e0 ==
          doctest::Approx(richardson(est.values[0], est.values[1], est.values[2])));
    CHECK(est.linear_ci[0] <= est.linear_ci[1]);
    CHECK(est.quadratic_ci[0] <= est.quadratic_ci[1]);
    CHECK(est.richardson_ci[0] <= est.richardson_ci[1]);
    CHECK(est.bootstrap_seed == 42);
    CHECK_THROWS_AS(zne_estimate({records[0]}, {1.0}, scorer, 10, 1), std::invalid_argument);
}

TEST_SUITE_END();
