#include "qport/classical.hpp"

#include "qport/rng.hpp"

#include <chrono>
#include <cmath>

namespace qport {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// lexicographic order on MSB-first bitstrings equals numeric order on the
// basis index, since candidate n-1 is the leading character
bool lex_smaller(const Portfolio& a, const Portfolio& b) {
    return a.basis_index() < b.basis_index();
}

struct Incremental {
    Vector linear;
    Matrix synergy;

    explicit Incremental(const MunicipalityTable& table, const ObjectiveWeights& weights)
        : linear(combined_linear(table, weights)), synergy(combined_synergy(table, weights)) {}

    double score_of(const std::vector<Index>& selected) const {
        double s = 0.0;
        for (std::size_t a = 0; a < selected.size(); ++a) {
            s += linear[selected[a]];
            for (std::size_t b = a + 1; b < selected.size(); ++b) {
                s += synergy(selected[a], selected[b]);
            }
        }
        return s;
    }
};

Portfolio portfolio_from_indices(const std::vector<Index>& selected, Index n) {
    IntVector bits = IntVector::Zero(n);
    for (Index i : selected) bits[i] = 1;
    return Portfolio(std::move(bits));
}

std::vector<Index> sample_k_subset(Index n, int k, Rng& rng) {
    std::vector<Index> pool(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
    for (int i = 0; i < k; ++i) {
        const auto j = static_cast<std::size_t>(i) +
                       static_cast<std::size_t>(rng.uniform_int(static_cast<std::uint64_t>(n - i)));
        std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
    }
    pool.resize(static_cast<std::size_t>(k));
    return pool;
}

}  // namespace

std::string method_name(SolverMethod method) {
    switch (method) {
        case SolverMethod::greedy: return "greedy";
        case SolverMethod::simulated_annealing: return "simulated_annealing";
        case SolverMethod::random_search: return "random_search";
        case SolverMethod::exact: return "exact";
    }
    throw std::logic_error("unknown method");
}

SolverResult greedy(const MunicipalityTable& table, const ObjectiveWeights& weights, int k) {
    weights.validate();
    const Index n = table.size();
    if (k <= 0 || k > n) throw std::invalid_argument("greedy: need 0 < k <= n");
    const auto start = Clock::now();

    const Incremental inc(table, weights);
    std::vector<bool> selected(static_cast<std::size_t>(n), false);
    Vector synergy_with_selection = Vector::Zero(n);
    std::vector<Index> picks;
    std::int64_t evaluations = 0;
    double score = 0.0;

    for (int round = 0; round < k; ++round) {
        Index best = -1;
        double best_gain = 0.0;
        for (Index c = 0; c < n; ++c) {
            if (selected[static_cast<std::size_t>(c)]) continue;
            const double gain = inc.linear[c] + synergy_with_selection[c];
            ++evaluations;
            if (best < 0 || gain > best_gain) {
                best = c;
                best_gain = gain;
            }
        }
        selected[static_cast<std::size_t>(best)] = true;
        picks.push_back(best);
        score += best_gain;
        synergy_with_selection += inc.synergy.col(best);
    }

    SolverResult result;
    result.portfolio = portfolio_from_indices(picks, n);
    result.score = score;
    result.evaluations = evaluations;
    result.elapsed_ms = elapsed_ms_since(start);
    result.method = SolverMethod::greedy;
    return result;
}

KSweepResult greedy_k_sweep(const MunicipalityTable& table, const ObjectiveWeights& weights,
                            const std::vector<int>& ks) {
    KSweepResult sweep;
    for (int k : ks) sweep.results.push_back(greedy(table, weights, k));
    sweep.nested = true;
    for (std::size_t a = 0; a < sweep.results.size(); ++a) {
        for (std::size_t b = a + 1; b < sweep.results.size(); ++b) {
            const auto& small = sweep.results[a].portfolio;
            const auto& large = sweep.results[b].portfolio;
            if (small.cardinality() > large.cardinality()) continue;
            for (Index i = 0; i < small.size(); ++i) {
                if (small.bits[i] && !large.bits[i]) sweep.nested = false;
            }
        }
    }
    return sweep;
}

SolverResult simulated_annealing(const MunicipalityTable& table, const ObjectiveWeights& weights,
                                 int k, const AnnealConfig& config, std::uint64_t seed) {
    weights.validate();
    const Index n = table.size();
    if (k <= 0 || k >= n) throw std::invalid_argument("simulated_annealing: need 0 < k < n");
    if (config.cooling <= 0.0 || config.cooling >= 1.0) {
        throw std::invalid_argument("simulated_annealing: cooling must lie in (0,1)");
    }
    const auto start = Clock::now();
    const Incremental inc(table, weights);
    Rng rng(Rng::derive_stream(seed, 0));

    // instance-adaptive initial temperature: spread of random feasible scores
    double t0 = config.initial_temperature;
    if (t0 < 0.0) {
        const int probes = 100;
        Vector scores(probes);
        for (int i = 0; i < probes; ++i) {
            scores[i] = inc.score_of(sample_k_subset(n, k, rng));
        }
        t0 = std::sqrt((scores.array() - scores.mean()).square().mean());
        if (t0 <= 0.0) t0 = config.temperature_floor;
    }

    std::vector<Index> selected;
    if (config.greedy_start) {
        const SolverResult g = greedy(table, weights, k);
        for (Index i = 0; i < n; ++i) {
            if (g.portfolio.bits[i]) selected.push_back(i);
        }
    } else {
        selected = sample_k_subset(n, k, rng);
    }
    std::vector<Index> complement;
    std::vector<bool> in_sel(static_cast<std::size_t>(n), false);
    for (Index i : selected) in_sel[static_cast<std::size_t>(i)] = true;
    for (Index i = 0; i < n; ++i) {
        if (!in_sel[static_cast<std::size_t>(i)]) complement.push_back(i);
    }

    Vector synergy_with_selection = Vector::Zero(n);
    for (Index i : selected) synergy_with_selection += inc.synergy.col(i);
    double current = inc.score_of(selected);

    Portfolio best_portfolio = portfolio_from_indices(selected, n);
    double best_score = current;

    double temperature = t0;
    std::int64_t evaluations = 0;
    const bool use_wall_clock = config.max_evaluations <= 0 && config.wall_clock_seconds > 0.0;
    auto budget_left = [&] {
        if (use_wall_clock) {
            if ((evaluations & 0xff) == 0 &&
                elapsed_ms_since(start) >= config.wall_clock_seconds * 1000.0) {
                return false;
            }
            return true;
        }
        return evaluations < config.max_evaluations;
    };

    while (budget_left()) {
        const auto ri = static_cast<std::size_t>(rng.uniform_int(selected.size()));
        const auto ai = static_cast<std::size_t>(rng.uniform_int(complement.size()));
        const Index r = selected[ri];
        const Index a = complement[ai];
        const double delta = (inc.linear[a] + synergy_with_selection[a] - inc.synergy(r, a)) -
                             (inc.linear[r] + synergy_with_selection[r]);
        ++evaluations;
        bool accept = delta >= 0.0;
        if (!accept && temperature > 0.0) accept = rng.uniform() < std::exp(delta / temperature);
        if (accept) {
            selected[ri] = a;
            complement[ai] = r;
            synergy_with_selection += inc.synergy.col(a) - inc.synergy.col(r);
            current += delta;
            if (current > best_score ||
                (current == best_score && lex_smaller(portfolio_from_indices(selected, n), best_portfolio))) {
                best_score = current;
                best_portfolio = portfolio_from_indices(selected, n);
            }
        }
        temperature = std::max(temperature * config.cooling, config.temperature_floor);
    }

    SolverResult result;
    result.portfolio = best_portfolio;
    result.score = best_score;
    result.evaluations = evaluations;
    result.elapsed_ms = elapsed_ms_since(start);
    result.method = SolverMethod::simulated_annealing;
    result.seed = seed;
    return result;
}

RandomSearchResult random_search(const MunicipalityTable& table, const ObjectiveWeights& weights,
                                 int k, std::int64_t iterations, std::uint64_t seed) {
    weights.validate();
    const Index n = table.size();
    if (k <= 0 || k > n) throw std::invalid_argument("random_search: need 0 < k <= n");
    if (iterations < 1) throw std::invalid_argument("random_search: need iterations >= 1");
    const auto start = Clock::now();
    const Incremental inc(table, weights);
    Rng rng(Rng::derive_stream(seed, 0));

    RandomSearchResult out;
    double mean = 0.0, m2 = 0.0;
    double best_score = 0.0;
    Portfolio best;
    for (std::int64_t it = 0; it < iterations; ++it) {
        const auto subset = sample_k_subset(n, k, rng);
        const double score = inc.score_of(subset);
        const double d1 = score - mean;
        mean += d1 / static_cast<double>(it + 1);
        m2 += d1 * (score - mean);
        if (it == 0 || score > best_score ||
            (score == best_score && lex_smaller(portfolio_from_indices(subset, n), best))) {
            best_score = score;
            best = portfolio_from_indices(subset, n);
        }
    }
    out.best.portfolio = best;
    out.best.score = best_score;
    out.best.evaluations = iterations;
    out.best.elapsed_ms = elapsed_ms_since(start);
    out.best.method = SolverMethod::random_search;
    out.best.seed = seed;
    out.mean = mean;
    out.sd = iterations > 1 ? std::sqrt(m2 / static_cast<double>(iterations - 1)) : 0.0;
    return out;
}

namespace {

void enumerate_rec(const Incremental& inc, Index n, int k, Index start, double lin_sum,
                   double syn_sum, std::vector<Index>& chosen, std::int64_t& visited,
                   double& best_score, std::vector<Index>& best_chosen, bool& have_best) {
    if (static_cast<int>(chosen.size()) == k) {
        ++visited;
        const double score = lin_sum + syn_sum;
        bool better = !have_best || score > best_score;
        if (!better && have_best && score == best_score) {
            // lexicographically smallest bitstring wins ties
            Portfolio cand = portfolio_from_indices(chosen, n);
            Portfolio cur = portfolio_from_indices(best_chosen, n);
            better = lex_smaller(cand, cur);
        }
        if (better) {
            best_score = score;
            best_chosen = chosen;
            have_best = true;
        }
        return;
    }
    const int remaining = k - static_cast<int>(chosen.size());
    for (Index c = start; c <= n - remaining; ++c) {
        double delta_syn = 0.0;
        for (Index picked : chosen) delta_syn += inc.synergy(picked, c);
        chosen.push_back(c);
        enumerate_rec(inc, n, k, c + 1, lin_sum + inc.linear[c], syn_sum + delta_syn, chosen,
                      visited, best_score, best_chosen, have_best);
        chosen.pop_back();
    }
}

}  // namespace

SolverResult enumerate_exact(const MunicipalityTable& table, const ObjectiveWeights& weights, int k) {
    weights.validate();
    const Index n = table.size();
    if (k <= 0 || k > n) throw std::invalid_argument("enumerate_exact: need 0 < k <= n");
    if (search_space_size(static_cast<int>(n), k).to_double() > 1e7) {
        throw std::invalid_argument("enumerate_exact: more than 1e7 portfolios, refusing");
    }
    const auto start = Clock::now();
    const Incremental inc(table, weights);

    std::vector<Index> chosen, best_chosen;
    chosen.reserve(static_cast<std::size_t>(k));
    std::int64_t visited = 0;
    double best_score = 0.0;
    bool have_best = false;
    enumerate_rec(inc, n, k, 0, 0.0, 0.0, chosen, visited, best_score, best_chosen, have_best);

    SolverResult result;
    result.portfolio = portfolio_from_indices(best_chosen, n);
    result.score = best_score;
    result.evaluations = visited;
    result.elapsed_ms = elapsed_ms_since(start);
    result.method = SolverMethod::exact;
    return result;
}

}  // namespace qport
