#include "qport/stats.hpp"

#include "qport/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

namespace qport {

namespace {

double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

// modified Lentz continued fraction for the incomplete beta
double beta_cf(double a, double b, double x) {
    constexpr double tiny = 1e-300;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 500; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-15) break;
    }
    return h;
}

/// midranks of a vector (average rank for ties), 1-based
std::vector<double> midranks(const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = avg;
        i = j + 1;
    }
    return ranks;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    const auto n = static_cast<double>(a.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double num = 0.0, da = 0.0, db = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += (a[i] - ma) * (b[i] - mb);
        da += (a[i] - ma) * (a[i] - ma);
        db += (b[i] - mb) * (b[i] - mb);
    }
    if (da == 0.0 || db == 0.0) throw std::invalid_argument("correlation undefined for constant input");
    return num / std::sqrt(da * db);
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
    if (a <= 0.0 || b <= 0.0) throw std::invalid_argument("incomplete_beta: need a, b > 0");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    if (x > (a + 1.0) / (a + b + 2.0)) return 1.0 - incomplete_beta(b, a, 1.0 - x);
    const double ln_front = a * std::log(x) + b * std::log1p(-x) - log_beta(a, b);
    return std::exp(ln_front) * beta_cf(a, b, x) / a;
}

double student_t_cdf(double t, double df) {
    if (df <= 0.0) throw std::invalid_argument("student_t_cdf: need df > 0");
    const double x = df / (df + t * t);
    const double tail = 0.5 * incomplete_beta(df / 2.0, 0.5, x);
    return t >= 0.0 ? 1.0 - tail : tail;
}

double student_t_quantile(double p, double df) {
    if (p <= 0.0 || p >= 1.0) throw std::invalid_argument("student_t_quantile: need p in (0,1)");
    double lo = -1e3, hi = 1e3;
    while (student_t_cdf(lo, df) > p) lo *= 2.0;
    while (student_t_cdf(hi, df) < p) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (student_t_cdf(mid, df) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

TTestResult paired_t_one_sided(const std::vector<double>& scores, double baseline) {
    const std::size_t n = scores.size();
    if (n < 2) throw std::invalid_argument("paired_t_one_sided: need n >= 2");
    double mean = 0.0;
    for (double s : scores) mean += s - baseline;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double s : scores) {
        const double d = s - baseline - mean;
        ss += d * d;
    }
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    if (sd == 0.0) throw std::invalid_argument("paired_t_one_sided: zero variance in differences");

    TTestResult r;
    r.mean_diff = mean;
    r.df = static_cast<int>(n) - 1;
    r.t_stat = mean * std::sqrt(static_cast<double>(n)) / sd;
    r.p_one_sided = 1.0 - student_t_cdf(r.t_stat, static_cast<double>(r.df));
    r.cohen_d = mean / sd;
    const double margin =
        student_t_quantile(0.975, static_cast<double>(r.df)) * sd / std::sqrt(static_cast<double>(n));
    r.ci95 = {mean - margin, mean + margin};
    return r;
}

WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& scores, double baseline) {
    std::vector<double> abs_d;
    std::vector<bool> positive;
    for (double s : scores) {
        const double d = s - baseline;
        if (d == 0.0) continue;  // zero differences carry no sign information
        abs_d.push_back(std::abs(d));
        positive.push_back(d > 0.0);
    }
    const std::size_t m = abs_d.size();
    if (m == 0) throw std::invalid_argument("wilcoxon_signed_rank: all differences are zero");

    const std::vector<double> ranks = midranks(abs_d);
    double w = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        if (positive[i]) w += ranks[i];
    }

    WilcoxonResult out;
    out.w = w;
    if (m <= 20) {
        // exact null: signs independent and fair; count subsets by doubled
        // rank sum so midranks stay integral
        std::vector<int> doubled(m);
        for (std::size_t i = 0; i < m; ++i) doubled[i] = static_cast<int>(std::llround(2.0 * ranks[i]));
        const int total = std::accumulate(doubled.begin(), doubled.end(), 0);
        std::vector<double> count(static_cast<std::size_t>(total) + 1, 0.0);
        count[0] = 1.0;
        for (std::size_t i = 0; i < m; ++i) {
            for (int s = total; s >= doubled[i]; --s) {
                count[static_cast<std::size_t>(s)] += count[static_cast<std::size_t>(s - doubled[i])];
            }
        }
        const int w2 = static_cast<int>(std::llround(2.0 * w));
        double ge = 0.0;
        for (int s = w2; s <= total; ++s) ge += count[static_cast<std::size_t>(s)];
        out.p_one_sided = ge / std::pow(2.0, static_cast<double>(m));
    } else {
        const double mm = static_cast<double>(m);
        const double mu = mm * (mm + 1.0) / 4.0;
        // tie correction on the variance
        double tie_term = 0.0;
        std::vector<double> sorted = abs_d;
        std::sort(sorted.begin(), sorted.end());
        std::size_t i = 0;
        while (i < sorted.size()) {
            std::size_t j = i;
            while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
            const double t = static_cast<double>(j - i + 1);
            tie_term += t * t * t - t;
            i = j + 1;
        }
        const double var = mm * (mm + 1.0) * (2.0 * mm + 1.0) / 24.0 - tie_term / 48.0;
        const double z = (w - mu) / std::sqrt(var);
        out.p_one_sided = 1.0 - normal_cdf(z);
    }
    return out;
}

ComparisonReport compare_to_baseline(const std::vector<double>& scores, double baseline) {
    const TTestResult t = paired_t_one_sided(scores, baseline);
    const WilcoxonResult w = wilcoxon_signed_rank(scores, baseline);
    ComparisonReport r;
    r.mean_diff = t.mean_diff;
    r.t_stat = t.t_stat;
    r.df = t.df;
    r.p_one_sided = t.p_one_sided;
    r.cohen_d = t.cohen_d;
    r.ci95 = t.ci95;
    r.wilcoxon_w = w.w;
    r.wilcoxon_p = w.p_one_sided;
    return r;
}

double jaccard(const Portfolio& a, const Portfolio& b) {
    if (a.size() != b.size()) throw std::invalid_argument("jaccard: size mismatch");
    int inter = 0, uni = 0;
    for (Index i = 0; i < a.size(); ++i) {
        const bool in_a = a.bits[i] != 0, in_b = b.bits[i] != 0;
        inter += in_a && in_b;
        uni += in_a || in_b;
    }
    return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

double overlap_coefficient(const Portfolio& a, const Portfolio& b) {
    if (a.size() != b.size()) throw std::invalid_argument("overlap_coefficient: size mismatch");
    const int ka = a.cardinality(), kb = b.cardinality();
    if (ka == 0 || kb == 0) return 1.0;
    int inter = 0;
    for (Index i = 0; i < a.size(); ++i) inter += (a.bits[i] && b.bits[i]) ? 1 : 0;
    return static_cast<double>(inter) / static_cast<double>(std::min(ka, kb));
}

SpearmanResult spearman(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("spearman: length mismatch");
    if (x.size() < 3) throw std::invalid_argument("spearman: need n >= 3");
    const std::vector<double> rx = midranks(x);
    std::vector<double> ry = midranks(y);
    SpearmanResult out;
    out.rho = pearson(rx, ry);

    const std::size_t n = x.size();
    if (n <= 10) {
        // exact permutation null; distinct multiset arrangements carry equal
        // multiplicity, so enumerating them is equivalent to all n! maps
        std::vector<double> perm = ry;
        std::sort(perm.begin(), perm.end());
        const double target = std::abs(out.rho) - 1e-12;
        std::int64_t hits = 0, total = 0;
        do {
            ++total;
            if (std::abs(pearson(rx, perm)) >= target) ++hits;
        } while (std::next_permutation(perm.begin(), perm.end()));
        out.p_two_sided = static_cast<double>(hits) / static_cast<double>(total);
    } else {
        const double nn = static_cast<double>(n);
        const double t = out.rho * std::sqrt((nn - 2.0) / (1.0 - out.rho * out.rho));
        out.p_two_sided = 2.0 * (1.0 - student_t_cdf(std::abs(t), nn - 2.0));
    }
    return out;
}

MannWhitneyResult mann_whitney_u(const std::vector<double>& group_a,
                                 const std::vector<double>& group_b) {
    if (group_a.empty() || group_b.empty()) throw std::invalid_argument("mann_whitney_u: empty group");
    const std::size_t n1 = group_a.size(), n2 = group_b.size();
    std::vector<double> pooled = group_a;
    pooled.insert(pooled.end(), group_b.begin(), group_b.end());
    const std::vector<double> ranks = midranks(pooled);

    double rank_sum_a = 0.0;
    for (std::size_t i = 0; i < n1; ++i) rank_sum_a += ranks[i];
    const double ua = rank_sum_a - static_cast<double>(n1) * static_cast<double>(n1 + 1) / 2.0;
    const double ub = static_cast<double>(n1) * static_cast<double>(n2) - ua;

    MannWhitneyResult out;
    out.u = std::min(ua, ub);

    const double n12 = static_cast<double>(n1) * static_cast<double>(n2);
    double exact_arrangements = 1.0;
    {
        const std::size_t kk = std::min(n1, n2);
        for (std::size_t i = 0; i < kk; ++i) {
            exact_arrangements *= static_cast<double>(n1 + n2 - i) / static_cast<double>(i + 1);
        }
    }
    if (exact_arrangements <= 2e5) {
        // enumerate which pooled positions belong to group A
        std::vector<bool> pick(n1 + n2, false);
        std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(n1), true);
        std::sort(pick.begin(), pick.end());  // start from the first combination
        std::int64_t low = 0, high = 0, total = 0;
        do {
            double rs = 0.0;
            for (std::size_t i = 0; i < pick.size(); ++i) {
                if (pick[i]) rs += ranks[i];
            }
            const double u = rs - static_cast<double>(n1) * static_cast<double>(n1 + 1) / 2.0;
            ++total;
            if (u <= ua + 1e-12) ++low;
            if (u >= n12 - ua - 1e-12) ++high;
        } while (std::next_permutation(pick.begin(), pick.end()));
        out.p_two_sided = std::min(1.0, static_cast<double>(low + high) / static_cast<double>(total));
    } else {
        const double nn = static_cast<double>(n1 + n2);
        double tie_term = 0.0;
        std::vector<double> sorted = pooled;
        std::sort(sorted.begin(), sorted.end());
        std::size_t i = 0;
        while (i < sorted.size()) {
            std::size_t j = i;
            while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
            const double t = static_cast<double>(j - i + 1);
            tie_term += (t * t * t - t) / (nn * (nn - 1.0));
            i = j + 1;
        }
        const double var = n12 / 12.0 * ((nn + 1.0) - tie_term);
        const double z = (out.u - n12 / 2.0 + 0.5) / std::sqrt(var);  // continuity corrected
        out.p_two_sided = std::min(1.0, 2.0 * normal_cdf(z));
    }
    return out;
}

std::array<double, 2> run_bootstrap_mean(const std::vector<double>& scores, int b,
                                         std::uint64_t seed) {
    if (scores.empty()) throw std::invalid_argument("run_bootstrap_mean: empty input");
    if (b < 1) throw std::invalid_argument("run_bootstrap_mean: need b >= 1");
    std::vector<double> means(static_cast<std::size_t>(b));
    for (int rep = 0; rep < b; ++rep) {
        Rng rng(Rng::derive_stream(seed, static_cast<std::uint64_t>(rep)));
        double sum = 0.0;
        for (std::size_t i = 0; i < scores.size(); ++i) {
            sum += scores[rng.uniform_int(scores.size())];
        }
        means[static_cast<std::size_t>(rep)] = sum / static_cast<double>(scores.size());
    }
    std::sort(means.begin(), means.end());
    auto percentile = [&](double q) {
        const double pos = q * static_cast<double>(means.size() - 1);
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        const auto hi = static_cast<std::size_t>(std::ceil(pos));
        const double w = pos - static_cast<double>(lo);
        return (1.0 - w) * means[lo] + w * means[hi];
    };
    return {percentile(0.025), percentile(0.975)};
}

std::vector<LooEntry> leave_one_out(const std::vector<double>& scores, double baseline) {
    if (scores.size() < 3) throw std::invalid_argument("leave_one_out: need n >= 3");
    std::vector<LooEntry> entries;
    for (std::size_t skip = 0; skip < scores.size(); ++skip) {
        LooEntry entry;
        entry.excluded = skip;
        std::vector<double> reduced;
        for (std::size_t i = 0; i < scores.size(); ++i) {
            if (i != skip) reduced.push_back(scores[i]);
        }
        try {
            entry.report = compare_to_baseline(reduced, baseline);
        } catch (const std::exception& e) {
            entry.error = e.what();
        }
        entries.push_back(std::move(entry));
    }
    return entries;
}

double feasible_shot_rate(const ShotRecord& record, int k) {
    if (record.shots <= 0) throw std::invalid_argument("feasible_shot_rate: empty record");
    std::int64_t feasible = 0;
    for (const auto& [bits, count] : record.counts) {
        const int weight = static_cast<int>(std::count(bits.begin(), bits.end(), '1'));
        if (weight == k) feasible += count;
    }
    return static_cast<double>(feasible) / static_cast<double>(record.shots);
}

double feasible_score_expectation(const ShotRecord& record, const MunicipalityTable& table,
                                  const ObjectiveWeights& weights, int k) {
    double total = 0.0;
    std::int64_t feasible = 0;
    for (const auto& [bits, count] : record.counts) {
        const Portfolio p = portfolio_from_bitstring(bits);
        if (p.cardinality() != k) continue;
        total += static_cast<double>(count) * objective_score(table, weights, p);
        feasible += count;
    }
    if (feasible == 0) {
        throw std::invalid_argument("feasible_score_expectation: no feasible shot in record");
    }
    return total / static_cast<double>(feasible);
}

Portfolio mode_bitstring(const ShotRecord& record, int k) {
    const std::string* best = nullptr;
    std::int64_t best_count = 0;
    // map iteration is lexicographic, so strict improvement keeps the
    // smaller string on ties
    for (const auto& [bits, count] : record.counts) {
        const int weight = static_cast<int>(std::count(bits.begin(), bits.end(), '1'));
        if (weight != k) continue;
        if (best == nullptr || count > best_count) {
            best = &bits;
            best_count = count;
        }
    }
    if (best == nullptr) throw std::invalid_argument("mode_bitstring: no feasible shot in record");
    return portfolio_from_bitstring(*best);
}

ReplayFile load_replay(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open replay file: " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("replay file " + path.string() + " is not valid JSON: " + e.what());
    }
    if (!j.is_object() || !j.contains("runs") || !j["runs"].is_array()) {
        throw std::invalid_argument("replay file must hold an object with a 'runs' array");
    }

    ReplayFile file;
    if (j.contains("baseline") && j["baseline"].is_object()) {
        const auto& b = j["baseline"];
        if (b.contains("score")) file.baseline_score = b["score"].get<double>();
        if (b.contains("method")) file.baseline_method = b["method"].get<std::string>();
    }
    for (const auto& r : j["runs"]) {
        RunSummary run;
        try {
            run.run_id = r.at("run").get<int>();
            run.backend = r.at("backend").get<std::string>();
            run.raw_score = r.at("raw_score").get<double>();
            run.zne_score = r.at("zne_score").get<double>();
            run.valid_rate = r.at("valid_rate").get<double>();
            run.day = r.at("day").get<double>();
            if (r.contains("jaccard") && !r["jaccard"].is_null()) {
                run.jaccard = r["jaccard"].get<double>();
            }
            if (r.contains("lambda_scores") && !r["lambda_scores"].is_null()) {
                const auto& ls = r["lambda_scores"];
                if (!ls.is_array() || ls.size() != 3) {
                    throw std::invalid_argument("lambda_scores must hold three values");
                }
                run.lambda_scores = std::array<double, 3>{ls[0].get<double>(), ls[1].get<double>(),
                                                          ls[2].get<double>()};
            }
        } catch (const nlohmann::json::exception& e) {
            throw std::invalid_argument("malformed run entry in " + path.string() + ": " + e.what());
        }
        if (run.valid_rate < 0.0 || run.valid_rate > 1.0) {
            throw std::invalid_argument("valid_rate outside [0,1] in " + path.string());
        }
        if (run.jaccard && (*run.jaccard < 0.0 || *run.jaccard > 1.0)) {
            throw std::invalid_argument("jaccard outside [0,1] in " + path.string());
        }
        file.runs.push_back(std::move(run));
    }
    return file;
}

std::vector<RunSummary> replay_runs(const std::filesystem::path& path) {
    return load_replay(path).runs;
}

}  // namespace qport
