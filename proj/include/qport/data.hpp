#pragma once

#include "qport/bigint.hpp"
#include "qport/types.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace qport {

/// Per-candidate normalized scores. All three lie in [0,1] after ingest.
struct MunicipalityRecord {
    std::string id;
    double carbon = 0.0;
    double biodiversity = 0.0;
    double social = 0.0;
};

/// Candidate pool plus the three pairwise interaction matrices:
/// binary territorial adjacency, biodiversity synergy and social synergy.
/// All matrices are symmetric with zero diagonal and dimension n = records.size().
struct MunicipalityTable {
    std::vector<MunicipalityRecord> records;
    Matrix adjacency;
    Matrix bio_synergy;
    Matrix soc_synergy;

    Index size() const { return static_cast<Index>(records.size()); }

    Vector carbon_scores() const;
    Vector biodiversity_scores() const;
    Vector social_scores() const;

    /// Throws std::invalid_argument when any structural invariant is broken.
    void validate() const;
};

/// Min-max rescaling onto [0,1]; a constant input maps to all zeros
/// (no-signal convention). Works on any Eigen dense expression.
template <typename Derived>
Vector min_max_normalize(const Eigen::MatrixBase<Derived>& values) {
    if (values.size() == 0) throw std::invalid_argument("min_max_normalize: empty input");
    const double lo = values.minCoeff();
    const double hi = values.maxCoeff();
    if (hi == lo) return Vector::Zero(values.size());
    return (values.array() - lo) / (hi - lo);
}

Vector min_max_normalize(const std::vector<double>& values);

/// Loads a table given the scores CSV (header `id,carbon,biodiversity,social`).
/// The three matrix files are resolved as siblings of the scores file:
/// adjacency.csv, bio_synergy.csv, soc_synergy.csv (dense, headerless).
MunicipalityTable load_table(const std::filesystem::path& scores_csv);

/// Writes the four-file layout accepted by load_table into `dir`.
void save_table(const MunicipalityTable& table, const std::filesystem::path& dir);

/// Deterministic synthetic instance: scores are min-max-normalized uniforms,
/// adjacency is a random geometric graph on the unit square with the radius
/// tuned to mean degree about 4, synergies are adjacency-masked uniforms.
MunicipalityTable synthesize_table(int n, std::uint64_t seed);

/// Exact number of k-subsets of n candidates.
BigUint search_space_size(int n, int k);

}  // namespace qport
