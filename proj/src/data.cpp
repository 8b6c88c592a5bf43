#include "qport/data.hpp"

#include "qport/rng.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace qport {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

double parse_double(const std::string& s, const std::string& context) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("invalid numeric value '" + s + "' in " + context);
    }
}

Matrix load_dense_matrix(const std::filesystem::path& path, Index n) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open matrix file: " + path.string());
    Matrix m(n, n);
    std::string line;
    Index row = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (row >= n) throw std::invalid_argument("too many rows in " + path.string());
        const auto fields = split_csv_line(line);
        if (static_cast<Index>(fields.size()) != n) {
            throw std::invalid_argument("row " + std::to_string(row) + " of " + path.string() +
                                        " has " + std::to_string(fields.size()) +
                                        " columns, expected " + std::to_string(n));
        }
        for (Index c = 0; c < n; ++c) m(row, c) = parse_double(fields[static_cast<std::size_t>(c)], path.string());
        ++row;
    }
    if (row != n) {
        throw std::invalid_argument(path.string() + " has " + std::to_string(row) +
                                    " rows, expected " + std::to_string(n));
    }
    return m;
}

void check_symmetric_zero_diag(const Matrix& m, const std::string& name) {
    for (Index i = 0; i < m.rows(); ++i) {
        if (m(i, i) != 0.0) throw std::invalid_argument(name + " diagonal must be zero at " + std::to_string(i));
        for (Index j = i + 1; j < m.cols(); ++j) {
            if (m(i, j) != m(j, i)) {
                throw std::invalid_argument(name + " is not symmetric at (" + std::to_string(i) +
                                            "," + std::to_string(j) + ")");
            }
        }
    }
}

void write_dense_matrix(const Matrix& m, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out.precision(17);
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << m(i, j);
        }
        out << '\n';
    }
}

}  // namespace

Vector MunicipalityTable::carbon_scores() const {
    Vector v(size());
    for (Index i = 0; i < size(); ++i) v[i] = records[static_cast<std::size_t>(i)].carbon;
    return v;
}

Vector MunicipalityTable::biodiversity_scores() const {
    Vector v(size());
    for (Index i = 0; i < size(); ++i) v[i] = records[static_cast<std::size_t>(i)].biodiversity;
    return v;
}

Vector MunicipalityTable::social_scores() const {
    Vector v(size());
    for (Index i = 0; i < size(); ++i) v[i] = records[static_cast<std::size_t>(i)].social;
    return v;
}

void MunicipalityTable::validate() const {
    const Index n = size();
    if (adjacency.rows() != n || adjacency.cols() != n || bio_synergy.rows() != n ||
        bio_synergy.cols() != n || soc_synergy.rows() != n || soc_synergy.cols() != n) {
        throw std::invalid_argument("matrix dimensions do not match record count");
    }
    std::vector<std::string> ids;
    ids.reserve(records.size());
    for (const auto& r : records) {
        if (r.carbon < 0.0 || r.carbon > 1.0 || r.biodiversity < 0.0 || r.biodiversity > 1.0 ||
            r.social < 0.0 || r.social > 1.0) {
            throw std::invalid_argument("score outside [0,1] for id " + r.id);
        }
        ids.push_back(r.id);
    }
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
        throw std::invalid_argument("duplicate municipality id");
    }
    check_symmetric_zero_diag(adjacency, "adjacency");
    check_symmetric_zero_diag(bio_synergy, "bio_synergy");
    check_symmetric_zero_diag(soc_synergy, "soc_synergy");
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            const double a = adjacency(i, j);
            if (a != 0.0 && a != 1.0) throw std::invalid_argument("adjacency entries must be 0 or 1");
            if (bio_synergy(i, j) < 0.0 || bio_synergy(i, j) > 1.0 ||
                soc_synergy(i, j) < 0.0 || soc_synergy(i, j) > 1.0) {
                throw std::invalid_argument("synergy entries must lie in [0,1]");
            }
        }
    }
}

Vector min_max_normalize(const std::vector<double>& values) {
    return min_max_normalize(Eigen::Map<const Vector>(values.data(), static_cast<Index>(values.size())));
}

MunicipalityTable load_table(const std::filesystem::path& scores_csv) {
    std::ifstream in(scores_csv);
    if (!in) throw std::invalid_argument("cannot open scores file: " + scores_csv.string());

    MunicipalityTable table;
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty scores file: " + scores_csv.string());
    const auto header = split_csv_line(line);
    if (header != std::vector<std::string>{"id", "carbon", "biodiversity", "social"}) {
        throw std::invalid_argument("scores header must be id,carbon,biodiversity,social in " +
                                    scores_csv.string());
    }
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 4) {
            throw std::invalid_argument(scores_csv.string() + ":" + std::to_string(line_no) +
                                        ": expected 4 fields");
        }
        const std::string ctx = scores_csv.string() + ":" + std::to_string(line_no);
        table.records.push_back({fields[0], parse_double(fields[1], ctx),
                                 parse_double(fields[2], ctx), parse_double(fields[3], ctx)});
    }
    const Index n = table.size();
    if (n == 0) throw std::invalid_argument("no records in " + scores_csv.string());

    const auto dir = scores_csv.parent_path();
    table.adjacency = load_dense_matrix(dir / "adjacency.csv", n);
    table.bio_synergy = load_dense_matrix(dir / "bio_synergy.csv", n);
    table.soc_synergy = load_dense_matrix(dir / "soc_synergy.csv", n);
    table.validate();
    return table;
}

void save_table(const MunicipalityTable& table, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::ofstream out(dir / "goias_multiobjective.csv");
    if (!out) throw std::runtime_error("cannot write scores file in " + dir.string());
    out.precision(17);
    out << "id,carbon,biodiversity,social\n";
    for (const auto& r : table.records) {
        out << r.id << ',' << r.carbon << ',' << r.biodiversity << ',' << r.social << '\n';
    }
    write_dense_matrix(table.adjacency, dir / "adjacency.csv");
    write_dense_matrix(table.bio_synergy, dir / "bio_synergy.csv");
    write_dense_matrix(table.soc_synergy, dir / "soc_synergy.csv");
}

MunicipalityTable synthesize_table(int n, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("synthesize_table: need n >= 2");
    const Index nn = n;
    Rng rng(Rng::derive_stream(seed, 0));

    // unit-square positions drive a geometric adjacency; radius targets mean
    // degree 4, the sparsity of territorial neighbour graphs
    std::vector<double> px(static_cast<std::size_t>(n)), py(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        px[static_cast<std::size_t>(i)] = rng.uniform();
        py[static_cast<std::size_t>(i)] = rng.uniform();
    }
    const double radius = std::min(1.0, std::sqrt(4.0 / (static_cast<double>(n - 1) * M_PI)));

    MunicipalityTable table;
    Vector carbon(nn), bio(nn), soc(nn);
    for (Index i = 0; i < nn; ++i) {
        carbon[i] = rng.uniform();
        bio[i] = rng.uniform();
        soc[i] = rng.uniform();
    }
    carbon = min_max_normalize(carbon);
    bio = min_max_normalize(bio);
    soc = min_max_normalize(soc);
    for (Index i = 0; i < nn; ++i) {
        table.records.push_back({"m" + std::to_string(i), carbon[i], bio[i], soc[i]});
    }

    table.adjacency = Matrix::Zero(nn, nn);
    table.bio_synergy = Matrix::Zero(nn, nn);
    table.soc_synergy = Matrix::Zero(nn, nn);
    for (Index i = 0; i < nn; ++i) {
        for (Index j = i + 1; j < nn; ++j) {
            const double dx = px[static_cast<std::size_t>(i)] - px[static_cast<std::size_t>(j)];
            const double dy = py[static_cast<std::size_t>(i)] - py[static_cast<std::size_t>(j)];
            const bool edge = dx * dx + dy * dy <= radius * radius;
            table.adjacency(i, j) = table.adjacency(j, i) = edge ? 1.0 : 0.0;
            const double b = rng.uniform();
            const double s = rng.uniform();
            if (edge) {
                table.bio_synergy(i, j) = table.bio_synergy(j, i) = b;
                table.soc_synergy(i, j) = table.soc_synergy(j, i) = s;
            }
        }
    }
    table.validate();
    return table;
}

BigUint search_space_size(int n, int k) { return binomial(n, k); }

}  // namespace qport
