#include "qport/data.hpp"

#include "support.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace qport;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("qport_data_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream out(p);
    out << content;
}

}  // namespace

TEST_SUITE_BEGIN("data");

TEST_CASE("min_max_normalize maps extremes to 0 and 1") {
    const Vector out = min_max_normalize(std::vector<double>{2.0, 4.0, 6.0});
    CHECK(out[0] == doctest::Approx(0.0));
    CHECK(out[1] == doctest::Approx(0.5));
    CHECK(out[2] == doctest::Approx(1.0));
}

TEST_CASE("min_max_normalize constant input maps to zeros") {
    const Vector out = min_max_normalize(std::vector<double>{5.0, 5.0, 5.0});
    CHECK(out.isZero(0.0));
}

TEST_CASE("min_max_normalize is identity on {0,1}") {
    const Vector out = min_max_normalize(std::vector<double>{0.0, 1.0});
    CHECK(out[0] == 0.0);
    CHECK(out[1] == 1.0);
}

TEST_CASE("min_max_normalize rejects empty input") {
    CHECK_THROWS_AS(min_max_normalize(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("min_max_normalize is idempotent on normalized non-constant input") {
    Rng rng(99);
    Vector v(12);
    for (Index i = 0; i < v.size(); ++i) v[i] = rng.uniform();
    const Vector once = min_max_normalize(v);
    const Vector twice = min_max_normalize(once);
    CHECK((once - twice).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("load_table round trip with zero matrices") {
    const auto dir = temp_dir("roundtrip");
    write_file(dir / "goias_multiobjective.csv",
               "id,carbon,biodiversity,social\n"
               "a,0.1,0.2,0.3\n"
               "b,0.4,0.5,0.6\n"
               "c,0.7,0.8,0.9\n");
    const std::string zeros = "0,0,0\n0,0,0\n0,0,0\n";
    write_file(dir / "adjacency.csv", zeros);
    write_file(dir / "bio_synergy.csv", zeros);
    write_file(dir / "soc_synergy.csv", zeros);

    const MunicipalityTable table = load_table(dir / "goias_multiobjective.csv");
    CHECK(table.size() == 3);
    CHECK(table.records[1].id == "b");
    CHECK(table.bio_synergy.isZero(0.0));

    const auto dir2 = temp_dir("roundtrip2");
    save_table(table, dir2);
    const MunicipalityTable again = load_table(dir2 / "goias_multiobjective.csv");
    CHECK(again.size() == table.size());
    for (std::size_t i = 0; i < table.records.size(); ++i) {
        CHECK(again.records[i].id == table.records[i].id);
        CHECK(again.records[i].carbon == table.records[i].carbon);
        CHECK(again.records[i].biodiversity == table.records[i].biodiversity);
        CHECK(again.records[i].social == table.records[i].social);
    }
    CHECK(again.adjacency == table.adjacency);
    CHECK(again.bio_synergy == table.bio_synergy);
    CHECK(again.soc_synergy == table.soc_synergy);
}

TEST_CASE("load_table rejects asymmetric adjacency") {
    const auto dir = temp_dir("asym");
    write_file(dir / "goias_multiobjective.csv",
               "id,carbon,biodiversity,social\n"
               "a,0.1,0.2,0.3\n"
               "b,0.4,0.5,0.6\n");
    write_file(dir / "adjacency.csv", "0,1\n0,0\n");
    write_file(dir / "bio_synergy.csv", "0,0\n0,0\n");
    write_file(dir / "soc_synergy.csv", "0,0\n0,0\n");
    CHECK_THROWS_WITH_AS(load_table(dir / "goias_multiobjective.csv"),
                         doctest::Contains("not symmetric"), std::invalid_argument);
}

TEST_CASE("load_table rejects dimension mismatch") {
    const auto dir = temp_dir("dim");
    write_file(dir / "goias_multiobjective.csv",
               "id,carbon,biodiversity,social\n"
               "a,0.1,0.2,0.3\n"
               "b,0.4,0.5,0.6\n");
    write_file(dir / "adjacency.csv", "0\n");
    write_file(dir / "bio_synergy.csv", "0,0\n0,0\n");
    write_file(dir / "soc_synergy.csv", "0,0\n0,0\n");
    CHECK_THROWS(load_table(dir / "goias_multiobjective.csv"));
}

TEST_CASE("load_table rejects scores outside the unit interval") {
    const auto dir = temp_dir("range");
    write_file(dir / "goias_multiobjective.csv",
               "id,carbon,biodiversity,social\n"
               "a,1.5,0.2,0.3\n"
               "b,0.4,0.5,0.6\n");
    const std::string zeros = "0,0\n0,0\n";
    write_file(dir / "adjacency.csv", zeros);
    write_file(dir / "bio_synergy.csv", zeros);
    write_file(dir / "soc_synergy.csv", zeros);
    CHECK_THROWS_WITH_AS(load_table(dir / "goias_multiobjective.csv"),
                         doctest::Contains("outside [0,1]"), std::invalid_argument);
}

TEST_CASE("load_table reports missing files") {
    CHECK_THROWS_WITH_AS(load_table("/nonexistent/goias_multiobjective.csv"),
                         doctest::Contains("cannot open"), std::invalid_argument);
}

TEST_CASE("synthesize_table is deterministic") {
    const MunicipalityTable a = synthesize_table(20, 7);
    const MunicipalityTable b = synthesize_table(20, 7);
    REQUIRE(a.size() == 20);
    CHECK(a.adjacency == b.adjacency);
    CHECK(a.bio_synergy == b.bio_synergy);
    CHECK(a.soc_synergy == b.soc_synergy);
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].carbon == b.records[i].carbon);
        CHECK(a.records[i].biodiversity == b.records[i].biodiversity);
        CHECK(a.records[i].social == b.records[i].social);
    }
}

TEST_CASE("synthesize_table minimal case") {
    const MunicipalityTable t = synthesize_table(2, 0);
    CHECK(t.size() == 2);
    CHECK(t.adjacency.rows() == 2);
    CHECK_THROWS_AS(synthesize_table(1, 0), std::invalid_argument);
}

TEST_CASE("synthesize_table output passes load-time validation") {
    for (std::uint64_t seed : {1ull, 42ull, 1234ull}) {
        const MunicipalityTable t = synthesize_table(15, seed);
        CHECK_NOTHROW(t.validate());
        const auto dir = temp_dir("synth" + std::to_string(seed));
        save_table(t, dir);
        CHECK_NOTHROW(load_table(dir / "goias_multiobjective.csv"));
    }
}

TEST_CASE("search_space_size exact values") {
    CHECK(search_space_size(20, 5).to_string() == "15504");
    CHECK(search_space_size(10, 0).to_string() == "1");
    CHECK(search_space_size(10, 10).to_string() == "1");
    CHECK_THROWS_AS(search_space_size(5, 6), std::invalid_argument);
}

TEST_CASE("search_space_size n=88 k=28") {
    // cross-checked against exact big-integer arithmetic in two independent
    // implementations; the value has 23 decimal digits
    const BigUint v = search_space_size(88, 28);
    CHECK(v.to_string() == "73111821201089232081168");
    CHECK(v.decimal_digits() == 23);
    CHECK(v.to_double() == doctest::Approx(7.3111821201089232e22).epsilon(1e-12));
}

TEST_CASE("search_space_size matches pascal recurrence on small inputs") {
    for (int n = 0; n <= 12; ++n) {
        std::vector<std::uint64_t> row(static_cast<std::size_t>(n) + 1, 0);
        row[0] = 1;
        for (int i = 0; i < n; ++i) {
            for (int j = n; j >= 1; --j) row[static_cast<std::size_t>(j)] += row[static_cast<std::size_t>(j - 1)];
        }
        for (int k = 0; k <= n; ++k) {
            CHECK(search_space_size(n, k).to_string() == std::to_string(row[static_cast<std::size_t>(k)]));
        }
    }
}

TEST_SUITE_END();
