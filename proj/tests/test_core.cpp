#include "ehy/core.hpp"
#include "ehy/dgp.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace ehy;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name)
        : path((std::filesystem::temp_directory_path() / name).string()) {}
    ~TempFile() { std::remove(path.c_str()); }
};

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

}  // namespace

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(Grid({0.0, 1.0, 2.0}), validation_error);        // m < 4
    CHECK_THROWS_AS(Grid({0.0, 1.0, 1.0, 2.0}), validation_error);   // not strict
    CHECK_THROWS_AS(Grid({0.0, 1.0, 0.5, 2.0}), validation_error);   // decreasing
    Grid g({0.0, 0.1, 0.3, 0.6, 1.0});
    CHECK(g.length() == doctest::Approx(1.0));
    double wsum = 0.0;
    for (double w : g.weights()) wsum += w;
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("load_sample without header defaults to equispaced grid") {
    TempFile f("ehy_noheader.csv");
    write_file(f.path, "1,2,3,4,5\n2,3,4,5,6\n0,0,0,0,1\n");
    auto s = load_sample(f.path, false);
    CHECK(s.n_curves() == 3);
    CHECK(s.n_points() == 5);
    CHECK(s.grid[0] == 0.0);
    CHECK(s.grid[1] == doctest::Approx(0.25));
    CHECK(s.grid[4] == 1.0);
}

TEST_CASE("load_sample with header uses given abscissae") {
    TempFile f("ehy_header.csv");
    write_file(f.path, "0,0.1,0.3,0.6,1.0\n1,2,3,4,5\n2,3,4,5,6\n");
    auto s = load_sample(f.path, true);
    CHECK(s.grid[2] == 0.3);
    CHECK(s.values(1, 4) == 6.0);
}

TEST_CASE("load_sample rejects ragged rows and bad cells") {
    TempFile f("ehy_ragged.csv");
    write_file(f.path, "1,2,3,4,5\n1,2,3,4\n1,2,3,4,5\n");
    CHECK_THROWS_AS(load_sample(f.path, false), validation_error);

    TempFile g("ehy_nonnum.csv");
    write_file(g.path, "1,2,x,4,5\n1,2,3,4,5\n");
    CHECK_THROWS_AS(load_sample(g.path, false), validation_error);

    TempFile h("ehy_badgrid.csv");
    write_file(h.path, "0,0.5,0.2,1\n1,2,3,4\n2,3,4,5\n");
    CHECK_THROWS_AS(load_sample(h.path, true), validation_error);
}

TEST_CASE("validate reports invariant violations with location") {
    FunctionalSample s{Grid::equispaced01(5), Matrix::Zero(3, 5), std::nullopt};
    CHECK_NOTHROW(validate(s));

    s.values(1, 3) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_WITH_AS(validate(s), doctest::Contains("curve 1"), validation_error);

    FunctionalSample one{Grid::equispaced01(5), Matrix::Zero(1, 5), std::nullopt};
    CHECK_THROWS_WITH_AS(validate(one), doctest::Contains("at least two curves"), validation_error);

    FunctionalSample bad_labels{Grid::equispaced01(5), Matrix::Zero(3, 5),
                                std::vector<bool>{true, false}};
    CHECK_THROWS_AS(validate(bad_labels), validation_error);
}

TEST_CASE("save/load round-trips bit-exactly") {
    DgpSpec spec;
    spec.id = 7;
    spec.n = 10;
    spec.m = 20;
    spec.seed = 3;
    auto sample = generate(spec);

    TempFile f("ehy_roundtrip.csv");
    save_sample(sample, f.path);
    auto back = load_sample(f.path, true);
    REQUIRE(back.n_curves() == sample.n_curves());
    CHECK((back.values - sample.values).cwiseAbs().maxCoeff() == 0.0);
    for (std::size_t j = 0; j < back.grid.size(); ++j) CHECK(back.grid[j] == sample.grid[j]);
}

TEST_CASE("validate accepts every dgp output") {
    for (int id = 1; id <= 19; ++id) {
        DgpSpec spec;
        spec.id = id;
        spec.n = 20;
        spec.m = id == 11 ? 0 : 30;
        spec.alpha = 0.1;
        spec.seed = 5;
        CHECK_NOTHROW(validate(generate(spec)));
    }
}

TEST_CASE("label file round trip") {
    std::vector<bool> labels{true, false, false, true};
    TempFile f("ehy_labels.csv");
    save_labels(labels, f.path);
    CHECK(load_labels(f.path) == labels);
}
