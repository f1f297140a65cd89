#include "ehy/robust.hpp"
#include "ehy/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace ehy;

namespace {

Matrix gaussian_matrix(int n, int p, std::uint64_t seed) {
    Rng rng(seed);
    Matrix out(n, p);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < p; ++j) out(i, j) = rng.normal();
    return out;
}

}  // namespace

TEST_CASE("median conventions") {
    CHECK(median({1, 2, 3, 4, 5}) == 3.0);
    CHECK(median({1, 2, 3, 4}) == 2.5);
    CHECK(median({7.25}) == 7.25);
    CHECK_THROWS_AS(median({}), validation_error);
}

TEST_CASE("mad") {
    CHECK(mad({1, 2, 3, 4, 5}) == 1.0);
    CHECK(mad({2, 2, 2, 2}) == 0.0);
    CHECK(mad({0, 0, 0, 100}) == 0.0);
    CHECK_THROWS_AS(mad({1.0}), validation_error);
}

TEST_CASE("comedian") {
    std::vector<double> x{1, 2, 3}, y{3, 2, 1};
    CHECK(comedian(x, y) == -1.0);
    CHECK(comedian(x, x) == mad(x) * mad(x));
    std::vector<double> constant{5, 5, 5};
    CHECK(comedian(x, constant) == 0.0);
    CHECK_THROWS_AS(comedian(x, {1, 2}), validation_error);
}

TEST_CASE("type-7 quantiles") {
    std::vector<double> v;
    for (int i = 1; i <= 100; ++i) v.push_back(i);
    CHECK(quantile(v, 0.25) == doctest::Approx(25.75));
    CHECK(quantile(v, 0.75) == doctest::Approx(75.25));
    CHECK(quantile(v, 0.0) == 1.0);
    CHECK(quantile(v, 1.0) == 100.0);
}

TEST_CASE("chi-squared median") {
    CHECK(chi_squared_median(6) == doctest::Approx(5.348121).epsilon(1e-5));
    CHECK(chi_squared_median(2) == doctest::Approx(1.386294).epsilon(1e-5));
}

TEST_CASE("com_fit on a clean Gaussian cloud") {
    Matrix data = gaussian_matrix(500, 6, 2024);
    RobustFit fit = com_fit(data);

    // Corrected distances are calibrated to the chi-squared median.
    std::vector<double> d(fit.distances.data(), fit.distances.data() + fit.distances.size());
    CHECK(median(d) == doctest::Approx(chi_squared_median(6)).epsilon(0.05));

    // Scatter symmetric PSD.
    CHECK((fit.scatter - fit.scatter.transpose()).cwiseAbs().maxCoeff() <= 1e-10);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(fit.scatter);
    CHECK(eig.eigenvalues().minCoeff() >= -1e-8);
    CHECK((fit.distances.array() >= 0.0).all());
}

TEST_CASE("gross outlier attains the maximum distance") {
    Matrix data = gaussian_matrix(200, 4, 7);
    data.row(137).setConstant(100.0);
    RobustFit fit = com_fit(data);
    Eigen::Index argmax = 0;
    fit.distances.maxCoeff(&argmax);
    CHECK(argmax == 137);
}

TEST_CASE("cutoff arithmetic") {
    Vector equal = Vector::Constant(10, 3.0);
    CHECK(com_cutoff(equal) == doctest::Approx(3.0));

    Vector ramp(100);
    for (int i = 0; i < 100; ++i) ramp[i] = i + 1;
    // Q3 = 75.25, IQR = 49.5 under the type-7 convention.
    CHECK(com_cutoff(ramp) == doctest::Approx(75.25 + 1.5 * 49.5));
    CHECK_THROWS_AS(com_cutoff(Vector::Constant(3, 1.0)), validation_error);
}

TEST_CASE("clean chi-squared data keeps the flag rate low") {
    Matrix data = gaussian_matrix(200, 6, 31);
    DetectionResult result = com_detect(data);
    int flagged = 0;
    for (bool f : result.flags) flagged += f ? 1 : 0;
    CHECK(flagged <= 20);  // <= 0.10 of n
}

TEST_CASE("two well-separated clouds: the small one is flagged") {
    Rng rng(99);
    Matrix data(200, 6);
    for (int i = 0; i < 200; ++i)
        for (int j = 0; j < 6; ++j)
            data(i, j) = rng.normal() + (i < 190 ? 0.0 : 8.0);
    DetectionResult result = com_detect(data);
    for (int i = 190; i < 200; ++i) CHECK(result.flags[static_cast<std::size_t>(i)]);
    // Brute-force nearest-cloud assignment agrees with the labels for the flagged block.
    int clean_flagged = 0;
    for (int i = 0; i < 190; ++i) clean_flagged += result.flags[static_cast<std::size_t>(i)] ? 1 : 0;
    CHECK(clean_flagged <= 19);
}

TEST_CASE("degenerate inputs error loudly") {
    Matrix same = Matrix::Ones(20, 3);
    CHECK_THROWS_WITH_AS(com_fit(same), doctest::Contains("zero MAD"), validation_error);
    CHECK_THROWS_AS(com_fit(Matrix::Random(3, 5)), validation_error);  // n <= p
}

TEST_CASE("permutation equivariance of flags") {
    Matrix data = gaussian_matrix(60, 3, 5);
    data.row(10).setConstant(50.0);
    auto base = com_detect(data);

    Matrix reversed = data.colwise().reverse();
    auto flipped = com_detect(reversed);
    for (int i = 0; i < 60; ++i)
        CHECK(base.flags[static_cast<std::size_t>(i)] == flipped.flags[static_cast<std::size_t>(59 - i)]);
}

TEST_CASE("flags invariant to per-column positive rescaling") {
    Matrix data = gaussian_matrix(80, 4, 17);
    data.row(3).setConstant(30.0);
    auto base = com_detect(data);

    Matrix scaled = data;
    const double factors[4] = {0.01, 3.0, 250.0, 1.0};
    for (int j = 0; j < 4; ++j) scaled.col(j) *= factors[j];
    auto rescaled = com_detect(scaled);
    CHECK(base.flags == rescaled.flags);
}

TEST_CASE("flags invariant to a location shift; gross outlier survives an affine map") {
    Matrix data = gaussian_matrix(150, 3, 23);
    data.row(42) << 20.0, -15.0, 30.0;
    auto base = com_detect(data);
    REQUIRE(base.flags[42]);

    Vector b(3);
    b << 5.0, -3.0, 1.0;
    Matrix shifted = data.rowwise() + b.transpose();
    CHECK(base.flags == com_detect(shifted).flags);

    // The orthogonalized estimator is not exactly affine equivariant, but a
    // gross outlier should survive a well-conditioned linear map.
    Matrix a(3, 3);
    a << 2.0, 0.3, -0.1,
         0.0, 1.5, 0.4,
         0.2, -0.2, 0.8;
    Matrix transformed = (data * a.transpose()).rowwise() + b.transpose();
    CHECK(com_detect(transformed).flags[42]);
}

TEST_CASE("pushing a flagged row further out never unflags it") {
    Matrix data = gaussian_matrix(100, 3, 41);
    data.row(7) << 12.0, 12.0, 12.0;
    auto base = com_detect(data);
    REQUIRE(base.flags[7]);
    for (double factor : {2.0, 5.0, 20.0}) {
        Matrix pushed = data;
        pushed.row(7) *= factor;
        CHECK(com_detect(pushed).flags[7]);
    }
}
