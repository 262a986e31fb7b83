#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "doa/array_model.hpp"
#include "doa/rng.hpp"
#include "test_util.hpp"

#include <cmath>

using namespace doa;

namespace {

const ArrayGeometry kUla8{8, 0.5};

Scenario three_source_scenario(double snr_db, int snapshots, bool noiseless = false) {
    Scenario s;
    s.true_doas_deg = {15.0, 30.0, 45.0};
    s.snr_db = snr_db;
    s.snapshot_count = snapshots;
    s.noiseless = noiseless;
    return s;
}

double mean_power(const CMatrix& x) { return x.squaredNorm() / static_cast<double>(x.size()); }

}  // namespace

TEST_CASE("steering vector at broadside is all ones") {
    const CVector a = steering_vector(0.0, kUla8);
    REQUIRE(a.size() == 8);
    for (Eigen::Index m = 0; m < a.size(); ++m)
        CHECK(std::abs(a(m) - Complex(1.0, 0.0)) == 0.0);
}

TEST_CASE("steering vector at 30 degrees, two elements, half wavelength") {
    const CVector a = steering_vector(30.0, ArrayGeometry{2, 0.5});
    CHECK(a(0) == Complex(1.0, 0.0));
    CHECK(std::abs(a(1) - Complex(0.0, 1.0)) < 1e-12);  // exp(i pi/2)
}

TEST_CASE("steering vector elements have unit modulus and first element exactly one") {
    auto rng = test::make_rng(11);
    for (int k = 0; k < 1000; ++k) {
        const double theta = test::uniform(rng, -89.99, 89.99);
        const CVector a = steering_vector(theta, kUla8);
        CHECK(a(0) == Complex(1.0, 0.0));
        for (Eigen::Index m = 0; m < a.size(); ++m)
            CHECK(std::abs(std::abs(a(m)) - 1.0) < 1e-14);
    }
}

TEST_CASE("steering vector rejects angles outside the open interval") {
    CHECK_THROWS_AS(steering_vector(90.0, kUla8), std::domain_error);
    CHECK_THROWS_AS(steering_vector(-90.0, kUla8), std::domain_error);
    CHECK_THROWS_AS(steering_vector(123.0, kUla8), std::domain_error);
}

TEST_CASE("distinct angles give linearly independent steering vectors") {
    auto rng = test::make_rng(12);
    for (int k = 0; k < 1000; ++k) {
        const double t1 = test::uniform(rng, -89.0, 89.0);
        double t2 = test::uniform(rng, -89.0, 89.0);
        if (std::abs(t1 - t2) < 1e-3)
            t2 = t1 + 1.0;
        const CVector a1 = steering_vector(t1, kUla8);
        const CVector a2 = steering_vector(t2, kUla8);
        // Gram determinant of the pair; zero only for dependent vectors.
        const Complex g12 = a1.dot(a2);
        const double det = (a1.squaredNorm() * a2.squaredNorm() - std::norm(g12));
        CHECK(det > 1e-9);
    }
}

TEST_CASE("manifold of a single angle is its steering vector") {
    const double theta = 17.0;
    const CMatrix a = manifold_matrix(std::vector<double>{theta}, kUla8);
    REQUIRE(a.rows() == 8);
    REQUIRE(a.cols() == 1);
    CHECK((a.col(0) - steering_vector(theta, kUla8)).norm() == 0.0);
}

TEST_CASE("manifold of the benchmark angles has full column rank") {
    const CMatrix a = manifold_matrix(std::vector<double>{15.0, 30.0, 45.0}, kUla8);
    Eigen::JacobiSVD<CMatrix> svd(a);
    REQUIRE(svd.singularValues().size() == 3);
    CHECK(svd.singularValues()(2) > 1e-6 * svd.singularValues()(0));
}

TEST_CASE("manifold rejects an empty angle list") {
    CHECK_THROWS_AS(manifold_matrix(std::vector<double>{}, kUla8), std::invalid_argument);
}

TEST_CASE("noiseless snapshots live in the manifold column space") {
    const Scenario scenario = three_source_scenario(0.0, 64, true);
    const CMatrix x = synthesize_snapshots(scenario, kUla8, 99);
    const CMatrix a = manifold_matrix(scenario.true_doas_deg, kUla8);

    // Residual after projecting onto span(A).
    const CMatrix pinv = (a.adjoint() * a).ldlt().solve(a.adjoint().eval());
    const CMatrix residual = x - a * (pinv * x);
    CHECK(residual.norm() < 1e-10 * x.norm());
}

TEST_CASE("same seed reproduces the same snapshots bit for bit") {
    const Scenario scenario = three_source_scenario(-10.0, 32);
    const CMatrix x1 = synthesize_snapshots(scenario, kUla8, 1234);
    const CMatrix x2 = synthesize_snapshots(scenario, kUla8, 1234);
    REQUIRE(x1.rows() == x2.rows());
    REQUIRE(x1.cols() == x2.cols());
    for (Eigen::Index j = 0; j < x1.cols(); ++j)
        for (Eigen::Index i = 0; i < x1.rows(); ++i) {
            CHECK(x1(i, j).real() == x2(i, j).real());
            CHECK(x1(i, j).imag() == x2(i, j).imag());
        }
    const CMatrix x3 = synthesize_snapshots(scenario, kUla8, 1235);
    CHECK((x1 - x3).norm() > 0.0);
}

TEST_CASE("single source empirical signal and noise power match the convention") {
    Scenario scenario;
    scenario.true_doas_deg = {30.0};
    scenario.snr_db = 20.0;
    scenario.snapshot_count = 10000;

    Scenario clean = scenario;
    clean.noiseless = true;

    // The source stream is a seed prefix, so the same seed splits the
    // noisy synthesis into its exact signal and noise parts.
    const CMatrix noisy = synthesize_snapshots(scenario, kUla8, 7);
    const CMatrix signal = synthesize_snapshots(clean, kUla8, 7);
    const CMatrix noise = noisy - signal;

    CHECK(mean_power(signal) == doctest::Approx(1.0).epsilon(0.05));
    CHECK(mean_power(noise) == doctest::Approx(0.01).epsilon(0.05));
}

TEST_CASE("three source sample power matches source count and noise power") {
    const Scenario scenario = three_source_scenario(-3.0, 10000);
    Scenario clean = scenario;
    clean.noiseless = true;

    const CMatrix noisy = synthesize_snapshots(scenario, kUla8, 21);
    const CMatrix signal = synthesize_snapshots(clean, kUla8, 21);
    const CMatrix noise = noisy - signal;

    const double sigma2 = std::pow(10.0, 0.3);
    CHECK(mean_power(signal) == doctest::Approx(3.0).epsilon(0.10));
    CHECK(mean_power(noise) == doctest::Approx(sigma2).epsilon(0.10));
}

TEST_CASE("scenario validation rejects bad inputs") {
    Scenario s = three_source_scenario(0.0, 16);
    s.true_doas_deg = {30.0, 15.0, 45.0};  // not ascending
    CHECK_THROWS_AS(s.validate(kUla8), std::invalid_argument);

    s = three_source_scenario(0.0, 16);
    s.true_doas_deg = {1, 2, 3, 4, 5, 6, 7, 8};  // P >= M
    CHECK_THROWS_AS(s.validate(kUla8), std::invalid_argument);

    s = three_source_scenario(0.0, 0);
    CHECK_THROWS_AS(s.validate(kUla8), std::invalid_argument);
}

TEST_CASE("trial seeds differ across indices and bases") {
    CHECK(derive_trial_seed(1, 0) != derive_trial_seed(1, 1));
    CHECK(derive_trial_seed(1, 0) != derive_trial_seed(2, 0));
    CHECK(derive_trial_seed(5, 17) == derive_trial_seed(5, 17));
}
