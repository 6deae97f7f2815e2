#include <doctest.h>

#include <cmath>
#include <vector>

#include "armvalue/random.hpp"

using namespace armvalue;

TEST_CASE("identical seeds give identical streams") {
    GibbsRng a(42), b(42);
    for (int i = 0; i < 1000; ++i) {
        CHECK(a.uniform() == b.uniform());
        CHECK(a.normal(1.0, 2.0) == b.normal(1.0, 2.0));
        CHECK(a.gamma(2.5) == b.gamma(2.5));
    }
    GibbsRng c(43);
    CHECK(a.uniform() != c.uniform());
}

TEST_CASE("derived seeds differ by index") {
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
    CHECK(derive_seed(7, 3) == derive_seed(7, 3));
}

TEST_CASE("uniform draws stay in [0, 1)") {
    GibbsRng rng(1);
    for (int i = 0; i < 100000; ++i) {
        double u = rng.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
    for (int i = 0; i < 100000; ++i) {
        double u = rng.uniform_positive();
        CHECK(u > 0.0);
        CHECK(u <= 1.0);
    }
}

TEST_CASE("normal sample moments") {
    GibbsRng rng(2024);
    const int n = 200000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        double x = rng.normal(3.0, 2.0);
        sum += x;
        sum_sq += x * x;
    }
    double mean = sum / n;
    double var = sum_sq / n - mean * mean;
    // 3 standard errors: se(mean) = 2/sqrt(n), se(var) ~ var * sqrt(2/n)
    CHECK(std::abs(mean - 3.0) < 3.0 * 2.0 / std::sqrt(double(n)));
    CHECK(std::abs(var - 4.0) < 3.0 * 4.0 * std::sqrt(2.0 / double(n)));
}

TEST_CASE("gamma sample moments") {
    for (double shape : {0.5, 1.0, 2.7, 11.0}) {
        GibbsRng rng(std::uint64_t(17 + shape * 100));
        const int n = 200000;
        double sum = 0.0, sum_sq = 0.0;
        for (int i = 0; i < n; ++i) {
            double x = rng.gamma(shape);
            CHECK(x > 0.0);
            sum += x;
            sum_sq += x * x;
        }
        double mean = sum / n;
        double var = sum_sq / n - mean * mean;
        CHECK(mean == doctest::Approx(shape).epsilon(0.02));
        CHECK(var == doctest::Approx(shape).epsilon(0.05));
    }
}

TEST_CASE("inverse gamma mean matches the analytic formula") {
    // shape 2, scale 1/2: mean = (1/2) / (2 - 1) = 0.5
    GibbsRng rng(5);
    const int n = 100000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        double x = rng.inverse_gamma(2.0, 0.5);
        CHECK(x > 0.0);
        sum += x;
    }
    CHECK(sum / n == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("inverse gamma stays stable at tiny shapes") {
    GibbsRng rng(6);
    for (int i = 0; i < 10000; ++i) {
        double x = rng.inverse_gamma(0.5, 0.5);
        CHECK(x > 0.0);
        CHECK(std::isfinite(x));
    }
}

TEST_CASE("the mean-value stub returns conditional means") {
    MeanValueRng stub;
    CHECK(stub.normal(1.25, 99.0) == 1.25);
    CHECK(stub.inverse_gamma(2.0, 0.5) == 0.5);
    CHECK_THROWS_AS(stub.inverse_gamma(0.5, 1.0), std::invalid_argument);
}
