#include <cmath>

#include "doctest.h"
#include "grcim/formats.hpp"
#include "grcim/rng.hpp"
#include "grcim/stimulus.hpp"

using namespace grcim;

namespace {
Sample draw(Dist d, const CodeTable& t, int n, int trial) {
    return sample(d, t, n, 42, rng::kStreamX, trial, OutlierSpec{});
}
}  // namespace

TEST_CASE("uniform stimulus covers the full scale continuously") {
    CodeTable t{FpFormat{3, 2}};
    auto s = draw(Dist::Uniform, t, 100000, 0);
    double sq = 0;
    int off_grid = 0;
    for (double x : s.x) {
        CHECK(std::abs(x) <= t.max_value());
        sq += x * x;
        if (t.quantize(x).value != x) ++off_grid;
    }
    // U(-max, max) second moment max^2/3
    double want = t.max_value() * t.max_value() / 3.0;
    CHECK(sq / s.x.size() == doctest::Approx(want).epsilon(0.03));
    CHECK(off_grid > 99000);
}

TEST_CASE("max entropy stimulus emits exact codes with flat frequencies") {
    CodeTable t{FpFormat{2, 1}};
    const int n = 160000;
    auto s = draw(Dist::MaxEntropy, t, n, 1);
    double sq = 0;
    int zero = 0;
    for (double x : s.x) {
        CHECK(t.quantize(x).value == x);  // on grid
        sq += x * x;
        if (x == 0.0) ++zero;
    }
    CHECK(sq / n == doctest::Approx(t.mean_sq_value()).epsilon(0.03));
    // both zero codes together: 2 of 16
    CHECK(double(zero) / n == doctest::Approx(0.125).epsilon(0.15));
}

TEST_CASE("outlier mixture separates a narrow core from rare excursions") {
    CodeTable t{FpFormat{3, 2}};
    const int n = 200000;
    auto s = draw(Dist::GaussianOutliers, t, n, 2);
    REQUIRE(s.outlier.size() == size_t(n));

    long n_out = 0;
    double core_sq = 0;
    long n_core = 0;
    for (int i = 0; i < n; ++i) {
        if (s.outlier[i]) {
            ++n_out;
            CHECK(std::abs(s.x[i]) <= 1.0);
        } else {
            ++n_core;
            // core is truncated at 3 sigma = 1/50 of full scale
            CHECK(std::abs(s.x[i]) <= 0.02 + 1e-12);
            core_sq += s.x[i] * s.x[i];
        }
    }
    CHECK(double(n_out) / n == doctest::Approx(0.01).epsilon(0.25));
    // truncated normal: sigma^2 * 0.97334 with sigma = 1/150
    CHECK(core_sq / n_core == doctest::Approx(4.326e-5).epsilon(0.03));
}

TEST_CASE("clipped gaussian stays inside full scale with near nominal variance") {
    const int n = 100000;
    auto x = sample_clipped_gauss(n, 7, rng::kStreamX, 0);
    double sq = 0;
    for (double v : x) {
        CHECK(std::abs(v) <= 1.0);
        sq += v * v;
    }
    // sigma = 1/4, redraw beyond 4 sigma barely trims the variance
    CHECK(sq / n == doctest::Approx(0.25 * 0.25 * 0.99893).epsilon(0.02));
}

TEST_CASE("jittered code stimulus dequantizes back to its code") {
    CodeTable t{FpFormat{2, 2}};
    auto x = sample_maxent_jitter(t, 50000, 3, rng::kStreamJitter, 0);
    for (double v : x) {
        Code q = t.quantize(v);
        double step = t.ulp(t.quantize_index(v));
        CHECK(std::abs(v - q.value) <= step / 2 + 1e-15);
    }
}

TEST_CASE("stimulus is reproducible per trial and varies across trials") {
    CodeTable t{FpFormat{2, 1}};
    auto a = draw(Dist::GaussianOutliers, t, 256, 5);
    auto b = draw(Dist::GaussianOutliers, t, 256, 5);
    auto c = draw(Dist::GaussianOutliers, t, 256, 6);
    CHECK(a.x == b.x);
    CHECK(a.outlier == b.outlier);
    CHECK(a.x != c.x);
}

TEST_CASE("distribution names round trip") {
    for (Dist d : {Dist::Uniform, Dist::MaxEntropy, Dist::GaussianOutliers}) {
        auto p = parse_dist(dist_name(d));
        REQUIRE(p.has_value());
        CHECK(*p == d);
    }
    CHECK(!parse_dist("cauchy").has_value());
}
