#include <cmath>

#include "doctest.h"
#include "grcim/formats.hpp"

using namespace grcim;

TEST_CASE("format ranges and bit accounting") {
    FpFormat e2m1{2, 1};
    CHECK(e2m1.e_max() == 3);
    CHECK(e2m1.min_normal() == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(e2m1.dr_bits() == 4);  // (n_m+1) + (e_max-1)
    CHECK(e2m1.sqnr_ceiling_db() == doctest::Approx(16.81).epsilon(1e-6));

    FpFormat e3m2{3, 2};
    CHECK(e3m2.e_max() == 7);
    CHECK(e3m2.dr_bits() == 9);
    CHECK(e3m2.sqnr_ceiling_db() == doctest::Approx(22.83).epsilon(1e-6));

    FpFormat e4m3{4, 3};
    CHECK(e4m3.e_max() == 15);
    CHECK(e4m3.dr_bits() == 18);

    FpFormat int4{0, 3};  // integer grid, no exponent field
    CHECK(int4.dr_bits() == 4);
}

TEST_CASE("format naming and parsing") {
    CHECK(FpFormat{2, 1}.name() == "E2M1");
    CHECK(FpFormat{0, 3}.name() == "E0M3");
    auto f = FpFormat::parse("E3M2");
    REQUIRE(f.has_value());
    CHECK(*f == FpFormat{3, 2});
    CHECK(FpFormat::parse("e2m1").has_value());
    CHECK(!FpFormat::parse("M2E3").has_value());
    CHECK(!FpFormat::parse("").has_value());
    CHECK(!FpFormat::parse("E9M1").has_value());
}

TEST_CASE("code table enumerates the expected magnitudes") {
    CodeTable t{FpFormat{2, 1}};
    REQUIRE(t.size() == 8);
    const double want[] = {0.0, 0.0625, 0.125, 0.1875, 0.25, 0.375, 0.5, 0.75};
    for (int i = 0; i < 8; ++i)
        CHECK(t.magnitude(i) == doctest::Approx(want[i]).epsilon(1e-15));
    CHECK(t.max_value() == doctest::Approx(0.75).epsilon(1e-15));

    // subnormal codes share the bottom binade exponent
    CHECK(t.exponent(0) == 1);
    CHECK(t.exponent(1) == 1);
    CHECK(t.exponent(7) == 3);
    CHECK(t.mantissa(1) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(t.mantissa(7) == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("integer grid table") {
    CodeTable t{FpFormat{0, 2}};
    REQUIRE(t.size() == 4);
    const double want[] = {0.0, 0.25, 0.5, 0.75};
    for (int i = 0; i < 4; ++i)
        CHECK(t.magnitude(i) == doctest::Approx(want[i]).epsilon(1e-15));
    for (int i = 0; i < 4; ++i) CHECK(t.exponent(i) == 0);
    CHECK(t.ulp(2) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("round to nearest even on the significand grid") {
    CodeTable t{FpFormat{2, 1}};
    // 0.625 sits between 0.5 (sig 2) and 0.75 (sig 3): even wins
    CHECK(t.quantize(0.625).value == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(t.quantize(0.6).value == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(t.quantize(0.7).value == doctest::Approx(0.75).epsilon(1e-15));
    // binade boundary tie 0.4375: neighbor sigs are 3 and 2
    CHECK(t.quantize(0.4375).value == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(t.quantize(0.21875).value == doctest::Approx(0.25).epsilon(1e-15));
    // tie against zero resolves to zero (sig 0 is even)
    CHECK(t.quantize(0.03125).value == 0.0);
    CHECK(t.quantize(0.03).value == 0.0);

    CodeTable ti{FpFormat{0, 2}};
    CHECK(ti.quantize(0.375).value == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(ti.quantize(0.125).value == 0.0);
}

TEST_CASE("quantizer clips and keeps the sign of zero") {
    CodeTable t{FpFormat{2, 1}};
    CHECK(t.quantize(0.9).value == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(t.quantize(1e6).value == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(t.quantize(-1e6).value == doctest::Approx(-0.75).epsilon(1e-15));

    auto z = t.quantize(-0.01);
    CHECK(z.value == 0.0);
    CHECK(std::signbit(z.value));
    CHECK(!std::signbit(t.quantize(0.01).value));
    // zero code still carries the bottom binade exponent
    CHECK(z.exponent == 1);
}

TEST_CASE("quantizer is a fixpoint on code values") {
    for (FpFormat f : {FpFormat{1, 1}, FpFormat{2, 1}, FpFormat{3, 2},
                       FpFormat{4, 3}, FpFormat{0, 4}}) {
        CodeTable t{f};
        for (int i = 0; i < t.size(); ++i) {
            for (bool neg : {false, true}) {
                Code c = t.code_at(i, neg);
                Code q = t.quantize(c.value);
                CHECK(q.value == c.value);
                CHECK(q.exponent == c.exponent);
                CHECK(q.mantissa == doctest::Approx(c.mantissa).epsilon(1e-15));
            }
        }
    }
}

TEST_CASE("signed value recomposition") {
    CodeTable t{FpFormat{3, 2}};
    for (int i = 1; i < t.size(); ++i) {
        Code c = t.code_at(i, true);
        CHECK(c.value ==
              doctest::Approx(c.mantissa * std::pow(2.0, c.exponent - 7))
                  .epsilon(1e-12));
        CHECK(c.mantissa < 0.0);
    }
}

TEST_CASE("equiprobable code moments") {
    CodeTable t{FpFormat{2, 1}};
    CHECK(t.mean_sq_value() == doctest::Approx(0.133789063).epsilon(1e-6));
    CHECK(t.mean_sq_mantissa() == doctest::Approx(0.3125).epsilon(1e-9));
}

TEST_CASE("magnitudes increase strictly and ulps tile the line") {
    for (FpFormat f : {FpFormat{1, 2}, FpFormat{2, 3}, FpFormat{3, 1},
                       FpFormat{4, 2}}) {
        CodeTable t{f};
        for (int i = 1; i < t.size(); ++i) {
            CHECK(t.magnitude(i) > t.magnitude(i - 1));
            // gap between neighbors never exceeds the larger step
            double gap = t.magnitude(i) - t.magnitude(i - 1);
            CHECK(gap <= t.ulp(i) * (1 + 1e-12));
        }
    }
}
