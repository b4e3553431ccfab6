#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "grcim/circuit.hpp"

using namespace grcim;

TEST_CASE("series cap sizing for a 15 unit bank") {
    LadderSpec s;  // n_m_w 3 -> Ca = 15 Cu
    s.e_max = 3;

    auto top = coupling_cap_cu(s, 3);
    CHECK(!top.has_value());  // direct connection, no series cap

    auto shift1 = coupling_cap_cu(s, 2);
    REQUIRE(shift1.has_value());
    CHECK(*shift1 == doctest::Approx(15.0).epsilon(1e-12));

    auto shift2 = coupling_cap_cu(s, 1);
    REQUIRE(shift2.has_value());
    CHECK(*shift2 == doctest::Approx(5.0).epsilon(1e-12));

    auto shift3 = coupling_cap_cu(s, 0);
    REQUIRE(shift3.has_value());
    CHECK(*shift3 == doctest::Approx(15.0 / 7.0).epsilon(1e-12));
}

TEST_CASE("parasitic shunt folds into the sizing rule") {
    LadderSpec s;
    s.e_max = 3;
    s.c_p1_over_cu = 2.0;
    auto shift1 = coupling_cap_cu(s, 2);
    REQUIRE(shift1.has_value());
    CHECK(*shift1 == doctest::Approx(17.0).epsilon(1e-12));
}

TEST_CASE("closed form attenuation hits the binade target exactly") {
    for (int nmw = 1; nmw <= 4; ++nmw) {
        for (int emax = 1; emax <= 6; ++emax) {
            for (double cp1 : {0.0, 0.5, 2.0, 5.0}) {
                LadderSpec s{nmw, emax, cp1};
                for (int j = 0; j <= emax; ++j) {
                    double want = std::pow(2.0, j - emax);
                    CHECK(attenuation_closed(s, j) ==
                          doctest::Approx(want).epsilon(1e-12));
                }
            }
        }
    }
}

TEST_CASE("numeric charge solve agrees with the closed form") {
    LadderSpec s{3, 4, 1.5};
    for (int j = 0; j <= 4; ++j) {
        double a = attenuation_closed(s, j);
        double b = attenuation_numeric(s, j);
        CHECK(std::abs(a - b) < 1e-9);
    }
}

TEST_CASE("ladder report covers every binade") {
    LadderSpec s{2, 3, 0.5};
    auto rows = size_ladder(s);
    REQUIRE(rows.size() == 4);
    for (const auto& r : rows) {
        CHECK(r.target == doctest::Approx(std::pow(2.0, r.e_j - 3)).epsilon(1e-12));
        CHECK(std::abs(r.atten_closed - r.target) < 1e-12);
        CHECK(std::abs(r.atten_numeric - r.target) < 1e-9);
        if (r.e_j == 3) CHECK(r.direct);
        if (r.e_j < 3) CHECK(r.c_e_cu > 0.0);
    }
}

TEST_CASE("binades outside the range are rejected") {
    LadderSpec s;
    CHECK_THROWS_AS((void)coupling_cap_cu(s, 4), std::invalid_argument);
    CHECK_THROWS_AS((void)coupling_cap_cu(s, -1), std::invalid_argument);
}
