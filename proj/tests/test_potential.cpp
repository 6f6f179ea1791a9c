#include "qwell/potential.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"

using namespace qwell;

TEST_SUITE_BEGIN("potential");

TEST_CASE("square well constructor") {
    const Potential p = Potential::square_well(0.3, 5.0);
    REQUIRE(p.segments().size() == 1);
    CHECK(p.segments()[0].width_nm == 5.0);
    CHECK(p.segments()[0].value_ev == -0.3);
    CHECK(p.width_nm() == 5.0);
    CHECK(p.max_depth_ev() == 0.3);
    CHECK(p.value_at(2.0) == -0.3);
    CHECK(p.value_at(-1.0) == 0.0);
    CHECK(p.value_at(5.5) == 0.0);
    CHECK_THROWS_AS(Potential::square_well(0.0, 5.0), std::invalid_argument);
    CHECK_THROWS_AS(Potential::square_well(0.3, 0.0), std::invalid_argument);
}

TEST_CASE("discretize_profile midpoint staircase") {
    SUBCASE("constant profile") {
        const std::vector<double> xs{0.0, 1.0};
        const std::vector<double> fs{-0.2, -0.2};
        const Potential p = Potential::discretize_profile(xs, fs, 7);
        for (const Segment& s : p.segments()) CHECK(s.value_ev == -0.2);
        CHECK(p.width_nm() == doctest::Approx(1.0).epsilon(1e-15));
    }
    SUBCASE("linear ramp, n = 2") {
        const std::vector<double> xs{0.0, 1.0};
        const std::vector<double> fs{0.0, -1.0};
        const Potential p = Potential::discretize_profile(xs, fs, 2);
        REQUIRE(p.segments().size() == 2);
        CHECK(p.segments()[0].value_ev == doctest::Approx(-0.25));
        CHECK(p.segments()[1].value_ev == doctest::Approx(-0.75));
    }
    SUBCASE("n = 1 takes the midpoint") {
        const std::vector<double> xs{0.0, 2.0};
        const std::vector<double> fs{0.0, -1.0};
        const Potential p = Potential::discretize_profile(xs, fs, 1);
        REQUIRE(p.segments().size() == 1);
        CHECK(p.segments()[0].value_ev == doctest::Approx(-0.5));
    }
    SUBCASE("unsorted samples rejected") {
        const std::vector<double> xs{0.0, 0.5, 0.4, 1.0};
        const std::vector<double> fs{0.0, -1.0, -1.0, 0.0};
        CHECK_THROWS_AS(Potential::discretize_profile(xs, fs, 2),
                        std::invalid_argument);
    }
}

TEST_CASE("staircase L1 gap halves when n doubles on the ramp") {
    const std::vector<double> xs{0.0, 1.0};
    const std::vector<double> fs{0.0, -1.0};
    const auto l1_gap = [&](int n) {
        const Potential p = Potential::discretize_profile(xs, fs, n);
        const int fine = 200000;
        double acc = 0.0;
        for (int i = 0; i < fine; ++i) {
            const double x = (i + 0.5) / fine;
            acc += std::abs(p.value_at(x) - (-x)) / fine;
        }
        return acc;
    };
    const double g4 = l1_gap(4);
    const double g8 = l1_gap(8);
    const double g16 = l1_gap(16);
    CHECK(g4 / g8 > 2.0 / 1.5);
    CHECK(g4 / g8 < 2.0 * 1.5);
    CHECK(g8 / g16 > 2.0 / 1.5);
    CHECK(g8 / g16 < 2.0 * 1.5);
}

TEST_CASE("parse_potential accepts the documented schema") {
    const Potential p = parse_potential(
        R"({"dx_nm": 5.0, "segments": [{"width_nm": 5.0, "value_eV": -0.3}]})");
    REQUIRE(p.segments().size() == 1);
    CHECK(p.width_nm() == 5.0);
    CHECK(p.segments()[0].value_ev == -0.3);
}

TEST_CASE("parse_potential rejects bad input with positioned messages") {
    const auto message_of = [](const char* text) {
        try {
            parse_potential(text);
        } catch (const std::invalid_argument& e) {
            return std::string(e.what());
        }
        return std::string("(no error)");
    };

    CHECK(message_of(R"({"dx_nm": 5.0, "segments": []})")
              .find("empty") != std::string::npos);
    CHECK(message_of(
              R"({"dx_nm": 5.0, "wat": 1, "segments": [{"width_nm": 5.0, "value_eV": -0.3}]})")
              .find("wat") != std::string::npos);
    CHECK(message_of(
              R"({"dx_nm": 5.0, "segments": [{"width_nm": 5.0, "value_eV": -0.3, "depth": 2}]})")
              .find("depth") != std::string::npos);
    CHECK(message_of(
              R"({"dx_nm": 5.0, "segments": [{"width_nm": -5.0, "value_eV": -0.3}]})")
              .find("segments[0]") != std::string::npos);
    // widths must sum to dx_nm within 1e-9 relative
    CHECK(message_of(
              R"({"dx_nm": 5.1, "segments": [{"width_nm": 5.0, "value_eV": -0.3}]})")
              .find("sum") != std::string::npos);
    CHECK(message_of("not json at all").find("potential file") !=
          std::string::npos);
}

TEST_CASE("serialization round trips exactly") {
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> width(0.01, 4.0);
    std::uniform_real_distribution<double> value(-2.0, 1.0);
    std::uniform_int_distribution<int> count(1, 9);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Segment> segs;
        const int n = count(rng);
        for (int i = 0; i < n; ++i) segs.push_back({width(rng), value(rng)});
        const Potential p(segs);
        const Potential q = parse_potential(serialize_potential(p));
        REQUIRE(q.segments().size() == p.segments().size());
        for (std::size_t i = 0; i < segs.size(); ++i) {
            CHECK(q.segments()[i].width_nm == p.segments()[i].width_nm);
            CHECK(q.segments()[i].value_ev == p.segments()[i].value_ev);
        }
    }
}

TEST_CASE("symmetry detection") {
    CHECK(Potential::square_well(0.3, 5.0).is_symmetric());
    CHECK(Potential({{1.0, -0.1}, {2.0, -0.5}, {1.0, -0.1}}).is_symmetric());
    CHECK_FALSE(
        Potential({{1.0, -0.1}, {2.0, -0.5}, {1.5, -0.1}}).is_symmetric());
    CHECK_FALSE(
        Potential({{1.0, -0.1}, {2.0, -0.5}, {1.0, -0.2}}).is_symmetric());
}

TEST_SUITE_END();
