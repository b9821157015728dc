#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "fracsurv/errors.hpp"
#include "fracsurv/nonparam.hpp"
#include "oracles.hpp"

using namespace fracsurv;
namespace fz = oracles::frozen;

namespace {
std::vector<CensoredObservation> three_subjects() {
    return {{1.0, true}, {2.0, false}, {3.0, true}};
}
} // namespace

TEST_CASE("hand-worked three subject example") {
    StepFunction h = nelson_aalen(three_subjects());
    REQUIRE(h.times.size() == 2);
    CHECK(h.pre_value == 0.0);
    CHECK(h.times[0] == 1.0);
    CHECK(h.times[1] == 3.0);
    CHECK(h.values[0] == 1.0 / 3.0);
    CHECK(h.values[1] == 1.0 / 3.0 + 1.0);
    REQUIRE(h.variances.size() == 2);
    CHECK(h.variances[0] == 1.0 / 9.0);
    CHECK(h.variances[1] == 1.0 / 9.0 + 1.0);
}

TEST_CASE("survival transform of the hand-worked example") {
    StepFunction s = na_survival(nelson_aalen(three_subjects()));
    REQUIRE(s.times.size() == 2);
    CHECK(s.pre_value == 1.0);
    CHECK(s.values[0] == doctest::Approx(fz::exp_m13).epsilon(1e-15));
    CHECK(s.values[1] == doctest::Approx(fz::exp_m43).epsilon(1e-15));
}

TEST_CASE("censored observations produce no steps") {
    StepFunction h = nelson_aalen({{0.5, false}, {1.0, true}, {1.0, false}, {4.0, false}});
    REQUIRE(h.times.size() == 1);
    CHECK(h.times[0] == 1.0);
    // the censored subjects at 1.0 and 4.0 are still at risk at the event
    CHECK(h.values[0] == 1.0 / 3.0);
}

TEST_CASE("all-censored data gives an empty estimate") {
    StepFunction h = nelson_aalen({{1.0, false}, {2.0, false}});
    CHECK(h.times.empty());
    CHECK(h.values.empty());
    CHECK(h.pre_value == 0.0);
}

TEST_CASE("tied events at one time share the at-risk count") {
    StepFunction h = nelson_aalen({{2.0, true}, {2.0, true}, {2.0, false}, {5.0, true}});
    REQUIRE(h.times.size() == 2);
    CHECK(h.values[0] == 2.0 / 4.0);
    CHECK(h.values[1] == 2.0 / 4.0 + 1.0);
    CHECK(h.variances[0] == 2.0 / 16.0);
    CHECK(h.variances[1] == 2.0 / 16.0 + 1.0);
}

TEST_CASE("matches the quadratic-rescan oracle on random censored datasets") {
    std::mt19937_64 eng(7121);
    for (int rep = 0; rep < 1000; ++rep) {
        std::size_t n = 1 + eng() % 50;
        std::vector<CensoredObservation> data(n);
        for (auto& obs : data) {
            // coarse grid of times forces plenty of ties
            obs.time = (double)(eng() % 12) * 0.5;
            obs.event = (eng() % 3) != 0;
        }
        StepFunction got = nelson_aalen(data);
        StepFunction want = oracles::brute_nelson_aalen(data);
        REQUIRE(got.times == want.times);
        REQUIRE(got.values == want.values);
        REQUIRE(got.variances == want.variances);
        CHECK(got.pre_value == want.pre_value);
    }
}

TEST_CASE("estimate is invariant under input permutation") {
    std::vector<CensoredObservation> data = {{3.0, true},  {1.0, false}, {4.0, true},
                                             {1.0, true},  {5.0, false}, {4.0, true},
                                             {2.0, false}, {6.0, true}};
    StepFunction ref = nelson_aalen(data);
    std::mt19937_64 eng(99);
    for (int rep = 0; rep < 20; ++rep) {
        std::shuffle(data.begin(), data.end(), eng);
        StepFunction got = nelson_aalen(data);
        CHECK(got.times == ref.times);
        CHECK(got.values == ref.values);
        CHECK(got.variances == ref.variances);
    }
}

TEST_CASE("uncensored distinct times reduce to the harmonic form") {
    std::vector<CensoredObservation> data;
    std::size_t n = 17;
    for (std::size_t i = 0; i < n; ++i)
        data.push_back({1.0 + (double)i, true});
    StepFunction h = nelson_aalen(data);
    REQUIRE(h.times.size() == n);
    double cum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        cum += 1.0 / (double)(n - j);
        CHECK(h.values[j] == doctest::Approx(cum).epsilon(1e-15));
    }
}

TEST_CASE("values and variances are monotone") {
    std::mt19937_64 eng(314);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<CensoredObservation> data(1 + eng() % 30);
        for (auto& obs : data)
            obs = {(double)(eng() % 8), (eng() % 2) != 0};
        StepFunction h = nelson_aalen(data);
        for (std::size_t j = 1; j < h.values.size(); ++j) {
            CHECK(h.values[j] > h.values[j - 1]);
            CHECK(h.variances[j] > h.variances[j - 1]);
        }
        for (std::size_t j = 1; j < h.times.size(); ++j)
            CHECK(h.times[j] > h.times[j - 1]);
    }
}

TEST_CASE("evaluate_step is right-continuous") {
    StepFunction h = nelson_aalen(three_subjects());
    CHECK(evaluate_step(h, 0.0) == 0.0);
    CHECK(evaluate_step(h, 0.999) == 0.0);
    CHECK(evaluate_step(h, 1.0) == 1.0 / 3.0);
    CHECK(evaluate_step(h, 2.5) == 1.0 / 3.0);
    CHECK(evaluate_step(h, 3.0) == 1.0 / 3.0 + 1.0);
    CHECK(evaluate_step(h, 100.0) == 1.0 / 3.0 + 1.0);

    StepFunction s = na_survival(h);
    CHECK(evaluate_step(s, 0.5) == 1.0);
    CHECK(evaluate_step(s, 1.0) == s.values[0]);
}

TEST_CASE("survival transform round-trips through the log") {
    std::mt19937_64 eng(2718);
    std::vector<CensoredObservation> data(200);
    for (auto& obs : data)
        obs = {(double)(eng() % 40) * 0.25, (eng() % 4) != 0};
    StepFunction h = nelson_aalen(data);
    StepFunction s = na_survival(h);
    REQUIRE(s.times == h.times);
    CHECK(s.variances.empty());
    for (std::size_t j = 0; j < s.values.size(); ++j) {
        CHECK(-std::log(s.values[j]) == doctest::Approx(h.values[j]).epsilon(1e-12));
        CHECK(s.values[j] <= 1.0);
        CHECK(s.values[j] > 0.0);
    }
    for (std::size_t j = 1; j < s.values.size(); ++j)
        CHECK(s.values[j] < s.values[j - 1]);
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(nelson_aalen({}), error);
    CHECK_THROWS_AS(nelson_aalen({{-1.0, true}}), error);
    CHECK_THROWS_AS(nelson_aalen({{std::nan(""), true}}), error);
    try {
        nelson_aalen({});
    } catch (const error& e) {
        CHECK(e.kind() == errc::invalid_argument);
    }

    StepFunction bad;
    bad.times = {1.0, 2.0};
    bad.values = {0.5, 0.2};
    CHECK_THROWS_AS(na_survival(bad), error);
    bad.values = {-0.1, 0.2};
    CHECK_THROWS_AS(na_survival(bad), error);
}

TEST_CASE("zero event times are accepted") {
    StepFunction h = nelson_aalen({{0.0, true}, {1.0, true}});
    REQUIRE(h.times.size() == 2);
    CHECK(h.times[0] == 0.0);
    CHECK(h.values[0] == 0.5);
    CHECK(h.values[1] == 1.5);
}
