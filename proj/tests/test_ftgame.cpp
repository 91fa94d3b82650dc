#include <doctest.h>

#include <cmath>

#include "cft/ftgame.hpp"
#include "cft/rng.hpp"

using namespace cft;

namespace {

long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

} // namespace

TEST_CASE("bob's forcing stream") {
    auto s11 = bob_forcing(1, 1);
    REQUIRE(s11.size() == 2);
    CHECK(s11[0] == ColorSet{0});
    CHECK(s11[1] == ColorSet{1});

    auto s22 = bob_forcing(2, 2);
    CHECK(s22.size() == 6); // C(4,2)
    CHECK(s22.front() == ColorSet{0, 1});
    CHECK(s22.back() == ColorSet{2, 3});
}

TEST_CASE("first set is always kept") {
    for (auto strat : {AliceStrategy::Optimal, AliceStrategy::ParkBased}) {
        GameState st(5, 2, 2, strat);
        CHECK(st.step({0, 1}));
    }
}

TEST_CASE("park alice discards the third copy of a set") {
    GameState st(6, 2, 2, AliceStrategy::ParkBased);
    CHECK(st.step({1, 2}));
    CHECK(st.step({1, 2})); // link score reaches 1
    CHECK_FALSE(st.step({1, 2}));
    CHECK(st.kept().size() == 2);
}

TEST_CASE("forcing bob vs optimal alice keeps exactly C(f+k, k)") {
    for (int f = 1; f <= 4; ++f)
        for (int k = 1; k <= 4; ++k) {
            if (f + k > 8) continue;
            GameState st(f + k, f, k, AliceStrategy::Optimal);
            for (const ColorSet& p : bob_forcing(f, k)) st.step(p);
            CHECK(static_cast<long>(st.kept().size()) == binom(f + k, k));
            CHECK(check_certificate(f + k, st.presented(), st.kept(), f));
        }
}

TEST_CASE("park alice stays within 2 (2f)^k kept sets") {
    for (int f = 1; f <= 3; ++f)
        for (int k = 1; k <= 3; ++k) {
            if (f + k > 6) continue;
            GameState st(f + k, f, k, AliceStrategy::ParkBased);
            for (const ColorSet& p : bob_forcing(f, k)) st.step(p);
            double cap = 2.0 * std::pow(2.0 * f, k);
            CHECK(static_cast<double>(st.kept().size()) <= cap);
            CHECK(check_certificate(f + k, st.presented(), st.kept(), f));
        }
}

TEST_CASE("random streams: certificates always valid, sizes bounded") {
    Rng rng(0x6A6E);
    for (int trial = 0; trial < 40; ++trial) {
        int f = 1 + static_cast<int>(rng.below(3));
        int k = 1 + static_cast<int>(rng.below(3));
        int universe = f + k + static_cast<int>(rng.below(4));
        GameState opt(universe, f, k, AliceStrategy::Optimal);
        GameState park(universe, f, k, AliceStrategy::ParkBased);
        for (int round = 0; round < 40; ++round) {
            std::vector<int> xs;
            int size = 1 + static_cast<int>(rng.below(k));
            for (int i = 0; i < size; ++i) xs.push_back(static_cast<int>(rng.below(universe)));
            ColorSet p(xs);
            opt.step(p);
            park.step(p);
            CHECK(park.last_step_link_updates() <= (1L << k));
        }
        CHECK(static_cast<long>(opt.kept().size()) <= binom(f + k, k));
        CHECK(static_cast<double>(park.kept().size()) <= 2.0 * std::pow(2.0 * f, k));
        CHECK(check_certificate(universe, opt.presented(), opt.kept(), f));
        CHECK(check_certificate(universe, park.presented(), park.kept(), f));
    }
}

TEST_CASE("optimal alice enumeration budget guard") {
    GameState st(40, 12, 3, AliceStrategy::Optimal, /*budget=*/1000);
    CHECK_THROWS_AS(st.step({0, 1, 2}), std::invalid_argument);
}

TEST_CASE("check_certificate corner cases") {
    std::vector<ColorSet> all = {{0, 1}, {2}};
    CHECK(check_certificate(3, all, all, 2));
    CHECK_FALSE(check_certificate(3, all, {}, 1));
    // kept covers every fault pattern even without being all of them
    CHECK(check_certificate(3, all, {{2}}, 0));
    CHECK_FALSE(check_certificate(3, all, {{2}}, 1)); // F = {2} leaves {0,1} uncovered
}

TEST_CASE("the game trace records decisions in order") {
    GameState st(4, 2, 2, AliceStrategy::ParkBased);
    st.step({0, 1});
    st.step({0, 1});
    st.step({0, 1});
    std::string t = st.trace();
    CHECK(t == "keep 0 1\nkeep 0 1\ndiscard 0 1\n");
}
