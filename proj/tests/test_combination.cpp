#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "support.hpp"
#include "windband/combination.hpp"
#include "windband/errors.hpp"

using namespace windband;

namespace {

// Two providers over the same actuals.
struct Fixture {
    std::vector<DayPair> pairs;
    BandCoefficients coeffs1;
    BandCoefficients coeffs2;
};

Fixture make_fixture(std::uint64_t seed, std::size_t n_days, std::size_t T) {
    SplitMix64 rng(seed);
    Fixture f;
    std::vector<double> x1(T), x2(T);
    for (std::size_t t = 0; t < T; ++t) {
        x1[t] = rng.next_double();
        x2[t] = rng.next_double();
    }
    f.coeffs1 = BandCoefficients(x1, 0.05, 1.0);
    f.coeffs2 = BandCoefficients(x2, 0.05, 1.0);
    for (std::size_t d = 0; d < n_days; ++d) {
        const std::string id = iso_date_add("2016-01-01", static_cast<long>(d));
        std::vector<double> w(T), p1(T), p2(T);
        for (std::size_t t = 0; t < T; ++t) {
            w[t] = rng.next_double();
            p1[t] = rng.next_double();
            p2[t] = rng.next_double();
        }
        f.pairs.emplace_back(DayRecord(id, p1, w), DayRecord(id, p2, w));
    }
    return f;
}

} // namespace

TEST_CASE("alpha endpoints reproduce each provider exactly") {
    const Fixture f = make_fixture(3, 6, 8);
    for (const DayPair& pair : f.pairs) {
        const CombinedBand at1 = combine(pair.first, f.coeffs1, pair.second, f.coeffs2, 1.0);
        const BandLimits own1 = band_limits(pair.first.forecast, f.coeffs1);
        const CombinedBand at0 = combine(pair.first, f.coeffs1, pair.second, f.coeffs2, 0.0);
        const BandLimits own2 = band_limits(pair.second.forecast, f.coeffs2);
        for (std::size_t t = 0; t < at1.horizon(); ++t) {
            CHECK(at1.forecast[t] == pair.first.forecast[t]);
            CHECK(at1.lower[t] == doctest::Approx(own1.lower[t]).epsilon(1e-12));
            CHECK(at1.upper[t] == doctest::Approx(own1.upper[t]).epsilon(1e-12));
            CHECK(at0.forecast[t] == pair.second.forecast[t]);
            CHECK(at0.lower[t] == doctest::Approx(own2.lower[t]).epsilon(1e-12));
            CHECK(at0.upper[t] == doctest::Approx(own2.upper[t]).epsilon(1e-12));
        }
    }
}

TEST_CASE("hand-computed midpoint combination") {
    const DayRecord d1("2016-01-01", {0.4, 0.4}, {0.5, 0.5});
    const DayRecord d2("2016-01-01", {0.6, 0.6}, {0.5, 0.5});
    const BandCoefficients c({0.5, 0.5}, 0.05, 1.0);
    const CombinedBand band = combine(d1, c, d2, c, 0.5);
    CHECK(band.forecast[0] == doctest::Approx(0.5));
    CHECK(band.upper[0] == doctest::Approx(0.75));
    CHECK(band.lower[0] == doctest::Approx(0.25));
}

TEST_CASE("combined width never exceeds the convex width bound") {
    const Fixture f = make_fixture(13, 25, 8);
    SplitMix64 rng(99);
    for (int i = 0; i < 1000; ++i) {
        const DayPair& pair = f.pairs[rng.next_below(f.pairs.size())];
        const double alpha = rng.next_double();
        const CombinedBand band = combine(pair.first, f.coeffs1, pair.second, f.coeffs2, alpha);
        const std::size_t t = rng.next_below(band.horizon());
        const double uw1 = 2.0 * f.coeffs1.x[t] * pair.first.forecast[t];
        const double uw2 = 2.0 * f.coeffs2.x[t] * pair.second.forecast[t];
        CHECK(band.upper[t] - band.lower[t] <= alpha * uw1 + (1.0 - alpha) * uw2 + 1e-12);
    }
}

TEST_CASE("input validation") {
    const Fixture f = make_fixture(5, 2, 4);
    const DayPair& pair = f.pairs[0];
    CHECK_THROWS_AS(combine(pair.first, f.coeffs1, pair.second, f.coeffs2, 1.5),
                    ValidationError);
    CHECK_THROWS_AS(combine(pair.first, f.coeffs1, f.pairs[1].second, f.coeffs2, 0.5),
                    ValidationError);

    DayRecord other_actuals("2016-01-01", pair.second.forecast, pair.second.forecast);
    CHECK_THROWS_AS(DayPair(pair.first, other_actuals), ValidationError);
    CHECK_THROWS_AS(alpha_search({}, f.coeffs1, f.coeffs2, {0.5}, 0.05, 0.1),
                    ValidationError);
    CHECK_THROWS_AS(alpha_search(f.pairs, f.coeffs1, f.coeffs2, {1.5}, 0.05, 0.1),
                    ValidationError);
}

TEST_CASE("alpha search picks the narrowest feasible point deterministically") {
    const Fixture f = make_fixture(21, 20, 10);
    const std::vector<double> grid = default_alpha_grid();
    REQUIRE(grid.size() == 101);

    const AlphaSearchResult res =
        alpha_search(f.pairs, f.coeffs1, f.coeffs2, grid, 0.05, 0.5);
    REQUIRE(res.points.size() == grid.size());
    if (res.alpha_star) {
        const AlphaPoint* best = res.best();
        for (const AlphaPoint& p : res.points) {
            if (!p.feasible) continue;
            CHECK(best->mean_rel_width <= p.mean_rel_width + 1e-15);
        }
        // grid order does not matter
        std::vector<double> reversed(grid.rbegin(), grid.rend());
        std::reverse(reversed.begin(), reversed.end()); // same ascending grid again
        const AlphaSearchResult again =
            alpha_search(f.pairs, f.coeffs1, f.coeffs2, reversed, 0.05, 0.5);
        CHECK(*again.alpha_star == *res.alpha_star);
    }

    // identical providers: all points tie, the largest alpha wins
    std::vector<DayPair> twins;
    for (const DayPair& pair : f.pairs) twins.emplace_back(pair.first, pair.first);
    const AlphaSearchResult tied =
        alpha_search(twins, f.coeffs1, f.coeffs1, grid, 0.05, 1.0);
    REQUIRE(tied.alpha_star.has_value());
    CHECK(*tied.alpha_star == doctest::Approx(1.0));

    // impossible budget: diagnostics for every grid point, no winner
    const AlphaSearchResult none =
        alpha_search(f.pairs, f.coeffs1, f.coeffs2, {0.0, 0.5, 1.0}, 0.0, 0.0);
    if (!none.alpha_star) {
        CHECK(none.points.size() == 3);
        for (const AlphaPoint& p : none.points) CHECK_FALSE(p.feasible);
    }
}

TEST_CASE("combined off-band energy uses the shared actuals") {
    const DayRecord d1("2016-01-01", {0.5, 0.5}, {0.9, 0.1});
    const DayRecord d2("2016-01-01", {0.5, 0.5}, {0.9, 0.1});
    const BandCoefficients zero({0.0, 0.0}, 0.05, 1.0);
    const CombinedBand band = combine(d1, zero, d2, zero, 0.5);
    // band collapses to the forecast, violations are |w - 0.5| each hour
    CHECK(combined_offband_energy(d1, band) == doctest::Approx(0.4));
}
