#include "riemannx/errors.hpp"
#include "riemannx/gallery.hpp"
#include "riemannx/oscillation.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace riemannx;
using oracle::q;

namespace {

VectorFn jump_at_half()
{
    VectorFn f = scalar_fn([](double t) { return t >= 0.5 ? 1.0 : 0.0; });
    f.hints = fixed_hints({q(1, 2)});
    return f;
}

VectorFn constant_scalar()
{
    return scalar_fn([](double) { return 4.0; });
}

} // namespace

TEST_CASE("osc_interval examples")
{
    CHECK(osc_interval(jump_at_half(), q(2, 5), q(3, 5), 3) == 1.0);
    CHECK(osc_interval(constant_scalar(), 0, 1, 10) == 0.0);

    const KadetsFunction kf(6);
    const VectorFn f = kf.as_vector_fn(6);
    for (int k = 1; k <= 6; ++k) {
        const Interval a = kf.levels().removed(k, 1);
        CHECK(osc_interval(f, a.left, a.right, 4) == 1.0);
    }
    CHECK_THROWS_AS(osc_interval(f, q(1, 2), q(1, 2), 4), InvalidInput);
}

TEST_CASE("osc_point examples")
{
    const auto at_jump = osc_point(jump_at_half(), q(1, 2));
    CHECK(at_jump.value == 1.0);

    const std::vector<double> radii{0.4, 0.25, 0.19, 0.1, 0.01};
    const auto away = osc_point(jump_at_half(), q(3, 10), radii);
    CHECK(away.by_radius[0].second == 1.0);
    for (std::size_t i = 2; i < radii.size(); ++i)
        CHECK(away.by_radius[i].second == 0.0);
    CHECK(away.value == 0.0);

    CHECK_THROWS_AS(osc_point(jump_at_half(), q(1, 2), std::vector<double>{0.1, 0.2}), InvalidInput);
    CHECK_THROWS_AS(osc_point(jump_at_half(), q(1, 2), std::vector<double>{0.1, -0.2}), InvalidInput);
}

TEST_CASE("oscillation of the bump series at a Cantor endpoint")
{
    // f(1/3) = 0 and bumps of every deep level accumulate from the left, so
    // two distinct unit vectors e_j, e_k sit in every window: the true value is 2
    const KadetsFunction kf(30);
    const VectorFn f = kf.as_vector_fn(30);
    const auto r = osc_point(f, q(1, 3));
    for (const auto& [radius, est] : r.by_radius) {
        const Rational rr = from_double(radius);
        // deep enough for two peak levels to enter the window
        const int depth = static_cast<int>(std::ceil(-std::log2(radius))) + 4;
        const oracle::Cantor c(depth, q(1, 3) - rr, q(1, 3) + rr);
        CHECK(est == oracle::kadets_window_oscillation(c, q(1, 3) - rr, q(1, 3) + rr));
    }
    CHECK(r.value == 2.0);
    CHECK(r.value >= 1.0);
    CHECK(norm(kf(q(1, 3))) == 0.0);
}

TEST_CASE("property: osc_point estimates never increase along the schedule")
{
    oracle::Gen gen(5);
    const KadetsFunction kf(20);
    const VectorFn fk = kf.as_vector_fn(20);
    const VectorFn fs = scalar_fn([](double t) { return std::sin(1.0 / (t + 0.01)); });
    for (int trial = 0; trial < 20; ++trial) {
        const Rational t = q(gen.integer(0, 1000), 1000);
        for (const VectorFn* f : {&fk, &fs}) {
            const auto r = osc_point(*f, t, {}, 8);
            for (std::size_t i = 1; i < r.by_radius.size(); ++i)
                CHECK(r.by_radius[i].second <= r.by_radius[i - 1].second);
            for (const auto& [radius, est] : r.by_radius)
                CHECK(est >= 0.0);
        }
    }
}

TEST_CASE("sampled discontinuity measure")
{
    const MeasureGrid grid{6, 4};
    const auto jump = discontinuity_measure_upper(jump_at_half(), 0.5, grid);
    const double cell = std::ldexp(1.0, -grid.depth);
    CHECK(jump.estimated_measure_upper <= 2 * cell);
    CHECK(jump.estimated_measure_upper > 0.0);
    CHECK(!jump.exact);
    for (const auto& [t, w] : jump.points)
        CHECK(w >= 0.0);

    CHECK(discontinuity_measure_upper(constant_scalar(), 0.5, grid).estimated_measure_upper == 0.0);
    CHECK_THROWS_AS(discontinuity_measure_upper(constant_scalar(), 0.0, grid), InvalidInput);
}

TEST_CASE("property: sampled measure is monotone in depth and within [0, b-a]")
{
    const KadetsFunction kf(12);
    const VectorFn fk = kf.as_vector_fn(12);
    const VectorFn jump = jump_at_half();
    for (const VectorFn* f : {&fk, &jump}) {
        double prev = 2.0;
        for (int depth = 0; depth <= 9; ++depth) {
            const auto p = discontinuity_measure_upper(*f, 1.0, MeasureGrid{depth, 4});
            CHECK(p.estimated_measure_upper <= prev);
            CHECK(p.estimated_measure_upper >= 0.0);
            CHECK(p.estimated_measure_upper <= 1.0);
            prev = p.estimated_measure_upper;
        }
    }
}

TEST_CASE("exact discontinuity measure of the bump series")
{
    Rational prev = 1;
    for (int K = 1; K <= 20; ++K) {
        const auto p = discontinuity_measure_upper(KadetsFunction(K), 1.0);
        REQUIRE(p.exact);
        mpz_class three_k = 1;
        for (int k = 0; k < K; ++k)
            three_k *= 3;
        const Rational expected = 1 - (1 - Rational(1) / Rational(three_k)) / 2;
        CHECK(*p.exact_measure == oracle::one_minus_geometric(K));
        CHECK(*p.exact_measure == expected);
        CHECK(*p.exact_measure < prev);
        CHECK(*p.exact_measure > q(1, 2));
        prev = *p.exact_measure;
    }
    const auto deep = discontinuity_measure_upper(KadetsFunction(20), 1.0);
    CHECK(std::abs(deep.estimated_measure_upper - 0.5) <= 1e-6);
}
