#pragma once

#include "riemannx/gallery.hpp"
#include "riemannx/integration.hpp"

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace riemannx {

/// Largest ||f(x) - f(y)|| over a uniform grid of `samples` + 1 points of
/// [c,d] together with the hints of f inside [c,d]. A lower estimate of the
/// true oscillation on [c,d].
double osc_interval(const VectorFn& f, const Rational& c, const Rational& d, std::size_t samples = 32);

struct OscSequence {
    double value = 0.0;                              ///< estimate at the smallest radius
    std::vector<std::pair<double, double>> by_radius; ///< (radius, estimate), nonincreasing
};

/// Radii 2^-k for k = 3..20.
std::vector<double> default_shrink_schedule();

/// Oscillation at t along a strictly decreasing schedule of radii. One pool
/// of sample points is drawn for all radii (a grid and the hints for each
/// window), and the estimate at radius r uses the pool points within r of t.
/// The windows are nested, so the estimates never increase.
OscSequence osc_point(const VectorFn& f, const Rational& t, std::span<const double> radii = {},
                      std::size_t samples = 32);

struct OscProfile {
    std::vector<std::pair<Rational, double>> points; ///< (cell midpoint, sampled oscillation)
    double beta = 0.0;
    double estimated_measure_upper = 0.0;
    bool exact = false;                       ///< true on the interval-classification path
    std::optional<Rational> exact_measure;    ///< set when exact
};

struct MeasureGrid {
    int depth = 10;          ///< bisection levels below [a,b]
    std::size_t samples = 8; ///< uniform samples per cell, plus hints
};

/// Sampled path. A cell is certified when every sample and hint in it lies
/// within beta/2 of the value at its midpoint; uncertified cells are
/// bisected until `grid.depth`. Returns the total length left uncertified.
OscProfile discontinuity_measure_upper(const VectorFn& f, double beta, const MeasureGrid& grid = {});

/// Exact path for the bump series: every point of [0,1] outside the open
/// removed intervals of level <= depth is counted, since the oscillation is
/// 2 at each point of the Cantor set and 0 inside a removed interval.
OscProfile discontinuity_measure_upper(const KadetsFunction& f, double beta);

} // namespace riemannx
