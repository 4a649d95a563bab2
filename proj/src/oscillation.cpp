#include "riemannx/oscillation.hpp"

#include "riemannx/errors.hpp"

#include <algorithm>
#include <cmath>

namespace riemannx {

namespace {

std::vector<Rational> sample_points(const VectorFn& f, const Rational& c, const Rational& d,
                                    std::size_t samples)
{
    std::vector<Rational> pts;
    const Rational step = (d - c) / Rational(static_cast<unsigned long>(samples));
    for (std::size_t j = 0; j <= samples; ++j)
        pts.emplace_back(c + step * Rational(static_cast<unsigned long>(j)));
    pts.back() = d;
    for (auto& h : f.hints_in(c, d))
        pts.push_back(std::move(h));
    return pts;
}

/// Distinct values seen so far and the largest distance among them.
class Spread {
public:
    void add(Vector v)
    {
        for (const auto& u : seen_)
            if (u == v)
                return;
        for (const auto& u : seen_)
            diameter_ = std::max(diameter_, norm(sub(u, v)));
        seen_.push_back(std::move(v));
    }
    double diameter() const { return diameter_; }

private:
    std::vector<Vector> seen_;
    double diameter_ = 0.0;
};

} // namespace

double osc_interval(const VectorFn& f, const Rational& c, const Rational& d, std::size_t samples)
{
    if (!(c < d))
        throw InvalidInput("osc_interval needs c < d");
    if (samples == 0)
        throw InvalidInput("osc_interval needs at least one sample");
    Spread spread;
    for (const auto& t : sample_points(f, c, d, samples))
        spread.add(f(t));
    return spread.diameter();
}

std::vector<double> default_shrink_schedule()
{
    std::vector<double> radii;
    for (int k = 3; k <= 20; ++k)
        radii.push_back(std::ldexp(1.0, -k));
    return radii;
}

OscSequence osc_point(const VectorFn& f, const Rational& t, std::span<const double> radii,
                      std::size_t samples)
{
    std::vector<double> fallback;
    if (radii.empty()) {
        fallback = default_shrink_schedule();
        radii = fallback;
    }
    if (t < f.a || t > f.b)
        throw InvalidInput("osc_point at " + to_string(t) + " outside the domain");
    if (samples == 0)
        throw InvalidInput("osc_point needs at least one sample");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0.0) || !std::isfinite(radii[i]))
            throw InvalidInput("radii must be positive");
        if (i > 0 && !(radii[i] < radii[i - 1]))
            throw InvalidInput("radii must be strictly decreasing");
    }

    auto window = [&](double r) {
        const Rational rr = from_double(r);
        Rational lo = t - rr;
        Rational hi = t + rr;
        if (lo < f.a)
            lo = f.a;
        if (hi > f.b)
            hi = f.b;
        return std::make_pair(lo, hi);
    };

    // pool of (distance to t, point), shared by every radius
    std::vector<std::pair<Rational, Rational>> pool;
    for (double r : radii) {
        const auto [lo, hi] = window(r);
        if (!(lo < hi))
            continue;
        for (auto& s : sample_points(f, lo, hi, samples))
            pool.emplace_back(Rational(abs(s - t)), std::move(s));
    }
    pool.emplace_back(Rational(0), t);
    std::sort(pool.begin(), pool.end(),
              [](const auto& x, const auto& y) { return x.first < y.first || (x.first == y.first && x.second < y.second); });
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

    // grow from the smallest window outwards
    OscSequence out;
    out.by_radius.resize(radii.size());
    Spread spread;
    std::size_t next = 0;
    for (std::size_t k = radii.size(); k-- > 0;) {
        const Rational rr = from_double(radii[k]);
        while (next < pool.size() && pool[next].first <= rr) {
            spread.add(f(pool[next].second));
            ++next;
        }
        out.by_radius[k] = {radii[k], spread.diameter()};
    }
    out.value = out.by_radius.back().second;
    return out;
}

OscProfile discontinuity_measure_upper(const VectorFn& f, double beta, const MeasureGrid& grid)
{
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw InvalidInput("beta must be positive");
    if (grid.depth < 0 || grid.samples == 0)
        throw InvalidInput("measure grid needs depth >= 0 and samples >= 1");

    OscProfile out;
    out.beta = beta;
    Rational bad = 0;

    struct Cell {
        Rational lo;
        Rational hi;
        int depth;
    };
    std::vector<Cell> stack{{f.a, f.b, 0}};
    while (!stack.empty()) {
        Cell cell = std::move(stack.back());
        stack.pop_back();
        const Rational mid = (cell.lo + cell.hi) / 2;
        const Vector centre = f(mid);
        bool certified = true;
        Spread spread;
        for (const auto& s : sample_points(f, cell.lo, cell.hi, grid.samples)) {
            Vector v = f(s);
            if (norm(sub(v, centre)) > beta / 2)
                certified = false;
            spread.add(std::move(v));
        }
        if (certified)
            continue;
        if (cell.depth >= grid.depth) {
            bad += cell.hi - cell.lo;
            out.points.emplace_back(mid, spread.diameter());
            continue;
        }
        stack.push_back({mid, cell.hi, cell.depth + 1});
        stack.push_back({std::move(cell.lo), mid, cell.depth + 1});
    }
    out.estimated_measure_upper = to_double(bad);
    return out;
}

OscProfile discontinuity_measure_upper(const KadetsFunction& f, double beta)
{
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw InvalidInput("beta must be positive");
    OscProfile out;
    out.beta = beta;
    out.exact = true;
    out.exact_measure = beta > 2.0 ? Rational(0) : Rational(1 - f.levels().removed_measure());
    out.estimated_measure_upper = to_double(*out.exact_measure);
    return out;
}

} // namespace riemannx
