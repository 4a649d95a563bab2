// One PASS/FAIL line per acceptance criterion; exits non-zero if any fails.

#include "riemannx/errors.hpp"
#include "riemannx/gallery.hpp"
#include "riemannx/integration.hpp"
#include "riemannx/oscillation.hpp"

#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>

using namespace riemannx;
using oracle::q;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool condition, const std::string& what)
    {
        if (!condition && pass) {
            pass = false;
            detail << what;
        }
    }
};

std::vector<double> dyadic(int from, int to)
{
    std::vector<double> out;
    for (int k = from; k <= to; ++k)
        out.push_back(std::ldexp(1.0, -k));
    return out;
}

// L_p distance between a step function and s -> (x - s)^+ by the midpoint
// rule with `per_piece` nodes on every constant piece.
double step_primitive_distance(const StepFn& F, double x, double p, int per_piece)
{
    double total = 0.0;
    for (std::size_t i = 0; i < F.pieces(); ++i) {
        const double u = to_double(F.breakpoints()[i]);
        const double v = to_double(F.breakpoints()[i + 1]);
        const double w = (v - u) / per_piece;
        for (int j = 0; j < per_piece; ++j) {
            const double s = u + (j + 0.5) * w;
            total += std::pow(std::abs(F.values()[i] - std::max(x - s, 0.0)), p) * w;
        }
    }
    return std::pow(total, 1 / p);
}

Rational three_pow(int k)
{
    return pow_int(Rational(3), static_cast<unsigned>(k));
}

void fat_cantor_measure(Outcome& o)
{
    const CantorLevels lv(20);
    const Rational expected = (1 - 1 / three_pow(20)) / 2;
    o.require(lv.removed_measure() == expected, "removed measure differs from (1 - 3^-20)/2");
    Rational summed = 0;
    Rational alpha = q(1, 3);
    for (int k = 1; k <= 20; ++k) {
        summed += alpha * Rational(lv.removed_count(k));
        alpha /= 6;
    }
    o.require(lv.removed_measure() == summed, "removed measure differs from the per-level sum");
    o.require(std::abs(to_double(lv.removed_measure()) - 0.5) <= 1e-9, "decimal not within 1e-9 of 1/2");
    o.detail << "measure=" << to_string(lv.removed_measure());
}

void kadets_gap_values(Outcome& o)
{
    double previous = std::numeric_limits<double>::infinity();
    for (int m = 1; m <= 12; ++m) {
        const KadetsGap g = kadets_gap(m);
        const Rational oracle_value = oracle::one_minus_geometric(m - 1);
        o.require(g.closed_form == oracle_value, "closed form mismatch at m=" + std::to_string(m));
        o.require(std::abs(g.numeric - to_double(oracle_value)) <= 1e-12,
                  "riemann_sum gap off by more than 1e-12 at m=" + std::to_string(m));
        o.require(g.numeric < previous, "not strictly decreasing at m=" + std::to_string(m));
        o.require(g.numeric > 0.5, "gap not above 1/2 at m=" + std::to_string(m));
        previous = g.numeric;
    }
    o.detail << "gap(12)=" << previous;
}

void divergence_verdict(Outcome& o)
{
    const KadetsFunction kf(20);
    const VectorFn f = kf.as_vector_fn(12);
    const IntegrabilityReport r = integrate(f, 1e-9, dyadic(0, 9), 3);
    o.require(r.verdict == Verdict::Divergent, "verdict is " + to_string(r.verdict));
    o.require(r.gap_by_mesh.size() == 10, "expected 10 meshes");
    for (std::size_t i = 0; i < r.gap_by_mesh.size(); ++i) {
        const GapAtMesh& g = r.gap_by_mesh[i];
        o.require(g.mesh == std::ldexp(1.0, -static_cast<int>(i)), "unexpected mesh schedule");
        o.require(g.certified_gap && *g.certified_gap >= 0.5,
                  "no certified gap >= 1/2 at m=" + std::to_string(i + 1));
    }
    o.detail << "verdict=" << to_string(r.verdict) << " bound=" << r.divergence_bound;
}

void weak_star_proxy(Outcome& o)
{
    const int K = 20;
    const KadetsFunction kf(K);
    std::vector<double> y;
    for (int k = 1; k <= K + 4; ++k)
        y.push_back(std::ldexp(1.0, -k));
    const std::vector<SeqVec> battery{SeqVec::dense(SpaceSpec::seq_sup(), y)};
    std::size_t probed = 0;
    for (int k = 1; k <= K; ++k) {
        std::vector<SeqVec> values;
        const std::uint64_t count = CantorLevels::removed_count(k);
        for (std::uint64_t i = 1; i <= count; ++i)
            values.push_back(kf(kf.levels().removed_midpoint(k, i)));
        probed += values.size();
        const ProbeResult r = weak_star_probe(values, battery);
        const double expected = std::ldexp(1.0, -k);
        o.require(r.norm_floor == 1.0, "norm floor not 1 at level " + std::to_string(k));
        for (double d : r.pairing_decay)
            o.require(d == expected, "pairing not 2^-k at level " + std::to_string(k));
        if (k >= 20)
            o.require(expected <= 1e-6, "pairing above 1e-6 at level " + std::to_string(k));
    }
    o.detail << "midpoints=" << probed;
}

void rolewicz_increments(Outcome& o)
{
    for (double p : {0.5, 0.25}) {
        double previous = std::numeric_limits<double>::infinity();
        for (int e = 1; e <= 4; ++e) {
            const Rational h = 1 / pow_int(Rational(10), static_cast<unsigned>(e));
            const RolewiczIncrement r = rolewicz_increment(q(1, 3), h, p);
            const double hd = std::pow(10.0, -e);
            const double inc = std::pow(hd, 1 / p);
            const double quo = std::pow(hd, 1 / p - 1);
            o.require(std::abs(r.increment - inc) <= 1e-12 * inc, "increment off");
            o.require(std::abs(r.quotient - quo) <= 1e-12 * quo, "quotient off");
            o.require(r.quotient < previous, "quotient not decreasing");
            previous = r.quotient;
        }
    }
    const FtcResult ftc = ftc_check(rolewicz_function(0.5), rolewicz_derivative(0.5), 0, 1, 1e-9);
    o.require(!ftc.holds, "FTC unexpectedly holds");
    o.require(ftc.defect == 1.0, "defect is not exactly 1");
    o.detail << "defect=" << ftc.defect;
}

void popov_continuity(Outcome& o)
{
    const double p = 0.5;
    const VectorFn f = rolewicz_function(p);
    double worst_distance = 0.0;
    for (int k = 4; k <= 10; ++k) {
        const Rational h = 1 / pow_int(Rational(2), static_cast<unsigned>(k));
        std::vector<Rational> grid;
        for (Rational x = 0; x <= 1; x += h)
            grid.push_back(x);
        const auto entries = indefinite_integral(f, grid, IndefiniteOptions{1e-3, std::nullopt, 1});
        std::vector<std::pair<Rational, Vector>> table;
        for (const auto& e : entries) {
            o.require(e.value.has_value(), "indefinite integral failed: " + e.error);
            if (!e.value)
                return;
            const StepFn& F = std::get<StepFn>(*e.value);
            // the primitive is (x - s)^+ : compare by quadrature, independently
            const double d = step_primitive_distance(F, to_double(e.x), p, 16);
            worst_distance = std::max(worst_distance, d);
            table.emplace_back(e.x, *e.value);
        }
        double increment = 0.0;
        for (const auto& m : continuity_modulus(table))
            if (m.h == h)
                increment = m.max_increment;
        o.require(increment > 0.0, "no increment measured at h=2^-" + std::to_string(k));
        o.require(increment <= to_double(h) * (1 + 1e-6), "increment above h at h=2^-" + std::to_string(k));
    }
    o.require(worst_distance <= 1e-3, "primitive distance above 1e-3");
    o.detail << "max_distance=" << worst_distance;
}

void ftc_positive(Outcome& o)
{
    const SpaceSpec s = SpaceSpec::seq_lp(0.5);
    VectorFn f;
    f.space = s;
    f.eval = [s](const Rational& t) -> Vector {
        const double x = to_double(t);
        return SeqVec(s, {{1, x}, {2, x * x}});
    };
    VectorFn fp;
    fp.space = s;
    fp.eval = [s](const Rational& t) -> Vector { return SeqVec(s, {{1, 1.0}, {2, 2 * to_double(t)}}); };
    const FtcResult r = ftc_check(f, fp, 0, 1, 1e-6);
    o.require(r.holds, "FTC does not hold");
    o.require(r.defect < 1e-6, "defect not below 1e-6");
    o.detail << "defect=" << r.defect;
}

void block_separation(Outcome& o)
{
    struct P {
        std::size_t p;
        double beta;
        double eps;
        double tail;
    };
    std::mt19937_64 rng(7);
    double worst_margin = std::numeric_limits<double>::infinity();
    for (const P& ps : {P{3, 1.0, 0.01, 1e-4}, P{8, 0.5, 0.001, 1e-6}}) {
        const double bound = static_cast<double>(ps.p) * ps.beta / 2 - 4 * ps.eps;
        const BlockCheck disjoint = blocks_verify(blocks_build(ps.p, ps.beta, ps.eps, 0.0));
        o.require(disjoint.ok, "disjoint instance rejected");
        o.require(disjoint.actual == static_cast<double>(ps.p) * ps.beta / 2, "disjoint actual is not p*beta/2");
        const BlockCheck tails = blocks_verify(blocks_build(ps.p, ps.beta, ps.eps, ps.tail));
        o.require(tails.ok && tails.actual >= bound, "tailed instance rejected");
        const double cap = std::ldexp(ps.eps, -static_cast<int>(ps.p));
        for (int t = 0; t < 1000; ++t) {
            const BlockCheck c = blocks_verify(blocks_build_random(ps.p, ps.beta, ps.eps, cap * 0.999, rng));
            o.require(c.ok, "random instance rejected");
            o.require(c.actual >= bound, "random instance below the bound");
            worst_margin = std::min(worst_margin, c.actual - bound);
        }
    }
    o.detail << "min_margin=" << worst_margin;
}

void convergent_baseline(Outcome& o)
{
    const IntegrabilityReport r = integrate(scalar_fn([](double t) { return t; }), 1e-6, dyadic(3, 20));
    o.require(r.verdict == Verdict::Convergent, "f(t)=t verdict is " + to_string(r.verdict));
    o.require(r.estimate && std::abs(scalar_value(*r.estimate) - 0.5) <= 1e-6, "integral of t not within 1e-6");
    struct Case {
        std::function<double(double)> f;
        double lipschitz;
    };
    for (const Case& c : {Case{[](double t) { return t; }, 1.0}, Case{[](double t) { return std::sin(t); }, 1.0},
                          Case{[](double t) { return t * t; }, 2.0}})
        for (double delta : dyadic(3, 12))
            o.require(cauchy_gap(scalar_fn(c.f), delta, 3) <= c.lipschitz * delta, "Lipschitz gap bound violated");
    if (r.estimate)
        o.detail << "integral=" << scalar_value(*r.estimate);
}

void henstock(Outcome& o)
{
    const HenstockResult r = henstock_integrate(oscillating_derivative(), oscillating_gauges(9), 1e-3);
    // F(1) - F(0) for F(t) = t^2 sin(1/t^2)
    const double target = std::sin(1.0);
    const double error = std::abs(scalar_value(r.estimate) - target);
    o.require(std::abs(target - 0.8414709848) <= 1e-10, "target constant");
    o.require(error <= 1e-3, "gauge integral not within 1e-3 of sin 1");
    o.detail << "abs_error=" << error;
}

void oscillation_measure(Outcome& o)
{
    for (int K = 1; K <= 20; ++K) {
        const OscProfile prof = discontinuity_measure_upper(KadetsFunction(K), 1.0);
        o.require(prof.exact && prof.exact_measure.has_value(), "exact path not taken");
        if (!prof.exact_measure)
            return;
        // independent: one minus the literal removed lengths
        Rational removed = 0;
        Rational alpha = q(1, 3);
        Rational count = 1;
        for (int k = 1; k <= K; ++k) {
            removed += alpha * count;
            alpha /= 6;
            count *= 2;
        }
        o.require(*prof.exact_measure == 1 - removed, "measure mismatch at K=" + std::to_string(K));
        o.require(*prof.exact_measure == 1 - (1 - 1 / three_pow(K)) / 2, "closed form mismatch");
        if (K == 20) {
            o.require(std::abs(to_double(*prof.exact_measure) - 0.5) <= 1e-6, "not within 1e-6 of 1/2");
            o.detail << "measure(20)=" << to_double(*prof.exact_measure);
        }
    }
}

struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    void (*run)(Outcome&);
};

} // namespace

int main()
{
    const Criterion criteria[] = {
        {1, "fat Cantor measure", 1, fat_cantor_measure},
        {2, "Kadets gap", 5, kadets_gap_values},
        {3, "divergence verdict", 30, divergence_verdict},
        {4, "weak* continuity proxy", 60, weak_star_proxy},
        {5, "Rolewicz increments", 60, rolewicz_increments},
        {6, "Popov continuity", 60, popov_continuity},
        {7, "FTC positive case", 60, ftc_positive},
        {8, "block separation", 60, block_separation},
        {9, "convergent baseline", 60, convergent_baseline},
        {10, "Henstock FTC", 30, henstock},
        {11, "oscillation measure", 60, oscillation_measure},
    };
    int failures = 0;
    for (const Criterion& c : criteria) {
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("threw: ") + e.what());
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (seconds > c.budget_seconds) {
            o.pass = false;
            o.detail << " over budget";
        }
        failures += o.pass ? 0 : 1;
        std::printf("%s criterion %d (%s): %s [%.3f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                    o.detail.str().c_str(), seconds);
    }
    std::fflush(stdout);
    return failures == 0 ? 0 : 1;
}
