#include "riemannx/integration.hpp"

#include "riemannx/csv.hpp"
#include "riemannx/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace riemannx {

// ---------------------------------------------------------------- VectorFn

Vector VectorFn::operator()(const Rational& t) const
{
    if (t < a || t > b)
        throw InvalidInput("function evaluated at " + to_string(t) + " outside [" + to_string(a) +
                           ", " + to_string(b) + "]");
    Vector v = eval(t);
    if (!(space_of(v) == space))
        throw SpaceMismatch("function returned a vector in " + space_of(v).describe() +
                            ", declared " + space.describe());
    return v;
}

std::vector<Rational> VectorFn::hints_in(const Rational& lo, const Rational& hi) const
{
    if (!hints)
        return {};
    std::vector<Rational> pts = hints(lo, hi);
    std::erase_if(pts, [&](const Rational& t) { return t < lo || t > hi; });
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

VectorFn VectorFn::restricted(const Rational& lo, const Rational& hi) const
{
    if (lo < a || hi > b || !(lo < hi))
        throw InvalidInput("restriction [" + to_string(lo) + ", " + to_string(hi) +
                           "] is not a subinterval of the domain");
    VectorFn g = *this;
    g.a = lo;
    g.b = hi;
    g.witness = nullptr;
    return g;
}

VectorFn scalar_fn(std::function<double(double)> f, Rational a, Rational b)
{
    VectorFn g;
    g.space = SpaceSpec::finite_dim(1);
    g.eval = [f = std::move(f)](const Rational& t) { return scalar(f(to_double(t))); };
    g.a = std::move(a);
    g.b = std::move(b);
    return g;
}

HintProvider fixed_hints(std::vector<Rational> points)
{
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    return [points = std::move(points)](const Rational& lo, const Rational& hi) {
        auto first = std::lower_bound(points.begin(), points.end(), lo);
        auto last = std::upper_bound(points.begin(), points.end(), hi);
        return std::vector<Rational>(first, last);
    };
}

// ---------------------------------------------------------------- sums

Vector riemann_sum(const VectorFn& f, const TaggedPartition& p)
{
    if (p.a() != f.a || p.b() != f.b)
        throw InvalidInput("partition of [" + to_string(p.a()) + ", " + to_string(p.b()) +
                           "] does not cover the domain [" + to_string(f.a) + ", " +
                           to_string(f.b) + "]");
    std::vector<Vector> terms;
    std::vector<double> weights;
    terms.reserve(p.size());
    weights.reserve(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        terms.push_back(f(p.tag(i)));
        weights.push_back(to_double(p.length(i)));
    }
    return accumulate(zero_vector(f.space), terms, weights);
}

std::size_t pieces_for_mesh(const Rational& a, const Rational& b, double mesh_target)
{
    if (!(mesh_target > 0.0) || !std::isfinite(mesh_target))
        throw InvalidInput("mesh target must be a positive finite number");
    if (!(a < b))
        throw InvalidInput("empty interval");
    Rational ratio = Rational(b - a) / from_double(mesh_target);
    mpz_class n;
    mpz_cdiv_q(n.get_mpz_t(), ratio.get_num_mpz_t(), ratio.get_den_mpz_t());
    if (n < 1)
        n = 1;
    if (!n.fits_ulong_p() || n > 100'000'000)
        throw InvalidInput("mesh target " + csv::number(mesh_target) + " needs too many pieces");
    return static_cast<std::size_t>(n.get_ui());
}

namespace {

bool is_scalar_space(const SpaceSpec& s)
{
    return s.kind() == SpaceSpec::Kind::FiniteDim && s.dimension() == 1;
}

std::vector<Vector> distinct_values(std::vector<Vector> values)
{
    std::vector<Vector> out;
    for (auto& v : values)
        if (std::find(out.begin(), out.end(), v) == out.end())
            out.push_back(std::move(v));
    return out;
}

// Ordered pair (x, y) maximising ||acc + w (v_x - v_y)||.
Vector greedy_step(const Vector& acc, const std::vector<Vector>& values, double w)
{
    Vector best = acc;
    double best_norm = norm(acc);
    for (std::size_t x = 0; x < values.size(); ++x) {
        for (std::size_t y = 0; y < values.size(); ++y) {
            if (x == y)
                continue;
            Vector trial = add(acc, scale(w, sub(values[x], values[y])));
            const double n = norm(trial);
            if (n > best_norm) {
                best_norm = n;
                best = std::move(trial);
            }
        }
    }
    return best;
}

// Pairs each cell's values with the sign pattern of `direction` and sums the
// resulting extreme differences.
Vector aligned_sum(const SeqVec& direction, const std::vector<std::vector<Vector>>& cells,
                   const std::vector<double>& widths, const SpaceSpec& space)
{
    std::vector<std::pair<std::size_t, double>> signs;
    for (std::size_t k = 0; k < direction.size(); ++k)
        signs.emplace_back(direction.index(k), direction.value(k) > 0 ? 1.0 : -1.0);
    const SeqVec phi(SpaceSpec::seq_sup(), std::move(signs));
    auto functional = [&](const Vector& v) { return pair(std::get<SeqVec>(v), phi); };
    std::vector<Vector> terms;
    std::vector<double> weights;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        const auto& vals = cells[c];
        if (vals.size() < 2)
            continue;
        std::size_t hi = 0;
        std::size_t lo = 0;
        double hi_val = functional(vals[0]);
        double lo_val = hi_val;
        for (std::size_t k = 1; k < vals.size(); ++k) {
            const double fv = functional(vals[k]);
            if (fv > hi_val) {
                hi_val = fv;
                hi = k;
            }
            if (fv < lo_val) {
                lo_val = fv;
                lo = k;
            }
        }
        if (hi == lo)
            continue;
        terms.push_back(sub(vals[hi], vals[lo]));
        weights.push_back(widths[c]);
    }
    return accumulate(zero_vector(space), terms, weights);
}

} // namespace

double cauchy_gap(const VectorFn& f, double mesh_target, std::size_t tag_candidates_per_interval)
{
    const std::size_t n = pieces_for_mesh(f.a, f.b, mesh_target);
    const Rational step = Rational(f.b - f.a) / Rational(static_cast<unsigned long>(n));
    const double width = to_double(step);
    const bool scalar_case = is_scalar_space(f.space);
    const bool flat_case = !scalar_case && f.space.is_sequence() &&
                           f.space.kind() != SpaceSpec::Kind::NestedL1;

    double scalar_gap = 0.0;
    Vector acc = zero_vector(f.space);
    std::vector<std::vector<Vector>> cell_values;
    std::vector<double> cell_widths;

    // interior candidates as offsets from the left end of a piece
    std::vector<Rational> offsets;
    for (std::size_t j = 1; j <= tag_candidates_per_interval; ++j)
        offsets.emplace_back(step * Rational(static_cast<unsigned long>(j)) /
                             Rational(static_cast<unsigned long>(tag_candidates_per_interval + 1)));
    offsets.emplace_back(step / 2);
    std::sort(offsets.begin(), offsets.end());
    offsets.erase(std::unique(offsets.begin(), offsets.end()), offsets.end());

    std::vector<Rational> candidates;
    Rational left = f.a;
    std::optional<Vector> left_value;
    for (std::size_t i = 0; i < n; ++i) {
        Rational right = i + 1 == n ? f.b : Rational(left + step);
        candidates.clear();
        for (const auto& o : offsets)
            candidates.emplace_back(left + o);
        auto hints = f.hints_in(left, right);
        if (!hints.empty()) {
            for (auto& h : hints)
                candidates.push_back(std::move(h));
            std::sort(candidates.begin(), candidates.end());
            candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
        }

        std::vector<Vector> values;
        values.reserve(candidates.size() + 2);
        values.push_back(left_value ? *left_value : f(left));
        for (const auto& t : candidates)
            if (t != left && t != right)
                values.push_back(f(t));
        Vector right_value = f(right);
        values.push_back(right_value);
        left_value = std::move(right_value);

        if (scalar_case) {
            double hi = -std::numeric_limits<double>::infinity();
            double lo = std::numeric_limits<double>::infinity();
            for (const auto& v : values) {
                const double x = scalar_value(v);
                hi = std::max(hi, x);
                lo = std::min(lo, x);
            }
            scalar_gap += width * (hi - lo);
        } else {
            values = distinct_values(std::move(values));
            if (values.size() > 1)
                acc = greedy_step(acc, values, width);
            if (flat_case) {
                cell_values.push_back(std::move(values));
                cell_widths.push_back(width);
            }
        }
        left = std::move(right);
    }

    if (scalar_case)
        return scalar_gap;
    double gap = norm(acc);
    if (flat_case && !std::get<SeqVec>(acc).empty()) {
        const Vector aligned = aligned_sum(std::get<SeqVec>(acc), cell_values, cell_widths, f.space);
        gap = std::max(gap, norm(aligned));
    }
    return gap;
}

// ---------------------------------------------------------------- integrate

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::Convergent: return "CONVERGENT";
    case Verdict::Divergent: return "DIVERGENT";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

double GapAtMesh::gap() const
{
    return certified_gap ? std::max(sampled_gap, *certified_gap) : sampled_gap;
}

namespace {

void check_schedule(std::span<const double> schedule)
{
    if (schedule.empty())
        throw InvalidInput("empty mesh schedule");
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        if (!(schedule[i] > 0.0) || !std::isfinite(schedule[i]))
            throw InvalidInput("mesh schedule entries must be positive");
        if (i > 0 && !(schedule[i] < schedule[i - 1]))
            throw InvalidInput("mesh schedule must be strictly decreasing");
    }
}

// Recomputes the witness pair's gap; nullopt if the pair is unusable or
// falls short of its claimed bound.
std::optional<double> verify_witness(const VectorFn& f, const PartitionPair& pp, double mesh_target)
{
    const Rational limit = from_double(mesh_target);
    for (const TaggedPartition* p : {&pp.first, &pp.second})
        if (p->a() != f.a || p->b() != f.b || mesh(*p) > limit)
            return std::nullopt;
    const double gap = norm(sub(riemann_sum(f, pp.first), riemann_sum(f, pp.second)));
    if (!(gap >= pp.bound))
        return std::nullopt;
    return gap;
}

Vector midpoint_estimate(const VectorFn& f, double mesh_target)
{
    const std::size_t n = pieces_for_mesh(f.a, f.b, mesh_target);
    return riemann_sum(f, uniform_partition(f.a, f.b, n, TagRule::Mid));
}

} // namespace

IntegrabilityReport integrate(const VectorFn& f, double tol, std::span<const double> mesh_schedule,
                              std::size_t tag_candidates_per_interval)
{
    check_schedule(mesh_schedule);
    if (!(tol > 0.0))
        throw InvalidInput("tolerance must be positive");

    IntegrabilityReport report;
    bool all_certified = static_cast<bool>(f.witness);
    double bound = std::numeric_limits<double>::infinity();
    for (double m : mesh_schedule) {
        GapAtMesh entry{m, cauchy_gap(f, m, tag_candidates_per_interval), std::nullopt};
        if (f.witness) {
            if (auto pp = f.witness(m)) {
                entry.certified_gap = verify_witness(f, *pp, m);
                if (entry.certified_gap)
                    bound = std::min(bound, pp->bound);
            }
        }
        all_certified = all_certified && entry.certified_gap.has_value();
        report.gap_by_mesh.push_back(entry);
    }

    if (all_certified) {
        report.verdict = Verdict::Divergent;
        report.divergence_bound = bound;
        return report;
    }
    report.estimate = midpoint_estimate(f, mesh_schedule.back());
    report.verdict = report.gap_by_mesh.back().sampled_gap <= tol ? Verdict::Convergent
                                                                  : Verdict::Inconclusive;
    return report;
}

// ---------------------------------------------------------------- indefinite integral

std::vector<IndefiniteEntry> indefinite_integral(const VectorFn& f, std::span<const Rational> grid,
                                                 const IndefiniteOptions& options)
{
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] < f.a || grid[i] > f.b)
            throw InvalidInput("grid point " + to_string(grid[i]) + " outside the domain");
        if (i > 0 && !(grid[i - 1] < grid[i]))
            throw InvalidInput("grid must be strictly increasing");
    }

    std::vector<IndefiniteEntry> out;
    out.reserve(grid.size());
    Vector running = zero_vector(f.space);
    Rational reached = f.a;
    for (const auto& x : grid) {
        IndefiniteEntry entry{x, std::nullopt, {}};
        try {
            if (x > reached) {
                const std::size_t n = pieces_for_mesh(reached, x, options.mesh);
                const TaggedPartition chunk = uniform_partition(reached, x, n, TagRule::Mid);
                std::vector<Vector> terms;
                std::vector<double> weights;
                for (std::size_t i = 0; i < chunk.size(); ++i) {
                    terms.push_back(f(chunk.tag(i)));
                    weights.push_back(to_double(chunk.length(i)));
                }
                running = accumulate(running, terms, weights);
                reached = x;
            }
            if (options.gap_threshold && x > f.a) {
                const double gap = cauchy_gap(f.restricted(f.a, x), options.mesh,
                                              options.tag_candidates_per_interval);
                if (gap > *options.gap_threshold)
                    entry.error = "sampled Riemann gap " + csv::number(gap) +
                                  " exceeds threshold on [" + to_string(f.a) + ", " + to_string(x) + "]";
            }
            if (entry.error.empty())
                entry.value = running;
        } catch (const Error& e) {
            entry.error = e.what();
        }
        out.push_back(std::move(entry));
    }
    return out;
}

std::vector<ModulusEntry> continuity_modulus(std::span<const std::pair<Rational, Vector>> table,
                                             std::span<const std::size_t> strides)
{
    if (table.size() < 2)
        throw InvalidInput("continuity_modulus needs at least two points");
    for (std::size_t i = 1; i < table.size(); ++i)
        if (!(table[i - 1].first < table[i].first))
            throw InvalidInput("continuity_modulus table must be sorted by x");

    static constexpr std::size_t kAdjacent[] = {1};
    if (strides.empty())
        strides = kAdjacent;

    std::map<Rational, double> by_spacing;
    for (std::size_t s : strides) {
        if (s == 0)
            throw InvalidInput("stride must be positive");
        for (std::size_t i = 0; i + s < table.size(); ++i) {
            Rational h = table[i + s].first - table[i].first;
            const double inc = norm(sub(table[i + s].second, table[i].second));
            auto [it, inserted] = by_spacing.emplace(std::move(h), inc);
            if (!inserted)
                it->second = std::max(it->second, inc);
        }
    }
    std::vector<ModulusEntry> out;
    for (auto& [h, inc] : by_spacing)
        out.push_back({h, inc});
    return out;
}

// ---------------------------------------------------------------- FTC

FtcResult ftc_check(const VectorFn& f, const VectorFn& fp, const Rational& a, const Rational& b,
                    double tol, std::span<const double> mesh_schedule)
{
    static const std::vector<double> kDefaultSchedule = [] {
        std::vector<double> s;
        for (int k = 1; k <= 12; ++k)
            s.push_back(std::ldexp(1.0, -k));
        return s;
    }();
    if (mesh_schedule.empty())
        mesh_schedule = kDefaultSchedule;

    VectorFn derivative = (a == fp.a && b == fp.b) ? fp : fp.restricted(a, b);
    const IntegrabilityReport report = integrate(derivative, tol, mesh_schedule);
    if (report.verdict == Verdict::Divergent)
        throw DivergentIntegrand("derivative is certified not Riemann integrable on [" +
                                 to_string(a) + ", " + to_string(b) + "]");
    const Vector increment = sub(f(b), f(a));
    FtcResult result;
    result.integrability = report.verdict;
    result.defect = norm(sub(*report.estimate, increment));
    result.holds = result.defect <= tol;
    return result;
}

// ---------------------------------------------------------------- Henstock

HenstockResult henstock_integrate(const VectorFn& f, std::span<const Gauge> gauges, double tol,
                                  int depth_cap)
{
    if (gauges.empty())
        throw InvalidInput("empty gauge schedule");
    std::vector<HenstockStep> steps;
    for (const auto& g : gauges) {
        const TaggedPartition p = cousin_fine(f.a, f.b, g, depth_cap);
        Vector estimate = riemann_sum(f, p);
        const double change = steps.empty() ? std::numeric_limits<double>::infinity()
                                            : norm(sub(estimate, steps.back().estimate));
        steps.push_back({p.size(), estimate, change});
        if (change < tol)
            return {std::move(estimate), std::move(steps)};
    }
    throw NoConvergence("successive gauge estimates never agreed within " + csv::number(tol) +
                        " over " + std::to_string(gauges.size()) + " gauges");
}

} // namespace riemannx
