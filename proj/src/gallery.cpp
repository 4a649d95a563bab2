#include "riemannx/gallery.hpp"

#include "riemannx/csv.hpp"
#include "riemannx/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <ostream>

namespace riemannx {

// ---------------------------------------------------------------- CantorLevels

CantorLevels::CantorLevels(int depth) : depth_(depth)
{
    if (depth < 1 || depth > 62)
        throw InvalidInput("fat Cantor depth must lie in [1, 62]");
    removed_length_.resize(static_cast<std::size_t>(depth) + 1);
    kept_length_.resize(static_cast<std::size_t>(depth) + 1);
    kept_length_[0] = 1;
    Rational pow2 = 1; // 2^(k-1)
    Rational pow3 = 3; // 3^k
    for (int k = 1; k <= depth; ++k) {
        removed_length_[k] = 1 / (pow2 * pow3);
        kept_length_[k] = (kept_length_[k - 1] - removed_length_[k]) / 2;
        pow2 *= 2;
        pow3 *= 3;
    }
    // 2^(depth+1) 3^depth clears every denominator above
    scale_ = Rational(pow2 * 2 * pow3 / 3).get_num();
    removed_scaled_.resize(removed_length_.size());
    kept_scaled_.resize(kept_length_.size());
    for (int k = 0; k <= depth; ++k) {
        const Rational kept = kept_length_[k] * scale_;
        kept_scaled_[k] = kept.get_num();
        if (k > 0)
            removed_scaled_[k] = Rational(removed_length_[k] * scale_).get_num();
    }
}

void CantorLevels::check_level(int k, int lo) const
{
    if (k < lo || k > depth_)
        throw InvalidInput("level " + std::to_string(k) + " outside [" + std::to_string(lo) + ", " +
                           std::to_string(depth_) + "]");
}

const Rational& CantorLevels::removed_length(int k) const
{
    check_level(k, 1);
    return removed_length_[k];
}

const Rational& CantorLevels::kept_length(int k) const
{
    check_level(k, 0);
    return kept_length_[k];
}

mpz_class CantorLevels::scaled_kept_left(int k, std::uint64_t i) const
{
    // bit j (from the top) of i-1 says whether level j went right
    const std::uint64_t b = i - 1;
    mpz_class left = 0;
    for (int j = 1; j <= k; ++j)
        if ((b >> (k - j)) & 1U) {
            left += kept_scaled_[j];
            left += removed_scaled_[j];
        }
    return left;
}

Rational CantorLevels::kept_left(int k, std::uint64_t i) const
{
    Rational left(scaled_kept_left(k, i), scale_);
    left.canonicalize();
    return left;
}

Interval CantorLevels::kept(int k, std::uint64_t i) const
{
    check_level(k, 0);
    if (i < 1 || i > kept_count(k))
        throw InvalidInput("kept interval index out of range");
    Rational left = kept_left(k, i);
    Rational right = left + kept_length_[k];
    return {std::move(left), std::move(right)};
}

Interval CantorLevels::removed(int k, std::uint64_t i) const
{
    check_level(k, 1);
    if (i < 1 || i > removed_count(k))
        throw InvalidInput("removed interval index out of range");
    Rational left = kept_left(k - 1, i) + kept_length_[k];
    Rational right = left + removed_length_[k];
    return {std::move(left), std::move(right)};
}

Rational CantorLevels::removed_measure(std::optional<int> through) const
{
    const int K = through.value_or(depth_);
    check_level(K, 0);
    Rational total = 0;
    for (int k = 1; k <= K; ++k)
        total += removed_length_[k] * Rational(static_cast<unsigned long>(removed_count(k)));
    return total;
}

void CantorLevels::for_each_kept(int k,
                                 const std::function<void(std::uint64_t, const Interval&)>& visit) const
{
    check_level(k, 0);
    std::uint64_t index = 0;
    std::function<void(int, const Rational&)> rec = [&](int j, const Rational& left) {
        if (j == k) {
            visit(++index, Interval{left, left + kept_length_[k]});
            return;
        }
        rec(j + 1, left);
        rec(j + 1, left + kept_length_[j + 1] + removed_length_[j + 1]);
    };
    rec(0, Rational(0));
}

void CantorLevels::for_each_removed(
    int k, const std::function<void(std::uint64_t, const Interval&)>& visit) const
{
    check_level(k, 1);
    for_each_kept(k - 1, [&](std::uint64_t i, const Interval& parent) {
        Rational left = parent.left + kept_length_[k];
        Rational right = left + removed_length_[k];
        visit(i, Interval{std::move(left), std::move(right)});
    });
}

std::optional<CantorLevels::RemovedHit> CantorLevels::locate(const Rational& t) const
{
    if (t < 0 || t > 1)
        throw InvalidInput("point " + to_string(t) + " outside [0, 1]");
    // t*scale = whole + frac with 0 <= frac < 1, so against an integer e:
    // t < e/scale iff whole < e, and t > e/scale iff whole > e or (whole == e and frac > 0)
    const mpz_class num = t.get_num() * scale_;
    mpz_class whole;
    mpz_class rem;
    mpz_fdiv_qr(whole.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), t.get_den_mpz_t());
    const bool fractional = rem != 0;

    mpz_class left = 0;
    mpz_class a;
    mpz_class b;
    std::uint64_t parent = 0; // 0-based index of the enclosing kept interval
    for (int k = 1; k <= depth_; ++k) {
        a = left + kept_scaled_[k];
        b = a + removed_scaled_[k];
        if (whole < a) {
            parent = 2 * parent;
        } else if (whole > b || (whole == b && fractional)) {
            left = b;
            parent = 2 * parent + 1;
        } else {
            Rational lo(a, scale_);
            Rational hi(b, scale_);
            lo.canonicalize();
            hi.canonicalize();
            return RemovedHit{k, parent + 1, Interval{std::move(lo), std::move(hi)}};
        }
    }
    return std::nullopt;
}

std::optional<std::pair<int, std::uint64_t>> CantorLevels::locate_removed(const Rational& t) const
{
    const auto hit = locate(t);
    if (!hit)
        return std::nullopt;
    return std::make_pair(hit->level, hit->index);
}

void write_cantor_csv(std::ostream& out, const CantorLevels& levels, bool decimals)
{
    out << "level,kind,left_num,left_den,right_num,right_den";
    if (decimals)
        out << ",left,right";
    out << '\n';
    auto emit = [&](int k, const char* kind, const Interval& iv) {
        out << k << ',' << kind << ',' << iv.left.get_num().get_str() << ','
            << iv.left.get_den().get_str() << ',' << iv.right.get_num().get_str() << ','
            << iv.right.get_den().get_str();
        if (decimals)
            out << ',' << csv::number(iv.left) << ',' << csv::number(iv.right);
        out << '\n';
    };
    for (int k = 1; k <= levels.depth(); ++k) {
        levels.for_each_removed(k, [&](std::uint64_t, const Interval& iv) { emit(k, "removed", iv); });
        levels.for_each_kept(k, [&](std::uint64_t, const Interval& iv) { emit(k, "kept", iv); });
    }
}

// ---------------------------------------------------------------- bump series

namespace {

Rational tent(const Interval& iv, const Rational& t)
{
    if (!iv.contains(t))
        return 0;
    const Rational half = iv.length() / 2;
    return 1 - Rational(abs(t - iv.midpoint())) / half;
}

} // namespace

double bump(const CantorLevels& levels, int k, std::uint64_t i, const Rational& t)
{
    return to_double(tent(levels.removed(k, i), t));
}

KadetsFunction::KadetsFunction(int depth) : levels_(depth) {}

SeqVec KadetsFunction::operator()(const Rational& t) const
{
    const auto hit = levels_.locate(t);
    if (!hit)
        return SeqVec(space());
    const double v = to_double(tent(hit->interval, t));
    if (v == 0.0)
        return SeqVec(space());
    return SeqVec::unit(space(), static_cast<std::size_t>(hit->level), v);
}

std::vector<Rational> KadetsFunction::hints(const Rational& lo, const Rational& hi,
                                            int hint_depth) const
{
    if (hint_depth < 0 || hint_depth > levels_.depth())
        throw InvalidInput("hint depth exceeds the construction depth");
    if (hi < lo)
        return {};
    // a few levels below the first whose kept intervals fit in the window
    const Rational width = hi - lo;
    int fit = 0;
    while (fit < levels_.depth() && levels_.kept_length(fit) > width)
        ++fit;
    const int cap = std::min(hint_depth, fit + hint_levels_below_window);
    std::vector<Rational> out;
    auto keep = [&](const Rational& t) {
        if (t >= lo && t <= hi)
            out.push_back(t);
    };
    std::function<void(int, const Rational&)> rec = [&](int j, const Rational& left) {
        const Rational right = left + levels_.kept_length(j);
        if (right < lo || left > hi)
            return;
        if (j == cap) {
            keep(left);
            keep(right);
            return;
        }
        const Rational& kl = levels_.kept_length(j + 1);
        const Rational& rl = levels_.removed_length(j + 1);
        keep(left + kl + rl / 2);
        rec(j + 1, left);
        rec(j + 1, left + kl + rl);
    };
    rec(0, Rational(0));
    return out;
}

namespace {

/// Largest piece of the stage-m partition pair.
Rational stage_mesh(const CantorLevels& levels, int m)
{
    Rational widest = levels.kept_length(m - 1);
    const Rational cell = Rational(1) / pow_int(Rational(2), static_cast<unsigned>(m - 1));
    for (int j = 1; j < m; ++j) {
        const Rational& alpha = levels.removed_length(j);
        const Rational ratio = alpha / cell;
        const mpz_class n = ratio.get_num() / ratio.get_den() + 1;
        const Rational piece = alpha / Rational(n);
        if (piece > widest)
            widest = piece;
    }
    return widest;
}

std::pair<TaggedPartition, TaggedPartition> build_stage(const CantorLevels& levels, int m)
{
    const Rational cell = Rational(1) / pow_int(Rational(2), static_cast<unsigned>(m - 1));
    std::vector<Rational> bps{Rational(0)};
    std::vector<Rational> tags1;
    std::vector<Rational> tags2;

    std::function<void(int, const Rational&)> rec = [&](int j, const Rational& left) {
        if (j == m - 1) {
            const Rational right = left + levels.kept_length(j);
            const Rational peak = left + levels.kept_length(m) + levels.removed_length(m) / 2;
            tags1.push_back(peak);
            tags2.push_back(left);
            bps.push_back(right);
            return;
        }
        const Rational& kl = levels.kept_length(j + 1);
        const Rational& alpha = levels.removed_length(j + 1);
        rec(j + 1, left);
        const Rational a = left + kl;
        const Rational ratio = alpha / cell;
        const mpz_class n = ratio.get_num() / ratio.get_den() + 1;
        const Rational step = alpha / Rational(n);
        for (mpz_class q = 0; q < n; ++q) {
            const Rational l = a + step * Rational(q);
            tags1.push_back(l);
            tags2.push_back(l);
            bps.push_back(q + 1 == n ? a + alpha : l + step);
        }
        rec(j + 1, a + alpha);
    };
    rec(0, Rational(0));
    auto bps2 = bps;
    return {TaggedPartition(std::move(bps), std::move(tags1)),
            TaggedPartition(std::move(bps2), std::move(tags2))};
}

} // namespace

VectorFn KadetsFunction::as_vector_fn(int hint_depth) const
{
    if (hint_depth < 0 || hint_depth > levels_.depth())
        throw InvalidInput("hint depth exceeds the construction depth");
    auto self = std::make_shared<const KadetsFunction>(*this);
    VectorFn g;
    g.space = space();
    g.eval = [self](const Rational& t) -> Vector { return (*self)(t); };
    g.hints = [self, hint_depth](const Rational& lo, const Rational& hi) {
        return self->hints(lo, hi, hint_depth);
    };
    g.witness = [self](double target) -> std::optional<PartitionPair> {
        if (!(target > 0.0) || !std::isfinite(target))
            return std::nullopt;
        const Rational t = from_double(target);
        const CantorLevels& lv = self->levels();
        for (int m = 1; m <= lv.depth(); ++m) {
            if (stage_mesh(lv, m) <= t) {
                auto [p1, p2] = build_stage(lv, m);
                return PartitionPair{std::move(p1), std::move(p2), 0.5};
            }
        }
        return std::nullopt;
    };
    return g;
}

SeqVec kadets_f(const Rational& t, int depth)
{
    return KadetsFunction(depth)(t);
}

std::pair<TaggedPartition, TaggedPartition> kadets_partitions(int m)
{
    if (m < 1)
        throw InvalidInput("kadets_partitions needs m >= 1");
    return build_stage(CantorLevels(m), m);
}

KadetsGap kadets_gap(int m)
{
    if (m < 1)
        throw InvalidInput("kadets_gap needs m >= 1");
    const KadetsFunction kf(m);
    const CantorLevels& lv = kf.levels();
    Rational closed = lv.kept_length(m - 1) * pow_int(Rational(2), static_cast<unsigned>(m - 1));
    const VectorFn f = kf.as_vector_fn(0);
    const auto [p1, p2] = build_stage(lv, m);
    const double numeric = norm(sub(riemann_sum(f, p1), riemann_sum(f, p2)));
    return {std::move(closed), numeric};
}

// ---------------------------------------------------------------- Rolewicz

namespace {

void check_rolewicz_exponent(double p)
{
    if (!(p > 0.0 && p < 1.0))
        throw InvalidInput("the Rolewicz function needs 0 < p < 1");
}

void check_unit(const Rational& t)
{
    if (t < 0 || t > 1)
        throw InvalidInput("point " + to_string(t) + " outside [0, 1]");
}

} // namespace

StepFn rolewicz_f(const Rational& t, double p)
{
    check_rolewicz_exponent(p);
    check_unit(t);
    return StepFn::indicator(SpaceSpec::step_lp(p), 0, t);
}

RolewiczIncrement rolewicz_increment(const Rational& t, const Rational& h, double p)
{
    check_rolewicz_exponent(p);
    check_unit(t);
    check_unit(t + h);
    const double inc = norm(sub(rolewicz_f(t + h, p), rolewicz_f(t, p)));
    const double quotient = h == 0 ? 0.0 : inc / to_double(Rational(abs(h)));
    return {inc, quotient};
}

VectorFn rolewicz_function(double p)
{
    check_rolewicz_exponent(p);
    VectorFn g;
    g.space = SpaceSpec::step_lp(p);
    g.eval = [p](const Rational& t) -> Vector { return rolewicz_f(t, p); };
    return g;
}

VectorFn rolewicz_derivative(double p)
{
    check_rolewicz_exponent(p);
    VectorFn g;
    g.space = SpaceSpec::step_lp(p);
    g.eval = [space = g.space](const Rational&) -> Vector { return StepFn::constant(space, 0.0); };
    return g;
}

double rolewicz_primitive_distance(const StepFn& F, const Rational& x)
{
    if (F.space().kind() != SpaceSpec::Kind::StepLp)
        throw SpaceMismatch("primitive distance needs a step function");
    check_unit(x);
    const double p = F.space().exponent();
    // integral of |z|^p dz
    auto H = [p](double z) { return std::copysign(std::pow(std::abs(z), p + 1.0) / (p + 1.0), z); };
    const auto bps = F.breakpoints();
    const auto vals = F.values();
    double total = 0.0;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        const Rational& u = bps[i];
        const Rational& v = bps[i + 1];
        const double c = vals[i];
        if (u < x) {
            // target x - s on [u, min(v,x)): g(s) = c - x + s
            const Rational end = v < x ? v : x;
            total += H(c + to_double(Rational(end - x))) - H(c + to_double(Rational(u - x)));
        }
        if (v > x) {
            const Rational start = u > x ? u : x;
            total += std::pow(std::abs(c), p) * to_double(Rational(v - start));
        }
    }
    return std::pow(std::max(total, 0.0), 1.0 / p);
}

// ---------------------------------------------------------------- l_1 blocks

namespace {

void check_block_params(std::size_t p, double beta, double epsilon, double tail_mass,
                        std::size_t window)
{
    if (p < 1)
        throw InvalidInput("blocks need p >= 1");
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw InvalidInput("blocks need beta > 0");
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
        throw InvalidInput("blocks need epsilon > 0");
    if (!(tail_mass >= 0.0) || !(tail_mass < std::ldexp(epsilon, -static_cast<int>(p))))
        throw InvalidInput("tail_mass must lie in [0, epsilon 2^-p)");
    if (window < 2)
        throw InvalidInput("block window must be at least 2");
}

std::vector<std::size_t> uniform_cuts(std::size_t p, std::size_t window)
{
    std::vector<std::size_t> cuts(p + 1);
    for (std::size_t i = 0; i <= p; ++i)
        cuts[i] = i * window;
    return cuts;
}

SeqVec from_map(const std::map<std::size_t, double>& coords)
{
    std::vector<std::pair<std::size_t, double>> entries(coords.begin(), coords.end());
    return SeqVec(SpaceSpec::seq_lp(1.0), std::move(entries));
}

} // namespace

BlockSeq blocks_build(std::size_t p, double beta, double epsilon, double tail_mass, double margin,
                      std::size_t window)
{
    check_block_params(p, beta, epsilon, tail_mass, window);
    if (!(margin >= 0.0) || !std::isfinite(margin))
        throw InvalidInput("margin must be a nonnegative number");
    BlockSeq bs;
    bs.beta = beta;
    bs.epsilon = epsilon;
    bs.cuts = uniform_cuts(p, window);
    for (std::size_t i = 1; i <= p; ++i) {
        std::map<std::size_t, double> coords;
        coords[bs.cuts[i - 1] + 1] = beta / 2 + margin;
        if (tail_mass > 0.0) {
            if (i == 1) {
                coords[bs.cuts[i] + 1] += tail_mass;
            } else {
                coords[bs.cuts[i - 1]] += tail_mass / 2;
                coords[bs.cuts[i] + 1] += tail_mass / 2;
            }
        }
        bs.blocks.push_back(from_map(coords));
    }
    return bs;
}

BlockSeq blocks_build_random(std::size_t p, double beta, double epsilon, double tail_mass,
                             std::mt19937_64& rng, std::size_t window)
{
    check_block_params(p, beta, epsilon, tail_mass, window);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto sign = [&] { return unit(rng) < 0.5 ? -1.0 : 1.0; };
    // random positive split of `mass` over `n` parts
    auto split = [&](double mass, std::size_t n) {
        std::vector<double> w(n);
        double sum = 0.0;
        for (auto& x : w) {
            x = 0.05 + unit(rng);
            sum += x;
        }
        for (auto& x : w)
            x = mass * (x / sum);
        return w;
    };

    BlockSeq bs;
    bs.beta = beta;
    bs.epsilon = epsilon;
    bs.cuts = uniform_cuts(p, window);
    const std::size_t last = bs.cuts.back() + window;
    for (std::size_t i = 1; i <= p; ++i) {
        const std::size_t lo = bs.cuts[i - 1];
        const std::size_t hi = bs.cuts[i];
        std::map<std::size_t, double> coords;
        // slight excess over beta/2 absorbs rounding in the split
        const auto core = split(beta / 2 * (1 + 1e-9), window - 1);
        for (std::size_t k = 0; k + 1 < window; ++k)
            coords[lo + 1 + k] = sign() * core[k];

        const double tail = tail_mass * unit(rng) * (1 - 1e-9);
        const double before = i == 1 ? 0.0 : tail * unit(rng);
        const double after = tail - before;
        auto scatter = [&](double mass, std::size_t from, std::size_t to) {
            if (mass <= 0.0)
                return;
            std::uniform_int_distribution<std::size_t> pick(from, to);
            std::uniform_int_distribution<std::size_t> count(1, 3);
            for (double part : split(mass, count(rng)))
                coords[pick(rng)] += sign() * part;
        };
        scatter(before, 1, lo);
        scatter(after, hi, last);
        std::erase_if(coords, [](const auto& kv) { return kv.second == 0.0; });
        bs.blocks.push_back(from_map(coords));
    }
    return bs;
}

const char* to_string(BlockCondition c)
{
    switch (c) {
    case BlockCondition::None: return "none";
    case BlockCondition::NormFloor: return "norm_floor";
    case BlockCondition::TailAfter: return "tail_after";
    case BlockCondition::TailBefore: return "tail_before";
    case BlockCondition::SeparationBound: return "separation_bound";
    }
    return "unknown";
}

BlockCheck blocks_verify(const BlockSeq& bs)
{
    const std::size_t p = bs.blocks.size();
    if (p == 0)
        throw InvalidInput("blocks_verify needs at least one block");
    if (bs.cuts.size() != p + 1 || bs.cuts.front() != 0)
        throw InvalidInput("blocks_verify needs cuts n_0 = 0, ..., n_p");
    for (std::size_t i = 1; i < bs.cuts.size(); ++i)
        if (bs.cuts[i] < bs.cuts[i - 1])
            throw InvalidInput("block cuts must be nondecreasing");
    const SpaceSpec& space = bs.blocks.front().space();
    const bool flat = space == SpaceSpec::seq_lp(1.0);
    if (!flat && space.kind() != SpaceSpec::Kind::NestedL1)
        throw SpaceMismatch("blocks must live in l_1 or a nested l_1 space");
    for (const auto& z : bs.blocks)
        if (!(z.space() == space))
            throw SpaceMismatch("all blocks must live in the same space");

    const Rational beta = from_double(bs.beta);
    const Rational eps = from_double(bs.epsilon);
    const Rational bound = Rational(static_cast<unsigned long>(p)) * beta / 2 - 4 * eps;

    BlockCheck out;
    out.lower_bound = to_double(bound);

    for (std::size_t i = 1; i <= p; ++i) {
        const SeqVec& z = bs.blocks[i - 1];
        const std::size_t lo = bs.cuts[i - 1];
        const std::size_t hi = bs.cuts[i];
        Rational total = 0;
        Rational before = 0;
        Rational after = 0;
        Rational core = 0;
        for (std::size_t k = 0; k < z.size(); ++k) {
            const Rational mag = flat ? Rational(abs(from_double(z.value(k))))
                                      : from_double(norm(z.inner(k)));
            const std::size_t j = z.index(k);
            total += mag;
            if (j <= lo)
                before += mag;
            if (j >= hi)
                after += mag;
            if (j > lo && j < hi)
                core += mag;
        }
        out.core_norms.push_back(to_double(core));
        out.residual_norms.push_back(to_double(Rational(total - core)));
        if (out.failed != BlockCondition::None)
            continue;
        const Rational tail_cap = eps / pow_int(Rational(2), static_cast<unsigned>(i));
        if (total < beta / 2)
            out.failed = BlockCondition::NormFloor;
        else if (!(after < tail_cap))
            out.failed = BlockCondition::TailAfter;
        else if (!(before < tail_cap))
            out.failed = BlockCondition::TailBefore;
        if (out.failed != BlockCondition::None)
            out.failed_block = i;
    }

    bool bound_holds = false;
    if (flat) {
        std::map<std::size_t, Rational> sum;
        for (const auto& z : bs.blocks)
            for (std::size_t k = 0; k < z.size(); ++k)
                sum[z.index(k)] += from_double(z.value(k));
        Rational actual = 0;
        for (const auto& [j, v] : sum)
            actual += abs(v);
        out.actual = to_double(actual);
        bound_holds = actual >= bound;
    } else {
        SeqVec acc(space);
        for (const auto& z : bs.blocks)
            acc = add(acc, z);
        out.actual = norm(acc);
        bound_holds = out.actual >= out.lower_bound;
    }
    if (out.failed == BlockCondition::None && !bound_holds)
        out.failed = BlockCondition::SeparationBound;
    out.ok = out.failed == BlockCondition::None;
    return out;
}

// ---------------------------------------------------------------- oscillating derivative

VectorFn oscillating_derivative()
{
    return scalar_fn([](double t) {
        if (t == 0.0)
            return 0.0;
        const double u = 1.0 / (t * t);
        return 2.0 * t * std::sin(u) - 2.0 / t * std::cos(u);
    });
}

std::vector<Gauge> oscillating_gauges(int k_max)
{
    if (k_max < 1)
        throw InvalidInput("oscillating_gauges needs k_max >= 1");
    std::vector<Gauge> gauges;
    for (int k = 1; k <= k_max; ++k) {
        const double c = std::ldexp(1.0, -2 * k);
        gauges.emplace_back(AnalyticGauge{c, c, 2.0, Rational(0), std::ldexp(1.0, -k)});
    }
    return gauges;
}

// ---------------------------------------------------------------- probes

namespace {

ProbeResult probe(std::span<const SeqVec> xs, std::span<const SeqVec> battery,
                  const SpaceSpec& x_space, const SpaceSpec& y_space, bool x_is_functional)
{
    if (xs.empty() || battery.empty())
        throw InvalidInput("probe needs nonempty vectors and battery");
    for (const auto& x : xs)
        if (!(x.space() == x_space))
            throw SpaceMismatch("probe vector lives in " + x.space().describe() + ", expected " +
                                x_space.describe());
    for (const auto& y : battery)
        if (!(y.space() == y_space))
            throw SpaceMismatch("probe battery element lives in " + y.space().describe() +
                                ", expected " + y_space.describe());
    ProbeResult out;
    out.norm_floor = std::numeric_limits<double>::infinity();
    for (const auto& x : xs) {
        double worst = 0.0;
        for (const auto& y : battery)
            worst = std::max(worst, std::abs(x_is_functional ? pair(x, y) : pair(y, x)));
        out.pairing_decay.push_back(worst);
        out.norm_floor = std::min(out.norm_floor, norm(x));
    }
    return out;
}

} // namespace

ProbeResult weak_null_probe(std::span<const SeqVec> vectors, std::span<const SeqVec> battery)
{
    return probe(vectors, battery, SpaceSpec::seq_sup(), SpaceSpec::seq_lp(1.0), false);
}

ProbeResult weak_star_probe(std::span<const SeqVec> functionals, std::span<const SeqVec> battery)
{
    return probe(functionals, battery, SpaceSpec::seq_lp(1.0), SpaceSpec::seq_sup(), true);
}

} // namespace riemannx
