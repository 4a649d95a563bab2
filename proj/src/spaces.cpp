#include "riemannx/spaces.hpp"

#include "riemannx/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace riemannx {

namespace {

bool valid_exponent(double p)
{
    return !std::isnan(p) && p > 0.0;
}

void require_finite(double x, const char* what)
{
    if (!std::isfinite(x))
        throw InvalidInput(std::string(what) + ": non-finite value");
}

// sum |v|^p scaled by the largest magnitude so large entries do not overflow.
double lp_combine(std::span<const double> values, std::span<const double> weights, double p)
{
    double top = 0.0;
    for (double v : values)
        top = std::max(top, std::fabs(v));
    if (top == 0.0)
        return 0.0;
    if (std::isinf(p))
        return top;
    if (p == 1.0) {
        double sum = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i)
            sum += std::fabs(values[i]) * (weights.empty() ? 1.0 : weights[i]);
        return sum;
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i)
        sum += std::pow(std::fabs(values[i]) / top, p) * (weights.empty() ? 1.0 : weights[i]);
    return top * std::pow(sum, 1.0 / p);
}

} // namespace

// ---------------------------------------------------------------- SpaceSpec

SpaceSpec SpaceSpec::finite_dim(std::size_t n)
{
    if (n == 0)
        throw InvalidInput("FiniteDim needs a positive dimension");
    SpaceSpec s;
    s.kind_ = Kind::FiniteDim;
    s.dim_ = n;
    return s;
}

SpaceSpec SpaceSpec::seq_lp(double p)
{
    if (!valid_exponent(p))
        throw InvalidInput("SeqLp exponent must be in (0, inf]");
    SpaceSpec s;
    s.kind_ = Kind::SeqLp;
    s.p_ = p;
    return s;
}

SpaceSpec SpaceSpec::seq_sup()
{
    SpaceSpec s;
    s.kind_ = Kind::SeqSup;
    return s;
}

SpaceSpec SpaceSpec::nested_l1(const SpaceSpec& inner)
{
    if (inner.kind() == Kind::StepLp)
        throw InvalidInput("NestedL1 over step functions is not modelled");
    SpaceSpec s;
    s.kind_ = Kind::NestedL1;
    s.p_ = 1.0;
    s.inner_ = std::make_shared<const SpaceSpec>(inner);
    return s;
}

SpaceSpec SpaceSpec::step_lp(double p)
{
    if (!valid_exponent(p) || p > 1.0)
        throw InvalidInput("StepLp exponent must be in (0, 1]");
    SpaceSpec s;
    s.kind_ = Kind::StepLp;
    s.p_ = p;
    return s;
}

const SpaceSpec& SpaceSpec::inner() const
{
    if (!inner_)
        throw InvalidInput("space " + describe() + " has no inner space");
    return *inner_;
}

std::size_t SpaceSpec::depth() const noexcept
{
    return inner_ ? 1 + inner_->depth() : 0;
}

std::string SpaceSpec::describe() const
{
    std::ostringstream os;
    switch (kind_) {
    case Kind::FiniteDim: os << "FiniteDim(" << dim_ << ")"; break;
    case Kind::SeqLp: os << "SeqLp(" << p_ << ")"; break;
    case Kind::SeqSup: os << "SeqSup"; break;
    case Kind::NestedL1: os << "NestedL1(" << inner_->describe() << ")"; break;
    case Kind::StepLp: os << "StepLp(" << p_ << ")"; break;
    }
    return os.str();
}

bool operator==(const SpaceSpec& a, const SpaceSpec& b)
{
    if (a.kind_ != b.kind_)
        return false;
    switch (a.kind_) {
    case SpaceSpec::Kind::FiniteDim: return a.dim_ == b.dim_;
    case SpaceSpec::Kind::SeqLp:
    case SpaceSpec::Kind::StepLp: return a.p_ == b.p_;
    case SpaceSpec::Kind::SeqSup: return true;
    case SpaceSpec::Kind::NestedL1: return *a.inner_ == *b.inner_;
    }
    return false;
}

// ---------------------------------------------------------------- SeqVec

SeqVec::SeqVec(SpaceSpec space) : space_(std::move(space))
{
    if (!space_.is_sequence())
        throw InvalidInput("SeqVec cannot live in " + space_.describe());
}

SeqVec::SeqVec(SpaceSpec space, std::vector<std::pair<std::size_t, double>> entries)
    : SeqVec(std::move(space))
{
    if (nested())
        throw InvalidInput("scalar entries given for nested space " + space_.describe());
    std::sort(entries.begin(), entries.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    for (std::size_t k = 0; k < entries.size(); ++k) {
        const auto& [index, value] = entries[k];
        check_index(index);
        require_finite(value, "SeqVec entry");
        if (k > 0 && entries[k - 1].first == index)
            throw InvalidInput("duplicate SeqVec index " + std::to_string(index));
        if (value != 0.0) {
            indices_.push_back(index);
            values_.push_back(value);
        }
    }
}

SeqVec::SeqVec(SpaceSpec space, std::vector<std::pair<std::size_t, SeqVec>> entries)
    : SeqVec(std::move(space))
{
    if (!nested())
        throw InvalidInput("nested entries given for flat space " + space_.describe());
    std::sort(entries.begin(), entries.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    for (std::size_t k = 0; k < entries.size(); ++k) {
        auto& [index, value] = entries[k];
        check_index(index);
        if (!(value.space() == space_.inner()))
            throw SpaceMismatch("nested entry lives in " + value.space().describe() +
                                ", expected " + space_.inner().describe());
        if (k > 0 && entries[k - 1].first == index)
            throw InvalidInput("duplicate SeqVec index " + std::to_string(index));
        if (!value.empty()) {
            indices_.push_back(index);
            inner_.push_back(std::move(value));
        }
    }
}

SeqVec::SeqVec(Unchecked, SpaceSpec space, std::vector<std::size_t> indices,
               std::vector<double> values, std::vector<SeqVec> inner)
    : space_(std::move(space)), indices_(std::move(indices)), values_(std::move(values)),
      inner_(std::move(inner))
{
}

SeqVec SeqVec::dense(SpaceSpec space, std::span<const double> values)
{
    std::vector<std::pair<std::size_t, double>> entries;
    entries.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        entries.emplace_back(i + 1, values[i]);
    return SeqVec(std::move(space), std::move(entries));
}

SeqVec SeqVec::unit(SpaceSpec space, std::size_t index, double value)
{
    SeqVec out(std::move(space));
    if (out.nested())
        throw InvalidInput("scalar entries given for nested space " + out.space_.describe());
    out.check_index(index);
    require_finite(value, "SeqVec entry");
    if (value != 0.0) {
        out.indices_.push_back(index);
        out.values_.push_back(value);
    }
    return out;
}

void SeqVec::check_index(std::size_t index) const
{
    if (index == 0)
        throw InvalidInput("SeqVec indices start at 1");
    if (space_.kind() == SpaceSpec::Kind::FiniteDim && index > space_.dimension())
        throw InvalidInput("index " + std::to_string(index) + " outside " + space_.describe());
}

double SeqVec::at(std::size_t index) const
{
    if (nested())
        throw InvalidInput("scalar coordinate requested from nested vector");
    const auto it = std::lower_bound(indices_.begin(), indices_.end(), index);
    if (it == indices_.end() || *it != index)
        return 0.0;
    return values_[static_cast<std::size_t>(it - indices_.begin())];
}

bool operator==(const SeqVec& a, const SeqVec& b)
{
    return a.space_ == b.space_ && a.indices_ == b.indices_ && a.values_ == b.values_ &&
           a.inner_ == b.inner_;
}

// ---------------------------------------------------------------- StepFn

StepFn::StepFn(SpaceSpec space, std::vector<Rational> breakpoints, std::vector<double> values)
    : space_(std::move(space)), breakpoints_(std::move(breakpoints)), values_(std::move(values))
{
    if (space_.kind() != SpaceSpec::Kind::StepLp)
        throw InvalidInput("StepFn must live in a StepLp space, got " + space_.describe());
    if (breakpoints_.size() < 2 || breakpoints_.front() != 0 || breakpoints_.back() != 1)
        throw InvalidInput("StepFn breakpoints must run from 0 to 1");
    for (std::size_t i = 1; i < breakpoints_.size(); ++i)
        if (!(breakpoints_[i - 1] < breakpoints_[i]))
            throw InvalidInput("StepFn breakpoints must be strictly increasing");
    if (values_.size() + 1 != breakpoints_.size())
        throw InvalidInput("StepFn needs exactly one value per piece");
    for (double v : values_)
        require_finite(v, "StepFn value");
}

StepFn StepFn::constant(SpaceSpec space, double value)
{
    return StepFn(std::move(space), {Rational(0), Rational(1)}, {value});
}

StepFn StepFn::indicator(SpaceSpec space, const Rational& lo, const Rational& hi)
{
    if (lo < 0 || hi > 1 || hi < lo)
        throw InvalidInput("indicator interval must satisfy 0 <= lo <= hi <= 1");
    if (lo == hi)
        return constant(std::move(space), 0.0);
    std::vector<Rational> bps{Rational(0)};
    std::vector<double> vals;
    if (lo > 0) {
        bps.push_back(lo);
        vals.push_back(0.0);
    }
    bps.push_back(hi);
    vals.push_back(1.0);
    if (hi < 1) {
        bps.push_back(Rational(1));
        vals.push_back(0.0);
    }
    return StepFn(std::move(space), std::move(bps), std::move(vals));
}

double StepFn::value_at(const Rational& t) const
{
    if (t < 0 || t > 1)
        throw InvalidInput("StepFn evaluated outside [0,1]");
    // piece i covers [b_i, b_{i+1}); t = 1 belongs to the last piece.
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
    std::size_t piece = static_cast<std::size_t>(it - breakpoints_.begin());
    piece = piece == 0 ? 0 : piece - 1;
    return values_[std::min(piece, values_.size() - 1)];
}

StepFn StepFn::refined(std::span<const Rational> extra) const
{
    std::vector<Rational> sorted_extra;
    for (const auto& q : extra) {
        if (q < 0 || q > 1)
            throw InvalidInput("refinement point outside [0,1]");
        sorted_extra.push_back(q);
    }
    std::sort(sorted_extra.begin(), sorted_extra.end());
    std::vector<Rational> bps;
    std::set_union(breakpoints_.begin(), breakpoints_.end(), sorted_extra.begin(),
                   sorted_extra.end(), std::back_inserter(bps));
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
    std::vector<double> vals;
    vals.reserve(bps.size() - 1);
    std::size_t piece = 0;
    for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
        while (breakpoints_[piece + 1] <= bps[i])
            ++piece;
        vals.push_back(values_[piece]);
    }
    return StepFn(space_, std::move(bps), std::move(vals));
}

StepFn StepFn::canonical() const
{
    std::vector<Rational> bps{breakpoints_.front()};
    std::vector<double> vals{values_.front()};
    for (std::size_t i = 1; i < values_.size(); ++i) {
        if (values_[i] != vals.back()) {
            bps.push_back(breakpoints_[i]);
            vals.push_back(values_[i]);
        }
    }
    bps.push_back(breakpoints_.back());
    return StepFn(space_, std::move(bps), std::move(vals));
}

bool operator==(const StepFn& a, const StepFn& b)
{
    return a.space_ == b.space_ && a.breakpoints_ == b.breakpoints_ && a.values_ == b.values_;
}

// ---------------------------------------------------------------- norms

double norm(const SeqVec& v)
{
    const auto& space = v.space();
    switch (space.kind()) {
    case SpaceSpec::Kind::FiniteDim:
    case SpaceSpec::Kind::SeqSup:
        return lp_combine(v.values(), {}, std::numeric_limits<double>::infinity());
    case SpaceSpec::Kind::SeqLp:
        return lp_combine(v.values(), {}, space.exponent());
    case SpaceSpec::Kind::NestedL1: {
        double sum = 0.0;
        for (std::size_t k = 0; k < v.size(); ++k)
            sum += norm(v.inner(k));
        return sum;
    }
    case SpaceSpec::Kind::StepLp:
        break;
    }
    throw InvalidInput("SeqVec in a non-sequence space");
}

double norm(const StepFn& v)
{
    std::vector<double> lengths;
    lengths.reserve(v.pieces());
    const auto bps = v.breakpoints();
    for (std::size_t i = 0; i < v.pieces(); ++i)
        lengths.push_back(to_double(Rational(bps[i + 1] - bps[i])));
    const double p = v.space().exponent();
    if (p == 1.0)
        return lp_combine(v.values(), lengths, 1.0);
    return lp_combine(v.values(), lengths, p);
}

double norm(const Vector& v)
{
    return std::visit([](const auto& x) { return norm(x); }, v);
}

double quasi_constant(const SpaceSpec& space)
{
    switch (space.kind()) {
    case SpaceSpec::Kind::FiniteDim:
    case SpaceSpec::Kind::SeqSup: return 1.0;
    case SpaceSpec::Kind::SeqLp:
    case SpaceSpec::Kind::StepLp: {
        const double p = space.exponent();
        return p >= 1.0 ? 1.0 : std::pow(2.0, 1.0 / p - 1.0);
    }
    case SpaceSpec::Kind::NestedL1: return quasi_constant(space.inner());
    }
    return 1.0;
}

// ---------------------------------------------------------------- arithmetic

SeqVec add(const SeqVec& u, const SeqVec& v)
{
    if (!(u.space() == v.space()))
        throw SpaceMismatch("cannot add " + u.space().describe() + " and " + v.space().describe());
    std::vector<std::size_t> idx;
    std::vector<double> vals;
    std::vector<SeqVec> inner;
    const bool nested = u.nested();
    std::size_t i = 0;
    std::size_t j = 0;
    auto push_scalar = [&](std::size_t index, double value) {
        require_finite(value, "sum");
        if (value != 0.0) {
            idx.push_back(index);
            vals.push_back(value);
        }
    };
    auto push_inner = [&](std::size_t index, SeqVec value) {
        if (!value.empty()) {
            idx.push_back(index);
            inner.push_back(std::move(value));
        }
    };
    while (i < u.size() || j < v.size()) {
        const bool take_u = j == v.size() || (i < u.size() && u.index(i) < v.index(j));
        const bool take_v = i == u.size() || (j < v.size() && v.index(j) < u.index(i));
        if (take_u) {
            nested ? push_inner(u.index(i), u.inner(i)) : push_scalar(u.index(i), u.value(i));
            ++i;
        } else if (take_v) {
            nested ? push_inner(v.index(j), v.inner(j)) : push_scalar(v.index(j), v.value(j));
            ++j;
        } else {
            nested ? push_inner(u.index(i), add(u.inner(i), v.inner(j)))
                   : push_scalar(u.index(i), u.value(i) + v.value(j));
            ++i;
            ++j;
        }
    }
    return SeqVec(SeqVec::Unchecked{}, u.space(), std::move(idx), std::move(vals), std::move(inner));
}

SeqVec scale(double c, const SeqVec& v)
{
    require_finite(c, "scale factor");
    std::vector<std::size_t> idx;
    std::vector<double> vals;
    std::vector<SeqVec> inner;
    if (c != 0.0) {
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (v.nested()) {
                SeqVec s = scale(c, v.inner(k));
                if (!s.empty()) {
                    idx.push_back(v.index(k));
                    inner.push_back(std::move(s));
                }
            } else {
                const double x = c * v.value(k);
                require_finite(x, "scaled entry");
                if (x != 0.0) {
                    idx.push_back(v.index(k));
                    vals.push_back(x);
                }
            }
        }
    }
    return SeqVec(SeqVec::Unchecked{}, v.space(), std::move(idx), std::move(vals), std::move(inner));
}

SeqVec sub(const SeqVec& u, const SeqVec& v)
{
    return add(u, scale(-1.0, v));
}

StepFn add(const StepFn& u, const StepFn& v)
{
    if (!(u.space() == v.space()))
        throw SpaceMismatch("cannot add " + u.space().describe() + " and " + v.space().describe());
    const Vector init = StepFn::constant(u.space(), 0.0);
    const Vector terms[] = {u, v};
    const double weights[] = {1.0, 1.0};
    return std::get<StepFn>(accumulate(init, terms, weights));
}

StepFn scale(double c, const StepFn& v)
{
    require_finite(c, "scale factor");
    std::vector<double> vals;
    vals.reserve(v.pieces());
    for (double x : v.values()) {
        const double y = c * x;
        require_finite(y, "scaled value");
        vals.push_back(y);
    }
    return StepFn(v.space(), {v.breakpoints().begin(), v.breakpoints().end()}, std::move(vals))
        .canonical();
}

StepFn sub(const StepFn& u, const StepFn& v)
{
    return add(u, scale(-1.0, v));
}

Vector add(const Vector& u, const Vector& v)
{
    if (u.index() != v.index())
        throw SpaceMismatch("cannot add a sequence and a step function");
    if (std::holds_alternative<SeqVec>(u))
        return add(std::get<SeqVec>(u), std::get<SeqVec>(v));
    return add(std::get<StepFn>(u), std::get<StepFn>(v));
}

Vector scale(double c, const Vector& v)
{
    return std::visit([c](const auto& x) -> Vector { return scale(c, x); }, v);
}

Vector sub(const Vector& u, const Vector& v)
{
    return add(u, scale(-1.0, v));
}

const SpaceSpec& space_of(const Vector& v)
{
    return std::visit([](const auto& x) -> const SpaceSpec& { return x.space(); }, v);
}

Vector zero_vector(const SpaceSpec& space)
{
    if (space.kind() == SpaceSpec::Kind::StepLp)
        return StepFn::constant(space, 0.0);
    return SeqVec(space);
}

double pair(const SeqVec& functional, const SeqVec& x)
{
    if (functional.nested() || x.nested())
        throw InvalidInput("pairing is defined for flat sequences only");
    double sum = 0.0;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < functional.size() && j < x.size()) {
        if (functional.index(i) < x.index(j)) {
            ++i;
        } else if (x.index(j) < functional.index(i)) {
            ++j;
        } else {
            sum += functional.value(i) * x.value(j);
            ++i;
            ++j;
        }
    }
    return sum;
}

Vector scalar(double x)
{
    return SeqVec::unit(SpaceSpec::finite_dim(1), 1, x);
}

double scalar_value(const Vector& v)
{
    const auto* s = std::get_if<SeqVec>(&v);
    if (s == nullptr || s->nested())
        throw InvalidInput("expected a scalar vector");
    return s->at(1);
}

// ---------------------------------------------------------------- accumulation

namespace {

Vector accumulate_flat(const SeqVec& init, std::span<const Vector> terms,
                       std::span<const double> weights)
{
    std::map<std::size_t, double> acc;
    for (std::size_t k = 0; k < init.size(); ++k)
        acc[init.index(k)] = init.value(k);
    for (std::size_t t = 0; t < terms.size(); ++t) {
        const auto* term = std::get_if<SeqVec>(&terms[t]);
        if (term == nullptr || !(term->space() == init.space()))
            throw SpaceMismatch("accumulate: term lives in a different space");
        require_finite(weights[t], "weight");
        if (weights[t] == 0.0)
            continue;
        for (std::size_t k = 0; k < term->size(); ++k) {
            double& slot = acc[term->index(k)];
            slot = slot + weights[t] * term->value(k);
            require_finite(slot, "sum");
        }
    }
    std::vector<std::pair<std::size_t, double>> entries(acc.begin(), acc.end());
    return SeqVec(init.space(), std::move(entries));
}

Vector accumulate_steps(const StepFn& init, std::span<const Vector> terms,
                        std::span<const double> weights)
{
    std::vector<Rational> grid(init.breakpoints().begin(), init.breakpoints().end());
    for (const auto& term : terms) {
        const auto* f = std::get_if<StepFn>(&term);
        if (f == nullptr || !(f->space() == init.space()))
            throw SpaceMismatch("accumulate: term lives in a different space");
        grid.insert(grid.end(), f->breakpoints().begin(), f->breakpoints().end());
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    std::vector<double> acc(grid.size() - 1, 0.0);
    auto spread = [&](const StepFn& f, double weight, bool first) {
        const auto bps = f.breakpoints();
        std::size_t cell = 0;
        for (std::size_t piece = 0; piece < f.pieces(); ++piece) {
            const double contribution = first ? f.values()[piece] : weight * f.values()[piece];
            while (grid[cell + 1] <= bps[piece + 1]) {
                acc[cell] = first ? contribution : acc[cell] + contribution;
                require_finite(acc[cell], "sum");
                if (++cell == acc.size())
                    break;
            }
        }
    };
    spread(init, 1.0, true);
    for (std::size_t t = 0; t < terms.size(); ++t) {
        require_finite(weights[t], "weight");
        if (weights[t] != 0.0)
            spread(std::get<StepFn>(terms[t]), weights[t], false);
    }
    return StepFn(init.space(), std::move(grid), std::move(acc)).canonical();
}

} // namespace

Vector accumulate(const Vector& init, std::span<const Vector> terms, std::span<const double> weights)
{
    if (terms.size() != weights.size())
        throw InvalidInput("accumulate: one weight per term required");
    if (const auto* s = std::get_if<StepFn>(&init))
        return accumulate_steps(*s, terms, weights);
    const auto& seq = std::get<SeqVec>(init);
    if (!seq.nested())
        return accumulate_flat(seq, terms, weights);
    Vector acc = init;
    for (std::size_t t = 0; t < terms.size(); ++t)
        acc = add(acc, scale(weights[t], terms[t]));
    return acc;
}

} // namespace riemannx
