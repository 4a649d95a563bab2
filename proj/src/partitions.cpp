#include "riemannx/partitions.hpp"

#include "riemannx/csv.hpp"
#include "riemannx/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace riemannx {

TaggedPartition::TaggedPartition(std::vector<Rational> breakpoints, std::vector<Rational> tags)
    : breakpoints_(std::move(breakpoints)), tags_(std::move(tags))
{
    if (breakpoints_.size() < 2)
        throw InvalidInput("a partition needs at least one piece");
    if (tags_.size() + 1 != breakpoints_.size())
        throw InvalidInput("a partition needs exactly one tag per piece");
    for (std::size_t i = 0; i < tags_.size(); ++i) {
        if (!(breakpoints_[i] < breakpoints_[i + 1]))
            throw InvalidInput("partition breakpoints must be strictly increasing");
        if (tags_[i] < breakpoints_[i] || tags_[i] > breakpoints_[i + 1])
            throw InvalidInput("tag " + to_string(tags_[i]) + " lies outside its piece [" +
                               to_string(breakpoints_[i]) + ", " + to_string(breakpoints_[i + 1]) +
                               "]");
    }
}

Rational mesh(const TaggedPartition& p)
{
    Rational widest = p.length(0);
    for (std::size_t i = 1; i < p.size(); ++i) {
        Rational len = p.length(i);
        if (len > widest)
            widest = std::move(len);
    }
    return widest;
}

TaggedPartition uniform_partition(const Rational& a, const Rational& b, std::size_t n, TagRule rule)
{
    if (!(a < b))
        throw InvalidInput("uniform_partition needs a < b");
    if (n == 0)
        throw InvalidInput("uniform_partition needs n >= 1");
    const Rational step = (b - a) / Rational(static_cast<unsigned long>(n));
    std::vector<Rational> bps;
    std::vector<Rational> tags;
    bps.reserve(n + 1);
    tags.reserve(n);
    for (std::size_t i = 0; i <= n; ++i)
        bps.emplace_back(a + step * Rational(static_cast<unsigned long>(i)));
    bps.back() = b;
    for (std::size_t i = 0; i < n; ++i) {
        switch (rule) {
        case TagRule::Left: tags.push_back(bps[i]); break;
        case TagRule::Right: tags.push_back(bps[i + 1]); break;
        case TagRule::Mid: tags.emplace_back((bps[i] + bps[i + 1]) / 2); break;
        }
    }
    return TaggedPartition(std::move(bps), std::move(tags));
}

// ---------------------------------------------------------------- Gauge

Gauge::Gauge(Form form) : form_(std::move(form))
{
    if (const auto* pw = std::get_if<PiecewiseGauge>(&form_)) {
        if (pw->breakpoints.size() < 2 || pw->widths.size() + 1 != pw->breakpoints.size())
            throw InvalidInput("piecewise gauge needs one width per piece");
        for (std::size_t i = 1; i < pw->breakpoints.size(); ++i)
            if (!(pw->breakpoints[i - 1] < pw->breakpoints[i]))
                throw InvalidInput("piecewise gauge breakpoints must be strictly increasing");
    }
}

double Gauge::operator()(const Rational& t) const
{
    const double width = std::visit(
        [&t](const auto& g) -> double {
            using G = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<G, ConstantGauge>) {
                return g.width;
            } else if constexpr (std::is_same_v<G, PiecewiseGauge>) {
                if (t < g.breakpoints.front() || t > g.breakpoints.back())
                    throw InvalidInput("piecewise gauge evaluated outside its domain");
                auto it = std::upper_bound(g.breakpoints.begin(), g.breakpoints.end(), t);
                std::size_t piece = static_cast<std::size_t>(it - g.breakpoints.begin()) - 1;
                return g.widths[std::min(piece, g.widths.size() - 1)];
            } else {
                if (t == g.center)
                    return g.center_width;
                const double distance = to_double(Rational(abs(t - g.center)));
                return std::min(g.cap, g.coefficient * std::pow(distance, g.power));
            }
        },
        form_);
    if (!std::isfinite(width) || width <= 0.0)
        throw InvalidGauge("gauge " + describe() + " evaluates to " + csv::number(width) +
                           " at t = " + to_string(t));
    return width;
}

std::vector<Rational> Gauge::special_points() const
{
    if (const auto* an = std::get_if<AnalyticGauge>(&form_))
        return {an->center};
    return {};
}

std::string Gauge::describe() const
{
    std::ostringstream os;
    std::visit(
        [&os](const auto& g) {
            using G = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<G, ConstantGauge>)
                os << "constant(" << g.width << ")";
            else if constexpr (std::is_same_v<G, PiecewiseGauge>)
                os << "piecewise(" << g.widths.size() << " pieces)";
            else
                os << "min(" << g.cap << ", " << g.coefficient << "|t-" << to_string(g.center)
                   << "|^" << g.power << "), " << g.center_width << " at center";
        },
        form_);
    return os.str();
}

bool is_gauge_fine(const TaggedPartition& p, const Gauge& gauge)
{
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p.length(i) > Rational(gauge(p.tag(i))))
            return false;
    return true;
}

TaggedPartition cousin_fine(const Rational& a, const Rational& b, const Gauge& gauge, int depth_cap)
{
    if (!(a < b))
        throw InvalidInput("cousin_fine needs a < b");
    if (depth_cap < 0)
        throw InvalidInput("cousin_fine needs a nonnegative depth cap");

    const std::vector<Rational> specials = gauge.special_points();

    struct Piece {
        Rational left;
        Rational right;
        int depth;
    };
    std::vector<Rational> bps{a};
    std::vector<Rational> tags;
    std::vector<Piece> stack{{a, b, 0}};
    std::vector<Rational> candidates;

    while (!stack.empty()) {
        Piece piece = std::move(stack.back());
        stack.pop_back();
        const Rational length = piece.right - piece.left;
        const Rational mid = (piece.left + piece.right) / 2;

        candidates.clear();
        candidates.push_back(piece.left);
        candidates.push_back(piece.right);
        candidates.push_back(mid);
        for (const auto& s : specials)
            if (s >= piece.left && s <= piece.right && s != piece.left && s != piece.right &&
                s != mid)
                candidates.push_back(s);

        const Rational* chosen = nullptr;
        for (const auto& s : candidates) {
            if (length <= Rational(gauge(s))) {
                chosen = &s;
                break;
            }
        }
        if (chosen != nullptr) {
            tags.push_back(*chosen);
            bps.push_back(piece.right);
            continue;
        }
        if (piece.depth >= depth_cap) {
            const std::string where = "[" + to_string(piece.left) + ", " + to_string(piece.right) + "]";
            throw NoFinePartition(where, "no gauge-fine tag for " + where + " within depth " +
                                             std::to_string(depth_cap));
        }
        // right half first so the left half is processed next
        stack.push_back({mid, piece.right, piece.depth + 1});
        stack.push_back({std::move(piece.left), mid, piece.depth + 1});
    }
    return TaggedPartition(std::move(bps), std::move(tags));
}

} // namespace riemannx
