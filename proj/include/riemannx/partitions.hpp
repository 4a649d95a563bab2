#pragma once

#include "riemannx/rational.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace riemannx {

/// a = t_0 < t_1 < ... < t_j = b with one tag s_i in [t_{i-1}, t_i] per piece.
class TaggedPartition {
public:
    TaggedPartition(std::vector<Rational> breakpoints, std::vector<Rational> tags);

    std::size_t size() const noexcept { return tags_.size(); }
    const Rational& a() const noexcept { return breakpoints_.front(); }
    const Rational& b() const noexcept { return breakpoints_.back(); }
    const Rational& left(std::size_t i) const { return breakpoints_[i]; }
    const Rational& right(std::size_t i) const { return breakpoints_[i + 1]; }
    const Rational& tag(std::size_t i) const { return tags_[i]; }
    Rational length(std::size_t i) const { return breakpoints_[i + 1] - breakpoints_[i]; }

    std::span<const Rational> breakpoints() const noexcept { return breakpoints_; }
    std::span<const Rational> tags() const noexcept { return tags_; }

    friend bool operator==(const TaggedPartition&, const TaggedPartition&) = default;

private:
    std::vector<Rational> breakpoints_;
    std::vector<Rational> tags_;
};

/// Largest piece length.
Rational mesh(const TaggedPartition& p);

enum class TagRule { Left, Right, Mid };

TaggedPartition uniform_partition(const Rational& a, const Rational& b, std::size_t n, TagRule rule);

/// delta(t) = width for every t.
struct ConstantGauge {
    double width;
};

/// delta(t) = widths[i] on [breakpoints[i], breakpoints[i+1]); the last piece
/// is closed on the right.
struct PiecewiseGauge {
    std::vector<Rational> breakpoints;
    std::vector<double> widths;
};

/// delta(t) = min(cap, coefficient * |t - center|^power) away from `center`,
/// and `center_width` at the center itself. Covers the families min(c, t/2)
/// and min(c, c t^2) with a designated positive value at t = 0.
struct AnalyticGauge {
    double cap;
    double coefficient;
    double power;
    Rational center;
    double center_width;
};

/// Positive width function on [a,b]. Positivity is checked lazily at every
/// point where the gauge is actually evaluated.
class Gauge {
public:
    using Form = std::variant<ConstantGauge, PiecewiseGauge, AnalyticGauge>;

    Gauge(Form form); // NOLINT(google-explicit-constructor)

    static Gauge constant(double width) { return Gauge(ConstantGauge{width}); }

    /// Throws InvalidGauge when the width at t is not a positive finite number.
    double operator()(const Rational& t) const;

    /// Points the fine-partition search should try as tags besides the
    /// endpoints and midpoint of each piece.
    std::vector<Rational> special_points() const;

    const Form& form() const noexcept { return form_; }
    std::string describe() const;

private:
    Form form_;
};

/// t_i - t_{i-1} <= delta(s_i) for every piece. For a constant gauge this is
/// the ordinary delta-fine mesh test.
bool is_gauge_fine(const TaggedPartition& p, const Gauge& gauge);

/// Recursive bisection: a piece is accepted as soon as one candidate tag
/// (left endpoint, right endpoint, midpoint, then special points inside it,
/// in that order) has a width covering the whole piece. Root depth is 0.
/// Throws NoFinePartition if some piece still fails at `depth_cap`.
TaggedPartition cousin_fine(const Rational& a, const Rational& b, const Gauge& gauge,
                            int depth_cap = 60);

} // namespace riemannx
