#pragma once

#include "riemannx/rational.hpp"

#include <cstddef>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace riemannx {

/// Which computable model a vector lives in.
///
///  - FiniteDim(n): R^n with the sup norm (n = 1 is the scalar line).
///  - SeqLp(p):     finitely supported sequences with the l_p (quasi-)norm,
///                  0 < p <= inf. For p < 1 this is only a quasi-norm.
///  - SeqSup:       finitely supported sequences with the sup norm (a c_0 model).
///  - NestedL1(X):  l_1(X), sequences of X-vectors normed by sum of inner norms.
///  - StepLp(p):    step functions on [0,1] with the L_p (quasi-)norm, 0 < p <= 1.
class SpaceSpec {
public:
    enum class Kind { FiniteDim, SeqLp, SeqSup, NestedL1, StepLp };

    static SpaceSpec finite_dim(std::size_t n);
    static SpaceSpec seq_lp(double p);
    static SpaceSpec seq_sup();
    static SpaceSpec nested_l1(const SpaceSpec& inner);
    static SpaceSpec step_lp(double p);

    Kind kind() const noexcept { return kind_; }
    /// Exponent for SeqLp / StepLp, +inf for SeqLp(inf). Meaningless otherwise.
    double exponent() const noexcept { return p_; }
    std::size_t dimension() const noexcept { return dim_; }
    const SpaceSpec& inner() const;
    std::size_t depth() const noexcept;

    bool is_sequence() const noexcept { return kind_ != Kind::StepLp; }

    std::string describe() const;

    friend bool operator==(const SpaceSpec& a, const SpaceSpec& b);

private:
    SpaceSpec() = default;

    Kind kind_ = Kind::SeqSup;
    double p_ = std::numeric_limits<double>::infinity();
    std::size_t dim_ = 0;
    std::shared_ptr<const SpaceSpec> inner_;
};

/// Finitely supported sequence in canonical form: indices strictly
/// increasing, starting at 1, no stored zeros. For NestedL1 spaces every
/// stored coordinate is itself a nonzero SeqVec of the inner space.
class SeqVec {
public:
    explicit SeqVec(SpaceSpec space);
    SeqVec(SpaceSpec space, std::vector<std::pair<std::size_t, double>> entries);
    SeqVec(SpaceSpec space, std::vector<std::pair<std::size_t, SeqVec>> entries);

    /// Coordinates 1..values.size() in order.
    static SeqVec dense(SpaceSpec space, std::span<const double> values);
    static SeqVec unit(SpaceSpec space, std::size_t index, double value = 1.0);

    const SpaceSpec& space() const noexcept { return space_; }
    bool nested() const noexcept { return space_.kind() == SpaceSpec::Kind::NestedL1; }
    std::size_t size() const noexcept { return indices_.size(); }
    bool empty() const noexcept { return indices_.empty(); }

    std::size_t index(std::size_t k) const { return indices_[k]; }
    double value(std::size_t k) const { return values_[k]; }
    const SeqVec& inner(std::size_t k) const { return inner_[k]; }
    std::span<const std::size_t> indices() const noexcept { return indices_; }
    std::span<const double> values() const noexcept { return values_; }

    /// Scalar coordinate (0 when absent). Non-nested spaces only.
    double at(std::size_t index) const;

    friend bool operator==(const SeqVec& a, const SeqVec& b);

private:
    struct Unchecked {};
    SeqVec(Unchecked, SpaceSpec space, std::vector<std::size_t> indices,
           std::vector<double> values, std::vector<SeqVec> inner);

    void check_index(std::size_t index) const;

    SpaceSpec space_;
    std::vector<std::size_t> indices_;
    std::vector<double> values_;
    std::vector<SeqVec> inner_;

    friend SeqVec add(const SeqVec&, const SeqVec&);
    friend SeqVec scale(double, const SeqVec&);
};

/// Piecewise-constant function on [0,1]: `values[i]` holds on
/// [breakpoints[i], breakpoints[i+1]). Lives in a StepLp space.
class StepFn {
public:
    StepFn(SpaceSpec space, std::vector<Rational> breakpoints, std::vector<double> values);

    static StepFn constant(SpaceSpec space, double value);
    /// Indicator of [lo, hi] inside [0,1]; a degenerate interval gives 0.
    static StepFn indicator(SpaceSpec space, const Rational& lo, const Rational& hi);

    const SpaceSpec& space() const noexcept { return space_; }
    std::size_t pieces() const noexcept { return values_.size(); }
    std::span<const Rational> breakpoints() const noexcept { return breakpoints_; }
    std::span<const double> values() const noexcept { return values_; }

    double value_at(const Rational& t) const;

    /// Same function with extra (redundant) breakpoints inserted.
    StepFn refined(std::span<const Rational> extra) const;
    /// Adjacent pieces with equal values merged.
    StepFn canonical() const;

    friend bool operator==(const StepFn& a, const StepFn& b);

private:
    SpaceSpec space_;
    std::vector<Rational> breakpoints_;
    std::vector<double> values_;
};

using Vector = std::variant<SeqVec, StepFn>;

double norm(const SeqVec& v);
double norm(const StepFn& v);
double norm(const Vector& v);

/// Modulus k of the quasi-triangle inequality ||x+y|| <= k (||x|| + ||y||).
double quasi_constant(const SpaceSpec& space);

SeqVec add(const SeqVec& u, const SeqVec& v);
SeqVec scale(double c, const SeqVec& v);
SeqVec sub(const SeqVec& u, const SeqVec& v);
StepFn add(const StepFn& u, const StepFn& v);
StepFn scale(double c, const StepFn& v);
StepFn sub(const StepFn& u, const StepFn& v);
Vector add(const Vector& u, const Vector& v);
Vector scale(double c, const Vector& v);
Vector sub(const Vector& u, const Vector& v);

const SpaceSpec& space_of(const Vector& v);
Vector zero_vector(const SpaceSpec& space);

/// Dual pairing sum_i functional_i * x_i over common indices (l_1 against c_0).
double pair(const SeqVec& functional, const SeqVec& x);

/// Scalar (FiniteDim(1)) helpers.
Vector scalar(double x);
double scalar_value(const Vector& v);

/// `init + sum_i weights[i] * terms[i]`, added strictly left to right. For
/// step functions the sum is formed on the common refinement in one sweep,
/// which yields the same per-piece values as repeated `add`.
Vector accumulate(const Vector& init, std::span<const Vector> terms, std::span<const double> weights);

} // namespace riemannx
