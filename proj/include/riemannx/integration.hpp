#pragma once

#include "riemannx/partitions.hpp"
#include "riemannx/spaces.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace riemannx {

/// Points inside [lo, hi] where a function does something worth sampling:
/// jumps, bump peaks, Cantor endpoints.
using HintProvider = std::function<std::vector<Rational>(const Rational& lo, const Rational& hi)>;

/// Two partitions of the same interval whose Riemann sums are claimed to be
/// at least `bound` apart.
struct PartitionPair {
    TaggedPartition first;
    TaggedPartition second;
    double bound;
};

/// Supplies, for a requested mesh, an explicit partition pair of mesh no
/// larger than it. Returns nullopt when it has nothing for that mesh.
using DivergenceWitness = std::function<std::optional<PartitionPair>(double mesh)>;

/// f : [a,b] -> space. `eval` must be deterministic and total on [a,b].
struct VectorFn {
    SpaceSpec space = SpaceSpec::finite_dim(1);
    std::function<Vector(const Rational&)> eval;
    Rational a = 0;
    Rational b = 1;
    HintProvider hints;
    DivergenceWitness witness;

    /// Evaluates and checks the result lives in `space`.
    Vector operator()(const Rational& t) const;
    /// Sorted, deduplicated hints clipped to [lo, hi].
    std::vector<Rational> hints_in(const Rational& lo, const Rational& hi) const;
    /// Same function on a subinterval. The witness is dropped since it
    /// certifies the original interval only.
    VectorFn restricted(const Rational& lo, const Rational& hi) const;
};

/// Scalar function of a real variable on [a,b], valued in FiniteDim(1).
VectorFn scalar_fn(std::function<double(double)> f, Rational a = 0, Rational b = 1);

HintProvider fixed_hints(std::vector<Rational> points);

/// sum_i f(s_i) (t_i - t_{i-1}), accumulated in index order.
Vector riemann_sum(const VectorFn& f, const TaggedPartition& p);

/// Number of uniform pieces of [a,b] needed for mesh <= target.
std::size_t pieces_for_mesh(const Rational& a, const Rational& b, double mesh_target);

/// Adversarial lower estimate of the Riemann oscillation at a mesh: on the
/// uniform grid with ceil((b-a)/mesh_target) pieces, two tag assignments are
/// drawn from each piece's candidates (endpoints, midpoint,
/// `tag_candidates_per_interval` interior grid points, and every hint inside
/// the piece) and the largest ||S(f,P,xi1) - S(f,P,xi2)|| found is returned.
/// Every value returned is attained by an explicit pair of tag assignments.
double cauchy_gap(const VectorFn& f, double mesh_target, std::size_t tag_candidates_per_interval);

enum class Verdict { Convergent, Divergent, Inconclusive };

std::string to_string(Verdict v);

struct GapAtMesh {
    double mesh;
    double sampled_gap;
    std::optional<double> certified_gap; ///< set when a witness pair was verified
    double gap() const;
};

struct IntegrabilityReport {
    Verdict verdict = Verdict::Inconclusive;
    std::vector<GapAtMesh> gap_by_mesh;
    /// Midpoint-tag Riemann sum at the finest mesh; absent when divergent.
    std::optional<Vector> estimate;
    /// Smallest certified lower bound, meaningful only for Divergent.
    double divergence_bound = 0.0;
};

/// Runs `cauchy_gap` down a strictly decreasing mesh schedule.
///
/// Divergent only when `f.witness` supplies, at every mesh, a partition pair
/// whose recomputed Riemann sums differ by at least the claimed bound: a
/// sampled gap alone never proves divergence. Convergent when the gap at the
/// finest mesh is <= tol. Inconclusive otherwise.
IntegrabilityReport integrate(const VectorFn& f, double tol, std::span<const double> mesh_schedule,
                              std::size_t tag_candidates_per_interval = 3);

struct IndefiniteEntry {
    Rational x;
    std::optional<Vector> value;
    std::string error;
};

struct IndefiniteOptions {
    double mesh = 1e-3;
    /// When set, a point whose sampled gap on [a,x] exceeds this threshold
    /// is reported as an error entry instead of a value.
    std::optional<double> gap_threshold;
    std::size_t tag_candidates_per_interval = 1;
};

/// F(x) = integral of f over [a,x] for each x of a sorted grid. Each stretch
/// between consecutive grid points is cut into uniform pieces of mesh <=
/// options.mesh with midpoint tags, and F is accumulated left to right, so
/// F(x) is the Riemann sum over the concatenated partition of [a,x].
std::vector<IndefiniteEntry> indefinite_integral(const VectorFn& f, std::span<const Rational> grid,
                                                 const IndefiniteOptions& options = {});

struct ModulusEntry {
    Rational h;
    double max_increment;
};

/// For every spacing h = x_{i+s} - x_i (s in `strides`) present in the table,
/// the largest ||F(x_{i+s}) - F(x_i)||. Sorted by h.
std::vector<ModulusEntry> continuity_modulus(std::span<const std::pair<Rational, Vector>> table,
                                             std::span<const std::size_t> strides = {});

struct FtcResult {
    bool holds = false;
    double defect = 0.0;
    Verdict integrability = Verdict::Inconclusive;
};

/// Compares the estimate of the integral of fp over [a,b] with f(b) - f(a).
/// Throws DivergentIntegrand if fp carries a verified divergence witness.
FtcResult ftc_check(const VectorFn& f, const VectorFn& fp, const Rational& a, const Rational& b,
                    double tol, std::span<const double> mesh_schedule = {});

struct HenstockStep {
    std::size_t pieces;
    Vector estimate;
    double change; ///< norm of the difference from the previous estimate (inf for the first)
};

struct HenstockResult {
    Vector estimate;
    std::vector<HenstockStep> steps;
};

/// Riemann sums over cousin_fine partitions for each gauge in turn; stops as
/// soon as two successive estimates differ by less than tol.
HenstockResult henstock_integrate(const VectorFn& f, std::span<const Gauge> gauges, double tol,
                                  int depth_cap = 60);

} // namespace riemannx
