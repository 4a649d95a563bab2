#pragma once

#include "riemannx/integration.hpp"
#include "riemannx/partitions.hpp"
#include "riemannx/spaces.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace riemannx {

struct Interval {
    Rational left;
    Rational right;

    Rational length() const { return right - left; }
    Rational midpoint() const { return (left + right) / 2; }
    bool contains(const Rational& t) const { return left <= t && t <= right; }
};

// ---------------------------------------------------------------- fat Cantor set

/// Fat Cantor set of measure 1/2, built to a finite depth.
///
/// Level k removes, from the centre of each of the 2^(k-1) intervals kept
/// after level k-1, an open interval A_k^(i) of length 1/(2^(k-1) 3^k). The
/// 2^k intervals kept after level k all have length
/// 2^-k (1 - sum_{j<=k} 3^-j).
///
/// Endpoints are generated on demand from the binary expansion of the
/// interval index, so memory is O(depth) and every endpoint is exact.
/// Interval indices are 1-based and increase from left to right.
class CantorLevels {
public:
    explicit CantorLevels(int depth);

    int depth() const noexcept { return depth_; }

    /// d(A_k), 1 <= k <= depth.
    const Rational& removed_length(int k) const;
    /// Length of each interval kept after level k, 0 <= k <= depth.
    const Rational& kept_length(int k) const;

    static std::uint64_t removed_count(int k) { return std::uint64_t{1} << (k - 1); }
    static std::uint64_t kept_count(int k) { return std::uint64_t{1} << k; }

    Interval removed(int k, std::uint64_t i) const;
    Interval kept(int k, std::uint64_t i) const;
    /// Midpoint c_k^(i) of A_k^(i).
    Rational removed_midpoint(int k, std::uint64_t i) const { return removed(k, i).midpoint(); }

    /// Total length removed through level `through` (default: depth).
    Rational removed_measure(std::optional<int> through = std::nullopt) const;

    /// Visits the intervals of a level in left-to-right order without
    /// materialising them. The visitor gets (1-based index, interval).
    void for_each_removed(int k, const std::function<void(std::uint64_t, const Interval&)>& visit) const;
    void for_each_kept(int k, const std::function<void(std::uint64_t, const Interval&)>& visit) const;

    /// Level and index of the closed removed interval of level <= depth
    /// containing t, if any.
    std::optional<std::pair<int, std::uint64_t>> locate_removed(const Rational& t) const;

    struct RemovedHit {
        int level;
        std::uint64_t index;
        Interval interval;
    };
    /// As locate_removed, also returning the interval itself.
    std::optional<RemovedHit> locate(const Rational& t) const;

private:
    void check_level(int k, int lo) const;
    Rational kept_left(int k, std::uint64_t i) const;
    mpz_class scaled_kept_left(int k, std::uint64_t i) const;

    int depth_;
    std::vector<Rational> removed_length_; // index k, slot 0 unused
    std::vector<Rational> kept_length_;    // index k = 0..depth
    // Every endpoint through the final depth is an integer multiple of
    // 1/scale_; the walks below run on those integers.
    mpz_class scale_;
    std::vector<mpz_class> removed_scaled_;
    std::vector<mpz_class> kept_scaled_;
};

/// Writes `level,kind,left_num,left_den,right_num,right_den` rows, removed
/// intervals before kept ones within each level. With `decimals`, the
/// columns `left,right` (17 significant digits) are appended.
void write_cantor_csv(std::ostream& out, const CantorLevels& levels, bool decimals = false);

// ---------------------------------------------------------------- bump series

/// Tent on A_k^(i): 0 at both endpoints and outside, 1 at the midpoint.
double bump(const CantorLevels& levels, int k, std::uint64_t i, const Rational& t);

/// f(t) = sum_k h_k(t) e_k with h_k = sum_i bump(k, i, .), valued in l_1.
/// Since the removed intervals are pairwise disjoint, f(t) is
/// bump(k,i,t) e_k on A_k^(i) (k <= depth) and 0 elsewhere.
class KadetsFunction {
public:
    explicit KadetsFunction(int depth);

    const CantorLevels& levels() const noexcept { return levels_; }
    static SpaceSpec space() { return SpaceSpec::seq_lp(1.0); }

    SeqVec operator()(const Rational& t) const;

    /// Levels searched below the first level whose kept intervals are no
    /// longer than the hint window.
    static constexpr int hint_levels_below_window = 3;

    /// Removed-interval midpoints of levels <= H and endpoints of the
    /// intervals kept after level H, restricted to [lo, hi], where H is
    /// hint_depth capped at hint_levels_below_window past the first level
    /// that fits in [lo, hi]. The cap keeps the count bounded for wide windows.
    std::vector<Rational> hints(const Rational& lo, const Rational& hi, int hint_depth) const;

    /// As a VectorFn on [0,1] carrying Cantor hints and the partition-pair
    /// divergence witness.
    VectorFn as_vector_fn(int hint_depth) const;

private:
    CantorLevels levels_;
};

SeqVec kadets_f(const Rational& t, int depth);

/// Partition pair at stage m. Both share breakpoints and contain every
/// interval kept after level m-1 as a piece; on those pieces the first
/// partition is tagged at the bump peak c_m^(i) and the second at the
/// piece's left endpoint (a point of the Cantor set). Removed intervals of
/// levels < m are cut into filler pieces shorter than 2^-(m-1) and carry the
/// same tags in both.
std::pair<TaggedPartition, TaggedPartition> kadets_partitions(int m);

struct KadetsGap {
    Rational closed_form; ///< 1 - sum_{j<=m-1} 3^-j
    double numeric;       ///< ||S(f,P1) - S(f,P2)||_1 from riemann_sum
};

KadetsGap kadets_gap(int m);

// ---------------------------------------------------------------- Rolewicz

/// t -> indicator of [0,t] in StepLp(p).
StepFn rolewicz_f(const Rational& t, double p);

struct RolewiczIncrement {
    double increment; ///< ||f(t+h) - f(t)|| = |h|^(1/p)
    double quotient;  ///< increment / |h| = |h|^(1/p - 1), 0 when h = 0
};

RolewiczIncrement rolewicz_increment(const Rational& t, const Rational& h, double p);

VectorFn rolewicz_function(double p);
/// The pointwise derivative, identically zero.
VectorFn rolewicz_derivative(double p);

/// ||F - (x - .)^+|| in StepLp(p), with the piecewise-linear target
/// integrated in closed form on every piece of F.
double rolewicz_primitive_distance(const StepFn& F, const Rational& x);

// ---------------------------------------------------------------- l_1 blocks

/// Blocks z^(i) with cut indices 0 = n_0 <= n_1 <= ... <= n_p. The main mass
/// of block i sits in the window (n_{i-1}, n_i); anything at or beyond n_i,
/// or at or before n_{i-1}, is tail.
struct BlockSeq {
    std::vector<SeqVec> blocks;
    std::vector<std::size_t> cuts; ///< n_0 .. n_p
    double beta = 0.0;
    double epsilon = 0.0;
};

/// Deterministic blocks of width `window`: mass beta/2 + margin at the first
/// window coordinate, tail_mass split between the coordinates n_{i-1} and
/// n_i + 1 (all of it after the window for the first block).
BlockSeq blocks_build(std::size_t p, double beta, double epsilon, double tail_mass,
                      double margin = 0.0, std::size_t window = 4);

/// Same shape with random window splits, signs and tail placement; every
/// tail total stays strictly below tail_mass.
BlockSeq blocks_build_random(std::size_t p, double beta, double epsilon, double tail_mass,
                             std::mt19937_64& rng, std::size_t window = 4);

enum class BlockCondition { None, NormFloor, TailAfter, TailBefore, SeparationBound };

const char* to_string(BlockCondition c);

struct BlockCheck {
    bool ok = false;
    BlockCondition failed = BlockCondition::None;
    std::size_t failed_block = 0; ///< 1-based, 0 when none
    double lower_bound = 0.0;     ///< p beta / 2 - 4 epsilon
    double actual = 0.0;          ///< ||sum_i z^(i)||
    std::vector<double> core_norms;     ///< ||y^(i)||
    std::vector<double> residual_norms; ///< ||z^(i) - y^(i)||
};

/// Checks the three block conditions and the separation bound. For flat l_1
/// blocks every sum is formed exactly in rational arithmetic.
BlockCheck blocks_verify(const BlockSeq& bs);

// ---------------------------------------------------------------- oscillating derivative

/// Scalar f(t) = 2t sin(1/t^2) - (2/t) cos(1/t^2), f(0) = 0: the pointwise
/// derivative of t^2 sin(1/t^2). Unbounded near 0, so not Riemann integrable
/// on [0,1], and its integral there is sin 1.
VectorFn oscillating_derivative();

/// Gauges min(4^-k, 4^-k t^2) with width 2^-k at t = 0, for k = 1..k_max.
std::vector<Gauge> oscillating_gauges(int k_max);

// ---------------------------------------------------------------- weak-null probes

struct ProbeResult {
    std::vector<double> pairing_decay; ///< per vector, max over battery of |<y, x_n>|
    double norm_floor = 0.0;           ///< min norm over the vectors
};

/// Vectors in SeqSup (a c_0 model) tested against l_1 functionals.
ProbeResult weak_null_probe(std::span<const SeqVec> vectors, std::span<const SeqVec> battery);

/// Functionals in l_1 tested against SeqSup vectors: the weak* direction.
ProbeResult weak_star_probe(std::span<const SeqVec> functionals, std::span<const SeqVec> battery);

} // namespace riemannx
