// Continuous piecewise-linear self-maps of [0,1] with exact rational
// breakpoints, and the exact map algebra the construction relies on:
// iteration, powers, interval images, sup distance, fixed and critical
// point analysis.
#pragma once

#include "solenoidlab/interval.hpp"
#include "solenoidlab/rational.hpp"

#include <cstddef>
#include <vector>

namespace slab {

// Strictly increasing rationals.
using PointSet = std::vector<Rational>;

inline constexpr size_t kDefaultPieceCap = 1'000'000;

class PLMap {
public:
    // breakpoints: strictly increasing, starting at 0 and ending at 1;
    // values: one per breakpoint, inside [0,1]. The map is the linear
    // interpolant through the (breakpoint, value) pairs.
    PLMap(std::vector<Rational> breakpoints, std::vector<Rational> values);

    static PLMap constant(const Rational& c);
    static PLMap identity();
    static PLMap tent();

    const std::vector<Rational>& breakpoints() const { return bp_; }
    const std::vector<Rational>& values() const { return val_; }
    const std::vector<Rational>& slopes() const { return slope_; }
    size_t piece_count() const { return bp_.size() - 1; }

    Rational eval(const Rational& x) const;
    Rational iterate(const Rational& x, unsigned n) const;

    // Index i of the piece [bp_i, bp_{i+1}] containing x (x = 1 lands in the
    // last piece).
    size_t piece_index(const Rational& x) const;

    // Exact [min, max] of the map over I.
    Interval image_interval(const Interval& I) const;

    // Exact PL representation of the K-th iterate. Throws resource_error
    // when the refinement would exceed piece_cap pieces.
    PLMap power(unsigned K, size_t piece_cap = kDefaultPieceCap) const;

    // All exact solutions of f^K(x) = x. A piece of f^K lying on the
    // diagonal is rejected (the fixed set would be a whole interval).
    PointSet fixed_points_of_power(unsigned K, size_t piece_cap = kDefaultPieceCap) const;

    // Same, restricted to dom; refines only pieces over dom.
    PointSet fixed_points_of_power_in(unsigned K, const Interval& dom,
                                      size_t piece_cap = kDefaultPieceCap) const;

    // Interior breakpoints where the slope changes sign (flat neighbors
    // included): the points where the map is not locally injective.
    PointSet critical_points() const;

    Rational max_slope() const;     // max |slope|
    Rational min_abs_slope() const; // min |slope|

    // Least p dividing K with f^p(x) = x; requires f^K(x) = x exactly.
    unsigned prime_period(const Rational& x, unsigned K) const;

    static Rational sup_distance(const PLMap& f, const PLMap& g);

    // Exact pointwise sum, clamped to [0,1] (extra breakpoints are inserted
    // where f+g crosses 0 or 1).
    static PLMap add_clamped(const PLMap& f, const PLMap& g);

    // f + t * g, clamped.
    static PLMap add_scaled_clamped(const PLMap& f, const Rational& t, const PLMap& g);

    friend bool operator==(const PLMap& a, const PLMap& b) {
        return a.bp_ == b.bp_ && a.val_ == b.val_;
    }

private:
    std::vector<Rational> bp_;
    std::vector<Rational> val_;
    std::vector<Rational> slope_;
};

// d_H between finite point sets (as degenerate compact sets); used for
// beta = d_H(Fix(f^K), Crit(f^K)) / 2.
Rational point_set_hausdorff(const PointSet& a, const PointSet& b);

CompactSet point_set_to_compact(const PointSet& pts);

} // namespace slab
