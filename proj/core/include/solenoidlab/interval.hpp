// Closed rational subintervals of [0,1] and finite disjoint unions of them,
// with an exact Hausdorff metric. These unions represent every attractor
// estimate and every block set in the library.
#pragma once

#include "solenoidlab/rational.hpp"

#include <vector>

namespace slab {

struct Interval {
    Rational lo;
    Rational hi;

    Interval() = default;
    Interval(Rational l, Rational h);

    Rational diam() const { return hi - lo; }
    bool is_point() const { return lo == hi; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
    // o strictly inside (int of *this), endpoints excluded
    bool contains_in_interior(const Interval& o) const { return lo < o.lo && o.hi < hi; }
    bool intersects(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
    Rational midpoint() const { return slab::midpoint(lo, hi); }

    friend bool operator==(const Interval& a, const Interval& b) {
        return a.lo == b.lo && a.hi == b.hi;
    }
};

// Clamp [l,h] to [0,1] before constructing; h < 0 or l > 1 is an error.
Interval clamped_interval(const Rational& l, const Rational& h);

class CompactSet {
public:
    CompactSet() = default;

    // Canonical form: sorted, pairwise disjoint, touching parts merged.
    // Raw intervals must lie in [0,1] with lo <= hi.
    static CompactSet normalize(std::vector<Interval> raw);

    // A single interval, or the whole space.
    static CompactSet of(Interval iv);
    static CompactSet point(const Rational& x) { return of(Interval(x, x)); }
    static CompactSet whole() { return of(Interval(Rational(0), Rational(1))); }

    const std::vector<Interval>& parts() const { return parts_; }
    bool empty() const { return parts_.empty(); }
    size_t size() const { return parts_.size(); }

    bool contains_point(const Rational& x) const;
    // Point strictly inside the interior of some part.
    bool contains_point_interior(const Rational& x) const;
    bool contains(const CompactSet& other) const;

    // Exact distance from x to the set (0 if inside). Set must be nonempty.
    Rational dist_point(const Rational& x) const;

    Rational measure() const;
    Interval hull() const;

    // Minkowski inflation by r >= 0 clamped to [0,1].
    CompactSet inflate(const Rational& r) const;

    // [0,1] minus this set (closure of the complement).
    CompactSet complement() const;

    static CompactSet set_union(const CompactSet& a, const CompactSet& b);
    static CompactSet intersect(const CompactSet& a, const CompactSet& b);

    friend bool operator==(const CompactSet& a, const CompactSet& b) {
        return a.parts_ == b.parts_;
    }

private:
    std::vector<Interval> parts_;
};

// Exact Hausdorff distance between nonempty sets. The sup of dist(.,B) over A
// is attained at an endpoint of A or at a gap midpoint of B lying in A, so
// finitely many exact candidates suffice.
Rational hausdorff(const CompactSet& a, const CompactSet& b);

} // namespace slab
