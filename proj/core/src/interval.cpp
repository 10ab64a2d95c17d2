#include "solenoidlab/interval.hpp"

#include "solenoidlab/errors.hpp"

#include <algorithm>

namespace slab {

Interval::Interval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi)
        throw malformed_input_error("interval with lo > hi: [" + lo.to_string() + "," +
                                    hi.to_string() + "]");
    if (lo < Rational(0) || hi > Rational(1))
        throw malformed_input_error("interval outside [0,1]: [" + lo.to_string() + "," +
                                    hi.to_string() + "]");
}

Interval clamped_interval(const Rational& l, const Rational& h) {
    Rational lo = Rational::max(l, Rational(0));
    Rational hi = Rational::min(h, Rational(1));
    return Interval(lo, hi);
}

CompactSet CompactSet::normalize(std::vector<Interval> raw) {
    std::sort(raw.begin(), raw.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    CompactSet out;
    for (auto& iv : raw) {
        if (!out.parts_.empty() && iv.lo <= out.parts_.back().hi) {
            if (iv.hi > out.parts_.back().hi) out.parts_.back().hi = iv.hi;
        } else {
            out.parts_.push_back(std::move(iv));
        }
    }
    return out;
}

CompactSet CompactSet::of(Interval iv) {
    CompactSet s;
    s.parts_.push_back(std::move(iv));
    return s;
}

namespace {
// Index of the first part with lo > x, minus one step back gives the
// candidate part containing x.
size_t upper_part(const std::vector<Interval>& parts, const Rational& x) {
    size_t lo = 0, hi = parts.size();
    while (lo < hi) {
        size_t mid = (lo + hi) / 2;
        if (parts[mid].lo <= x)
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo;
}
} // namespace

bool CompactSet::contains_point(const Rational& x) const {
    size_t i = upper_part(parts_, x);
    return i > 0 && parts_[i - 1].contains(x);
}

bool CompactSet::contains_point_interior(const Rational& x) const {
    size_t i = upper_part(parts_, x);
    return i > 0 && parts_[i - 1].lo < x && x < parts_[i - 1].hi;
}

bool CompactSet::contains(const CompactSet& other) const {
    for (const auto& iv : other.parts_) {
        size_t i = upper_part(parts_, iv.lo);
        if (i == 0 || !parts_[i - 1].contains(iv)) return false;
    }
    return true;
}

Rational CompactSet::dist_point(const Rational& x) const {
    if (empty()) throw precondition_error("dist_point on empty set");
    size_t i = upper_part(parts_, x);
    if (i > 0 && parts_[i - 1].contains(x)) return Rational(0);
    Rational best(-1);
    if (i > 0) best = x - parts_[i - 1].hi;
    if (i < parts_.size()) {
        Rational d = parts_[i].lo - x;
        if (best.sign() < 0 || d < best) best = d;
    }
    return best;
}

Rational CompactSet::measure() const {
    Rational m(0);
    for (const auto& iv : parts_) m += iv.diam();
    return m;
}

Interval CompactSet::hull() const {
    if (empty()) throw precondition_error("hull of empty set");
    return Interval(parts_.front().lo, parts_.back().hi);
}

CompactSet CompactSet::inflate(const Rational& r) const {
    if (r.sign() < 0) throw precondition_error("negative inflation radius");
    std::vector<Interval> raw;
    raw.reserve(parts_.size());
    for (const auto& iv : parts_) raw.push_back(clamped_interval(iv.lo - r, iv.hi + r));
    return normalize(std::move(raw));
}

CompactSet CompactSet::complement() const {
    std::vector<Interval> raw;
    Rational cursor(0);
    for (const auto& iv : parts_) {
        if (cursor < iv.lo) raw.emplace_back(cursor, iv.lo);
        cursor = iv.hi;
    }
    if (cursor < Rational(1)) raw.emplace_back(cursor, Rational(1));
    if (parts_.empty()) return whole();
    return normalize(std::move(raw));
}

CompactSet CompactSet::set_union(const CompactSet& a, const CompactSet& b) {
    std::vector<Interval> raw = a.parts_;
    raw.insert(raw.end(), b.parts_.begin(), b.parts_.end());
    return normalize(std::move(raw));
}

CompactSet CompactSet::intersect(const CompactSet& a, const CompactSet& b) {
    std::vector<Interval> raw;
    size_t i = 0, j = 0;
    while (i < a.parts_.size() && j < b.parts_.size()) {
        const Interval& p = a.parts_[i];
        const Interval& q = b.parts_[j];
        Rational lo = Rational::max(p.lo, q.lo);
        Rational hi = Rational::min(p.hi, q.hi);
        if (lo <= hi) raw.emplace_back(lo, hi);
        if (p.hi <= q.hi)
            ++i;
        else
            ++j;
    }
    return normalize(std::move(raw));
}

namespace {
// sup over a in A of dist(a, B)
Rational directed_hausdorff(const CompactSet& a, const CompactSet& b) {
    Rational best(0);
    auto consider = [&](const Rational& x) {
        Rational d = b.dist_point(x);
        if (d > best) best = d;
    };
    for (const auto& iv : a.parts()) {
        consider(iv.lo);
        consider(iv.hi);
    }
    // peaks of dist(.,B) sit at midpoints of B's gaps
    const auto& bp = b.parts();
    for (size_t i = 0; i + 1 < bp.size(); ++i) {
        Rational mid = midpoint(bp[i].hi, bp[i + 1].lo);
        if (a.contains_point(mid)) consider(mid);
    }
    return best;
}
} // namespace

Rational hausdorff(const CompactSet& a, const CompactSet& b) {
    if (a.empty() || b.empty()) throw precondition_error("hausdorff of empty set");
    return Rational::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

} // namespace slab
