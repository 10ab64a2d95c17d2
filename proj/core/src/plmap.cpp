#include "solenoidlab/plmap.hpp"

#include "solenoidlab/errors.hpp"

#include <algorithm>

namespace slab {

namespace {

// A piecewise-linear function over an arbitrary subdomain of [0,1],
// given by node lists. Used internally for compositions and restrictions
// where the [0,1]-endpoint invariant of PLMap does not apply.
struct Chain {
    std::vector<Rational> x;
    std::vector<Rational> y;

    size_t pieces() const { return x.empty() ? 0 : x.size() - 1; }
};

Chain restrict_to(const PLMap& f, const Interval& dom) {
    Chain c;
    c.x.push_back(dom.lo);
    c.y.push_back(f.eval(dom.lo));
    const auto& bp = f.breakpoints();
    size_t i = f.piece_index(dom.lo) + 1;
    while (i + 1 <= bp.size() - 1 && bp[i] < dom.hi) {
        if (bp[i] > dom.lo) {
            c.x.push_back(bp[i]);
            c.y.push_back(f.values()[i]);
        }
        ++i;
    }
    if (dom.hi > dom.lo) {
        c.x.push_back(dom.hi);
        c.y.push_back(f.eval(dom.hi));
    }
    return c;
}

// outer o inner, exact refinement by preimages of outer breakpoints.
Chain compose(const PLMap& outer, const Chain& inner, size_t piece_cap) {
    Chain out;
    if (inner.x.empty()) return out;
    const auto& obp = outer.breakpoints();
    const auto& oval = outer.values();
    out.x.push_back(inner.x.front());
    out.y.push_back(outer.eval(inner.y.front()));
    for (size_t p = 0; p + 1 < inner.x.size(); ++p) {
        const Rational& u = inner.x[p];
        const Rational& v = inner.x[p + 1];
        const Rational& yu = inner.y[p];
        const Rational& yv = inner.y[p + 1];
        if (yu != yv) {
            Rational slope = (yv - yu) / (v - u);
            if (yu < yv) {
                size_t j = outer.piece_index(yu) + 1;
                for (; j < obp.size() && obp[j] < yv; ++j) {
                    if (obp[j] <= yu) continue;
                    out.x.push_back(u + (obp[j] - yu) / slope);
                    out.y.push_back(oval[j]);
                    if (out.x.size() > piece_cap + 1)
                        throw resource_error("piece cap exceeded while composing maps");
                }
            } else {
                size_t j = outer.piece_index(yu);
                // walk breakpoints downward through (yv, yu)
                while (j > 0 && obp[j] >= yu) --j;
                for (size_t k = j + 1; k-- > 0;) {
                    if (obp[k] >= yu) continue;
                    if (obp[k] <= yv) break;
                    out.x.push_back(u + (obp[k] - yu) / slope);
                    out.y.push_back(oval[k]);
                    if (out.x.size() > piece_cap + 1)
                        throw resource_error("piece cap exceeded while composing maps");
                }
            }
        }
        out.x.push_back(v);
        out.y.push_back(outer.eval(yv));
        if (out.x.size() > piece_cap + 1)
            throw resource_error("piece cap exceeded while composing maps");
    }
    return out;
}

Chain power_chain(const PLMap& f, unsigned K, const Interval& dom, size_t piece_cap) {
    Chain c = restrict_to(f, dom);
    for (unsigned k = 2; k <= K; ++k) c = compose(f, c, piece_cap);
    return c;
}

PointSet fixed_points_of_chain(const Chain& c) {
    PointSet roots;
    auto push = [&roots](const Rational& r) {
        if (roots.empty() || roots.back() != r) roots.push_back(r);
    };
    for (size_t p = 0; p + 1 < c.x.size(); ++p) {
        const Rational& u = c.x[p];
        const Rational& v = c.x[p + 1];
        const Rational& yu = c.y[p];
        const Rational& yv = c.y[p + 1];
        Rational w = v - u;
        // solve yu + s(x-u) = x with s = (yv-yu)/w
        Rational dy = yv - yu;
        if (dy == w) {
            if (yu == u)
                throw construction_error("degenerate fixed set: a piece lies on the diagonal");
            continue;
        }
        // x* = (yu - s u)/(1 - s) = (yu*w - dy*u)/(w - dy) ... derived over the piece
        Rational x = (yu * w - dy * u) / (w - dy);
        if (u <= x && x <= v) push(x);
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

} // namespace

PLMap::PLMap(std::vector<Rational> breakpoints, std::vector<Rational> values)
    : bp_(std::move(breakpoints)), val_(std::move(values)) {
    if (bp_.size() < 2) throw malformed_input_error("PLMap needs at least 2 breakpoints");
    if (bp_.size() != val_.size())
        throw malformed_input_error("PLMap breakpoint/value count mismatch");
    if (bp_.front() != Rational(0) || bp_.back() != Rational(1))
        throw malformed_input_error("PLMap breakpoints must start at 0 and end at 1");
    for (size_t i = 0; i + 1 < bp_.size(); ++i)
        if (!(bp_[i] < bp_[i + 1]))
            throw malformed_input_error("PLMap breakpoints must be strictly increasing");
    for (const auto& v : val_)
        if (v < Rational(0) || v > Rational(1))
            throw malformed_input_error("PLMap value outside [0,1]");
    slope_.reserve(bp_.size() - 1);
    for (size_t i = 0; i + 1 < bp_.size(); ++i)
        slope_.push_back((val_[i + 1] - val_[i]) / (bp_[i + 1] - bp_[i]));
}

PLMap PLMap::constant(const Rational& c) { return PLMap({Rational(0), Rational(1)}, {c, c}); }

PLMap PLMap::identity() {
    return PLMap({Rational(0), Rational(1)}, {Rational(0), Rational(1)});
}

PLMap PLMap::tent() {
    return PLMap({Rational(0), Rational(1, 2), Rational(1)},
                 {Rational(0), Rational(1), Rational(0)});
}

size_t PLMap::piece_index(const Rational& x) const {
    // largest i with bp_[i] <= x, clamped to a piece index
    size_t lo = 0, hi = bp_.size();
    while (lo < hi) {
        size_t mid = (lo + hi) / 2;
        if (bp_[mid] <= x)
            lo = mid + 1;
        else
            hi = mid;
    }
    size_t i = lo - 1;
    if (i >= bp_.size() - 1) i = bp_.size() - 2;
    return i;
}

Rational PLMap::eval(const Rational& x) const {
    if (x < Rational(0) || x > Rational(1))
        throw precondition_error("PLMap evaluated outside [0,1]: " + x.to_string());
    size_t i = piece_index(x);
    if (slope_[i].is_zero()) return val_[i];
    if (x == bp_[i]) return val_[i];
    return val_[i] + slope_[i] * (x - bp_[i]);
}

Rational PLMap::iterate(const Rational& x, unsigned n) const {
    Rational y = x;
    for (unsigned k = 0; k < n; ++k) y = eval(y);
    return y;
}

Interval PLMap::image_interval(const Interval& I) const {
    size_t a = piece_index(I.lo);
    size_t b = piece_index(I.hi);
    Rational mn = eval(I.lo);
    Rational mx = mn;
    auto consider = [&](const Rational& y) {
        if (y < mn) mn = y;
        if (y > mx) mx = y;
    };
    consider(eval(I.hi));
    for (size_t j = a + 1; j <= b; ++j)
        if (bp_[j] > I.lo && bp_[j] < I.hi) consider(val_[j]);
    return Interval(mn, mx);
}

PLMap PLMap::power(unsigned K, size_t piece_cap) const {
    if (K == 0) throw precondition_error("power requires K >= 1");
    if (K == 1) return *this;
    Chain c = power_chain(*this, K, Interval(Rational(0), Rational(1)), piece_cap);
    return PLMap(std::move(c.x), std::move(c.y));
}

PointSet PLMap::fixed_points_of_power(unsigned K, size_t piece_cap) const {
    return fixed_points_of_power_in(K, Interval(Rational(0), Rational(1)), piece_cap);
}

PointSet PLMap::fixed_points_of_power_in(unsigned K, const Interval& dom,
                                         size_t piece_cap) const {
    if (K == 0) throw precondition_error("fixed_points_of_power requires K >= 1");
    Chain c = power_chain(*this, K, dom, piece_cap);
    return fixed_points_of_chain(c);
}

PointSet PLMap::critical_points() const {
    PointSet out;
    for (size_t i = 1; i + 1 < bp_.size(); ++i)
        if ((slope_[i - 1] * slope_[i]).sign() <= 0) out.push_back(bp_[i]);
    return out;
}

Rational PLMap::max_slope() const {
    Rational m(0);
    for (const auto& s : slope_) m = Rational::max(m, s.abs());
    return m;
}

Rational PLMap::min_abs_slope() const {
    Rational m = slope_[0].abs();
    for (const auto& s : slope_) m = Rational::min(m, s.abs());
    return m;
}

unsigned PLMap::prime_period(const Rational& x, unsigned K) const {
    if (iterate(x, K) != x)
        throw precondition_error("prime_period: point is not K-periodic");
    for (unsigned p = 1; p <= K; ++p) {
        if (K % p != 0) continue;
        if (iterate(x, p) == x) return p;
    }
    return K; // unreachable: p = K always qualifies
}

Rational PLMap::sup_distance(const PLMap& f, const PLMap& g) {
    Rational best(0);
    size_t i = 0, j = 0;
    auto consider = [&](const Rational& x) {
        Rational d = (f.eval(x) - g.eval(x)).abs();
        if (d > best) best = d;
    };
    while (i < f.bp_.size() && j < g.bp_.size()) {
        if (f.bp_[i] == g.bp_[j]) {
            consider(f.bp_[i]);
            ++i;
            ++j;
        } else if (f.bp_[i] < g.bp_[j]) {
            consider(f.bp_[i]);
            ++i;
        } else {
            consider(g.bp_[j]);
            ++j;
        }
    }
    while (i < f.bp_.size()) consider(f.bp_[i++]);
    while (j < g.bp_.size()) consider(g.bp_[j++]);
    return best;
}

namespace {
// Clamp chain values to [0,1], inserting exact crossing breakpoints.
Chain clamp01(const Chain& c) {
    Chain out;
    const Rational zero(0), one(1);
    auto clamp = [&](const Rational& y) {
        if (y < zero) return zero;
        if (y > one) return one;
        return y;
    };
    for (size_t p = 0; p + 1 < c.x.size(); ++p) {
        const Rational &u = c.x[p], &v = c.x[p + 1];
        const Rational &yu = c.y[p], &yv = c.y[p + 1];
        if (out.x.empty()) {
            out.x.push_back(u);
            out.y.push_back(clamp(yu));
        }
        for (const Rational& level : {zero, one}) {
            // crossing of the segment with the level line, interior only
            if ((yu < level && yv > level) || (yu > level && yv < level)) {
                Rational t = (level - yu) / (yv - yu);
                Rational x = u + t * (v - u);
                if (x > out.x.back() && x < v) {
                    out.x.push_back(x);
                    out.y.push_back(level);
                }
            }
        }
        // two crossings on one segment must be emitted in x order
        if (out.x.size() >= 2 && out.x[out.x.size() - 2] > out.x.back()) {
            std::swap(out.x[out.x.size() - 2], out.x.back());
            std::swap(out.y[out.y.size() - 2], out.y.back());
        }
        out.x.push_back(v);
        out.y.push_back(clamp(yv));
    }
    return out;
}
} // namespace

PLMap PLMap::add_clamped(const PLMap& f, const PLMap& g) {
    return add_scaled_clamped(f, Rational(1), g);
}

PLMap PLMap::add_scaled_clamped(const PLMap& f, const Rational& t, const PLMap& g) {
    // merged breakpoints
    Chain sum;
    size_t i = 0, j = 0;
    auto push = [&](const Rational& x) {
        if (!sum.x.empty() && sum.x.back() == x) return;
        sum.x.push_back(x);
        sum.y.push_back(f.eval(x) + t * g.eval(x));
    };
    while (i < f.bp_.size() && j < g.bp_.size()) {
        if (f.bp_[i] <= g.bp_[j])
            push(f.bp_[i++]);
        else
            push(g.bp_[j++]);
    }
    while (i < f.bp_.size()) push(f.bp_[i++]);
    while (j < g.bp_.size()) push(g.bp_[j++]);
    Chain clamped = clamp01(sum);
    return PLMap(std::move(clamped.x), std::move(clamped.y));
}

CompactSet point_set_to_compact(const PointSet& pts) {
    std::vector<Interval> raw;
    raw.reserve(pts.size());
    for (const auto& p : pts) raw.emplace_back(p, p);
    return CompactSet::normalize(std::move(raw));
}

Rational point_set_hausdorff(const PointSet& a, const PointSet& b) {
    return hausdorff(point_set_to_compact(a), point_set_to_compact(b));
}

} // namespace slab
