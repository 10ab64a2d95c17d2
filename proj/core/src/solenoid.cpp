#include "solenoidlab/solenoid.hpp"

#include "solenoidlab/errors.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace slab {

CycleVerdict verify_cycle(const PLMap& f, const std::vector<Interval>& intervals,
                          bool strict) {
    if (intervals.empty()) throw precondition_error("verify_cycle on an empty cycle");
    for (size_t i = 0; i < intervals.size(); ++i)
        for (size_t j = i + 1; j < intervals.size(); ++j)
            if (intervals[i].intersects(intervals[j]))
                throw precondition_error("cycle intervals are not pairwise disjoint");
    CycleVerdict v;
    v.contained = true;
    v.strict = true;
    v.max_diam = Rational(0);
    const size_t k = intervals.size();
    for (size_t j = 0; j < k; ++j) {
        Interval img = f.image_interval(intervals[j]);
        const Interval& next = intervals[(j + 1) % k];
        if (!next.contains(img)) v.contained = false;
        if (!next.contains_in_interior(img)) v.strict = false;
        if (intervals[j].diam() > v.max_diam) v.max_diam = intervals[j].diam();
    }
    if (strict) v.contained = v.contained && v.strict;
    return v;
}

bool SolenoidCertificate::all_ok(bool need_strict) const {
    if (levels.empty()) return false;
    for (const auto& lv : levels) {
        if (!lv.cycle_contained) return false;
        if (need_strict && !lv.cycle_strict) return false;
    }
    return nesting_ok && (levels.size() < 2 || diam_decreasing);
}

namespace {

CompactSet cycle_union(const CycleLevel& lv) {
    return CompactSet::normalize(lv.intervals);
}

bool nested_inward(const std::vector<CycleLevel>& levels) {
    for (size_t i = 0; i + 1 < levels.size(); ++i)
        if (!cycle_union(levels[i]).contains(cycle_union(levels[i + 1]))) return false;
    return true;
}

} // namespace

void verify_nesting(SolenoidCertificate& cert) {
    if (cert.levels.empty()) throw precondition_error("certificate without levels");
    cert.orientation_normalized = false;
    if (cert.levels.size() == 1) {
        cert.nesting_ok = true; // vacuous
    } else if (nested_inward(cert.levels)) {
        cert.nesting_ok = true;
    } else {
        std::reverse(cert.levels.begin(), cert.levels.end());
        if (nested_inward(cert.levels)) {
            cert.nesting_ok = true;
            cert.orientation_normalized = true;
        } else {
            std::reverse(cert.levels.begin(), cert.levels.end());
            cert.nesting_ok = false;
            throw certificate_error("levels nest in neither orientation");
        }
    }
    auto d = diam_trend(cert);
    cert.diam_decreasing = true;
    for (size_t i = 0; i + 1 < d.size(); ++i)
        if (!(d[i + 1] < d[i])) cert.diam_decreasing = false;
}

std::vector<Rational> diam_trend(const SolenoidCertificate& cert) {
    std::vector<Rational> out;
    out.reserve(cert.levels.size());
    for (const auto& lv : cert.levels) {
        Rational mx(0);
        for (const auto& iv : lv.intervals)
            if (iv.diam() > mx) mx = iv.diam();
        out.push_back(mx);
    }
    return out;
}

Pow2 covering_sum(const Partition& P, const Rational& s) {
    if (s.sign() <= 0) throw precondition_error("covering_sum needs s > 0");
    long m = static_cast<long>(P.m);
    Rational exponent = Rational(m) + s - Rational(2) * s * Rational(m * (m + 1));
    return Pow2{exponent};
}

CompactSet CertificateBundle::level_union(size_t level) const {
    std::vector<Interval> raw;
    for (const auto& t : towers)
        if (level < t.levels.size())
            raw.insert(raw.end(), t.levels[level].intervals.begin(),
                       t.levels[level].intervals.end());
    return CompactSet::normalize(std::move(raw));
}

bool CertificateBundle::all_ok(bool need_strict) const {
    if (towers.empty()) return false;
    for (const auto& t : towers)
        if (!t.all_ok(need_strict)) return false;
    return true;
}

namespace {

// cycle of the block map through `start`, canonically rotated
std::vector<long> cycle_through(const std::vector<long>& targets, long start) {
    std::map<long, size_t> seen;
    std::vector<long> path;
    long x = start;
    while (!seen.count(x)) {
        seen[x] = path.size();
        path.push_back(x);
        x = targets[static_cast<size_t>(x)];
    }
    std::vector<long> cycle(path.begin() + static_cast<long>(seen[x]), path.end());
    auto mn = std::min_element(cycle.begin(), cycle.end());
    std::rotate(cycle.begin(), mn, cycle.end());
    return cycle;
}

} // namespace

CertificateBundle certificate_from_construction(const PLMap& g,
                                                const std::vector<TowerLevel>& towers) {
    if (towers.empty()) throw precondition_error("no construction levels given");
    // coarse to fine by partition level
    std::vector<const TowerLevel*> ordered;
    ordered.reserve(towers.size());
    for (const auto& t : towers) ordered.push_back(&t);
    std::sort(ordered.begin(), ordered.end(), [](const TowerLevel* a, const TowerLevel* b) {
        return a->partition->m < b->partition->m;
    });

    // distinct verified cycles per level
    std::vector<std::vector<CycleLevel>> level_cycles;
    for (const TowerLevel* t : ordered) {
        const Partition& P = *t->partition;
        std::vector<long> targets = block_targets(g, P);
        std::set<std::vector<long>> found;
        auto trace = [&](long block) {
            if (block < 1 || block > P.M)
                throw precondition_error("trace block index out of range");
            found.insert(cycle_through(targets, block));
        };
        for (const auto& pin : t->pins)
            for (long idx : pin.indices) trace(idx);
        for (long idx : t->trace_blocks) trace(idx);
        if (found.empty()) throw precondition_error("no cycles traced at a level");

        std::vector<CycleLevel> cycles;
        for (const auto& cyc : found) {
            CycleLevel lv;
            lv.intervals.reserve(cyc.size());
            for (long idx : cyc) lv.intervals.push_back(P.f_block(idx));
            CycleVerdict cv = verify_cycle(g, lv.intervals, true);
            lv.cycle_contained = cv.contained;
            lv.cycle_strict = cv.strict;
            lv.max_diam = cv.max_diam;
            if (!cv.contained)
                throw certificate_error("a traced F-block cycle fails the exact mapping check");
            cycles.push_back(std::move(lv));
        }
        level_cycles.push_back(std::move(cycles));
    }

    // attach each finer cycle to the unique coarser cycle containing it
    CertificateBundle bundle;
    for (const auto& top : level_cycles.front()) {
        SolenoidCertificate cert;
        cert.levels.push_back(top);
        bundle.towers.push_back(std::move(cert));
    }
    for (size_t lev = 1; lev < level_cycles.size(); ++lev) {
        for (const auto& fine : level_cycles[lev]) {
            CompactSet fine_union = cycle_union(fine);
            bool attached = false;
            for (auto& tower : bundle.towers) {
                if (tower.levels.size() != lev) continue;
                if (cycle_union(tower.levels.back()).contains(fine_union)) {
                    tower.levels.push_back(fine);
                    attached = true;
                    break;
                }
            }
            if (!attached)
                throw certificate_error("a fine cycle is not nested in any coarser cycle");
        }
    }
    for (auto& tower : bundle.towers) verify_nesting(tower);
    return bundle;
}

} // namespace slab
