// Exact certificates for solenoidal structure: cycles of closed intervals
// permuted by the map, nesting of levels, and the covering sums behind the
// zero-Hausdorff-dimension bound. A certificate never claims more than a
// verified finite tower: every containment it reports was checked with
// exact arithmetic.
#pragma once

#include "solenoidlab/partition.hpp"
#include "solenoidlab/perturbation.hpp"
#include "solenoidlab/plmap.hpp"

#include <memory>
#include <vector>

namespace slab {

struct CycleVerdict {
    bool contained = false; // f(I_j) inside I_{j+1 mod k} for every j
    bool strict = false;    // interior containment throughout
    Rational max_diam;
};

// Exact check of the cyclic mapping condition on pairwise disjoint
// closed intervals.
CycleVerdict verify_cycle(const PLMap& f, const std::vector<Interval>& intervals,
                          bool strict);

struct CycleLevel {
    std::vector<Interval> intervals;
    bool cycle_contained = false;
    bool cycle_strict = false;
    Rational max_diam;
};

// One nested tower: one cycle per level, coarsest level first.
struct SolenoidCertificate {
    std::vector<CycleLevel> levels;
    bool nesting_ok = false;
    bool orientation_normalized = false; // level list was reversed on ingestion
    bool diam_decreasing = false;

    bool all_ok(bool need_strict = true) const;
};

// Containment of each level's union inside the previous (coarser) one.
// When the containments run the other way the level list is reversed and
// the normalization recorded; when neither orientation works the
// certificate is malformed.
void verify_nesting(SolenoidCertificate& cert);

std::vector<Rational> diam_trend(const SolenoidCertificate& cert);

// M * (2 eta)^s = 2^(m + s - 2sm(m+1)) as an exact power of two; s > 0.
Pow2 covering_sum(const Partition& P, const Rational& s);

// A construction level to trace: the partition it lives on, the pins of
// its pinned map, and any extra blocks whose cycles should be included
// (for example the blocks of empirical sample points).
struct TowerLevel {
    std::shared_ptr<const Partition> partition;
    std::vector<PinRecord> pins;
    std::vector<long> trace_blocks;
};

struct CertificateBundle {
    std::vector<SolenoidCertificate> towers;

    CompactSet level_union(size_t level) const;
    bool all_ok(bool need_strict = true) const;
};

// Trace the F-block cycles of the block dynamics of g at every level,
// verify each cycle strictly, attach finer cycles to the coarser cycles
// containing them, and verify nesting per tower. Throws certificate_error
// when the block dynamics is not well defined (g outside the ball) or a
// containment fails.
CertificateBundle certificate_from_construction(const PLMap& g,
                                                const std::vector<TowerLevel>& towers);

} // namespace slab
