// The level-m combinatorial block system: for M = 2^m and
// eta = 2^(-2m(m+1)), the interval splits into E-blocks around the cell
// centers c_i, small F-blocks around the centers inside them, and thin
// H-blocks around the cell boundaries a_i. Odd/even indexed blocks are
// collected into L/G and R/D respectively.
#pragma once

#include "solenoidlab/interval.hpp"
#include "solenoidlab/plmap.hpp"

#include <memory>
#include <string>
#include <vector>

namespace slab {

inline constexpr unsigned kDefaultPartitionCap = 8;
inline constexpr unsigned kMaxPartitionLevel = 17;

struct Partition {
    unsigned m = 0;
    long M = 0;        // 2^m
    Rational eta;      // 2^(-2m(m+1))
    std::vector<Rational> a; // a_0 .. a_M, a_i = i/M
    std::vector<Rational> c; // centers c_1 .. c_M (index shifted by one)
    std::vector<Interval> E; // E^1 .. E^M
    std::vector<Interval> F; // F^1 .. F^M
    std::vector<Interval> H; // H^0 .. H^M; H^0 and H^M are half-open
                             // at 0 and 1 mathematically, stored closed
    CompactSet L, R, G, D;
    PointSet C;

    // 1-based accessors matching the block indices.
    const Interval& e_block(long i) const { return E[static_cast<size_t>(i - 1)]; }
    const Interval& f_block(long i) const { return F[static_cast<size_t>(i - 1)]; }
    const Interval& h_block(long i) const { return H[static_cast<size_t>(i)]; }
    const Rational& center(long i) const { return c[static_cast<size_t>(i - 1)]; }
    bool h_boundary_half_open(long i) const { return i == 0 || i == M; }

    // Cell index in 1..M whose [a_{i-1}, a_i] contains x.
    long cell_of(const Rational& x) const;
};

// Exact level-m partition; resource error beyond cap.
Partition partition_build(unsigned m, unsigned cap = kDefaultPartitionCap);

// Levels are cached; repeated queries at the same level share one build.
std::shared_ptr<const Partition> partition_cached(unsigned m,
                                                  unsigned cap = kDefaultPartitionCap);

struct PartitionReport {
    bool tiling = false;            // (1) E- and H-blocks tile [0,1]
    bool block_inclusions = false;  // (2) F in E, D in R, G in L
    bool h_diam_bounds = false;     // (3) diam and root-sum bounds for H
    bool f_diam_bounds = false;     // (4) same for F
    bool fine_level_components = false; // (5) at n = 2m(m+1)
    bool parity_disjoint = false;   // (6) L,R and G,D disjoint
    bool diam_identity = false;     // diam E^i + diam H^i = 1/M per cell
    std::vector<std::string> notes;

    bool all() const {
        return tiling && block_inclusions && h_diam_bounds && f_diam_bounds &&
               fine_level_components && parity_disjoint;
    }
};

PartitionReport partition_verify(const Partition& P);

// Property (5) alone, at an explicit finer level n >= 2m(m+1): every
// component of G_n or D_n meeting F^i_m lies inside it, and both
// intersections are nonempty. Components of the level-n sets are computed
// from the closed formulas, so n is not capped.
bool partition_verify_property5(const Partition& P, unsigned n);

struct BlockRef {
    enum Kind { Center, FBlock, EBlock, HBlock } kind;
    long index; // block index; H uses 0..M, the rest 1..M
};

// Innermost block containing x: centers before F, F before E, E before H.
BlockRef partition_classify(const Partition& P, const Rational& x);

// F^j_n by formula, without building level n.
Interval fine_f_component(unsigned n, const BigInt& j);

} // namespace slab
