// Symbolic engine for the block sequences x_c = A_0 B_0 w_0 A_1 B_1 w_1 ...
// over {0,1}, with k_n = 2^(2^n). Cylinder visit counts are computed in
// closed form from the run decomposition, so horizons far beyond any
// materializable prefix stay exact. A tent-map coding connects cylinders
// to subintervals of [0,1].
#pragma once

#include "solenoidlab/interval.hpp"
#include "solenoidlab/rational.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace slab {

// Enumeration of finite binary words: shorter first, then binary value
// ("0" < "1" < "00" < "01" < "10" < "11" < "000" < ...).
std::string word_at(size_t n);

// k_n = 2^(2^n); a_n = k_0 + ... + k_{2n}; b_n = a_n + k_{2n+1}.
BigInt k_of(unsigned n);
BigInt a_of(unsigned n);
BigInt b_of(unsigned n);

inline constexpr unsigned kMaxSegment = 10; // b_10 ~ 2^(2^21)
inline constexpr size_t kPrefixCap = 10'000'000;

// The parameter sequence c as a finite prefix plus an eventually
// constant tail.
struct BlockPlan {
    std::vector<uint8_t> c_prefix;
    uint8_t c_tail = 1;

    uint8_t c_at(size_t i) const {
        return i < c_prefix.size() ? c_prefix[i] : c_tail;
    }
    // whether B_n is the 1-run (w_n matches the start of c)
    bool b_block_is_ones(unsigned n) const;

    static BlockPlan all_ones() { return BlockPlan{{}, 1}; }
    static BlockPlan all_zeros() { return BlockPlan{{}, 0}; }

    // "0*", "1*", or "<binary prefix>|<0 or 1>*", e.g. "01|1*".
    static BlockPlan parse(const std::string& spec);
    std::string to_string() const;
};

// A maximal run of one symbol: positions [start, start+len).
struct SymbolRun {
    BigInt start;
    BigInt len;
    uint8_t sym;
};

// Maximal runs of x_c covering positions [0, end); throws resource_error
// when more than kMaxSegment block groups would be needed.
std::vector<SymbolRun> plan_runs(const BlockPlan& plan, const BigInt& end);

// First L symbols of x_c, materialized.
std::string xc_prefix(const BlockPlan& plan, size_t L, size_t cap = kPrefixCap);

// Exact number of positions offset <= j < offset+N where the word v
// occurs in x_c starting at j (the window may read past offset+N).
BigInt count_occurrences(const BlockPlan& plan, const std::string& v, const BigInt& N,
                         const BigInt& offset = BigInt(0));

// count/N at each milestone.
std::vector<Rational> frequency_schedule(const BlockPlan& plan, const std::string& v,
                                         const std::vector<BigInt>& milestones);

// (E1): 1 <= a_n/k_{2n} <= 1 + 2/k_{2n-1} and 1 <= b_n/k_{2n+1} <= 1 + 2/k_{2n}.
struct E1Report {
    Rational a_ratio;
    Rational b_ratio;
    bool a_in_envelope = false;
    bool b_in_envelope = false;
};
E1Report verify_E1(unsigned n);

// (E2): sum_{i<n} k_{2i+1} / a_n <= 2/k_{2n-1}.
struct E2Report {
    Rational ratio;
    Rational bound;
    bool within_bound = false;
};
E2Report verify_E2(unsigned n);

// sigma_T(x_c) = {0^inf, 1^inf}: frequency of [0^K] along a_n tends to 1,
// frequency of [1^K] along b_n at the match levels tends to 1, and every
// non-constant cylinder of length <= K has vanishing frequency. All rows
// carry the exact counts and the proof-side bounds they are checked
// against.
struct SigmaSymbolicRow {
    std::string cylinder;
    std::string milestone; // "a_n" or "b_n"
    unsigned n = 0;
    Rational frequency;
    Rational bound;
    bool satisfied = false; // frequency >= bound for constant cylinders,
                            // count <= bound for non-constant ones
};
struct SigmaSymbolicReport {
    std::vector<SigmaSymbolicRow> rows;
    bool verdict = false;
};
SigmaSymbolicReport sigma_symbolic(const BlockPlan& plan, unsigned K, unsigned n_max);

// Frequencies of a cylinder along the a_n horizons for a family of shifted
// plans. The exact offset-adjusted counting bound
//   count <= sum_{i<n} k_{2i+1} + offset
// is reported next to each frequency; `vanishing` states that every member
// satisfies the bound at every horizon and that the final bound itself is
// below eps.
struct EssentialSymbolicReport {
    std::vector<unsigned> levels;
    std::vector<Rational> max_frequency; // per level, over the family
    std::vector<Rational> bound;         // offset-adjusted proof bound / a_n
    bool bounds_hold = false;
    bool vanishing = false;
};
EssentialSymbolicReport essential_symbolic(
    const std::vector<std::pair<BlockPlan, BigInt>>& family, const std::string& cylinder,
    unsigned n_max, const Rational& eps = Rational(1, 100));

// Itinerary of x under the tent map with the partition {[0,1/2], (1/2,1]};
// the boundary point 1/2 codes as symbol '0'.
std::string tent_itinerary(const Rational& x, unsigned n);

// Exact closed interval of points whose itinerary starts with w, computed
// by pulling [0,1] back through the inverse branches.
Interval cylinder_to_interval(const std::string& w);

} // namespace slab
