// The constructive pipeline: seed-class validation, certified parameter
// selection (gamma, beta, alpha, delta, m_K, rho), the block perturbation
// built from the center-snapping rules, the pinned perturbation that closes
// exact periodic orbits of centers, the ball property around it, and the
// slope-raising densifier. Every inequality the construction relies on is
// recorded with both sides as exact rationals.
#pragma once

#include "solenoidlab/partition.hpp"
#include "solenoidlab/plmap.hpp"

#include <string>
#include <vector>

namespace slab {

struct FKVerdict {
    bool pass = false;
    std::vector<std::string> failures;
};

// Membership in the seed class for order K: every slope at least 3 in
// absolute value, no critical point k-periodic for k <= K, and the
// endpoints not k-periodic for k <= K.
FKVerdict validate_FK(const PLMap& f, unsigned K);

struct InequalityRecord {
    std::string name;
    Rational lhs;
    Rational rhs;
    bool strict = true;
    bool holds = false;
};

struct ParamSet {
    unsigned K = 0;
    Rational gamma0; // requested budget
    Rational gamma;  // certified value, halved from gamma0 as needed
    Rational beta;
    Rational alpha;
    Rational delta;
    Rational theta; // maximal slope of the seed
    unsigned m_K = 0;
    long M_K = 0;
    Rational eta;
    Rational rho;
    std::vector<InequalityRecord> certificates;

    bool all_hold() const;
    const InequalityRecord* find(const std::string& name) const;
};

// Certified parameter selection. gamma is shrunk until perturbations of
// size gamma provably move Fix(f^K) by less than 1/(4K) and create no
// fixed points of the K-th iterate elsewhere; delta = alpha/(8 theta^K)
// certifies the tracing properties through the slope chain bound; m_K is
// the smallest level satisfying the block inequalities.
ParamSet select_params(const PLMap& f, unsigned K, const Rational& gamma0,
                       unsigned partition_cap = kMaxPartitionLevel,
                       size_t piece_cap = kDefaultPieceCap);

// Recompute every certificate from scratch; independent of the bookkeeping
// inside select_params.
std::vector<InequalityRecord> verify_params(const PLMap& f, const ParamSet& P,
                                            size_t piece_cap = kDefaultPieceCap);

// Center of the requested parity (0 = any, 1 = odd, 2 = even) nearest to v;
// ties resolve to the smaller index.
long nearest_center(const Partition& P, const Rational& v, int parity);

struct TildeResult {
    PLMap map;
    std::vector<long> targets;  // center index assigned to each E-block
    Rational sup_from_seed;     // exact ||f - tilde||
    Rational max_center_move;   // max_i |f(c_i) - tilde(c_i)|
};

// The block perturbation: constant on every E-block at the same-parity
// center nearest to f(c_i) (ties to the smaller center), linear on the
// H-blocks, endpoint values snapped to the nearest center.
TildeResult build_tilde(const PLMap& f, const Partition& P, const ParamSet& params);

struct PinRecord {
    Rational y;               // representative of its orbit in Fix(f^K)
    unsigned p = 0;           // prime period
    std::vector<long> indices; // blocks i_0 .. i_{p-1} along the center orbit
    long pinned_block = 0;    // i_{p-1}, where the map is redefined
    Rational target;          // c_{i_0}, the exact periodic center
};

struct HatResult {
    PLMap map;
    std::vector<PinRecord> pins;
    Rational tilde_distance; // exact ||tilde - hat||
    Rational seed_distance;  // exact ||f - hat||
};

// Close one exact periodic orbit of centers per orbit of Fix(f^K) by
// redefining the map on the last block of each center orbit. Index
// collisions between pins are an error, never silently resolved.
HatResult build_hat(const PLMap& f, const TildeResult& tilde, const ParamSet& params,
                    const Partition& P);

// For g in the rho-ball of hat, the F-block index receiving each E-block;
// certificate_error when some image is not inside a single F-block.
std::vector<long> block_targets(const PLMap& g, const Partition& P);

struct FixgReport {
    Rational distance;          // exact ||g - hat||
    bool in_ball = false;       // distance < rho
    bool images_contract = false; // g^K(E^{i_c}) inside F^{i_c} per pin block
    bool fixed_points_present = false; // Fix(g^K) meets each pin block
    bool e_into_f = false;      // g(E_m) inside F_m blockwise
    std::vector<std::string> failures;

    bool pass() const {
        return in_ball && images_contract && fixed_points_present && e_into_f;
    }
};

// The ball property: exact verification that any given g with
// ||g - hat|| < rho keeps the pinned block structure.
FixgReport verify_fixg(const PLMap& g, const PLMap& hat, const ParamSet& params,
                       const Partition& P, const std::vector<PinRecord>& pins,
                       size_t piece_cap = kDefaultPieceCap);

// Replace every shallow piece by a uniform zigzag of amplitude below eps/2
// and retry until the result lies in the seed class for order K. The
// required tooth count is computed exactly up front; if it exceeds the
// piece cap the call fails with a resource error rather than building a
// monster map.
PLMap saw_approximate(const PLMap& f, const Rational& eps, unsigned K,
                      size_t piece_cap = kDefaultPieceCap);

} // namespace slab
