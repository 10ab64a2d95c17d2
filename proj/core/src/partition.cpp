#include "solenoidlab/partition.hpp"

#include "solenoidlab/errors.hpp"

#include <map>
#include <mutex>

namespace slab {

namespace {

Rational eta_of_level(unsigned m) {
    // 2^(-2m(m+1)); exponents stay well inside long for the level cap
    long e = 2L * m * (m + 1);
    return Rational::pow2(-e);
}

} // namespace

long Partition::cell_of(const Rational& x) const {
    if (x < Rational(0) || x > Rational(1)) throw precondition_error("cell_of outside [0,1]");
    if (x == Rational(1)) return M;
    long i = x.floor_scaled(M) + 1;
    if (i > M) i = M;
    return i;
}

Partition partition_build(unsigned m, unsigned cap) {
    if (m < 1) throw precondition_error("partition level must be >= 1");
    if (m > cap || m > kMaxPartitionLevel)
        throw resource_error("partition level " + std::to_string(m) + " beyond cap " +
                             std::to_string(std::min(cap, kMaxPartitionLevel)));
    Partition P;
    P.m = m;
    P.M = 1L << m;
    P.eta = eta_of_level(m);

    P.a.reserve(P.M + 1);
    for (long i = 0; i <= P.M; ++i) P.a.emplace_back(i, P.M);
    P.c.reserve(P.M);
    for (long i = 1; i <= P.M; ++i) P.c.push_back(midpoint(P.a[i - 1], P.a[i]));

    P.E.reserve(P.M);
    P.F.reserve(P.M);
    for (long i = 1; i <= P.M; ++i) {
        P.E.emplace_back(P.a[i - 1] + P.eta, P.a[i] - P.eta);
        P.F.emplace_back(P.c[i - 1] - P.eta, P.c[i - 1] + P.eta);
    }
    P.H.reserve(P.M + 1);
    P.H.emplace_back(Rational(0), P.eta);
    for (long i = 1; i < P.M; ++i) P.H.emplace_back(P.a[i] - P.eta, P.a[i] + P.eta);
    P.H.emplace_back(Rational(1) - P.eta, Rational(1));

    std::vector<Interval> l, r, g, d;
    for (long i = 1; i <= P.M; ++i) {
        if (i % 2 == 1) {
            l.push_back(P.E[i - 1]);
            g.push_back(P.F[i - 1]);
        } else {
            r.push_back(P.E[i - 1]);
            d.push_back(P.F[i - 1]);
        }
    }
    P.L = CompactSet::normalize(std::move(l));
    P.R = CompactSet::normalize(std::move(r));
    P.G = CompactSet::normalize(std::move(g));
    P.D = CompactSet::normalize(std::move(d));
    P.C = P.c;
    return P;
}

std::shared_ptr<const Partition> partition_cached(unsigned m, unsigned cap) {
    static std::map<unsigned, std::shared_ptr<const Partition>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    auto built = std::make_shared<const Partition>(partition_build(m, cap));
    cache.emplace(m, built);
    return built;
}

Interval fine_f_component(unsigned n, const BigInt& j) {
    Rational eta_n = eta_of_level(n);
    // c_j = (2j-1) / 2^(n+1)
    Rational cj(BigInt(2) * j - BigInt(1), BigInt::pow2(n + 1));
    return Interval(cj - eta_n, cj + eta_n);
}

namespace {

// Component indices j of level-n F-blocks possibly meeting [lo,hi].
std::pair<BigInt, BigInt> fine_index_range(unsigned n, const Rational& lo, const Rational& hi) {
    // c_j in [lo - eta_n, hi + eta_n]  <=>  j in [( (lo-eta)*2^(n+1)+1 )/2, ...]
    Rational eta_n = eta_of_level(n);
    Rational scale = Rational::pow2(static_cast<long>(n) + 1);
    Rational jlo = ((lo - eta_n) * scale + Rational(1)) / Rational(2);
    Rational jhi = ((hi + eta_n) * scale + Rational(1)) / Rational(2);
    BigInt lo_idx = jlo.floor();            // allow one extra on each side
    BigInt hi_idx = jhi.floor() + BigInt(1);
    if (lo_idx < BigInt(1)) lo_idx = BigInt(1);
    BigInt max_idx = BigInt::pow2(n);
    if (hi_idx > max_idx) hi_idx = max_idx;
    return {lo_idx, hi_idx};
}

// Property (5) for a single coarse F-block against level n: all meeting
// components contained, at least one odd and one even component inside.
bool check_components_in(const Interval&blk, unsigned n) {
    auto [jlo, jhi] = fine_index_range(n, blk.lo, blk.hi);
    bool has_odd = false, has_even = false;
    for (BigInt j = jlo; j <= jhi; j += BigInt(1)) {
        Interval comp = fine_f_component(n, j);
        if (!comp.intersects(blk)) continue;
        if (!blk.contains(comp)) return false;
        BigInt parity = j - BigInt(2) * BigInt::fdiv(j, BigInt(2));
        if (parity == BigInt(1))
            has_odd = true;
        else
            has_even = true;
    }
    return has_odd && has_even;
}

} // namespace

bool partition_verify_property5(const Partition& P, unsigned n) {
    if (n < 2 * P.m * (P.m + 1)) return false;
    for (long i = 1; i <= P.M; ++i)
        if (!check_components_in(P.f_block(i), n)) return false;
    return true;
}

PartitionReport partition_verify(const Partition& P) {
    PartitionReport rep;
    const long M = P.M;

    // (1) tiling: H^0 E^1 H^1 ... E^M H^M with exactly shared endpoints
    bool tiling = P.H[0].lo == Rational(0) && P.H[M].hi == Rational(1);
    for (long i = 1; i <= M && tiling; ++i) {
        tiling = P.h_block(i - 1).hi == P.e_block(i).lo && P.e_block(i).hi == P.h_block(i).lo;
    }
    rep.tiling = tiling;

    // (2) F^i in E^i, D in R, G in L
    bool incl = true;
    for (long i = 1; i <= M && incl; ++i) incl = P.e_block(i).contains(P.f_block(i));
    rep.block_inclusions = incl && P.R.contains(P.D) && P.L.contains(P.G);

    // (3) diam H^i < 2^-m (exact rational compare) and
    //     sum_i (diam H^i)^(1/m) < 2^-m via exponent arithmetic:
    //     (M-1)*(2 eta)^(1/m) < 2^(m + (1-2m(m+1))/m) and eta^(1/m) = 2^(-2(m+1));
    //     both exponents are <= -m-1, hence the sum is < 2^-m.
    Rational two_pow_neg_m = Rational::pow2(-static_cast<long>(P.m));
    bool h_ok = true;
    for (long i = 1; i <= M && h_ok; ++i) h_ok = P.h_block(i).diam() < two_pow_neg_m;
    {
        Rational mQ(static_cast<long>(P.m));
        Rational e1 = (Rational(1) - Rational(2L * P.m * (P.m + 1))) / mQ; // (2eta)^(1/m)
        Rational e0 = Rational(-2L * (P.m + 1));                           // eta^(1/m)
        Rational bound = Rational(-static_cast<long>(P.m) - 1);
        h_ok = h_ok && (mQ + e1 <= bound) && (e0 <= bound);
    }
    rep.h_diam_bounds = h_ok;

    // (4) same shape for F; all M components have diam 2*eta
    bool f_ok = true;
    for (long i = 1; i <= M && f_ok; ++i) f_ok = P.f_block(i).diam() < two_pow_neg_m;
    {
        Rational mQ(static_cast<long>(P.m));
        Rational e1 = (Rational(1) - Rational(2L * P.m * (P.m + 1))) / mQ;
        f_ok = f_ok && (mQ + e1 <= Rational(-static_cast<long>(P.m) - 1));
    }
    rep.f_diam_bounds = f_ok;

    // (5) at the threshold level n = 2m(m+1)
    rep.fine_level_components = partition_verify_property5(P, 2 * P.m * (P.m + 1));

    // (6)
    rep.parity_disjoint = CompactSet::intersect(P.L, P.R).empty() &&
                          CompactSet::intersect(P.G, P.D).empty();

    // diam E^i + diam H^i = 1/M; at the right edge H^M is truncated by the
    // interval boundary and the missing eta sits in H^0.
    Rational inv_m(1, M);
    bool diam_ok = true;
    for (long i = 1; i < M && diam_ok; ++i)
        diam_ok = P.e_block(i).diam() + P.h_block(i).diam() == inv_m;
    diam_ok = diam_ok &&
           P.e_block(M).diam() + P.h_block(M).diam() + P.h_block(0).diam() == inv_m;
    rep.diam_identity = diam_ok;

    return rep;
}

BlockRef partition_classify(const Partition& P, const Rational& x) {
    long i = P.cell_of(x);
    if (x == P.center(i)) return {BlockRef::Center, i};
    if (P.f_block(i).contains(x)) return {BlockRef::FBlock, i};
    if (P.e_block(i).contains(x)) return {BlockRef::EBlock, i};
    if (x < P.e_block(i).lo) return {BlockRef::HBlock, i - 1};
    return {BlockRef::HBlock, i};
}

} // namespace slab
