#include "solenoidlab/perturbation.hpp"

#include "solenoidlab/errors.hpp"

#include <algorithm>
#include <set>

namespace slab {

namespace {

Rational pow_rat(const Rational& x, unsigned k) {
    Rational r(1);
    for (unsigned i = 0; i < k; ++i) r *= x;
    return r;
}

Rational geometric_sum(const Rational& theta, unsigned K) {
    // sum_{i<K} theta^i
    Rational s(0), p(1);
    for (unsigned i = 0; i < K; ++i) {
        s += p;
        p *= theta;
    }
    return s;
}

InequalityRecord record(std::string name, Rational lhs, Rational rhs, bool strict = true) {
    InequalityRecord r;
    r.name = std::move(name);
    r.holds = strict ? lhs < rhs : lhs <= rhs;
    r.lhs = std::move(lhs);
    r.rhs = std::move(rhs);
    r.strict = strict;
    return r;
}

// A point u strictly inside (lo, hi) with sign(q(u)) = want and |q(u)| > need,
// where q(x) = fK(x) - x. Candidates: interior nodes of q plus geometric
// approaches to both window endpoints (q is PL, so values near an endpoint
// converge to its one-sided value).
bool window_witness(const PLMap& fK, const Rational& lo, const Rational& hi, int want,
                    const Rational& need) {
    if (!(lo < hi)) return false;
    auto q = [&](const Rational& x) { return fK.eval(x) - x; };
    auto good = [&](const Rational& x) {
        Rational v = q(x);
        return v.sign() == want && v.abs() > need;
    };
    const auto& bp = fK.breakpoints();
    for (size_t i = fK.piece_index(lo) + 1; i < bp.size() && bp[i] < hi; ++i)
        if (bp[i] > lo && good(bp[i])) return true;
    Rational step = hi - lo;
    for (int t = 1; t <= 64; ++t) {
        step = step * Rational(1, 2);
        if (good(lo + step) || good(hi - step)) return true;
    }
    return false;
}

// Exact min of |fK(x) - x| over [lo, hi]; zero when the sign changes.
Rational min_abs_fixed_defect(const PLMap& fK, const Rational& lo, const Rational& hi) {
    auto q = [&](const Rational& x) { return fK.eval(x) - x; };
    Rational prev = q(lo);
    Rational best = prev.abs();
    int prev_sign = prev.sign();
    auto visit = [&](const Rational& x) {
        Rational v = q(x);
        if (prev_sign != 0 && v.sign() != 0 && v.sign() != prev_sign) best = Rational(0);
        prev_sign = v.sign();
        if (v.abs() < best) best = v.abs();
    };
    const auto& bp = fK.breakpoints();
    for (size_t i = fK.piece_index(lo) + 1; i < bp.size() && bp[i] < hi; ++i)
        if (bp[i] > lo) visit(bp[i]);
    if (hi > lo) visit(hi);
    return best;
}

struct GammaCert {
    bool brackets = false;
    Rational complement_margin; // min |fK - id| off the fix neighborhoods
    bool no_new_fixed = false;
};

GammaCert certify_gamma(const PLMap& fK, const PointSet& fix, const Rational& gammaS,
                        const Rational& radius) {
    GammaCert cert;
    cert.brackets = true;
    for (const auto& y : fix) {
        Rational llo = Rational::max(Rational(0), y - radius);
        Rational rhi = Rational::min(Rational(1), y + radius);
        bool pos_neg =
            window_witness(fK, llo, y, +1, gammaS) && window_witness(fK, y, rhi, -1, gammaS);
        bool neg_pos =
            window_witness(fK, llo, y, -1, gammaS) && window_witness(fK, y, rhi, +1, gammaS);
        if (!pos_neg && !neg_pos) {
            cert.brackets = false;
            break;
        }
    }
    std::vector<Interval> neigh;
    neigh.reserve(fix.size());
    for (const auto& y : fix) neigh.push_back(clamped_interval(y - radius, y + radius));
    CompactSet complement = CompactSet::normalize(std::move(neigh)).complement();
    Rational margin(2); // above any possible defect
    for (const auto& part : complement.parts()) {
        Rational m = min_abs_fixed_defect(fK, part.lo, part.hi);
        if (m < margin) margin = m;
    }
    cert.complement_margin = margin;
    cert.no_new_fixed = margin > gammaS;
    return cert;
}

// Exact orbit-tube containment: the K forward images of the delta-tube
// around each point of Fix(f^K) stay alpha-close to the orbit. Returns the
// worst deviation.
Rational orbit_tube_deviation(const PLMap& f, const PointSet& fix, unsigned K,
                              const Rational& delta) {
    Rational worst(0);
    for (const auto& y : fix) {
        Interval tube = clamped_interval(y - delta, y + delta);
        Rational point = y;
        Rational dev = Rational::max((tube.lo - point).abs(), (tube.hi - point).abs());
        if (dev > worst) worst = dev;
        for (unsigned i = 1; i <= K; ++i) {
            tube = f.image_interval(tube);
            point = f.eval(point);
            dev = Rational::max((point - tube.lo).abs(), (tube.hi - point).abs());
            if (dev > worst) worst = dev;
        }
    }
    return worst;
}

PointSet crit_of_power(const PLMap& fK) {
    PointSet crit = fK.critical_points();
    crit.insert(crit.begin(), Rational(0));
    crit.push_back(Rational(1));
    return crit;
}

} // namespace

bool ParamSet::all_hold() const {
    for (const auto& c : certificates)
        if (!c.holds) return false;
    return true;
}

const InequalityRecord* ParamSet::find(const std::string& name) const {
    for (const auto& c : certificates)
        if (c.name == name) return &c;
    return nullptr;
}

FKVerdict validate_FK(const PLMap& f, unsigned K) {
    FKVerdict v;
    v.pass = true;
    auto fail = [&v](std::string why) {
        v.pass = false;
        v.failures.push_back(std::move(why));
    };
    if (f.min_abs_slope() < Rational(3))
        fail("a piece has |slope| " + f.min_abs_slope().to_string() + " < 3");
    for (const auto& c : f.critical_points()) {
        Rational x = c;
        for (unsigned k = 1; k <= K; ++k) {
            x = f.eval(x);
            if (x == c) {
                fail("critical point " + c.to_string() + " is " + std::to_string(k) +
                     "-periodic");
                break;
            }
        }
    }
    Rational x0(0);
    for (unsigned k = 1; k <= K; ++k) {
        x0 = f.eval(x0);
        if (x0.is_zero()) {
            fail("endpoint 0 returns after " + std::to_string(k) + " steps");
            break;
        }
    }
    Rational x1(1);
    for (unsigned k = 1; k <= K; ++k) {
        x1 = f.eval(x1);
        if (x1 == Rational(1)) {
            fail("endpoint 1 returns after " + std::to_string(k) + " steps");
            break;
        }
    }
    return v;
}

ParamSet select_params(const PLMap& f, unsigned K, const Rational& gamma0,
                       unsigned partition_cap, size_t piece_cap) {
    if (K == 0) throw precondition_error("select_params needs K >= 1");
    if (gamma0.sign() <= 0) throw precondition_error("gamma budget must be positive");
    FKVerdict fk = validate_FK(f, K);
    if (!fk.pass) {
        std::string why = "seed map outside the order-" + std::to_string(K) + " class:";
        for (const auto& r : fk.failures) why += " " + r + ";";
        throw precondition_error(why);
    }

    ParamSet P;
    P.K = K;
    P.gamma0 = gamma0;
    P.theta = f.max_slope();

    PLMap fK = f.power(K, piece_cap);
    PointSet fix = fK.fixed_points_of_power(1, piece_cap);
    PointSet crit = crit_of_power(fK);
    if (fix.empty()) throw construction_error("degenerate seed: no K-periodic points");

    const Rational S = geometric_sum(P.theta, K);
    const Rational radius(1, 4 * static_cast<long>(K));
    // certify at a strictly smaller radius so closed covers still give a
    // strict Hausdorff bound
    const Rational radius_cert = radius * Rational(15, 16);

    // shrink gamma until the fix-stability implication certifies
    P.gamma = gamma0;
    GammaCert gcert;
    bool ok = false;
    for (int it = 0; it < 64; ++it) {
        gcert = certify_gamma(fK, fix, P.gamma * S, radius_cert);
        Rational expansion_margin = pow_rat(Rational(3), K) - Rational(1);
        bool headline = P.gamma * S / expansion_margin < radius;
        if (gcert.brackets && gcert.no_new_fixed && headline) {
            ok = true;
            break;
        }
        P.gamma = P.gamma * Rational(1, 2);
    }
    if (!ok) throw construction_error("could not certify a positive gamma for this seed");

    P.beta = point_set_hausdorff(fix, crit) * Rational(1, 2);
    Rational cap_alpha = Rational::min(
        P.beta, Rational::min(P.gamma * Rational(1, 2), Rational(1, static_cast<long>(K))));
    P.alpha = cap_alpha * Rational(9, 10);
    P.delta = P.alpha / (Rational(8) * pow_rat(P.theta, K));

    // exact re-check of the orbit-tube property; shrink delta if ever needed
    Rational tube_dev = orbit_tube_deviation(f, fix, K, P.delta);
    for (int it = 0; it < 40 && !(tube_dev < P.alpha); ++it) {
        P.delta = P.delta * Rational(1, 2);
        tube_dev = orbit_tube_deviation(f, fix, K, P.delta);
    }
    if (!(tube_dev < P.alpha))
        throw construction_error("orbit tubes do not contract; seed too wild");

    // smallest level with all block inequalities
    const Rational steep = Rational(2) * P.theta + Rational(3);
    bool found_m = false;
    for (unsigned m = K + 1; m <= partition_cap && m <= kMaxPartitionLevel; ++m) {
        Rational M = Rational::pow2(static_cast<long>(m));
        bool b1 = Rational(4) / M < P.delta * Rational(1, 4);
        bool b2 = Rational(4) / (Rational(static_cast<long>(K)) * P.alpha) < M;
        bool b3 = steep / M < P.alpha * Rational(1, 4);
        bool b4 = steep / M < P.delta;
        if (b1 && b2 && b3 && b4) {
            P.m_K = m;
            found_m = true;
            break;
        }
    }
    if (!found_m)
        throw resource_error("no partition level within cap satisfies the block inequalities");
    P.M_K = 1L << P.m_K;
    P.eta = Rational::pow2(-2L * P.m_K * (P.m_K + 1));
    Rational half_diam_e = (Rational(1, P.M_K) - Rational(2) * P.eta) * Rational(1, 2);
    P.rho = Rational::min(P.eta, half_diam_e) * Rational(1, 2);

    Rational M(P.M_K);
    P.certificates = {
        record("gamma_budget", P.gamma, gamma0, false),
        record("gamma_hyperbolicity", P.gamma * S / (pow_rat(Rational(3), K) - Rational(1)),
               radius),
        record("gamma_fix_brackets", P.gamma * S,
               gcert.brackets ? P.gamma * S + Rational(1) : Rational(0)),
        record("gamma_no_new_fixed_points", P.gamma * S, gcert.complement_margin),
        record("beta_positive", Rational(0), P.beta),
        record("alpha_lt_beta", P.alpha, P.beta),
        record("alpha_lt_half_gamma", P.alpha, P.gamma * Rational(1, 2)),
        record("alpha_lt_inv_K", P.alpha, Rational(1, static_cast<long>(K))),
        record("delta_lt_alpha", P.delta, P.alpha),
        record("tracking_i_slope_chain", pow_rat(P.theta, K) * P.delta,
               P.alpha * Rational(1, 4)),
        record("tracking_ii_orbit_tubes", tube_dev, P.alpha),
        record("tracking_iii_pseudo_orbits", S * P.delta, P.alpha * Rational(1, 4)),
        record("blocks_diam", Rational(4) / M, P.delta * Rational(1, 4)),
        record("blocks_M_large", Rational(4) / (Rational(static_cast<long>(K)) * P.alpha), M),
        record("blocks_theta", steep / M, P.alpha * Rational(1, 4)),
        record("tilde_gap_below_delta", steep / M, P.delta),
        record("rho_lt_eta", P.rho, P.eta),
        record("rho_lt_half_diam_E", P.rho, half_diam_e),
        record("rho_lt_quarter_gamma", P.rho, P.gamma * Rational(1, 4)),
    };
    if (!P.all_hold()) throw construction_error("parameter certificates failed after selection");
    return P;
}

std::vector<InequalityRecord> verify_params(const PLMap& f, const ParamSet& P,
                                            size_t piece_cap) {
    PLMap fK = f.power(P.K, piece_cap);
    PointSet fix = fK.fixed_points_of_power(1, piece_cap);
    PointSet crit = crit_of_power(fK);
    Rational theta = f.max_slope();
    Rational S = geometric_sum(theta, P.K);
    Rational radius(1, 4 * static_cast<long>(P.K));
    GammaCert gcert = certify_gamma(fK, fix, P.gamma * S, radius * Rational(15, 16));
    Rational tube_dev = orbit_tube_deviation(f, fix, P.K, P.delta);
    Rational steep = Rational(2) * theta + Rational(3);
    Rational M(P.M_K);
    Rational eta = Rational::pow2(-2L * P.m_K * (P.m_K + 1));
    Rational half_diam_e = (Rational(1, P.M_K) - Rational(2) * eta) * Rational(1, 2);

    auto equality = [](std::string name, Rational lhs, Rational rhs) {
        InequalityRecord r;
        r.name = std::move(name);
        r.holds = lhs == rhs;
        r.lhs = std::move(lhs);
        r.rhs = std::move(rhs);
        r.strict = false;
        return r;
    };

    std::vector<InequalityRecord> out = {
        equality("theta_matches", theta, P.theta),
        equality("beta_matches", point_set_hausdorff(fix, crit) * Rational(1, 2), P.beta),
        equality("eta_matches", eta, P.eta),
        record("gamma_budget", P.gamma, P.gamma0, false),
        record("gamma_hyperbolicity", P.gamma * S / (pow_rat(Rational(3), P.K) - Rational(1)),
               radius),
        record("gamma_fix_brackets", P.gamma * S,
               gcert.brackets ? P.gamma * S + Rational(1) : Rational(0)),
        record("gamma_no_new_fixed_points", P.gamma * S, gcert.complement_margin),
        record("alpha_lt_beta", P.alpha, P.beta),
        record("alpha_lt_half_gamma", P.alpha, P.gamma * Rational(1, 2)),
        record("alpha_lt_inv_K", P.alpha, Rational(1, static_cast<long>(P.K))),
        record("delta_lt_alpha", P.delta, P.alpha),
        record("tracking_i_slope_chain", pow_rat(theta, P.K) * P.delta,
               P.alpha * Rational(1, 4)),
        record("tracking_ii_orbit_tubes", tube_dev, P.alpha),
        record("tracking_iii_pseudo_orbits", S * P.delta, P.alpha * Rational(1, 4)),
        record("blocks_diam", Rational(4) / M, P.delta * Rational(1, 4)),
        record("blocks_M_large", Rational(4) / (Rational(static_cast<long>(P.K)) * P.alpha),
               M),
        record("blocks_theta", steep / M, P.alpha * Rational(1, 4)),
        record("tilde_gap_below_delta", steep / M, P.delta),
        record("rho_lt_eta", P.rho, eta),
        record("rho_lt_half_diam_E", P.rho, half_diam_e),
        record("rho_lt_quarter_gamma", P.rho, P.gamma * Rational(1, 4)),
    };
    return out;
}

long nearest_center(const Partition& P, const Rational& v, int parity) {
    Rational jr = v * Rational(P.M) + Rational(1, 2);
    BigInt jf = jr.floor();
    long j0 = jf.fits_long() ? jf.to_long() : P.M;
    long best = -1;
    Rational best_dist(2);
    for (long j = j0 - 3; j <= j0 + 3; ++j) {
        if (j < 1 || j > P.M) continue;
        if (parity == 1 && j % 2 == 0) continue;
        if (parity == 2 && j % 2 == 1) continue;
        Rational d = (P.center(j) - v).abs();
        if (best < 0 || d < best_dist) {
            best = j;
            best_dist = d;
        }
    }
    if (best < 0) throw construction_error("no center of the requested parity near " +
                                           v.to_string());
    return best;
}

TildeResult build_tilde(const PLMap& f, const Partition& P, const ParamSet& params) {
    if (P.m != params.m_K)
        throw precondition_error("partition level does not match the selected parameters");
    TildeResult out{PLMap::identity(), {}, Rational(0), Rational(0)};
    out.targets.assign(static_cast<size_t>(P.M) + 1, 0);

    std::vector<Rational> bp;
    std::vector<Rational> val;
    bp.reserve(2 * static_cast<size_t>(P.M) + 2);
    val.reserve(2 * static_cast<size_t>(P.M) + 2);

    long j0 = nearest_center(P, f.eval(Rational(0)), 0);
    bp.emplace_back(0);
    val.push_back(P.center(j0));

    Rational max_move(0);
    for (long i = 1; i <= P.M; ++i) {
        Rational fc = f.eval(P.center(i));
        long j = nearest_center(P, fc, i % 2 == 0 ? 2 : 1);
        out.targets[static_cast<size_t>(i)] = j;
        Rational move = (P.center(j) - fc).abs();
        if (move > max_move) max_move = move;
        bp.push_back(P.e_block(i).lo);
        bp.push_back(P.e_block(i).hi);
        val.push_back(P.center(j));
        val.push_back(P.center(j));
    }
    long j1 = nearest_center(P, f.eval(Rational(1)), 0);
    bp.emplace_back(1);
    val.push_back(P.center(j1));

    out.map = PLMap(std::move(bp), std::move(val));
    out.max_center_move = max_move;
    if (!(max_move <= Rational(1, P.M)))
        throw certificate_error("center drift " + max_move.to_string() + " above 1/M");
    out.sup_from_seed = PLMap::sup_distance(f, out.map);
    if (!(out.sup_from_seed <= params.alpha * Rational(1, 4)))
        throw certificate_error("||f - tilde|| = " + out.sup_from_seed.to_string() +
                                " exceeds alpha/4; partition level too coarse");
    return out;
}

HatResult build_hat(const PLMap& f, const TildeResult& tilde, const ParamSet& params,
                    const Partition& P) {
    PLMap fK = f.power(params.K);
    PointSet fix = fK.fixed_points_of_power(1);
    if (fix.empty()) throw construction_error("seed has no K-periodic points to pin");

    std::vector<PinRecord> pins;
    std::set<std::string> visited;
    std::set<long> used_blocks;

    for (const auto& y : fix) {
        if (visited.count(y.to_string())) continue;
        visited.insert(y.to_string());
        // orbit of y under f; its length is the prime period
        std::vector<Rational> orbit{y};
        Rational x = f.eval(y);
        while (x != y) {
            orbit.push_back(x);
            visited.insert(x.to_string());
            x = f.eval(x);
            if (orbit.size() > params.K)
                throw construction_error("orbit of a K-periodic point failed to close");
        }
        unsigned p = static_cast<unsigned>(orbit.size());

        // i_0: nearest E-block fully inside the open delta-tube around y
        Rational lo = Rational::max(Rational(0), y - params.delta);
        Rational hi = Rational::min(Rational(1), y + params.delta);
        long best = -1;
        Rational best_dist(2);
        for (long i = P.cell_of(lo); i <= P.cell_of(hi); ++i) {
            const Interval& E = P.e_block(i);
            if (!(E.lo > y - params.delta && E.hi < y + params.delta)) continue;
            Rational d(0);
            if (y < E.lo)
                d = E.lo - y;
            else if (y > E.hi)
                d = y - E.hi;
            if (best < 0 || d < best_dist) {
                best = i;
                best_dist = d;
            }
        }
        if (best < 0)
            throw construction_error("no E-block inside the delta-tube around " +
                                     y.to_string());

        PinRecord pin;
        pin.y = y;
        pin.p = p;
        pin.target = P.center(best);
        pin.indices.push_back(best);
        Rational cx = pin.target;
        for (unsigned j = 1; j < p; ++j) {
            cx = tilde.map.eval(cx);
            long cell = P.cell_of(cx);
            if (P.center(cell) != cx)
                throw construction_error("image of a center under the block map is not a center");
            pin.indices.push_back(cell);
        }
        std::set<long> uniq(pin.indices.begin(), pin.indices.end());
        if (uniq.size() != pin.indices.size())
            throw construction_error(
                "center orbit revisits a block before closing; raise the partition level");
        for (long idx : pin.indices)
            if (!used_blocks.insert(idx).second)
                throw construction_error("pins collide on block " + std::to_string(idx) +
                                         "; raise the partition level");
        pin.pinned_block = pin.indices.back();
        pins.push_back(std::move(pin));
    }

    // redefine the map on each pinned E-block; the H-pieces between nodes
    // re-interpolate automatically
    std::vector<Rational> val = tilde.map.values();
    for (const auto& pin : pins) {
        size_t a = static_cast<size_t>(2 * pin.pinned_block - 1);
        val[a] = pin.target;
        val[a + 1] = pin.target;
    }
    HatResult out{PLMap(tilde.map.breakpoints(), std::move(val)), std::move(pins),
                  Rational(0), Rational(0)};

    for (const auto& pin : out.pins) {
        if (out.map.prime_period(pin.target, params.K) != pin.p)
            throw certificate_error("pinned center does not carry the source prime period");
    }
    out.tilde_distance = PLMap::sup_distance(tilde.map, out.map);
    Rational tilde_bound = params.alpha * Rational(1, 2) + Rational(1, params.M_K);
    if (!(out.tilde_distance <= tilde_bound))
        throw certificate_error("||tilde - hat|| = " + out.tilde_distance.to_string() +
                                " exceeds alpha/2 + 1/M");
    out.seed_distance = PLMap::sup_distance(f, out.map);
    if (!(out.seed_distance <= params.alpha))
        throw certificate_error("||f - hat|| = " + out.seed_distance.to_string() +
                                " exceeds alpha");
    return out;
}

std::vector<long> block_targets(const PLMap& g, const Partition& P) {
    std::vector<long> targets(static_cast<size_t>(P.M) + 1, 0);
    for (long i = 1; i <= P.M; ++i) {
        Interval img = g.image_interval(P.e_block(i));
        long j = P.cell_of(img.lo);
        if (!P.f_block(j).contains(img))
            throw certificate_error(
                "image of an E-block is not inside a single F-block (block " +
                std::to_string(i) + ")");
        targets[static_cast<size_t>(i)] = j;
    }
    return targets;
}

FixgReport verify_fixg(const PLMap& g, const PLMap& hat, const ParamSet& params,
                       const Partition& P, const std::vector<PinRecord>& pins,
                       size_t piece_cap) {
    FixgReport rep;
    rep.distance = PLMap::sup_distance(g, hat);
    rep.in_ball = rep.distance < params.rho;
    if (!rep.in_ball) {
        rep.failures.push_back("||g - hat|| = " + rep.distance.to_string() +
                               " is not below rho");
        return rep;
    }
    rep.e_into_f = true;
    try {
        block_targets(g, P);
    } catch (const certificate_error& e) {
        rep.e_into_f = false;
        rep.failures.emplace_back(e.what());
    }
    rep.images_contract = true;
    rep.fixed_points_present = true;
    for (const auto& pin : pins) {
        for (long idx : pin.indices) {
            Interval J = P.e_block(idx);
            for (unsigned k = 0; k < params.K; ++k) J = g.image_interval(J);
            if (!P.f_block(idx).contains(J)) {
                rep.images_contract = false;
                rep.failures.push_back("g^K image of block " + std::to_string(idx) +
                                       " leaves its F-block");
            }
            PointSet roots = g.fixed_points_of_power_in(params.K, P.e_block(idx), piece_cap);
            if (roots.empty()) {
                rep.fixed_points_present = false;
                rep.failures.push_back("Fix(g^K) misses block " + std::to_string(idx));
            }
        }
    }
    return rep;
}

PLMap saw_approximate(const PLMap& f, const Rational& eps, unsigned K, size_t piece_cap) {
    if (eps.sign() <= 0) throw precondition_error("saw_approximate needs eps > 0");
    if (validate_FK(f, K).pass) return f;

    const Rational three(3);
    const Rational sigma_pad(7, 2); // tooth arms keep a half-unit margin over 3
    const Rational a_nom = Rational::min(eps * Rational(1, 4), Rational(1, 8));
    const Rational squeeze = Rational(1) - Rational(2) * a_nom;

    // squeeze the range into [a, 1-a] so alternating tips always fit, then
    // overlay a zigzag with tip amplitude a on every remaining shallow piece
    std::vector<Rational> base_vals;
    base_vals.reserve(f.values().size());
    for (const auto& v : f.values()) base_vals.push_back(squeeze * v + a_nom);

    auto scaled_slope = [&](size_t piece) { return (f.slopes()[piece] * squeeze).abs(); };
    auto tooth_count = [&](size_t piece) {
        Rational s = scaled_slope(piece);
        Rational sigma = s + sigma_pad;
        Rational W = f.breakpoints()[piece + 1] - f.breakpoints()[piece];
        Rational teeth = W * sigma / (Rational(2) * a_nom);
        return teeth.floor() + BigInt(1);
    };

    // exact piece budget before building anything
    BigInt budget(0);
    for (size_t p = 0; p + 1 < f.breakpoints().size(); ++p) {
        if (scaled_slope(p) >= three)
            budget += BigInt(1);
        else
            budget += tooth_count(p) + BigInt(1);
    }
    if (budget > BigInt(static_cast<long>(piece_cap)))
        throw resource_error("sawtooth overlay needs " + budget.to_string() +
                             " pieces, above the piece cap " + std::to_string(piece_cap));

    PLMap base(f.breakpoints(), base_vals);
    for (int retry = 0; retry < 12; ++retry) {
        std::vector<Rational> bp;
        std::vector<Rational> val;
        bp.emplace_back(0);
        val.push_back(base.values().front());
        bool saw_all = retry >= 6; // stubborn recurrences: jiggle steep pieces too
        for (size_t p = 0; p + 1 < f.breakpoints().size(); ++p) {
            const Rational& u = f.breakpoints()[p];
            const Rational& v = f.breakpoints()[p + 1];
            Rational s_abs = scaled_slope(p);
            if (s_abs >= three && !saw_all) {
                bp.push_back(v);
                val.push_back(base.values()[p + 1]);
                continue;
            }
            Rational sigma = s_abs + sigma_pad;
            BigInt nb = tooth_count(p) + BigInt(retry % 6);
            if (!nb.fits_long()) throw resource_error("tooth count overflow");
            long T = nb.to_long();
            Rational W = v - u;
            Rational w = W / Rational(2 * T);
            Rational amp = sigma * w;
            int sign = +1;
            for (long t = 0; t < T; ++t) {
                Rational xt = u + w * Rational(2 * t + 1);
                Rational tip = base.eval(xt) + (sign > 0 ? amp : -amp);
                bp.push_back(xt);
                val.push_back(tip);
                sign = -sign;
            }
            bp.push_back(v);
            val.push_back(base.values()[p + 1]);
        }
        if (retry >= 4) {
            // nudge endpoint values to break exact endpoint recurrences;
            // scaled by the adjacent segment widths so arm slopes keep
            // their margin over 3
            Rational w_first = bp[1] - bp[0];
            Rational w_last = bp[bp.size() - 1] - bp[bp.size() - 2];
            Rational nu = Rational::min(a_nom, Rational::min(w_first, w_last)) * Rational(1, 8);
            if (val.front() + nu <= Rational(1))
                val.front() += nu;
            else
                val.front() -= nu;
            if (val.back() + nu <= Rational(1))
                val.back() += nu;
            else
                val.back() -= nu;
        }
        PLMap h(bp, val);
        if (!validate_FK(h, K).pass) continue;
        Rational dist = PLMap::sup_distance(f, h);
        if (dist <= eps) return h;
    }
    throw construction_error(
        "sawtooth retries exhausted without reaching the seed class inside the budget");
}

} // namespace slab
