#include "solenoidlab/symbolic.hpp"

#include "solenoidlab/errors.hpp"

#include <algorithm>
#include <set>

namespace slab {

std::string word_at(size_t n) {
    // words of length L occupy indices [2^L - 2, 2^{L+1} - 2)
    unsigned L = 1;
    size_t block_start = 0;
    while (n - block_start >= (size_t(1) << L)) {
        block_start += size_t(1) << L;
        ++L;
    }
    size_t value = n - block_start;
    std::string w(L, '0');
    for (unsigned b = 0; b < L; ++b)
        if (value >> (L - 1 - b) & 1) w[b] = '1';
    return w;
}

BigInt k_of(unsigned n) {
    if (n > 2 * kMaxSegment + 1) throw resource_error("k_n beyond representable segment cap");
    // doubling-exponent lengths k_0 = 4, k_{n+1} = k_n^2
    return BigInt::pow2(1UL << (n + 1));
}

BigInt a_of(unsigned n) {
    BigInt s(0);
    for (unsigned i = 0; i <= 2 * n; ++i) s += k_of(i);
    return s;
}

BigInt b_of(unsigned n) { return a_of(n) + k_of(2 * n + 1); }

bool BlockPlan::b_block_is_ones(unsigned n) const {
    std::string w = word_at(n);
    for (size_t i = 0; i < w.size(); ++i)
        if ((w[i] == '1' ? 1 : 0) != c_at(i)) return false;
    return true;
}

BlockPlan BlockPlan::parse(const std::string& spec) {
    auto bar = spec.find('|');
    std::string prefix = bar == std::string::npos ? "" : spec.substr(0, bar);
    std::string tail = bar == std::string::npos ? spec : spec.substr(bar + 1);
    if (tail != "0*" && tail != "1*")
        throw malformed_input_error("plan tail must be '0*' or '1*': '" + spec + "'");
    BlockPlan p;
    p.c_tail = tail[0] == '1' ? 1 : 0;
    for (char ch : prefix) {
        if (ch != '0' && ch != '1')
            throw malformed_input_error("plan prefix must be binary: '" + spec + "'");
        p.c_prefix.push_back(ch == '1' ? 1 : 0);
    }
    return p;
}

std::string BlockPlan::to_string() const {
    std::string s;
    for (uint8_t b : c_prefix) s += b ? '1' : '0';
    if (!s.empty()) s += '|';
    s += c_tail ? "1*" : "0*";
    return s;
}

std::vector<SymbolRun> plan_runs(const BlockPlan& plan, const BigInt& end) {
    std::vector<SymbolRun> raw;
    BigInt pos(0);
    auto emit = [&](const BigInt& len, uint8_t sym) {
        if (len.sign() <= 0) return;
        if (!raw.empty() && raw.back().sym == sym) {
            raw.back().len += len;
        } else {
            raw.push_back({pos, len, sym});
        }
        pos += len;
    };
    for (unsigned n = 0; pos < end; ++n) {
        if (n > kMaxSegment)
            throw resource_error("plan horizon exceeds segment cap");
        emit(k_of(2 * n), 0);                                              // A_n
        std::string w = word_at(n);
        uint8_t bsym = plan.b_block_is_ones(n) ? 1 : 0;
        emit(k_of(2 * n + 1) - BigInt(static_cast<long>(w.size())), bsym); // B_n
        for (char ch : w) emit(BigInt(1), ch == '1' ? 1 : 0);              // w_n
    }
    return raw;
}

namespace {

uint8_t symbol_at(const std::vector<SymbolRun>& runs, const BigInt& pos) {
    size_t lo = 0, hi = runs.size();
    while (lo < hi) {
        size_t mid = (lo + hi) / 2;
        if (runs[mid].start <= pos)
            lo = mid + 1;
        else
            hi = mid;
    }
    return runs[lo - 1].sym;
}

bool constant_word(const std::string& v, uint8_t& sym) {
    sym = v[0] == '1' ? 1 : 0;
    for (char ch : v)
        if ((ch == '1' ? 1 : 0) != sym) return false;
    return true;
}

} // namespace

std::string xc_prefix(const BlockPlan& plan, size_t L, size_t cap) {
    if (L > cap)
        throw resource_error("prefix length " + std::to_string(L) +
                             " over materialization cap; use counting instead");
    auto runs = plan_runs(plan, BigInt(static_cast<long>(L)));
    std::string out;
    out.reserve(L);
    for (const auto& r : runs) {
        BigInt remain = BigInt(static_cast<long>(L)) - r.start;
        if (remain.sign() <= 0) break;
        BigInt take = remain < r.len ? remain : r.len;
        out.append(static_cast<size_t>(take.to_long()), r.sym ? '1' : '0');
    }
    return out;
}

BigInt count_occurrences(const BlockPlan& plan, const std::string& v, const BigInt& N,
                         const BigInt& offset) {
    if (v.empty()) throw precondition_error("empty cylinder word");
    if (v.size() > 64) throw precondition_error("cylinder word longer than 64 symbols");
    if (N.sign() <= 0) return BigInt(0);
    const long ell = static_cast<long>(v.size());
    BigInt window_end = offset + N + BigInt(ell); // the window reads ahead
    auto runs = plan_runs(plan, window_end);

    BigInt first = offset;                // inclusive
    BigInt last = offset + N - BigInt(1); // inclusive

    uint8_t sym = 0;
    if (constant_word(v, sym)) {
        BigInt total(0);
        for (const auto& r : runs) {
            if (r.sym != sym) continue;
            // occurrences fully inside this maximal run start in
            // [r.start, r.start + r.len - ell]
            BigInt lo = r.start;
            BigInt hi = r.start + r.len - BigInt(ell);
            if (lo < first) lo = first;
            if (hi > last) hi = last;
            if (lo <= hi) total += hi - lo + BigInt(1);
        }
        return total;
    }

    // A non-constant occurrence must straddle a run boundary; candidate
    // starts sit within ell-1 positions before one.
    std::set<std::string> tested;
    BigInt total(0);
    for (size_t ri = 1; ri < runs.size(); ++ri) {
        const BigInt& p = runs[ri].start;
        for (long d = 1; d < ell; ++d) {
            BigInt j = p - BigInt(d);
            if (j.sign() < 0 || j < first || j > last) continue;
            auto [it, fresh] = tested.insert(j.to_string());
            if (!fresh) continue;
            bool match = true;
            for (long t = 0; t < ell && match; ++t) {
                uint8_t s = symbol_at(runs, j + BigInt(t));
                match = (v[static_cast<size_t>(t)] == '1' ? 1 : 0) == s;
            }
            if (match) total += BigInt(1);
        }
    }
    return total;
}

std::vector<Rational> frequency_schedule(const BlockPlan& plan, const std::string& v,
                                         const std::vector<BigInt>& milestones) {
    std::vector<Rational> out;
    out.reserve(milestones.size());
    for (const auto& N : milestones) out.emplace_back(count_occurrences(plan, v, N), N);
    return out;
}

E1Report verify_E1(unsigned n) {
    E1Report rep;
    rep.a_ratio = Rational(a_of(n), k_of(2 * n));
    rep.b_ratio = Rational(b_of(n), k_of(2 * n + 1));
    Rational one(1);
    Rational a_env = n >= 1 ? one + Rational(BigInt(2), k_of(2 * n - 1)) : Rational(2);
    Rational b_env = one + Rational(BigInt(2), k_of(2 * n));
    rep.a_in_envelope = one <= rep.a_ratio && rep.a_ratio <= a_env;
    rep.b_in_envelope = one <= rep.b_ratio && rep.b_ratio <= b_env;
    return rep;
}

E2Report verify_E2(unsigned n) {
    if (n < 1) throw precondition_error("verify_E2 needs n >= 1");
    E2Report rep;
    BigInt sum(0);
    for (unsigned i = 0; i < n; ++i) sum += k_of(2 * i + 1);
    rep.ratio = Rational(sum, a_of(n));
    rep.bound = Rational(BigInt(2), k_of(2 * n - 1));
    rep.within_bound = rep.ratio <= rep.bound;
    return rep;
}

SigmaSymbolicReport sigma_symbolic(const BlockPlan& plan, unsigned K, unsigned n_max) {
    if (K == 0 || K > 16) throw precondition_error("sigma_symbolic needs 1 <= K <= 16");
    SigmaSymbolicReport rep;
    rep.verdict = true;
    auto add = [&rep](SigmaSymbolicRow row) {
        rep.verdict = rep.verdict && row.satisfied;
        rep.rows.push_back(std::move(row));
    };

    std::string zeros(K, '0');
    for (unsigned n = 1; n <= n_max; ++n) {
        SigmaSymbolicRow row;
        row.cylinder = zeros;
        row.milestone = "a_n";
        row.n = n;
        BigInt an = a_of(n);
        row.frequency = Rational(count_occurrences(plan, zeros, an), an);
        row.bound = Rational(k_of(2 * n) - BigInt(static_cast<long>(K)), an);
        row.satisfied = row.frequency >= row.bound;
        add(std::move(row));
    }

    std::string ones(K, '1');
    for (unsigned n = 0; n <= n_max; ++n) {
        if (!plan.b_block_is_ones(n)) continue;
        SigmaSymbolicRow row;
        row.cylinder = ones;
        row.milestone = "b_n";
        row.n = n;
        BigInt bn = b_of(n);
        long wn = static_cast<long>(word_at(n).size());
        row.frequency = Rational(count_occurrences(plan, ones, bn), bn);
        row.bound = Rational(k_of(2 * n + 1) - BigInt(wn) - BigInt(static_cast<long>(K)), bn);
        row.satisfied = row.frequency >= row.bound;
        add(std::move(row));
    }

    // every non-constant cylinder of length <= K vanishes:
    // count(v, b_n) <= sum_{i<=n} (|w_i| + 2|v|)
    for (unsigned len = 2; len <= K; ++len) {
        for (unsigned long bits = 1; bits + 1 < (1UL << len); ++bits) {
            std::string v;
            for (unsigned b = 0; b < len; ++b) v += (bits >> (len - 1 - b) & 1) ? '1' : '0';
            uint8_t s;
            if (constant_word(v, s)) continue;
            SigmaSymbolicRow row;
            row.cylinder = v;
            row.milestone = "b_n";
            row.n = n_max;
            BigInt bn = b_of(n_max);
            BigInt cnt = count_occurrences(plan, v, bn);
            BigInt bound(0);
            for (unsigned i = 0; i <= n_max; ++i)
                bound += BigInt(static_cast<long>(word_at(i).size() + 2 * v.size()));
            row.frequency = Rational(cnt, bn);
            row.bound = Rational(bound, bn);
            row.satisfied = cnt <= bound;
            add(std::move(row));
        }
    }
    return rep;
}

EssentialSymbolicReport essential_symbolic(
    const std::vector<std::pair<BlockPlan, BigInt>>& family, const std::string& cylinder,
    unsigned n_max, const Rational& eps) {
    if (family.empty()) throw precondition_error("essential_symbolic needs a nonempty family");
    EssentialSymbolicReport rep;
    rep.bounds_hold = true;
    BigInt max_offset(0);
    for (const auto& [plan, off] : family)
        if (off > max_offset) max_offset = off;

    for (unsigned n = 1; n <= n_max; ++n) {
        BigInt an = a_of(n);
        Rational worst(0);
        for (const auto& [plan, off] : family) {
            Rational freq(count_occurrences(plan, cylinder, an, off), an);
            if (freq > worst) worst = freq;
        }
        BigInt ones_bound(0);
        for (unsigned i = 0; i < n; ++i) ones_bound += k_of(2 * i + 1);
        Rational bound(ones_bound + max_offset, an);
        rep.levels.push_back(n);
        rep.max_frequency.push_back(worst);
        rep.bound.push_back(bound);
        rep.bounds_hold = rep.bounds_hold && worst <= bound;
    }
    rep.vanishing = rep.bounds_hold && !rep.bound.empty() && rep.bound.back() < eps &&
                    rep.max_frequency.back() < eps;
    return rep;
}

std::string tent_itinerary(const Rational& x, unsigned n) {
    if (x < Rational(0) || x > Rational(1))
        throw precondition_error("itinerary point outside [0,1]");
    std::string out;
    out.reserve(n);
    Rational half(1, 2), two(2);
    Rational y = x;
    for (unsigned i = 0; i < n; ++i) {
        if (y <= half) {
            out += '0';
            y = two * y;
        } else {
            out += '1';
            y = two - two * y;
        }
    }
    return out;
}

Interval cylinder_to_interval(const std::string& w) {
    if (w.empty()) return Interval(Rational(0), Rational(1));
    Rational lo(0), hi(1);
    Rational half(1, 2), one(1);
    for (size_t i = w.size(); i-- > 0;) {
        if (w[i] == '0') {
            // pull back through the rising branch x -> 2x
            lo = lo * half;
            hi = hi * half;
        } else if (w[i] == '1') {
            // pull back through the falling branch x -> 2-2x
            Rational nlo = one - hi * half;
            Rational nhi = one - lo * half;
            lo = nlo;
            hi = nhi;
        } else {
            throw malformed_input_error("cylinder word must be binary");
        }
    }
    return Interval(lo, hi);
}

} // namespace slab
