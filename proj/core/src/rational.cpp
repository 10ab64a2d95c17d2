#include "solenoidlab/rational.hpp"

#include "solenoidlab/errors.hpp"

#include <cmath>
#include <cstring>
#include <ostream>

namespace slab {

// ---------------------------------------------------------------- BigInt

BigInt::BigInt(const std::string& s) {
    if (mpz_init_set_str(v_, s.c_str(), 10) != 0) {
        mpz_clear(v_);
        mpz_init(v_);
        throw malformed_input_error("not an integer: '" + s + "'");
    }
}

BigInt BigInt::pow2(unsigned long bits) {
    BigInt r;
    mpz_setbit(r.v_, bits);
    return r;
}

BigInt operator+(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_add(r.v_, a.v_, b.v_);
    return r;
}

BigInt operator-(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_sub(r.v_, a.v_, b.v_);
    return r;
}

BigInt operator*(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_mul(r.v_, a.v_, b.v_);
    return r;
}

BigInt BigInt::operator-() const {
    BigInt r;
    mpz_neg(r.v_, v_);
    return r;
}

BigInt BigInt::fdiv(const BigInt& a, const BigInt& b) {
    if (mpz_sgn(b.v_) <= 0) throw precondition_error("fdiv by non-positive integer");
    BigInt r;
    mpz_fdiv_q(r.v_, a.v_, b.v_);
    return r;
}

long BigInt::to_long() const {
    if (!fits_long()) throw precondition_error("BigInt does not fit in long: " + to_string());
    return mpz_get_si(v_);
}

std::string BigInt::to_string() const {
    char* s = mpz_get_str(nullptr, 10, v_);
    std::string out(s);
    void (*freefn)(void*, size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefn);
    freefn(s, std::strlen(s) + 1);
    return out;
}

std::ostream& operator<<(std::ostream& os, const BigInt& z) { return os << z.to_string(); }

// -------------------------------------------------------------- Rational

Rational::Rational(long num, long den) {
    if (den == 0) throw malformed_input_error("rational with zero denominator");
    mpq_init(v_);
    if (den < 0) {
        num = -num;
        den = -den;
    }
    mpq_set_si(v_, num, static_cast<unsigned long>(den));
    mpq_canonicalize(v_);
}

Rational::Rational(const BigInt& num, const BigInt& den) {
    if (den.sign() == 0) throw malformed_input_error("rational with zero denominator");
    mpq_init(v_);
    mpz_set(mpq_numref(v_), num.raw());
    mpz_set(mpq_denref(v_), den.raw());
    if (den.sign() < 0) {
        mpz_neg(mpq_numref(v_), mpq_numref(v_));
        mpz_neg(mpq_denref(v_), mpq_denref(v_));
    }
    mpq_canonicalize(v_);
}

Rational Rational::parse(const std::string& s) {
    if (s.empty()) throw malformed_input_error("empty rational literal");
    Rational r;
    if (mpq_set_str(r.v_, s.c_str(), 10) != 0)
        throw malformed_input_error("not a rational: '" + s + "'");
    if (mpz_sgn(mpq_denref(r.v_)) == 0)
        throw malformed_input_error("rational with zero denominator: '" + s + "'");
    if (mpz_sgn(mpq_denref(r.v_)) < 0) {
        mpz_neg(mpq_numref(r.v_), mpq_numref(r.v_));
        mpz_neg(mpq_denref(r.v_), mpq_denref(r.v_));
    }
    mpq_canonicalize(r.v_);
    return r;
}

Rational Rational::pow2(long e) {
    Rational r;
    if (e >= 0) {
        mpz_setbit(mpq_numref(r.v_), static_cast<unsigned long>(e));
        // numref starts at 0; setbit makes it exactly 2^e
    } else {
        mpz_set_ui(mpq_numref(r.v_), 1);
        mpz_set_ui(mpq_denref(r.v_), 0);
        mpz_setbit(mpq_denref(r.v_), static_cast<unsigned long>(-e));
    }
    return r;
}

Rational operator+(const Rational& a, const Rational& b) {
    Rational r;
    mpq_add(r.v_, a.v_, b.v_);
    return r;
}

Rational operator-(const Rational& a, const Rational& b) {
    Rational r;
    mpq_sub(r.v_, a.v_, b.v_);
    return r;
}

Rational operator*(const Rational& a, const Rational& b) {
    Rational r;
    mpq_mul(r.v_, a.v_, b.v_);
    return r;
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw precondition_error("rational division by zero");
    Rational r;
    mpq_div(r.v_, a.v_, b.v_);
    return r;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw precondition_error("rational division by zero");
    mpq_div(v_, v_, o.v_);
    return *this;
}

Rational Rational::operator-() const {
    Rational r;
    mpq_neg(r.v_, v_);
    return r;
}

Rational Rational::abs() const {
    Rational r;
    mpq_abs(r.v_, v_);
    return r;
}

BigInt Rational::num() const {
    BigInt z;
    mpz_set(z.raw(), mpq_numref(v_));
    return z;
}

BigInt Rational::den() const {
    BigInt z;
    mpz_set(z.raw(), mpq_denref(v_));
    return z;
}

BigInt Rational::floor() const {
    BigInt z;
    mpz_fdiv_q(z.raw(), mpq_numref(v_), mpq_denref(v_));
    return z;
}

long Rational::floor_scaled(long n) const {
    mpz_t t;
    mpz_init(t);
    mpz_mul_si(t, mpq_numref(v_), n);
    mpz_fdiv_q(t, t, mpq_denref(v_));
    if (!mpz_fits_slong_p(t)) {
        mpz_clear(t);
        throw precondition_error("floor_scaled overflow");
    }
    long out = mpz_get_si(t);
    mpz_clear(t);
    return out;
}

Rational Rational::round_to_dyadic(unsigned long bits) const {
    // round(x * 2^bits) / 2^bits with round-half-toward-zero
    mpz_t scaled, q, r2;
    mpz_init(scaled);
    mpz_init(q);
    mpz_init(r2);
    mpz_mul_2exp(scaled, mpq_numref(v_), bits);
    mpz_tdiv_qr(q, r2, scaled, mpq_denref(v_));
    // round to nearest: |r2|*2 > den -> bump away from zero
    mpz_abs(r2, r2);
    mpz_mul_2exp(r2, r2, 1);
    if (mpz_cmp(r2, mpq_denref(v_)) > 0) {
        if (sign() >= 0)
            mpz_add_ui(q, q, 1);
        else
            mpz_sub_ui(q, q, 1);
    }
    Rational out;
    mpz_set(mpq_numref(out.v_), q);
    if (bits == 0) {
        mpz_set_ui(mpq_denref(out.v_), 1);
    } else {
        mpz_set_ui(mpq_denref(out.v_), 0);
        mpz_setbit(mpq_denref(out.v_), bits);
    }
    mpq_canonicalize(out.v_);
    mpz_clear(scaled);
    mpz_clear(q);
    mpz_clear(r2);
    return out;
}

std::string Rational::to_string() const {
    char* s = mpq_get_str(nullptr, 10, v_);
    std::string out(s);
    void (*freefn)(void*, size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefn);
    freefn(s, std::strlen(s) + 1);
    return out;
}

namespace {
inline size_t mix(size_t h, size_t k) {
    k *= 0x9e3779b97f4a7c15ULL;
    k ^= k >> 32;
    return (h ^ k) * 0xbf58476d1ce4e5b9ULL;
}

size_t hash_mpz(size_t h, const mpz_t z) {
    h = mix(h, static_cast<size_t>(mpz_sgn(z)) + 2);
    size_t n = mpz_size(z);
    const mp_limb_t* limbs = mpz_limbs_read(z);
    for (size_t i = 0; i < n; ++i) h = mix(h, static_cast<size_t>(limbs[i]));
    return h;
}
} // namespace

size_t Rational::hash() const {
    size_t h = 0x243f6a8885a308d3ULL;
    h = hash_mpz(h, mpq_numref(v_));
    h = hash_mpz(h, mpq_denref(v_));
    return h;
}

const Rational& Rational::zero() {
    static const Rational z(0);
    return z;
}

const Rational& Rational::one() {
    static const Rational o(1);
    return o;
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.to_string(); }

// ------------------------------------------------------------------ Pow2

Rational Pow2::to_rational() const {
    if (!exact_rational())
        throw precondition_error("Pow2 with fractional exponent has no exact rational value");
    BigInt e = exponent.num();
    if (!e.fits_long()) throw resource_error("Pow2 exponent too large to expand");
    return Rational::pow2(e.to_long());
}

double Pow2::to_double() const { return std::exp2(exponent.to_double()); }

std::string Pow2::to_string() const { return "2^(" + exponent.to_string() + ")"; }

} // namespace slab
