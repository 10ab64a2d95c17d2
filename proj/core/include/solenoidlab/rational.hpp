// Exact arbitrary-precision rationals and integers on top of GMP.
//
// Rational is always canonical: reduced, positive denominator. It carries
// every exact quantity in the library (breakpoints, block endpoints,
// perturbation parameters, Hausdorff distances). BigInt backs the symbolic
// counting where horizons like 2^1024 appear.
#pragma once

#include <gmp.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>

namespace slab {

class BigInt {
public:
    BigInt() { mpz_init(v_); }
    BigInt(long n) { mpz_init_set_si(v_, n); } // NOLINT: implicit by design
    explicit BigInt(const std::string& s);
    BigInt(const BigInt& o) { mpz_init_set(v_, o.v_); }
    BigInt(BigInt&& o) noexcept {
        mpz_init(v_);
        mpz_swap(v_, o.v_);
    }
    BigInt& operator=(const BigInt& o) {
        if (this != &o) mpz_set(v_, o.v_);
        return *this;
    }
    BigInt& operator=(BigInt&& o) noexcept {
        mpz_swap(v_, o.v_);
        return *this;
    }
    ~BigInt() { mpz_clear(v_); }

    // 2^bits
    static BigInt pow2(unsigned long bits);

    friend BigInt operator+(const BigInt& a, const BigInt& b);
    friend BigInt operator-(const BigInt& a, const BigInt& b);
    friend BigInt operator*(const BigInt& a, const BigInt& b);
    BigInt& operator+=(const BigInt& o) {
        mpz_add(v_, v_, o.v_);
        return *this;
    }
    BigInt& operator-=(const BigInt& o) {
        mpz_sub(v_, v_, o.v_);
        return *this;
    }
    BigInt& operator*=(const BigInt& o) {
        mpz_mul(v_, v_, o.v_);
        return *this;
    }
    BigInt operator-() const;

    // floor(a / b), b > 0
    static BigInt fdiv(const BigInt& a, const BigInt& b);

    int cmp(const BigInt& o) const { return mpz_cmp(v_, o.v_); }
    friend bool operator==(const BigInt& a, const BigInt& b) { return a.cmp(b) == 0; }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return a.cmp(b) != 0; }
    friend bool operator<(const BigInt& a, const BigInt& b) { return a.cmp(b) < 0; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return a.cmp(b) <= 0; }
    friend bool operator>(const BigInt& a, const BigInt& b) { return a.cmp(b) > 0; }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return a.cmp(b) >= 0; }

    int sign() const { return mpz_sgn(v_); }
    bool fits_long() const { return mpz_fits_slong_p(v_) != 0; }
    long to_long() const;
    double to_double() const { return mpz_get_d(v_); }
    std::string to_string() const;
    size_t bit_size() const { return mpz_sizeinbase(v_, 2); }

    const mpz_t& raw() const { return v_; }
    mpz_t& raw() { return v_; }

private:
    mpz_t v_;
};

std::ostream& operator<<(std::ostream& os, const BigInt& z);

class Rational {
public:
    Rational() { mpq_init(v_); }
    Rational(long n) { // NOLINT: implicit by design
        mpq_init(v_);
        mpq_set_si(v_, n, 1);
    }
    Rational(long num, long den);
    Rational(const BigInt& num, const BigInt& den);
    explicit Rational(const std::string& s) : Rational(parse(s)) {}
    Rational(const Rational& o) {
        mpq_init(v_);
        mpq_set(v_, o.v_);
    }
    Rational(Rational&& o) noexcept {
        mpq_init(v_);
        mpq_swap(v_, o.v_);
    }
    Rational& operator=(const Rational& o) {
        if (this != &o) mpq_set(v_, o.v_);
        return *this;
    }
    Rational& operator=(Rational&& o) noexcept {
        mpq_swap(v_, o.v_);
        return *this;
    }
    ~Rational() { mpq_clear(v_); }

    // Accepts "p", "p/q", optional leading '-'. Throws malformed_input_error.
    static Rational parse(const std::string& s);

    // 2^e for any integer e (negative exponents give 1/2^|e|).
    static Rational pow2(long e);

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational& operator+=(const Rational& o) {
        mpq_add(v_, v_, o.v_);
        return *this;
    }
    Rational& operator-=(const Rational& o) {
        mpq_sub(v_, v_, o.v_);
        return *this;
    }
    Rational& operator*=(const Rational& o) {
        mpq_mul(v_, v_, o.v_);
        return *this;
    }
    Rational& operator/=(const Rational& o);
    Rational operator-() const;

    int cmp(const Rational& o) const { return mpq_cmp(v_, o.v_); }
    friend bool operator==(const Rational& a, const Rational& b) {
        return mpq_equal(a.v_, b.v_) != 0;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return a.cmp(b) < 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.cmp(b) <= 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.cmp(b) > 0; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.cmp(b) >= 0; }

    int sign() const { return mpq_sgn(v_); }
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const { return mpz_cmp_ui(mpq_denref(v_), 1) == 0; }

    Rational abs() const;
    BigInt num() const;
    BigInt den() const;

    // floor(*this); and floor(*this * n) for non-negative *this, n > 0.
    BigInt floor() const;
    long floor_scaled(long n) const;

    // Total bits in numerator+denominator; cheap size probe for the
    // orbit engine's precision cap.
    size_t bit_size() const {
        return mpz_sizeinbase(mpq_numref(v_), 2) + mpz_sizeinbase(mpq_denref(v_), 2);
    }

    // Nearest rational of the form k/2^bits (ties toward zero).
    Rational round_to_dyadic(unsigned long bits) const;

    double to_double() const { return mpq_get_d(v_); }
    std::string to_string() const;
    size_t hash() const;

    static const Rational& zero();
    static const Rational& one();
    static Rational min(const Rational& a, const Rational& b) { return a <= b ? a : b; }
    static Rational max(const Rational& a, const Rational& b) { return a >= b ? a : b; }

    const mpq_t& raw() const { return v_; }
    mpq_t& raw() { return v_; }

private:
    mpq_t v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& q);

inline Rational midpoint(const Rational& a, const Rational& b) {
    return (a + b) * Rational(1, 2);
}

// An exact power of two with rational exponent, value 2^exponent.
// Comparisons reduce to exponent comparisons; this is how the covering
// sums M*(2*eta)^s are compared across partition levels without ever
// evaluating an irrational number.
struct Pow2 {
    Rational exponent;

    friend bool operator==(const Pow2& a, const Pow2& b) { return a.exponent == b.exponent; }
    friend bool operator<(const Pow2& a, const Pow2& b) { return a.exponent < b.exponent; }
    friend bool operator<=(const Pow2& a, const Pow2& b) { return a.exponent <= b.exponent; }
    friend bool operator>(const Pow2& a, const Pow2& b) { return a.exponent > b.exponent; }
    friend bool operator>=(const Pow2& a, const Pow2& b) { return a.exponent >= b.exponent; }

    bool exact_rational() const { return exponent.is_integer(); }
    // Only valid when the exponent is an integer.
    Rational to_rational() const;
    double to_double() const;
    std::string to_string() const;
};

} // namespace slab
