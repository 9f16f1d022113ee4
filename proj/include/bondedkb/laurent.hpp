#pragma once

// Exact arithmetic for Laurent polynomials in A, coefficients with
// denominators f1 = 1+A^4 and f2 = 1+A^4+A^8, and module elements
// in the basis T^m H^n.

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <json.hpp>

namespace bkb {

using BigInt = mpz_class;

class IntLaurent {
public:
    IntLaurent() = default;
    IntLaurent(long c);  // constant
    static IntLaurent monomial(int exp, const BigInt& coef = 1);
    static IntLaurent from_terms(const std::map<int, BigInt>& terms);

    const std::map<int, BigInt>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int min_exp() const;
    int max_exp() const;
    BigInt coeff(int exp) const;

    // multiply by A^k
    IntLaurent shifted(int k) const;
    // A -> A^-1
    IntLaurent mirrored() const;
    mpq_class evaluate(const mpq_class& a) const;

    IntLaurent& operator+=(const IntLaurent& o);
    IntLaurent& operator-=(const IntLaurent& o);
    IntLaurent& operator*=(const IntLaurent& o);
    friend IntLaurent operator+(IntLaurent a, const IntLaurent& b) { return a += b; }
    friend IntLaurent operator-(IntLaurent a, const IntLaurent& b) { return a -= b; }
    friend IntLaurent operator*(const IntLaurent& a, const IntLaurent& b);
    IntLaurent operator-() const;
    friend bool operator==(const IntLaurent& a, const IntLaurent& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const IntLaurent& a, const IntLaurent& b) { return !(a == b); }

    IntLaurent pow(unsigned e) const;

    // Ascending exponents, e.g. "A^-4 + 1 + A^4".
    std::string to_string() const;

private:
    void add_term(int exp, const BigInt& c);
    std::map<int, BigInt> terms_;
};

IntLaurent poly_add(const IntLaurent& p, const IntLaurent& q);
IntLaurent poly_mul(const IntLaurent& p, const IntLaurent& q);
// q with p = f*q in Z[A,A^-1], or nullopt. Throws std::domain_error if f == 0.
std::optional<IntLaurent> exact_div(const IntLaurent& p, const IntLaurent& f);

const IntLaurent& f1();  // 1 + A^4
const IntLaurent& f2();  // 1 + A^4 + A^8

// num / (f1^d1 f2^d2), kept fully cancelled.
class Coefficient {
public:
    Coefficient() = default;
    Coefficient(long c) : num_(c) {}
    Coefficient(IntLaurent num, int d1 = 0, int d2 = 0);

    const IntLaurent& num() const { return num_; }
    int d1() const { return d1_; }
    int d2() const { return d2_; }
    bool is_zero() const { return num_.is_zero(); }

    // multiply by f1^e1 f2^e2 (exponents may be negative)
    Coefficient times_factors(int e1, int e2) const;
    Coefficient shifted(int k) const;

    Coefficient& operator+=(const Coefficient& o);
    Coefficient& operator-=(const Coefficient& o);
    Coefficient& operator*=(const Coefficient& o);
    friend Coefficient operator+(Coefficient a, const Coefficient& b) { return a += b; }
    friend Coefficient operator-(Coefficient a, const Coefficient& b) { return a -= b; }
    friend Coefficient operator*(Coefficient a, const Coefficient& b) { return a *= b; }
    Coefficient operator-() const;
    friend bool operator==(const Coefficient& a, const Coefficient& b) = default;

    std::string to_string() const;

private:
    void reduce();
    IntLaurent num_;
    int d1_ = 0;
    int d2_ = 0;
};

Coefficient coeff_reduce(const Coefficient& c);

// sum of p_{m,n} T^m H^n
class SkeinValue {
public:
    using Key = std::pair<int, int>;  // (theta degree, H degree)

    SkeinValue() = default;
    static SkeinValue zero() { return {}; }
    static SkeinValue unit() { return basis(0, 0); }
    static SkeinValue theta() { return basis(1, 0); }
    static SkeinValue handcuff() { return basis(0, 1); }
    static SkeinValue basis(int m, int n, const Coefficient& c = 1);
    static SkeinValue scalar(const Coefficient& c) { return basis(0, 0, c); }

    const std::map<Key, Coefficient>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Coefficient coeff(int m, int n) const;
    void add_term(const Key& k, const Coefficient& c);

    SkeinValue& operator+=(const SkeinValue& o);
    SkeinValue& operator-=(const SkeinValue& o);
    friend SkeinValue operator+(SkeinValue a, const SkeinValue& b) { return a += b; }
    friend SkeinValue operator-(SkeinValue a, const SkeinValue& b) { return a -= b; }
    friend SkeinValue operator*(const SkeinValue& a, const SkeinValue& b);
    friend SkeinValue operator*(const Coefficient& c, const SkeinValue& v);
    SkeinValue operator-() const;
    friend bool operator==(const SkeinValue& a, const SkeinValue& b) = default;

    std::string to_string() const;
    nlohmann::ordered_json to_json() const;
    static SkeinValue from_json(const nlohmann::ordered_json& j);

private:
    std::map<Key, Coefficient> terms_;
};

SkeinValue skein_add(const SkeinValue& u, const SkeinValue& v);
SkeinValue skein_mul(const SkeinValue& u, const SkeinValue& v);
// H -> delta * T
SkeinValue subst_topological(const SkeinValue& u);

// Element of Z[A^{+-1}, T, H]; stored per (theta, h) monomial.
class BivariateLaurent {
public:
    using Key = std::pair<int, int>;

    const std::map<Key, IntLaurent>& terms() const { return terms_; }
    void add_term(const Key& k, const IntLaurent& p);
    bool is_zero() const { return terms_.empty(); }
    IntLaurent coeff(int m, int n) const;
    // flat view (A-exponent, theta, h) -> coefficient
    std::map<std::tuple<int, int, int>, BigInt> flat() const;

    friend bool operator==(const BivariateLaurent& a, const BivariateLaurent& b) = default;

    std::string to_string() const;
    nlohmann::ordered_json to_json() const;

private:
    std::map<Key, IntLaurent> terms_;
};

struct Constants {
    IntLaurent delta;  // -A^2 - A^-2
    IntLaurent mu;     // A^-4 + 1 + A^4
    SkeinValue alpha;  // (delta H - T)/(delta mu)
    SkeinValue beta;   // (delta T - H)/(delta mu)
    Coefficient delta_c;
    Coefficient inv_delta;
    Coefficient inv_delta_mu;
};

const Constants& constants();

// Integer JSON encoding: a number when it fits in int64, otherwise a decimal string.
nlohmann::ordered_json bigint_to_json(const BigInt& v);
BigInt bigint_from_json(const nlohmann::ordered_json& j);

}  // namespace bkb
