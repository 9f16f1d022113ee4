#include "bondedkb/laurent.hpp"

#include <stdexcept>
#include <tuple>

namespace bkb {

using nlohmann::ordered_json;

IntLaurent::IntLaurent(long c) {
    if (c != 0) terms_[0] = c;
}

IntLaurent IntLaurent::monomial(int exp, const BigInt& coef) {
    IntLaurent p;
    if (coef != 0) p.terms_[exp] = coef;
    return p;
}

IntLaurent IntLaurent::from_terms(const std::map<int, BigInt>& terms) {
    IntLaurent p;
    for (const auto& [e, c] : terms) p.add_term(e, c);
    return p;
}

void IntLaurent::add_term(int exp, const BigInt& c) {
    if (c == 0) return;
    auto it = terms_.find(exp);
    if (it == terms_.end()) {
        terms_.emplace(exp, c);
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

int IntLaurent::min_exp() const {
    if (terms_.empty()) throw std::logic_error("min_exp of zero polynomial");
    return terms_.begin()->first;
}

int IntLaurent::max_exp() const {
    if (terms_.empty()) throw std::logic_error("max_exp of zero polynomial");
    return terms_.rbegin()->first;
}

BigInt IntLaurent::coeff(int exp) const {
    auto it = terms_.find(exp);
    return it == terms_.end() ? BigInt(0) : it->second;
}

IntLaurent IntLaurent::shifted(int k) const {
    IntLaurent r;
    for (const auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), e + k, c);
    return r;
}

IntLaurent IntLaurent::mirrored() const {
    IntLaurent r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(-e, c);
    return r;
}

mpq_class IntLaurent::evaluate(const mpq_class& a) const {
    if (a == 0 && !terms_.empty() && min_exp() < 0) throw std::domain_error("negative power of zero");
    mpq_class sum = 0;
    for (const auto& [e, c] : terms_) {
        mpq_class term = c;
        mpq_class base = e >= 0 ? a : mpq_class(1) / a;
        for (int i = 0; i < (e >= 0 ? e : -e); ++i) term *= base;
        sum += term;
    }
    sum.canonicalize();
    return sum;
}

IntLaurent& IntLaurent::operator+=(const IntLaurent& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

IntLaurent& IntLaurent::operator-=(const IntLaurent& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

IntLaurent operator*(const IntLaurent& a, const IntLaurent& b) {
    IntLaurent r;
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
}

IntLaurent& IntLaurent::operator*=(const IntLaurent& o) {
    *this = *this * o;
    return *this;
}

IntLaurent IntLaurent::operator-() const {
    IntLaurent r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

IntLaurent IntLaurent::pow(unsigned e) const {
    IntLaurent result(1);
    IntLaurent base = *this;
    while (e) {
        if (e & 1u) result *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return result;
}

namespace {

std::string monomial_text(int e, const BigInt& c_abs) {
    std::string var;
    if (e == 1)
        var = "A";
    else if (e != 0)
        var = "A^" + std::to_string(e);
    if (var.empty()) return c_abs.get_str();
    if (c_abs == 1) return var;
    return c_abs.get_str() + var;
}

}  // namespace

std::string IntLaurent::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        BigInt mag = abs(c);
        if (first)
            out += (c < 0 ? "-" : "");
        else
            out += (c < 0 ? " - " : " + ");
        out += monomial_text(e, mag);
        first = false;
    }
    return out;
}

IntLaurent poly_add(const IntLaurent& p, const IntLaurent& q) { return p + q; }
IntLaurent poly_mul(const IntLaurent& p, const IntLaurent& q) { return p * q; }

std::optional<IntLaurent> exact_div(const IntLaurent& p, const IntLaurent& f) {
    if (f.is_zero()) throw std::domain_error("exact_div by zero polynomial");
    if (p.is_zero()) return IntLaurent();
    // Work with ordinary polynomials having nonzero constant terms.
    const int pshift = p.min_exp();
    const int fshift = f.min_exp();
    std::map<int, BigInt> rem;
    for (const auto& [e, c] : p.terms()) rem[e - pshift] = c;
    std::map<int, BigInt> div;
    for (const auto& [e, c] : f.terms()) div[e - fshift] = c;
    const int fdeg = div.rbegin()->first;
    const BigInt& lead = div.rbegin()->second;

    std::map<int, BigInt> quot;
    while (!rem.empty()) {
        auto top = std::prev(rem.end());
        int deg = top->first;
        if (deg < fdeg) return std::nullopt;
        BigInt q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), top->second.get_mpz_t(), lead.get_mpz_t());
        if (r != 0) return std::nullopt;
        quot[deg - fdeg] = q;
        for (const auto& [e, c] : div) {
            BigInt& slot = rem[e + deg - fdeg];
            slot -= q * c;
            if (slot == 0) rem.erase(e + deg - fdeg);
        }
    }
    IntLaurent out = IntLaurent::from_terms(quot);
    return out.shifted(pshift - fshift);
}

const IntLaurent& f1() {
    static const IntLaurent v = IntLaurent(1) + IntLaurent::monomial(4);
    return v;
}

const IntLaurent& f2() {
    static const IntLaurent v = IntLaurent(1) + IntLaurent::monomial(4) + IntLaurent::monomial(8);
    return v;
}

Coefficient::Coefficient(IntLaurent num, int d1, int d2) : num_(std::move(num)), d1_(d1), d2_(d2) {
    if (d1 < 0 || d2 < 0) throw std::invalid_argument("negative denominator exponent");
    reduce();
}

void Coefficient::reduce() {
    if (num_.is_zero()) {
        d1_ = d2_ = 0;
        return;
    }
    while (d1_ > 0) {
        auto q = exact_div(num_, f1());
        if (!q) break;
        num_ = std::move(*q);
        --d1_;
    }
    while (d2_ > 0) {
        auto q = exact_div(num_, f2());
        if (!q) break;
        num_ = std::move(*q);
        --d2_;
    }
}

Coefficient Coefficient::times_factors(int e1, int e2) const {
    Coefficient r = *this;
    if (r.is_zero()) return r;
    r.d1_ -= e1;
    r.d2_ -= e2;
    if (r.d1_ < 0) {
        r.num_ *= f1().pow(static_cast<unsigned>(-r.d1_));
        r.d1_ = 0;
    }
    if (r.d2_ < 0) {
        r.num_ *= f2().pow(static_cast<unsigned>(-r.d2_));
        r.d2_ = 0;
    }
    r.reduce();
    return r;
}

Coefficient Coefficient::shifted(int k) const {
    Coefficient r = *this;
    r.num_ = r.num_.shifted(k);
    return r;
}

Coefficient& Coefficient::operator+=(const Coefficient& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    const int D1 = std::max(d1_, o.d1_);
    const int D2 = std::max(d2_, o.d2_);
    IntLaurent a = num_ * f1().pow(D1 - d1_) * f2().pow(D2 - d2_);
    IntLaurent b = o.num_ * f1().pow(D1 - o.d1_) * f2().pow(D2 - o.d2_);
    num_ = a + b;
    d1_ = D1;
    d2_ = D2;
    reduce();
    return *this;
}

Coefficient& Coefficient::operator-=(const Coefficient& o) { return *this += -o; }

Coefficient& Coefficient::operator*=(const Coefficient& o) {
    num_ *= o.num_;
    d1_ += o.d1_;
    d2_ += o.d2_;
    reduce();
    return *this;
}

Coefficient Coefficient::operator-() const {
    Coefficient r = *this;
    r.num_ = -r.num_;
    return r;
}

std::string Coefficient::to_string() const {
    if (d1_ == 0 && d2_ == 0) return num_.to_string();
    std::string den;
    auto factor = [&](const char* name, int d) {
        if (d == 0) return;
        if (!den.empty()) den += " ";
        den += name;
        if (d > 1) den += "^" + std::to_string(d);
    };
    factor("f1", d1_);
    factor("f2", d2_);
    return "(" + num_.to_string() + ")/(" + den + ")";
}

Coefficient coeff_reduce(const Coefficient& c) {
    return Coefficient(c.num(), c.d1(), c.d2());
}

SkeinValue SkeinValue::basis(int m, int n, const Coefficient& c) {
    SkeinValue v;
    v.add_term({m, n}, c);
    return v;
}

Coefficient SkeinValue::coeff(int m, int n) const {
    auto it = terms_.find({m, n});
    return it == terms_.end() ? Coefficient() : it->second;
}

void SkeinValue::add_term(const Key& k, const Coefficient& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

SkeinValue& SkeinValue::operator+=(const SkeinValue& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

SkeinValue& SkeinValue::operator-=(const SkeinValue& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
}

SkeinValue operator*(const SkeinValue& a, const SkeinValue& b) {
    SkeinValue r;
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_)
            r.add_term({ka.first + kb.first, ka.second + kb.second}, ca * cb);
    return r;
}

SkeinValue operator*(const Coefficient& c, const SkeinValue& v) {
    SkeinValue r;
    if (c.is_zero()) return r;
    for (const auto& [k, x] : v.terms_) r.add_term(k, c * x);
    return r;
}

SkeinValue SkeinValue::operator-() const {
    SkeinValue r = *this;
    for (auto& [k, c] : r.terms_) c = -c;
    return r;
}

namespace {

std::string basis_text(int m, int n) {
    std::string s;
    if (m > 0) s += m == 1 ? "T" : "T^" + std::to_string(m);
    if (n > 0) {
        if (!s.empty()) s += " ";
        s += n == 1 ? "H" : "H^" + std::to_string(n);
    }
    return s;
}

// Shared by SkeinValue and BivariateLaurent; `coef` is the coefficient text and
// `multi` tells whether it needs parentheses before a basis monomial.
std::string term_text(const std::string& coef, bool multi, int m, int n) {
    std::string b = basis_text(m, n);
    if (b.empty()) return coef;
    if (coef == "1") return b;
    if (coef == "-1") return "-" + b;
    return (multi ? "(" + coef + ")" : coef) + " * " + b;
}

std::string join_terms(const std::vector<std::string>& parts) {
    if (parts.empty()) return "0";
    std::string out = parts.front();
    for (size_t i = 1; i < parts.size(); ++i) {
        if (parts[i][0] == '-')
            out += " - " + parts[i].substr(1);
        else
            out += " + " + parts[i];
    }
    return out;
}

ordered_json num_json(const IntLaurent& p) {
    ordered_json arr = ordered_json::array();
    for (const auto& [e, c] : p.terms()) arr.push_back(ordered_json::array({e, bigint_to_json(c)}));
    return arr;
}

}  // namespace

std::string SkeinValue::to_string() const {
    std::vector<std::string> parts;
    for (const auto& [k, c] : terms_) {
        bool multi = c.d1() == 0 && c.d2() == 0 && c.num().terms().size() > 1;
        parts.push_back(term_text(c.to_string(), multi, k.first, k.second));
    }
    return join_terms(parts);
}

ordered_json SkeinValue::to_json() const {
    ordered_json terms = ordered_json::array();
    for (const auto& [k, c] : terms_) {
        ordered_json t;
        t["theta"] = k.first;
        t["h"] = k.second;
        t["num"] = num_json(c.num());
        t["d1"] = c.d1();
        t["d2"] = c.d2();
        terms.push_back(std::move(t));
    }
    ordered_json out;
    out["terms"] = std::move(terms);
    return out;
}

SkeinValue SkeinValue::from_json(const ordered_json& j) {
    SkeinValue v;
    for (const auto& t : j.at("terms")) {
        std::map<int, BigInt> num;
        for (const auto& pair : t.at("num")) num[pair.at(0).get<int>()] += bigint_from_json(pair.at(1));
        v.add_term({t.at("theta").get<int>(), t.at("h").get<int>()},
                   Coefficient(IntLaurent::from_terms(num), t.at("d1").get<int>(), t.at("d2").get<int>()));
    }
    return v;
}

SkeinValue skein_add(const SkeinValue& u, const SkeinValue& v) { return u + v; }
SkeinValue skein_mul(const SkeinValue& u, const SkeinValue& v) { return u * v; }

SkeinValue subst_topological(const SkeinValue& u) {
    const Coefficient& d = constants().delta_c;
    SkeinValue r;
    for (const auto& [k, c] : u.terms()) {
        Coefficient x = c;
        for (int i = 0; i < k.second; ++i) x *= d;
        r.add_term({k.first + k.second, 0}, x);
    }
    return r;
}

void BivariateLaurent::add_term(const Key& k, const IntLaurent& p) {
    if (p.is_zero()) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, p);
        return;
    }
    it->second += p;
    if (it->second.is_zero()) terms_.erase(it);
}

IntLaurent BivariateLaurent::coeff(int m, int n) const {
    auto it = terms_.find({m, n});
    return it == terms_.end() ? IntLaurent() : it->second;
}

std::map<std::tuple<int, int, int>, BigInt> BivariateLaurent::flat() const {
    std::map<std::tuple<int, int, int>, BigInt> out;
    for (const auto& [k, p] : terms_)
        for (const auto& [e, c] : p.terms()) out[{e, k.first, k.second}] = c;
    return out;
}

std::string BivariateLaurent::to_string() const {
    std::vector<std::string> parts;
    for (const auto& [k, p] : terms_) parts.push_back(term_text(p.to_string(), p.terms().size() > 1, k.first, k.second));
    return join_terms(parts);
}

ordered_json BivariateLaurent::to_json() const {
    ordered_json terms = ordered_json::array();
    for (const auto& [k, p] : terms_) {
        ordered_json t;
        t["theta"] = k.first;
        t["h"] = k.second;
        t["num"] = num_json(p);
        t["d1"] = 0;
        t["d2"] = 0;
        terms.push_back(std::move(t));
    }
    ordered_json out;
    out["terms"] = std::move(terms);
    return out;
}

const Constants& constants() {
    static const Constants c = [] {
        Constants k;
        k.delta = -IntLaurent::monomial(2) - IntLaurent::monomial(-2);
        k.mu = IntLaurent::monomial(-4) + IntLaurent(1) + IntLaurent::monomial(4);
        k.delta_c = Coefficient(k.delta);
        // 1/delta = -A^2 / f1
        k.inv_delta = Coefficient(-IntLaurent::monomial(2), 1, 0);
        // delta*mu = -A^-6 f1 f2
        k.inv_delta_mu = Coefficient(-IntLaurent::monomial(6), 1, 1);
        const SkeinValue T = SkeinValue::theta();
        const SkeinValue H = SkeinValue::handcuff();
        k.alpha = k.inv_delta_mu * (k.delta_c * H - T);
        k.beta = k.inv_delta_mu * (k.delta_c * T - H);
        return k;
    }();
    return c;
}

ordered_json bigint_to_json(const BigInt& v) {
    if (v.fits_slong_p()) return static_cast<long>(v.get_si());
    return v.get_str();
}

BigInt bigint_from_json(const ordered_json& j) {
    if (j.is_string()) return BigInt(j.get<std::string>());
    if (j.is_number_integer()) return BigInt(j.get<long>());
    throw std::invalid_argument("coefficient must be an integer or decimal string");
}

}  // namespace bkb
