#include "csh/novikov.hpp"

#include <algorithm>
#include <map>

namespace csh {

std::string field_name(Field f) {
    switch (f) {
        case Field::F2: return "F2";
        case Field::Q: return "Q";
        case Field::QI: return "QI";
    }
    return "?";
}

namespace {

Rational mod2(const Rational& r) {
    if (!r.is_integer()) throw std::domain_error("F2 coefficient must be an integer");
    return Rational(((r.num() % 2) + 2) % 2);
}

}  // namespace

Coeff Coeff::make(Field f, Rational re, Rational im) {
    if (f == Field::F2) {
        if (!im.is_zero()) throw std::domain_error("imaginary part outside QI");
        return {mod2(re), 0};
    }
    if (f == Field::Q && !im.is_zero()) throw std::domain_error("imaginary part outside QI");
    return {re, im};
}

std::string Coeff::str() const {
    if (im.is_zero()) return re.str();
    if (re.is_zero()) return im.str() + "i";
    return "(" + re.str() + (im.sign() < 0 ? "" : "+") + im.str() + "i)";
}

Coeff coeff_add(Field f, const Coeff& a, const Coeff& b) {
    if (f == Field::F2) return {mod2(a.re + b.re), 0};
    return {a.re + b.re, a.im + b.im};
}

Coeff coeff_neg(Field f, const Coeff& a) {
    if (f == Field::F2) return a;
    return {-a.re, -a.im};
}

Coeff coeff_mul(Field f, const Coeff& a, const Coeff& b) {
    if (f == Field::F2) return {mod2(a.re * b.re), 0};
    if (f == Field::Q) return {a.re * b.re, 0};
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

Coeff coeff_inv(Field f, const Coeff& a) {
    if (a.is_zero()) throw NotAUnit("zero coefficient");
    if (f == Field::F2) return a;
    if (f == Field::Q) return {Rational(1) / a.re, 0};
    Rational n = a.re * a.re + a.im * a.im;
    return {a.re / n, -a.im / n};
}

NovikovScalar normalize(Field f, std::vector<Term> raw, ExtRational precision) {
    std::map<Rational, Coeff> acc;
    for (auto& t : raw) {
        if (precision && !(t.e < *precision)) continue;
        auto [it, fresh] = acc.try_emplace(t.e, Coeff::make(f, t.c.re, t.c.im));
        if (!fresh) it->second = coeff_add(f, it->second, Coeff::make(f, t.c.re, t.c.im));
    }
    NovikovScalar out(f);
    out.precision_ = precision;
    for (auto& [e, c] : acc)
        if (!c.is_zero()) out.terms_.push_back({c, e});
    return out;
}

NovikovScalar NovikovScalar::monomial(Field f, Coeff c, Rational e) {
    return normalize(f, {{c, e}});
}

std::string NovikovScalar::str() const {
    std::string s;
    for (auto& t : terms_) {
        if (!s.empty()) s += " + ";
        s += t.c.str();
        if (!t.e.is_zero()) s += "T^" + t.e.str();
    }
    if (s.empty()) s = "0";
    if (precision_) s += " + O(T^" + precision_->str() + ")";
    return s;
}

static void check_same(const NovikovScalar& x, const NovikovScalar& y) {
    if (x.field() != y.field()) throw FieldMismatch();
}

NovikovScalar add(const NovikovScalar& x, const NovikovScalar& y) {
    check_same(x, y);
    std::vector<Term> raw = x.terms();
    raw.insert(raw.end(), y.terms().begin(), y.terms().end());
    return normalize(x.field(), std::move(raw), ext_min(x.precision(), y.precision()));
}

NovikovScalar neg(const NovikovScalar& x) {
    std::vector<Term> raw;
    for (auto& t : x.terms()) raw.push_back({coeff_neg(x.field(), t.c), t.e});
    return normalize(x.field(), std::move(raw), x.precision());
}

NovikovScalar sub(const NovikovScalar& x, const NovikovScalar& y) { return add(x, neg(y)); }

Valuation valuation(const NovikovScalar& x) {
    if (x.has_terms()) return {x.terms().front().e, false};
    if (x.is_exact()) return {std::nullopt, false};
    return {x.precision(), true};
}

NovikovScalar mul(const NovikovScalar& x, const NovikovScalar& y) {
    check_same(x, y);
    Field f = x.field();
    ExtRational prec;
    if (x.has_terms() && y.has_terms()) {
        prec = ext_min(ext_add(x.precision(), valuation(y).value), ext_add(y.precision(), valuation(x).value));
    } else {
        prec = ext_min(x.precision(), y.precision());
        // an exact zero factor forces an exact zero product
        if (x.is_exact_zero() || y.is_exact_zero()) prec = std::nullopt;
        else if (!x.has_terms() && !y.has_terms()) prec = ext_add(x.precision(), y.precision());
        else if (!x.has_terms()) prec = ext_add(x.precision(), valuation(y).value);
        else prec = ext_add(y.precision(), valuation(x).value);
    }
    std::vector<Term> raw;
    raw.reserve(x.terms().size() * y.terms().size());
    for (auto& a : x.terms())
        for (auto& b : y.terms()) raw.push_back({coeff_mul(f, a.c, b.c), a.e + b.e});
    return normalize(f, std::move(raw), prec);
}

NovikovScalar shift(const NovikovScalar& x, const Rational& e) {
    std::vector<Term> raw = x.terms();
    for (auto& t : raw) t.e += e;
    return normalize(x.field(), std::move(raw), ext_add(x.precision(), e));
}

NovikovScalar invert(const NovikovScalar& u, const Rational& target_precision) {
    Field f = u.field();
    if (!u.has_terms()) throw NotAUnit("zero or indeterminate scalar");
    const Term lead = u.terms().front();
    // u = c T^v (1 - r) with val(r) > 0, so 1/u = c^{-1} T^{-v} (1 + r + r^2 + ...)
    NovikovScalar head_inv = NovikovScalar::monomial(f, coeff_inv(f, lead.c), -lead.e);
    NovikovScalar one = NovikovScalar::one(f);
    NovikovScalar r = sub(one, mul(u, head_inv));
    if (r.is_exact_zero()) return head_inv;
    // 1/u is wanted modulo T^target, i.e. the series modulo T^{target + v}
    Rational need = target_precision + lead.e;
    if (r.precision() && *r.precision() < need) need = *r.precision();
    if (r.has_terms() && valuation(r).value->sign() <= 0) throw NotAUnit("precision too low to invert");
    NovikovScalar sum = one;
    NovikovScalar power = one;
    while (r.has_terms()) {
        power = with_precision(mul(power, r), need);
        if (!power.has_terms()) break;
        sum = add(sum, power);
    }
    sum = with_precision(sum, need);
    return mul(head_inv, sum);
}

NovikovScalar with_precision(const NovikovScalar& x, const Rational& p) {
    return normalize(x.field(), x.terms(), ext_min(x.precision(), p));
}

NovikovScalar NovikovScalar::window_class(Field f, std::vector<Term> kept, const Rational& b) {
    NovikovScalar out = normalize(f, std::move(kept));
    out.precision_ = b;
    return out;
}

NovikovScalar truncate(const NovikovScalar& x, const Rational& a, const Rational& b) {
    if (!(a < b)) throw std::invalid_argument("truncate: need a < b");
    std::vector<Term> kept;
    for (auto& t : x.terms())
        if (a < t.e && t.e <= b) kept.push_back(t);
    // a jet known below b only stays known up to its own precision
    Rational cut = x.precision() && *x.precision() < b ? *x.precision() : b;
    return NovikovScalar::window_class(x.field(), std::move(kept), cut);
}

}  // namespace csh
