#pragma once

#include <string>
#include <vector>

#include "csh/rational.hpp"

namespace csh {

enum class Field { F2, Q, QI };

std::string field_name(Field f);

struct FieldMismatch : std::runtime_error {
    FieldMismatch() : std::runtime_error("coefficient field mismatch") {}
};
struct NotAUnit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// element of F2, Q or Q(i); im is always zero outside QI
struct Coeff {
    Rational re;
    Rational im;

    static Coeff make(Field f, Rational re, Rational im = 0);
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    friend bool operator==(const Coeff&, const Coeff&) = default;
    std::string str() const;
};

Coeff coeff_add(Field f, const Coeff& a, const Coeff& b);
Coeff coeff_neg(Field f, const Coeff& a);
Coeff coeff_mul(Field f, const Coeff& a, const Coeff& b);
Coeff coeff_inv(Field f, const Coeff& a);

struct Term {
    Coeff c;
    Rational e;
    friend bool operator==(const Term&, const Term&) = default;
};

struct Valuation {
    ExtRational value;  // nullopt = +infinity
    bool indeterminate = false;
};

class NovikovScalar {
public:
    NovikovScalar() = default;
    explicit NovikovScalar(Field f) : field_(f) {}

    static NovikovScalar zero(Field f) { return NovikovScalar(f); }
    static NovikovScalar one(Field f) { return monomial(f, Coeff::make(f, 1), 0); }
    static NovikovScalar monomial(Field f, Coeff c, Rational e);
    static NovikovScalar t_power(Field f, Rational e) { return monomial(f, Coeff::make(f, 1), e); }

    Field field() const { return field_; }
    const std::vector<Term>& terms() const { return terms_; }
    const ExtRational& precision() const { return precision_; }

    bool is_exact() const { return !precision_.has_value(); }
    bool is_exact_zero() const { return terms_.empty() && is_exact(); }
    bool has_terms() const { return !terms_.empty(); }

    friend bool operator==(const NovikovScalar&, const NovikovScalar&) = default;

    std::string str() const;

    // representative of a class in the window (a, b]; the term at exponent b is kept
    static NovikovScalar window_class(Field f, std::vector<Term> kept, const Rational& b);

    friend NovikovScalar normalize(Field f, std::vector<Term> raw, ExtRational precision);

private:
    Field field_ = Field::F2;
    std::vector<Term> terms_;
    ExtRational precision_;
};

NovikovScalar normalize(Field f, std::vector<Term> raw, ExtRational precision = std::nullopt);
NovikovScalar add(const NovikovScalar& x, const NovikovScalar& y);
NovikovScalar neg(const NovikovScalar& x);
NovikovScalar sub(const NovikovScalar& x, const NovikovScalar& y);
NovikovScalar mul(const NovikovScalar& x, const NovikovScalar& y);
NovikovScalar shift(const NovikovScalar& x, const Rational& e);  // multiply by T^e
Valuation valuation(const NovikovScalar& x);
NovikovScalar invert(const NovikovScalar& u, const Rational& target_precision);
NovikovScalar truncate(const NovikovScalar& x, const Rational& a, const Rational& b);
// drops terms at exponent >= p and lowers precision to p
NovikovScalar with_precision(const NovikovScalar& x, const Rational& p);

}  // namespace csh
