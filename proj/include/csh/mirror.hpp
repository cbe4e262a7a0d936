#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "csh/novikov.hpp"

namespace csh {

struct OutOfScope : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EmptyDomain : std::runtime_error {
    EmptyDomain() : std::runtime_error("valuation domain is empty") {}
};
struct BadSeed : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct StalledLift : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct Inconsistency : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Exponent = std::vector<int>;

class LaurentPoly {
public:
    LaurentPoly(std::size_t nvars, Field f = Field::QI) : nvars_(nvars), field_(f) {}

    std::size_t nvars() const { return nvars_; }
    Field field() const { return field_; }
    const std::map<Exponent, NovikovScalar>& terms() const { return terms_; }
    void add_term(const Exponent& e, const NovikovScalar& c);
    bool is_zero() const { return terms_.empty(); }
    std::string str() const;

    friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

private:
    std::size_t nvars_;
    Field field_;
    std::map<Exponent, NovikovScalar> terms_;
};

LaurentPoly lp_add(const LaurentPoly& x, const LaurentPoly& y);
LaurentPoly lp_mul(const LaurentPoly& x, const LaurentPoly& y);
LaurentPoly lp_monomial(std::size_t nvars, const Exponent& e, const NovikovScalar& c);
// value at a point; coordinates must be invertible, precision bounds the inverses
NovikovScalar lp_eval(const LaurentPoly& f, const std::vector<NovikovScalar>& point, const Rational& precision);

LaurentPoly superpotential(int m, int k);
std::vector<LaurentPoly> partials(const LaurentPoly& w);

// sum coef_i v_i >= rhs, or > rhs when strict
struct LinearIneq {
    std::vector<Rational> coef;
    Rational rhs;
    bool strict = false;
};

struct ValuationDomain {
    std::size_t nvars = 0;
    std::vector<LinearIneq> ineqs;

    static ValuationDomain interval(std::size_t nvars, std::size_t var, std::optional<Rational> lo, bool lo_closed,
                                    std::optional<Rational> hi, bool hi_closed);
};

// a point satisfying every inequality, or nothing
std::optional<std::vector<Rational>> feasible_point(std::size_t nvars, const std::vector<LinearIneq>& ineqs);

struct UnitWitness {
    bool unit = false;
    std::optional<Exponent> dominating;
    std::optional<std::vector<Rational>> tie_point;
};

UnitWitness tropical_unit_test(const LaurentPoly& f, const ValuationDomain& d);

struct Interval {
    Rational lo;
    Rational hi;
    bool lo_closed = true;
    bool hi_closed = true;
    static Interval cobordism(const Rational& rho1, const Rational& rho2);
    std::string str() const;
};

struct JacPresentation {
    bool zero = true;
    int rank = 0;
    // relation in the symmetric variable z = z_1 = ... = z_m, as exponent -> coefficient
    std::vector<std::pair<int, NovikovScalar>> relation;
    std::vector<int> basis;  // exponents of the monomial basis
    int m = 0;
    int k = 0;
    std::string relation_str() const;
    // z * z^e reduced against the relation, as a combination of basis monomials
    std::vector<std::pair<int, NovikovScalar>> times_z(int e) const;
};

JacPresentation jacobian_presentation(int m, int k, const Interval& interval);

struct CriticalPoint {
    std::vector<NovikovScalar> coords;
    std::vector<Valuation> residuals;  // valuations of the partials at the point
    std::vector<Rational> history;     // valuation of w^r - (-k)^k T before each step
    int iterations = 0;
    Rational last_valuation;           // val(z_{m+1})
};

CriticalPoint critical_point_lift(int m, int k, const NovikovScalar& seed, const Rational& target_precision,
                                  int max_iterations = 40);

// the seed c T^{1/r} with c the rational or Gaussian root of (-k)^k, if one exists
std::optional<NovikovScalar> tropical_seed(int m, int k);

struct Prediction {
    int rank = 0;
    JacPresentation presentation;
    bool nonvanishing_by_lagrangian = false;
    Rational critical_valuation;
};

Prediction predict(int m, int k, const Rational& rho1, const Rational& rho2);

}  // namespace csh
