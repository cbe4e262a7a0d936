#pragma once

#include <initializer_list>
#include <random>
#include <utility>

#include "csh/complex.hpp"
#include "csh/novikov.hpp"

namespace testing {

using csh::Field;
using csh::NovikovScalar;
using csh::Rational;

inline Rational q(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

// sum of c T^e with rational coefficients
inline NovikovScalar series(Field f, std::initializer_list<std::pair<Rational, Rational>> terms,
                            csh::ExtRational prec = std::nullopt) {
    std::vector<csh::Term> raw;
    for (const auto& [c, e] : terms) raw.push_back({csh::Coeff::make(f, c), e});
    return csh::normalize(f, std::move(raw), prec);
}

inline NovikovScalar gauss(Rational re, Rational im, Rational e) {
    return NovikovScalar::monomial(Field::QI, csh::Coeff::make(Field::QI, re, im), e);
}

// random exact scalar with up to `terms` terms, exponents in (1/den) Z within [lo, lo + span)
inline NovikovScalar random_scalar(std::mt19937_64& rng, Field f, int terms, int den, int lo, int span) {
    std::uniform_int_distribution<int> n_terms(1, terms), expo(0, span * den - 1), co(-4, 4);
    std::vector<csh::Term> raw;
    int n = n_terms(rng);
    for (int i = 0; i < n; ++i) {
        int c = co(rng);
        if (c == 0) c = 1;
        Rational e = Rational(lo) + Rational(expo(rng), den);
        raw.push_back({csh::Coeff::make(f, c, f == Field::QI ? Rational(co(rng)) : Rational(0)), e});
    }
    auto x = csh::normalize(f, std::move(raw));
    if (!x.has_terms()) return NovikovScalar::t_power(f, lo);
    return x;
}

inline NovikovScalar exact_part_below(const NovikovScalar& x, const Rational& p) {
    std::vector<csh::Term> kept;
    for (const auto& t : x.terms())
        if (t.e < p) kept.push_back(t);
    return csh::normalize(x.field(), std::move(kept));
}

}  // namespace testing
