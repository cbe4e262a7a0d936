#include "csh/mirror.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace csh {

namespace {

NovikovScalar qi(Rational re, Rational im = 0, Rational e = 0) {
    return NovikovScalar::monomial(Field::QI, Coeff::make(Field::QI, re, im), e);
}

std::int64_t ipow(std::int64_t b, int e) {
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

void check_scope(int m, int k) {
    if (m < 1 || k < 1 || k > m) throw OutOfScope("need 1 <= k <= m, got m=" + std::to_string(m) + " k=" + std::to_string(k));
}

NovikovScalar power(const NovikovScalar& x, int e) {
    NovikovScalar r = NovikovScalar::one(x.field());
    for (int i = 0; i < e; ++i) r = mul(r, x);
    return r;
}

}  // namespace

void LaurentPoly::add_term(const Exponent& e, const NovikovScalar& c) {
    if (e.size() != nvars_) throw std::invalid_argument("exponent arity");
    auto it = terms_.find(e);
    NovikovScalar v = it == terms_.end() ? c : add(it->second, c);
    if (v.is_exact_zero()) {
        if (it != terms_.end()) terms_.erase(it);
        return;
    }
    terms_[e] = v;
}

std::string LaurentPoly::str() const {
    std::ostringstream os;
    bool first = true;
    for (auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) os << "*z" << i + 1 << (e[i] == 1 ? "" : "^" + std::to_string(e[i]));
    }
    return first ? "0" : os.str();
}

LaurentPoly lp_add(const LaurentPoly& x, const LaurentPoly& y) {
    LaurentPoly r = x;
    for (auto& [e, c] : y.terms()) r.add_term(e, c);
    return r;
}

LaurentPoly lp_mul(const LaurentPoly& x, const LaurentPoly& y) {
    LaurentPoly r(x.nvars(), x.field());
    for (auto& [a, c] : x.terms())
        for (auto& [b, d] : y.terms()) {
            Exponent e(a.size());
            for (std::size_t i = 0; i < a.size(); ++i) e[i] = a[i] + b[i];
            r.add_term(e, mul(c, d));
        }
    return r;
}

LaurentPoly lp_monomial(std::size_t nvars, const Exponent& e, const NovikovScalar& c) {
    LaurentPoly r(nvars, c.field());
    r.add_term(e, c);
    return r;
}

NovikovScalar lp_eval(const LaurentPoly& f, const std::vector<NovikovScalar>& point, const Rational& precision) {
    std::vector<NovikovScalar> inv;
    for (auto& p : point) {
        // enough relative precision for the product to be good to `precision`
        Rational v = *valuation(p).value;
        inv.push_back(invert(p, precision - v + Rational(64)));
    }
    NovikovScalar acc = NovikovScalar::zero(f.field());
    for (auto& [e, c] : f.terms()) {
        NovikovScalar t = c;
        for (std::size_t i = 0; i < e.size(); ++i) t = mul(t, power(e[i] >= 0 ? point[i] : inv[i], std::abs(e[i])));
        acc = add(acc, t);
    }
    return acc;
}

LaurentPoly superpotential(int m, int k) {
    check_scope(m, k);
    const std::size_t n = static_cast<std::size_t>(m) + 1;
    LaurentPoly w(n);
    for (std::size_t i = 0; i < n; ++i) {
        Exponent e(n, 0);
        e[i] = 1;
        w.add_term(e, qi(1));
    }
    Exponent e(n, -1);
    e[n - 1] = k;
    w.add_term(e, qi(1, 0, 1));
    return w;
}

std::vector<LaurentPoly> partials(const LaurentPoly& w) {
    std::vector<LaurentPoly> out;
    for (std::size_t i = 0; i < w.nvars(); ++i) {
        LaurentPoly d(w.nvars(), w.field());
        for (auto& [e, c] : w.terms()) {
            if (e[i] == 0) continue;
            Exponent f = e;
            f[i] -= 1;
            d.add_term(f, mul(c, NovikovScalar::monomial(w.field(), Coeff::make(w.field(), e[i]), 0)));
        }
        out.push_back(std::move(d));
    }
    return out;
}

ValuationDomain ValuationDomain::interval(std::size_t nvars, std::size_t var, std::optional<Rational> lo, bool lo_closed,
                                          std::optional<Rational> hi, bool hi_closed) {
    ValuationDomain d;
    d.nvars = nvars;
    if (lo) {
        LinearIneq q{std::vector<Rational>(nvars, Rational(0)), *lo, !lo_closed};
        q.coef[var] = 1;
        d.ineqs.push_back(q);
    }
    if (hi) {
        LinearIneq q{std::vector<Rational>(nvars, Rational(0)), -*hi, !hi_closed};
        q.coef[var] = -1;
        d.ineqs.push_back(q);
    }
    return d;
}

std::optional<std::vector<Rational>> feasible_point(std::size_t nvars, const std::vector<LinearIneq>& ineqs) {
    // Fourier-Motzkin, keeping each stage for back-substitution
    std::vector<std::vector<LinearIneq>> stage(nvars + 1);
    stage[nvars] = ineqs;
    for (std::size_t j = nvars; j-- > 0;) {
        std::vector<LinearIneq> lo, hi, rest;
        for (auto& q : stage[j + 1]) {
            int s = q.coef[j].sign();
            (s > 0 ? lo : s < 0 ? hi : rest).push_back(q);
        }
        for (auto& l : lo)
            for (auto& h : hi) {
                Rational a = l.coef[j], b = -h.coef[j];
                LinearIneq c{std::vector<Rational>(nvars, Rational(0)), l.rhs * b + h.rhs * a, l.strict || h.strict};
                for (std::size_t i = 0; i < nvars; ++i) c.coef[i] = l.coef[i] * b + h.coef[i] * a;
                c.coef[j] = 0;
                rest.push_back(c);
            }
        stage[j] = std::move(rest);
    }
    for (auto& q : stage[0]) {
        if (q.strict ? !(q.rhs < Rational(0)) : !(q.rhs <= Rational(0))) return std::nullopt;
    }
    std::vector<Rational> x(nvars, Rational(0));
    for (std::size_t j = 0; j < nvars; ++j) {
        std::optional<Rational> lo, hi;
        bool lo_strict = false, hi_strict = false;
        for (auto& q : stage[j + 1]) {
            if (q.coef[j].is_zero()) continue;
            Rational rest = q.rhs;
            for (std::size_t i = 0; i < j; ++i) rest -= q.coef[i] * x[i];
            Rational bound = rest / q.coef[j];
            if (q.coef[j].sign() > 0) {
                if (!lo || bound > *lo || (bound == *lo && q.strict)) lo = bound, lo_strict = q.strict;
            } else {
                if (!hi || bound < *hi || (bound == *hi && q.strict)) hi = bound, hi_strict = q.strict;
            }
        }
        if (lo && hi) x[j] = !hi_strict ? *hi : !lo_strict ? *lo : (*lo + *hi) / Rational(2);
        else if (lo) x[j] = lo_strict ? *lo + 1 : *lo;
        else if (hi) x[j] = hi_strict ? *hi - 1 : *hi;
    }
    return x;
}

UnitWitness tropical_unit_test(const LaurentPoly& f, const ValuationDomain& d) {
    if (f.is_zero()) throw std::invalid_argument("tropical_unit_test: zero polynomial");
    if (!feasible_point(d.nvars, d.ineqs)) throw EmptyDomain();
    struct Affine {
        Exponent e;
        Rational c;
    };
    std::vector<Affine> ell;
    for (auto& [e, c] : f.terms()) {
        Valuation v = valuation(c);
        if (!v.value || v.indeterminate) throw std::invalid_argument("coefficient valuation undefined");
        ell.push_back({e, *v.value});
    }
    // l_u - l_t as (coef, const)
    auto diff = [&](const Affine& u, const Affine& t) {
        std::vector<Rational> coef(d.nvars);
        for (std::size_t i = 0; i < d.nvars; ++i) coef[i] = Rational(u.e[i] - t.e[i]);
        return std::make_pair(coef, u.c - t.c);
    };
    UnitWitness out;
    for (std::size_t t = 0; t < ell.size(); ++t) {
        bool dominates = true;
        for (std::size_t u = 0; u < ell.size() && dominates; ++u) {
            if (u == t) continue;
            auto [coef, c0] = diff(ell[u], ell[t]);
            // is there v in D with l_u - l_t <= 0 ?
            std::vector<LinearIneq> sys = d.ineqs;
            std::vector<Rational> neg_coef(coef.size());
            for (std::size_t i = 0; i < coef.size(); ++i) neg_coef[i] = -coef[i];
            sys.push_back({neg_coef, c0, false});
            if (feasible_point(d.nvars, sys)) dominates = false;
        }
        if (dominates) {
            out.unit = true;
            out.dominating = ell[t].e;
            return out;
        }
    }
    for (std::size_t t = 0; t < ell.size(); ++t)
        for (std::size_t u = t + 1; u < ell.size(); ++u) {
            std::vector<LinearIneq> sys = d.ineqs;
            auto [coef, c0] = diff(ell[u], ell[t]);
            std::vector<Rational> neg_coef(coef.size());
            for (std::size_t i = 0; i < coef.size(); ++i) neg_coef[i] = -coef[i];
            sys.push_back({coef, -c0, false});
            sys.push_back({neg_coef, c0, false});
            for (std::size_t w = 0; w < ell.size(); ++w) {
                if (w == t || w == u) continue;
                auto [cw, k0] = diff(ell[w], ell[t]);
                sys.push_back({cw, -k0, false});
            }
            if (auto p = feasible_point(d.nvars, sys)) {
                out.tie_point = *p;
                return out;
            }
        }
    return out;
}

Interval Interval::cobordism(const Rational& rho1, const Rational& rho2) {
    if (rho1.sign() < 0 || rho2 < rho1) throw std::invalid_argument("need 0 <= rho1 <= rho2");
    // val > 0 on the disc side; closed ends otherwise
    return {rho1, rho2, rho1.sign() > 0, true};
}

std::string Interval::str() const {
    return std::string(lo_closed ? "[" : "(") + lo.str() + ", " + hi.str() + (hi_closed ? "]" : ")");
}

std::string JacPresentation::relation_str() const {
    if (zero) return "1";
    std::ostringstream os;
    bool first = true;
    for (auto& [e, c] : relation) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        if (e != 0) os << "*z^" << e;
    }
    return os.str();
}

std::vector<std::pair<int, NovikovScalar>> JacPresentation::times_z(int e) const {
    if (zero) return {};
    if (e + 1 < rank) return {{e + 1, NovikovScalar::one(Field::QI)}};
    // relation 1 - a T z^{-r} = 0 gives z^r = a T
    NovikovScalar aT = neg(relation.back().second);
    return {{e + 1 - rank, aT}};
}

JacPresentation jacobian_presentation(int m, int k, const Interval& iv) {
    check_scope(m, k);
    if (iv.hi < iv.lo || iv.lo.sign() < 0) throw std::invalid_argument("bad interval");
    const std::size_t n = static_cast<std::size_t>(m) + 1;
    LaurentPoly w = superpotential(m, k);
    auto d = partials(w);
    // Q = T z_1^{-1} ... z_m^{-1} z_{m+1}^k
    Exponent qe(n, -1);
    qe[n - 1] = k;
    LaurentPoly q = lp_monomial(n, qe, qi(1, 0, 1));
    for (int i = 0; i < m; ++i) {
        Exponent zi(n, 0);
        zi[i] = 1;
        // z_i dW/dz_i = z_i - Q
        LaurentPoly lhs = lp_mul(lp_monomial(n, zi, qi(1)), d[i]);
        LaurentPoly rhs = lp_add(lp_monomial(n, zi, qi(1)), lp_mul(lp_monomial(n, Exponent(n, 0), qi(-1)), q));
        if (!(lhs == rhs)) throw Inconsistency("symmetric reduction failed at z" + std::to_string(i + 1));
    }
    {
        Exponent zl(n, 0);
        zl[n - 1] = 1;
        // z_{m+1} dW/dz_{m+1} = z_{m+1} + k Q
        LaurentPoly lhs = lp_mul(lp_monomial(n, zl, qi(1)), d[n - 1]);
        LaurentPoly rhs = lp_add(lp_monomial(n, zl, qi(1)), lp_mul(lp_monomial(n, Exponent(n, 0), qi(k)), q));
        if (!(lhs == rhs)) throw Inconsistency("symmetric reduction failed at the last variable");
    }
    // on z_i = z, z_{m+1} = -k z the monomial Q becomes (-k)^k T z^{k-m}; relation z - Q = z (1 - (-k)^k T z^{-r})
    const int r = 1 + m - k;
    const std::int64_t a = ipow(-k, k);
    LaurentPoly rel(1);
    rel.add_term({0}, qi(1));
    rel.add_term({-r}, qi(-a, 0, 1));
    ValuationDomain dom = ValuationDomain::interval(1, 0, iv.lo, iv.lo_closed, iv.hi, iv.hi_closed);
    UnitWitness u = tropical_unit_test(rel, dom);
    JacPresentation p;
    p.m = m;
    p.k = k;
    if (u.unit) return p;
    p.zero = false;
    p.rank = r;
    p.relation = {{0, qi(1)}, {-r, qi(-a, 0, 1)}};
    for (int e = 0; e < r; ++e) p.basis.push_back(e);
    return p;
}

std::optional<NovikovScalar> tropical_seed(int m, int k) {
    check_scope(m, k);
    const int r = 1 + m - k;
    const std::int64_t a = ipow(-k, k);
    const std::int64_t mag = std::llabs(a);
    auto root = static_cast<std::int64_t>(std::llround(std::pow(static_cast<double>(mag), 1.0 / r)));
    for (std::int64_t cand = std::max<std::int64_t>(1, root - 1); cand <= root + 1; ++cand) {
        for (auto [re, im] : {std::pair<std::int64_t, std::int64_t>{cand, 0}, {-cand, 0}, {0, cand}, {0, -cand}}) {
            Coeff c = Coeff::make(Field::QI, re, im);
            Coeff p = Coeff::make(Field::QI, 1);
            for (int i = 0; i < r; ++i) p = coeff_mul(Field::QI, p, c);
            if (p == Coeff::make(Field::QI, a)) return NovikovScalar::monomial(Field::QI, c, Rational(1, r));
        }
    }
    return std::nullopt;
}

CriticalPoint critical_point_lift(int m, int k, const NovikovScalar& seed, const Rational& target, int max_iterations) {
    check_scope(m, k);
    if (seed.field() != Field::QI) throw BadSeed("seed must be over QI");
    if (!seed.has_terms()) throw BadSeed("zero seed");
    const int r = 1 + m - k;
    const Rational step(1, r);
    const NovikovScalar aT = qi(ipow(-k, k), 0, 1);
    {
        const Term& lead = seed.terms().front();
        Coeff p = Coeff::make(Field::QI, 1);
        for (int i = 0; i < r; ++i) p = coeff_mul(Field::QI, p, lead.c);
        if (lead.e * Rational(r) != Rational(1) || !(p == aT.terms().front().c))
            throw BadSeed("leading term does not solve z^" + std::to_string(r) + " = " + aT.str());
        for (auto& t : seed.terms())
            if (!(t.e / step).is_integer()) throw BadSeed("seed leaves the lattice (1/" + std::to_string(r) + ")Z");
    }
    // residual of the partials is val(g) - 1, so g is needed to target + 1
    const Rational work = target + 2;
    NovikovScalar w = seed;
    CriticalPoint out;
    auto g_of = [&](const NovikovScalar& z) { return with_precision(sub(power(z, r), aT), work); };
    for (int it = 0;; ++it) {
        NovikovScalar g = g_of(w);
        Valuation vg = valuation(g);
        out.history.push_back(vg.value ? *vg.value : work);
        if (!vg.value || vg.indeterminate || !(*vg.value < target + 1)) break;
        if (it == max_iterations) throw StalledLift("no convergence within the iteration budget");
        NovikovScalar gp = mul(qi(r), power(w, r - 1));
        if (!gp.has_terms()) throw StalledLift("derivative vanished");
        NovikovScalar corr = mul(g, invert(gp, work));
        w = with_precision(sub(w, corr), work);
        ++out.iterations;
        for (auto& t : w.terms())
            if (!(t.e / step).is_integer()) throw StalledLift("iterate left the lattice");
        if (out.history.size() >= 2 && !(valuation(g_of(w)).value.value_or(work) > out.history.back()))
            throw StalledLift("residual valuation did not increase");
    }
    const std::size_t n = static_cast<std::size_t>(m) + 1;
    out.coords.assign(n, w);
    out.coords[n - 1] = mul(qi(-k), w);
    for (auto& p : partials(superpotential(m, k))) out.residuals.push_back(valuation(lp_eval(p, out.coords, work)));
    out.last_valuation = *valuation(out.coords[n - 1]).value;
    return out;
}

Prediction predict(int m, int k, const Rational& rho1, const Rational& rho2) {
    check_scope(m, k);
    Prediction p;
    p.presentation = jacobian_presentation(m, k, Interval::cobordism(rho1, rho2));
    p.rank = p.presentation.rank;
    p.critical_valuation = Rational(1, 1 + m - k);
    p.nonvanishing_by_lagrangian = rho1 <= p.critical_valuation && p.critical_valuation <= rho2;
    if ((p.rank != 0) != p.nonvanishing_by_lagrangian)
        throw Inconsistency("Jacobian rank and critical-fiber criterion disagree");
    return p;
}

}  // namespace csh
