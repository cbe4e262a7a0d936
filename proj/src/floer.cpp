#include "csh/floer.hpp"

#include <cmath>

namespace csh {

namespace {

std::int64_t isqrt(std::int64_t v) {
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
    while (r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

NovikovScalar one() { return NovikovScalar::one(Field::F2); }
NovikovScalar tpow(const Rational& e) { return NovikovScalar::t_power(Field::F2, e); }

std::vector<OrbitGenerator> stage_orbits(int n) {
    std::vector<OrbitGenerator> out{{Family::X, false, 0}, {Family::Y, false, 0}};
    for (int k = 1; k <= n; ++k) {
        out.push_back({Family::X, true, k});
        out.push_back({Family::X, false, k});
        out.push_back({Family::Y, true, k});
        out.push_back({Family::Y, false, k});
    }
    return out;
}

}  // namespace

Rational RadiusProfile::stage_rho(int n) const {
    if (n < 0) throw std::invalid_argument("stage index must be >= 0");
    if (rule == ProfileRule::Quadratic) {
        std::int64_t m = n + 2;
        return rho * (Rational(1) - Rational(1, m * m));
    }
    std::int64_t v = n + 2;
    std::int64_t q = isqrt(v);
    std::int64_t t = v - q * q;  // 0 <= t <= 2q
    Rational hi(3, q + 3), lo(3, q + 4);
    Rational d = hi - (hi - lo) * Rational(t, 2 * q + 1);
    return rho * (Rational(1) - d);
}

std::string OrbitGenerator::id() const {
    return std::string(family == Family::X ? "x" : "y") + std::to_string(level) + (plus ? "+" : "-");
}

Rational OrbitGenerator::grading() const {
    Rational fiber = family == Family::X ? 2 : 0;
    return Rational(-2 * level) + fiber + (plus ? Rational(1, 2) : Rational(-1, 2));
}

ComplexPtr build_stage(const RadiusProfile& p, int n) {
    auto c = std::make_shared<FilteredComplex>(Field::F2, 1, 2);
    for (auto& o : stage_orbits(n)) {
        Rational action = o.level == 0 ? Rational(0) : -Rational(o.level) * p.stage_rho(o.level);
        c->add_generator({o.id(), o.grading(), action, 0, false, false});
    }
    for (int k = 1; k <= n; ++k) {
        std::string km = std::to_string(k - 1), kk = std::to_string(k);
        c->add_entry(c->at("x" + kk + "+"), c->at("x" + km + "-"), one());
        c->add_entry(c->at("x" + kk + "+"), c->at("y" + km + "-"), tpow(1));
        c->add_entry(c->at("y" + kk + "+"), c->at("y" + km + "-"), one());
        c->add_entry(c->at("y" + kk + "+"), c->at("x" + kk + "-"), one());
    }
    return c;
}

ComplexPtr build_cochain_model(const RadiusProfile& p, int N) {
    if (N < 1) throw std::invalid_argument("truncation N must be >= 1");
    std::vector<ComplexPtr> stages;
    for (int n = 0; n <= N; ++n) stages.push_back(build_stage(p, n));
    std::vector<ChainMap> maps;
    for (int n = 0; n < N; ++n) {
        ChainMap inc(stages[n], stages[n + 1]);
        for (std::uint32_t g = 0; g < stages[n]->size(); ++g)
            inc.add(g, stages[n + 1]->at(stages[n]->gen(g).id), one());
        maps.push_back(std::move(inc));
    }
    auto tel = telescope(stages, maps);
    assert_invariants(*tel);
    return tel;
}

ComplexPtr build_chain_model(const RadiusProfile& p, int N) {
    auto d = dualize(*build_cochain_model(p, N), 1);
    assert_invariants(*d);
    return d;
}

ChainMap build_c_map(const ComplexPtr& chain_model, const ComplexPtr& cochain_model) {
    ChainMap f(chain_model, cochain_model);
    f.add(chain_model->at("x0-@0"), cochain_model->at("y0-@0"), one());
    ChainMapReport r = check_chain_map(f);
    if (!r.ok()) throw ChainMapViolation(r.detail);
    return f;
}

std::string kind_name(InvariantKind k) {
    switch (k) {
        case InvariantKind::DiscCohomology: return "disc_cohomology";
        case InvariantKind::DiscHomology: return "disc_homology";
        case InvariantKind::Rabinowitz: return "rabinowitz";
        case InvariantKind::Cobordism: return "cobordism";
    }
    return "?";
}

int default_truncation(const Rational& rho, const Rational& b_max) {
    if (rho < Rational(1)) return static_cast<int>((Rational(2) * b_max / (Rational(1) - rho)).ceil()) + 4;
    return static_cast<int>((Rational(4) * b_max).ceil());
}

int chain_side_truncation(const Rational& rho, const Rational& b_max) {
    int n = default_truncation(rho, b_max);
    if (rho > Rational(1)) return n;
    RadiusProfile p = RadiusProfile::chain_side(rho);
    for (int i = 1; i < 1000000; ++i)
        if (Rational(i - 1) - Rational(i) * p.stage_rho(i) > b_max) return std::max(n, i + 4);
    return n;
}

int default_truncation(const Rational& inner, const Rational& outer, const Rational& b_max) {
    int n = default_truncation(outer, b_max);
    if (inner.sign() > 0) n = std::max(n, chain_side_truncation(inner, b_max));
    return n;
}

namespace {

struct Rabinowitz {
    ComplexPtr chain, cochain, cone;
    ChainMap c;
};

Rabinowitz build_cone(const Rational& inner, const Rational& outer, int N) {
    Rabinowitz r;
    r.chain = build_chain_model(RadiusProfile::chain_side(inner), N);
    r.cochain = build_cochain_model(RadiusProfile::cochain_side(outer), N);
    r.c = build_c_map(r.chain, r.cochain);
    r.cone = cone(r.c);
    assert_invariants(*r.cone);
    return r;
}

}  // namespace

InvariantResult compute_invariant(InvariantKind kind, const Rational& inner_rho, const Rational& outer_rho, int N,
                                  const Schedule& schedule, const RankOptions& opt) {
    if (outer_rho.sign() <= 0) throw std::invalid_argument("outer radius parameter must be positive");
    if (inner_rho.sign() < 0 || outer_rho < inner_rho) throw std::invalid_argument("need 0 <= inner <= outer");
    RankOptions o = opt;
    o.truncation_level = N - 1;
    InvariantResult res{kind, inner_rho, outer_rho, N, {}};
    switch (kind) {
        case InvariantKind::DiscCohomology:
            res.ranks = completed_ranks(*build_cochain_model(RadiusProfile::cochain_side(outer_rho), N), schedule, o);
            break;
        case InvariantKind::DiscHomology:
            res.ranks = completed_ranks(*build_chain_model(RadiusProfile::chain_side(outer_rho), N), schedule, o);
            break;
        case InvariantKind::Rabinowitz:
            res.inner_rho = outer_rho;
            res.ranks = completed_ranks(*build_cone(outer_rho, outer_rho, N).cone, schedule, o);
            break;
        case InvariantKind::Cobordism:
            if (inner_rho.is_zero())
                res.ranks =
                    completed_ranks(*build_cochain_model(RadiusProfile::cochain_side(outer_rho), N), schedule, o);
            else
                res.ranks = completed_ranks(*build_cone(inner_rho, outer_rho, N).cone, schedule, o);
            break;
    }
    return res;
}

bool LesReport::exact() const {
    for (auto& n : nodes)
        if (!n.exact()) return false;
    return true;
}

namespace {

// source part of the cone as its own complex: gradings -1, differential negated
ComplexPtr suspend(const FilteredComplex& c) {
    auto out = std::make_shared<FilteredComplex>(c.field(), c.lattice(), c.t_degree());
    for (auto g : c.generators()) {
        g.grading -= 1;
        out->add_generator(std::move(g));
    }
    for (std::uint32_t g = 0; g < c.size(); ++g)
        for (auto& [h, v] : c.diff(g)) out->add_entry(g, h, neg(v));
    return out;
}

Rational reduce(const Rational& d, const Rational& t) { return d - t * Rational((d / t).floor()); }

}  // namespace

LesReport les_check(const Rational& inner_rho, const Rational& outer_rho, int N, const Schedule& schedule,
                    const RankOptions& opt) {
    if (inner_rho.sign() <= 0 || outer_rho < inner_rho) throw std::invalid_argument("need 0 < inner <= outer");
    RankOptions o = opt;
    o.truncation_level = N - 1;
    Rabinowitz r = build_cone(inner_rho, outer_rho, N);
    auto shifted = suspend(*r.chain);

    ChainMap inc(r.cochain, r.cone);
    for (std::uint32_t g = 0; g < r.cochain->size(); ++g) {
        const Generator& gen = r.cochain->gen(g);
        inc.add(g, r.cone->at("t:" + gen.id, gen.theta), one());
    }
    ChainMap proj(r.cone, shifted);
    for (std::uint32_t g = 0; g < r.chain->size(); ++g) {
        const Generator& gen = r.chain->gen(g);
        proj.add(r.cone->at("s:" + gen.id, gen.theta), g, one());
    }
    for (auto* m : {&inc, &proj}) {
        ChainMapReport cr = check_chain_map(*m);
        if (!cr.ok()) throw ChainMapViolation(cr.detail);
    }

    LesReport rep;
    auto v = completed_ranks(*r.chain, schedule, o).graded;
    auto m = completed_ranks(*r.cochain, schedule, o).graded;
    auto w = completed_ranks(*r.cone, schedule, o).graded;
    auto c = completed_map_ranks(r.c, schedule, o).graded;
    auto i = completed_map_ranks(inc, schedule, o).graded;
    auto p = completed_map_ranks(proj, schedule, o).graded;
    rep.homology_inner = v;
    rep.cohomology_outer = m;
    rep.cobordism = w;

    const Rational t = r.cone->t_degree();
    auto get = [&](const std::map<Rational, std::int64_t>& mp, const Rational& d) -> std::int64_t {
        auto it = mp.find(reduce(d, t));
        return it == mp.end() ? 0 : it->second;
    };
    for (auto& e : representative_degrees(*r.cone)) {
        rep.nodes.push_back({e, "cohomology(outer)", get(m, e), get(c, e), get(i, e)});
        rep.nodes.push_back({e, "cobordism", get(w, e), get(i, e), get(p, e)});
        rep.nodes.push_back({e, "homology(inner)[1]", get(v, e + 1), get(p, e), get(c, e + 1)});
    }
    for (auto& n : rep.nodes)
        if (!n.exact()) throw ExactnessFailure(n.name + " in degree " + n.degree.str(), rep);
    return rep;
}

std::string zlimit_name(ZLimit z) {
    switch (z) {
        case ZLimit::DivergesToInfinity: return "DivergesToInfinity";
        case ZLimit::Bounded: return "Bounded";
        case ZLimit::DivergesToMinusInfinity: return "DivergesToMinusInfinity";
    }
    return "?";
}

namespace {

using Poly = std::vector<Rational>;  // coefficients, lowest degree first

Poly pmul(const Poly& a, const Poly& b) {
    Poly r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

Poly padd(Poly a, const Poly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rational(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    while (a.size() > 1 && a.back().is_zero()) a.pop_back();
    return a;
}

Poly pscale(Poly a, const Rational& c) {
    for (auto& x : a) x *= c;
    return a;
}

}  // namespace

ZCertificate z_series_certificate(const Rational& rho, int profile_terms) {
    if (rho.sign() <= 0) throw std::invalid_argument("rho must be positive");
    RadiusProfile p = RadiusProfile::cochain_side(rho);
    ZCertificate out{};
    for (int i = 1; i <= profile_terms; ++i)
        out.profile.push_back(Rational(i - 1) - Rational(i) * p.stage_rho(i));
    // a(i) = ((i-1)(i+2)^2 - rho i ((i+2)^2 - 1)) / (i+2)^2
    Poly sq = pmul({2, 1}, {2, 1});
    Poly num = padd(pmul({-1, 1}, sq), pscale(pmul({0, 1}, padd(sq, {-1})), -rho));
    const Poly& den = sq;
    std::size_t dn = num.size() - 1, dd = den.size() - 1;
    if (dn > dd) {
        out.kind = (num.back() / den.back()).sign() > 0 ? ZLimit::DivergesToInfinity : ZLimit::DivergesToMinusInfinity;
    } else {
        out.kind = ZLimit::Bounded;
        out.limit = dn == dd ? num.back() / den.back() : Rational(0);
    }
    return out;
}

}  // namespace csh
