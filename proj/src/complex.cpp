#include "csh/complex.hpp"

#include <sstream>

namespace csh {

namespace {

std::string key(const std::string& id, bool theta) { return theta ? id + "\x1f" "theta" : id; }

void merge_entry(std::vector<Entry>& col, std::uint32_t t, const NovikovScalar& v) {
    for (auto it = col.begin(); it != col.end(); ++it) {
        if (it->target != t) continue;
        it->value = add(it->value, v);
        if (it->value.is_exact_zero()) col.erase(it);
        return;
    }
    if (!v.is_exact_zero()) col.push_back({t, v});
}

bool on_lattice(const Rational& e, const Rational& step) { return (e / step).is_integer(); }

using Accum = std::map<std::uint32_t, NovikovScalar>;

void accumulate(Accum& acc, std::uint32_t t, const NovikovScalar& v) {
    auto [it, fresh] = acc.try_emplace(t, v);
    if (!fresh) it->second = add(it->second, v);
}

}  // namespace

std::uint32_t FilteredComplex::add_generator(Generator g) {
    std::string k = key(g.id, g.theta);
    if (index_.count(k)) throw ShapeError("duplicate generator " + g.id + (g.theta ? " (theta)" : ""));
    auto i = static_cast<std::uint32_t>(gens_.size());
    index_.emplace(std::move(k), i);
    gens_.push_back(std::move(g));
    diff_.emplace_back();
    return i;
}

void FilteredComplex::add_entry(std::uint32_t source, std::uint32_t target, const NovikovScalar& v) {
    if (v.field() != field_) throw FieldMismatch();
    merge_entry(diff_.at(source), target, v);
}

std::int64_t FilteredComplex::find(const std::string& id, bool theta) const {
    auto it = index_.find(key(id, theta));
    return it == index_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

std::uint32_t FilteredComplex::at(const std::string& id, bool theta) const {
    auto i = find(id, theta);
    if (i < 0) throw std::out_of_range("no generator " + id);
    return static_cast<std::uint32_t>(i);
}

std::size_t FilteredComplex::entry_count() const {
    std::size_t n = 0;
    for (auto& c : diff_) n += c.size();
    return n;
}

void ChainMap::add(std::uint32_t s, std::uint32_t t, const NovikovScalar& v) { merge_entry(entries.at(s), t, v); }

ChainMap identity_map(const ComplexPtr& c) {
    ChainMap f(c, c);
    for (std::uint32_t i = 0; i < c->size(); ++i) f.add(i, i, NovikovScalar::one(c->field()));
    return f;
}

ChainMap zero_map(const ComplexPtr& s, const ComplexPtr& t) { return ChainMap(s, t); }

InvariantReport check_invariants(const FilteredComplex& c) {
    InvariantReport rep;
    std::ostringstream why;
    for (std::uint32_t g = 0; g < c.size(); ++g) {
        const Generator& src = c.gen(g);
        Accum sq;
        for (auto& [h, v] : c.diff(g)) {
            const Generator& tgt = c.gen(h);
            for (auto& t : v.terms()) {
                if (!on_lattice(t.e, c.lattice())) {
                    if (rep.lattice_ok) why << "off-lattice exponent " << t.e.str() << " on " << src.id << "; ";
                    rep.lattice_ok = false;
                }
                if (tgt.grading != src.grading + 1 - t.e * c.t_degree()) {
                    if (rep.degree_ok) why << "degree " << src.id << "->" << tgt.id << "; ";
                    rep.degree_ok = false;
                }
            }
            Valuation val = valuation(v);
            if (val.value && *val.value + tgt.base_action < src.base_action) {
                if (rep.action_ok) why << "action " << src.id << "->" << tgt.id << "; ";
                rep.action_ok = false;
            }
            for (auto& [k, w] : c.diff(h)) accumulate(sq, k, mul(v, w));
        }
        for (auto& [k, v] : sq) {
            if (v.has_terms()) {
                if (rep.d_squared_zero) why << "d^2 nonzero at " << src.id << "->" << c.gen(k).id << "; ";
                rep.d_squared_zero = false;
            }
        }
    }
    rep.detail = why.str();
    return rep;
}

void assert_invariants(const FilteredComplex& c) {
    InvariantReport r = check_invariants(c);
    if (!r.ok()) throw InvariantViolation(r.detail);
}

ChainMapReport check_chain_map(const ChainMap& f) {
    ChainMapReport rep;
    std::ostringstream why;
    const FilteredComplex& S = *f.source;
    const FilteredComplex& T = *f.target;
    for (std::uint32_t g = 0; g < S.size(); ++g) {
        Accum lhs;  // f(d g)
        for (auto& [h, v] : S.diff(g))
            for (auto& [k, w] : f.entries[h]) accumulate(lhs, k, mul(v, w));
        Accum rhs;  // d(f g)
        for (auto& [h, v] : f.entries[g]) {
            const Generator& tg = T.gen(h);
            for (auto& t : v.terms())
                if (tg.grading != S.gen(g).grading - t.e * T.t_degree()) {
                    if (rep.degree_ok) why << "degree at " << S.gen(g).id << "; ";
                    rep.degree_ok = false;
                }
            Valuation val = valuation(v);
            if (val.value && *val.value + tg.base_action < S.gen(g).base_action) {
                if (rep.action_ok) why << "action at " << S.gen(g).id << "; ";
                rep.action_ok = false;
            }
            for (auto& [k, w] : T.diff(h)) accumulate(rhs, k, mul(v, w));
        }
        for (auto& [k, v] : rhs) accumulate(lhs, k, neg(v));
        for (auto& [k, v] : lhs)
            if (v.has_terms()) {
                if (rep.commutes) why << "f d != d f at " << S.gen(g).id << "; ";
                rep.commutes = false;
            }
    }
    rep.detail = why.str();
    return rep;
}

ComplexPtr cone(const ChainMap& f) {
    const FilteredComplex& S = *f.source;
    const FilteredComplex& T = *f.target;
    if (S.field() != T.field()) throw FieldMismatch();
    if (S.t_degree() != T.t_degree() || S.lattice() != T.lattice()) throw ShapeError("cone: incompatible lattices");
    auto out = std::make_shared<FilteredComplex>(T.field(), T.lattice(), T.t_degree());
    for (auto g : T.generators()) {
        g.id = "t:" + g.id;
        out->add_generator(std::move(g));
    }
    const auto off = static_cast<std::uint32_t>(T.size());
    for (auto g : S.generators()) {
        g.id = "s:" + g.id;
        g.grading -= 1;
        out->add_generator(std::move(g));
    }
    for (std::uint32_t i = 0; i < T.size(); ++i)
        for (auto& [h, v] : T.diff(i)) out->add_entry(i, h, v);
    for (std::uint32_t i = 0; i < S.size(); ++i) {
        for (auto& [h, v] : S.diff(i)) out->add_entry(off + i, off + h, neg(v));
        for (auto& [h, v] : f.entries[i]) out->add_entry(off + i, h, v);
    }
    return out;
}

ComplexPtr telescope(const std::vector<ComplexPtr>& stages, const std::vector<ChainMap>& continuations) {
    if (stages.empty()) throw ShapeError("telescope: no stages");
    const std::size_t n = stages.size();
    if (continuations.size() + 1 != n && continuations.size() != n)
        throw ShapeError("telescope: need one continuation per consecutive pair of stages");
    const FilteredComplex& first = *stages.front();
    for (std::size_t i = 0; i < continuations.size(); ++i) {
        const ChainMap& c = continuations[i];
        if (c.source != stages[i]) throw ShapeError("telescope: continuation source mismatch");
        if (i + 1 < n && c.target != stages[i + 1]) throw ShapeError("telescope: continuation target mismatch");
        if (i + 1 == n && (c.target->size() != 0)) throw ShapeError("telescope: trailing map must target zero");
    }
    for (auto& s : stages)
        if (s->field() != first.field() || s->lattice() != first.lattice() || s->t_degree() != first.t_degree())
            throw ShapeError("telescope: stages disagree on field or lattice");

    auto out = std::make_shared<FilteredComplex>(first.field(), first.lattice(), first.t_degree());
    std::vector<std::uint32_t> base(n), theta_base(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        base[i] = static_cast<std::uint32_t>(out->size());
        for (auto g : stages[i]->generators()) {
            g.id += "@" + std::to_string(i);
            g.level = static_cast<int>(i);
            out->add_generator(std::move(g));
        }
        if (i < continuations.size()) {
            theta_base[i] = static_cast<std::uint32_t>(out->size());
            for (auto g : stages[i]->generators()) {
                g.id += "@" + std::to_string(i);
                g.level = static_cast<int>(i);
                g.theta = true;
                g.grading -= 1;
                out->add_generator(std::move(g));
            }
        }
    }
    const Field f = first.field();
    NovikovScalar minus_one = neg(NovikovScalar::one(f));
    for (std::size_t i = 0; i < n; ++i) {
        const FilteredComplex& S = *stages[i];
        for (std::uint32_t g = 0; g < S.size(); ++g)
            for (auto& [h, v] : S.diff(g)) out->add_entry(base[i] + g, base[i] + h, v);
        if (i >= continuations.size()) continue;
        // d(y theta) = c(y) - y - (d y) theta
        for (std::uint32_t g = 0; g < S.size(); ++g) {
            std::uint32_t yt = theta_base[i] + g;
            if (i + 1 < n)
                for (auto& [h, v] : continuations[i].entries[g]) out->add_entry(yt, base[i + 1] + h, v);
            out->add_entry(yt, base[i] + g, minus_one);
            for (auto& [h, v] : S.diff(g)) out->add_entry(yt, theta_base[i] + h, neg(v));
        }
    }
    return out;
}

ComplexPtr dualize(const FilteredComplex& c, const Rational& grading_shift) {
    auto out = std::make_shared<FilteredComplex>(c.field(), c.lattice(), c.t_degree());
    for (auto g : c.generators()) {
        g.grading = -g.grading + grading_shift;
        g.base_action = -g.base_action;
        g.dual = !g.dual;
        out->add_generator(std::move(g));
    }
    for (std::uint32_t g = 0; g < c.size(); ++g)
        for (auto& [h, v] : c.diff(g)) out->add_entry(h, g, v);
    return out;
}

}  // namespace csh
