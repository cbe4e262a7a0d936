#include <algorithm>
#include <map>
#include <set>

#include "csh/complex.hpp"

namespace csh {

namespace {

struct Key {
    std::uint32_t gen;
    Rational s;
    friend bool operator<(const Key& x, const Key& y) {
        if (x.gen != y.gen) return x.gen < y.gen;
        return x.s < y.s;
    }
};

using Chain = std::map<Key, Coeff>;

void add_to(Chain& ch, Field f, const Key& k, const Coeff& c) {
    auto [it, fresh] = ch.try_emplace(k, c);
    if (!fresh) it->second = coeff_add(f, it->second, c);
    if (it->second.is_zero()) ch.erase(it);
}

}  // namespace

std::vector<Rational> PrimitiveResult::action_profile() const {
    std::vector<Rational> out;
    for (auto& t : primitive) out.push_back(t.action);
    return out;
}

PrimitiveResult primitive_search(const FilteredComplex& c, const std::vector<ChainTerm>& cycle,
                                 const Rational& action_bound, std::size_t max_steps) {
    const Field f = c.field();
    std::vector<std::vector<std::pair<std::uint32_t, const NovikovScalar*>>> preds(c.size());
    for (std::uint32_t g = 0; g < c.size(); ++g)
        for (auto& e : c.diff(g)) preds[e.target].push_back({g, &e.value});

    auto action = [&](const Key& k) { return k.s + c.gen(k.gen).base_action; };
    Chain residual;
    for (auto& t : cycle) add_to(residual, f, {t.gen, t.s}, t.c);
    std::set<std::uint32_t> used;
    PrimitiveResult out;

    for (std::size_t step = 0; step < max_steps && !residual.empty(); ++step) {
        auto low = std::min_element(residual.begin(), residual.end(), [&](auto& x, auto& y) {
            Rational ax = action(x.first), ay = action(y.first);
            return ax < ay || (ax == ay && x.first < y.first);
        });
        if (action(low->first) > action_bound) break;
        const Key target = low->first;
        const Coeff want = low->second;

        bool found = false;
        Key best{};
        Coeff best_c{};
        Rational best_act;
        for (auto& [h, v] : preds[target.gen]) {
            if (used.count(h)) continue;
            for (auto& t : v->terms()) {
                Key k{h, target.s - t.e};
                Rational a = action(k);
                if (!found || a > best_act || (a == best_act && k < best)) {
                    found = true;
                    best = k;
                    best_act = a;
                    best_c = coeff_mul(f, want, coeff_inv(f, t.c));
                }
            }
        }
        if (!found) {
            out.stuck = true;
            break;
        }
        used.insert(best.gen);
        out.primitive.push_back({best.gen, best.s, best_c, best_act});
        // residual -= d(best_c T^s h)
        for (auto& [k, v] : c.diff(best.gen))
            for (auto& t : v.terms())
                add_to(residual, f, {k, best.s + t.e}, coeff_neg(f, coeff_mul(f, best_c, t.c)));
    }
    // residual now means d(xi) - cycle; report it as d(xi) = cycle + residual
    for (auto& [k, cf] : residual) out.residual.push_back({k.gen, k.s, coeff_neg(f, cf), action(k)});
    return out;
}

}  // namespace csh
