#include <doctest.h>

#include "csh/floer.hpp"
#include "dense_oracle.hpp"
#include "helpers.hpp"
#include "random_complex.hpp"

using namespace csh;
using namespace testing;

namespace {

ComplexPtr one_generator(Rational action = 0) {
    auto c = std::make_shared<FilteredComplex>(Field::F2, 1, 2);
    c->add_generator({"g", 0, action, 0, false, false});
    return c;
}

ComplexPtr arrow(const NovikovScalar& v, Rational a_src = 0, Rational a_tgt = 0) {
    auto c = std::make_shared<FilteredComplex>(v.field(), 1, 2);
    auto g = c->add_generator({"g", 0, a_src, 0, false, false});
    auto e = valuation(v).value.value_or(0);
    auto h = c->add_generator({"h", Rational(1) - Rational(2) * e, a_tgt, 0, false, false});
    c->add_entry(g, h, v);
    return c;
}

std::int64_t total(const std::map<Rational, std::int64_t>& m) {
    std::int64_t t = 0;
    for (auto& [d, r] : m) t += r;
    return t;
}

// nonzero entries only
std::map<Rational, std::int64_t> nonzero(const std::map<Rational, std::int64_t>& m) {
    std::map<Rational, std::int64_t> out;
    for (auto& [d, r] : m)
        if (r) out[d] = r;
    return out;
}

}  // namespace

TEST_SUITE("complex") {
    TEST_CASE("window basis enumeration") {
        auto c = one_generator();
        auto b = window_basis(*c, q(-1, 2), q(3, 2));
        REQUIRE(b.size() == 2);
        CHECK(b[0].s == 0);
        CHECK(b[1].s == 1);
        auto c2 = one_generator(-2);
        auto b2 = window_basis(*c2, 0, 1);
        REQUIRE(b2.size() == 1);
        CHECK(b2[0].s == 3);
    }

    TEST_CASE("window basis of the N = 3 telescope: enumeration, count formula, frozen oracle") {
        auto c = build_cochain_model(RadiusProfile::cochain_side(q(1, 2)), 3);
        std::size_t formula = 0;
        for (const auto& g : c->generators())
            formula += static_cast<std::size_t>((Rational(5) - g.base_action).floor() - (Rational(-5) - g.base_action).floor());
        auto b = window_basis(*c, -5, 5);
        CHECK(b.size() == formula);
        CHECK(b.size() == dense_cells(*c, -5, 5).size());
        CHECK(b.size() == 500);  // tests/oracles/orbit_window.py
    }

    TEST_CASE("zero differential and acyclic pair") {
        auto c = std::make_shared<FilteredComplex>(Field::F2, 1, 2);
        for (int i = 0; i < 4; ++i) c->add_generator({"g" + std::to_string(i), i, 0, 0, false, false});
        CHECK(homology_window(*c, q(-1, 2), q(1, 2)).total() == 4);
        auto p = arrow(NovikovScalar::one(Field::F2));
        CHECK(homology_window(*p, q(-1, 2), q(1, 2)).total() == 0);
    }

    TEST_CASE("telescope window rho = 1/2, N = 30, window (-10, 5] matches the frozen oracle") {
        auto c = build_cochain_model(RadiusProfile::cochain_side(q(1, 2)), 30);
        auto w = homology_window(*c, -10, 5);
        // tests/oracles/orbit_window.py
        const std::map<std::string, std::int64_t> frozen{
            {"-101/2", 1}, {"-97/2", 3}, {"-93/2", 4}, {"-89/2", 4}, {"-85/2", 4}, {"-81/2", 4}, {"-77/2", 4},
            {"-73/2", 4},  {"-69/2", 4}, {"-65/2", 4}, {"-61/2", 4}, {"-57/2", 4}, {"-53/2", 4}, {"-49/2", 4},
            {"-45/2", 4},  {"-41/2", 2}, {"-39/2", 1}, {"-35/2", 2}, {"-31/2", 2}, {"-27/2", 2}, {"-23/2", 2},
            {"-19/2", 2},  {"-15/2", 2}, {"-11/2", 2}, {"-7/2", 2},  {"-3/2", 2},  {"1/2", 2},   {"5/2", 2},
            {"9/2", 2},    {"13/2", 2},  {"17/2", 1}};
        std::map<Rational, std::int64_t> want;
        for (auto& [d, r] : frozen) want[Rational::parse(d)] = r;
        CHECK(nonzero(w.ranks) == want);
        CHECK(w.total() == 86);
        for (auto backend : {Backend::Reference, Backend::Serial})
            CHECK(homology_window(*c, -10, 5, backend).ranks == w.ranks);
    }

    TEST_CASE("cone of the identity is acyclic") {
        auto c = one_generator();
        auto cn = cone(identity_map(c));
        assert_invariants(*cn);
        for (int a = -3; a < 3; ++a) CHECK(homology_window(*cn, Rational(a), Rational(a) + q(5, 2)).total() == 0);
        auto st = build_stage(RadiusProfile::cochain_side(q(3, 2)), 4);
        auto cs = cone(identity_map(st));
        assert_invariants(*cs);
        CHECK(homology_window(*cs, -6, 6).total() == 0);
    }

    TEST_CASE("cone of the zero map splits") {
        auto t = build_stage(RadiusProfile::cochain_side(q(1, 2)), 3);
        auto s = build_stage(RadiusProfile::cochain_side(2), 2);
        auto cn = cone(zero_map(s, t));
        auto wc = homology_window(*cn, -4, 4);
        auto wt = homology_window(*t, -4, 4);
        auto ws = homology_window(*s, -4, 4);
        std::map<Rational, std::int64_t> want;
        for (auto& [d, r] : wt.ranks) want[d] += r;
        for (auto& [d, r] : ws.ranks) want[d - 1] += r;  // source grading lowered by one
        CHECK(nonzero(wc.ranks) == nonzero(want));
    }

    TEST_CASE("telescope of one stage with its map to zero is acyclic") {
        auto st = build_stage(RadiusProfile::cochain_side(1), 3);
        auto tel = telescope({st}, {ChainMap(st, std::make_shared<FilteredComplex>(Field::F2, 1, 2))});
        assert_invariants(*tel);
        CHECK(tel->size() == 2 * st->size());
        for (int a = -8; a < 8; a += 4) CHECK(homology_window(*tel, Rational(a), Rational(a + 5)).total() == 0);
    }

    TEST_CASE("telescope of two identical stages along the identity") {
        auto st = build_stage(RadiusProfile::cochain_side(q(1, 2)), 2);
        auto tel = telescope({st, st}, {identity_map(st)});
        assert_invariants(*tel);
        for (int a = -6; a < 6; a += 3) {
            auto w = homology_window(*tel, Rational(a), Rational(a + 4));
            CHECK(nonzero(w.ranks) == nonzero(homology_window(*st, Rational(a), Rational(a + 4)).ranks));
            CHECK(nonzero(w.ranks) == nonzero(dense_window_homology(*tel, Rational(a), Rational(a + 4))));
        }
    }

    TEST_CASE("dualize") {
        auto a = arrow(NovikovScalar::t_power(Field::F2, 2), 1, q(1, 2));
        auto d = dualize(*a);
        REQUIRE(d->size() == 2);
        CHECK(d->gen(0).base_action == -1);
        CHECK(d->gen(1).base_action == q(-1, 2));
        CHECK(d->diff(0).empty());
        REQUIRE(d->diff(1).size() == 1);
        CHECK(d->diff(1)[0].target == 0);
        CHECK(d->diff(1)[0].value == NovikovScalar::t_power(Field::F2, 2));
        assert_invariants(*d);

        std::mt19937_64 rng(7);
        for (int i = 0; i < 20; ++i) {
            auto c = random_filtered_complex(rng, {});
            auto dd = dualize(*dualize(c));
            REQUIRE(dd->size() == c.size());
            for (std::uint32_t g = 0; g < c.size(); ++g) {
                CHECK(dd->gen(g).grading == c.gen(g).grading);
                CHECK(dd->gen(g).base_action == c.gen(g).base_action);
                CHECK(dd->gen(g).dual == c.gen(g).dual);
                auto x = c.diff(g), y = dd->diff(g);
                auto by_target = [](auto v) {
                    std::map<std::uint32_t, NovikovScalar> m;
                    for (auto& e : v) m[e.target] = e.value;
                    return m;
                };
                CHECK(by_target(x) == by_target(y));
            }
        }
        auto fig = dualize(*build_cochain_model(RadiusProfile::cochain_side(q(1, 2)), 6), 1);
        CHECK(check_invariants(*fig).ok());
    }

    TEST_CASE("completed ranks of a single generator stabilize immediately") {
        auto c = one_generator();
        auto r = completed_ranks(*c, Schedule::symmetric(1, 1, 4));
        CHECK(r.stabilized);
        CHECK(r.total == 1);
        for (auto& w : r.windows) CHECK(w.total() == 1);
        for (auto& s : r.steps) CHECK(s.total() == 1);
    }

    TEST_CASE("schedule must widen") {
        CHECK_THROWS_AS(Schedule::make(0, 1, 0, 3), std::invalid_argument);
        CHECK_THROWS_AS(Schedule::make(1, 1, 1, 2), std::invalid_argument);
    }

    TEST_CASE("invariant checks reject bad complexes") {
        auto c = std::make_shared<FilteredComplex>(Field::F2, 1, 2);
        auto g = c->add_generator({"g", 0, 0, 0, false, false});
        auto h = c->add_generator({"h", 5, 0, 0, false, false});
        c->add_entry(g, h, NovikovScalar::one(Field::F2));
        CHECK_FALSE(check_invariants(*c).degree_ok);
        auto l = std::make_shared<FilteredComplex>(Field::F2, 1, 2);
        auto a = l->add_generator({"a", 0, 0, 0, false, false});
        auto b = l->add_generator({"b", 0, 0, 0, false, false});
        l->add_entry(a, b, NovikovScalar::t_power(Field::F2, q(1, 2)));
        CHECK_FALSE(check_invariants(*l).lattice_ok);
        auto m = std::make_shared<FilteredComplex>(Field::F2, 1, 2);
        auto x = m->add_generator({"x", 0, 3, 0, false, false});
        auto y = m->add_generator({"y", 1, 0, 0, false, false});
        m->add_entry(x, y, NovikovScalar::one(Field::F2));
        CHECK_FALSE(check_invariants(*m).action_ok);
        CHECK_THROWS_AS(assert_invariants(*m), InvariantViolation);
    }

    TEST_CASE("primitive of a single arrow") {
        auto a = arrow(NovikovScalar::one(Field::F2));
        auto r = primitive_search(*a, {{1, 0, Coeff::make(Field::F2, 1), 0}}, 10);
        CHECK_FALSE(r.stuck);
        REQUIRE(r.primitive.size() == 1);
        CHECK(r.primitive[0].gen == 0);
        CHECK(r.primitive[0].s == 0);
        CHECK(r.residual.empty());
    }
}

TEST_SUITE("complex-properties") {
    TEST_CASE("homology_window equals the dense oracle on 50 random complexes") {
        std::mt19937_64 rng(424242);
        std::uniform_int_distribution<int> start(-24, 8);
        int checked = 0, multi_term = 0, big = 0, mixed = 0;
        for (int i = 0; i < 50; ++i) {
            RandomComplexSpec spec;
            spec.pairs = 3 + i % 5;
            spec.singles = 1 + i % 4;
            spec.t_degree = i % 2 == 0 ? 2 : 0;
            auto c = random_filtered_complex(rng, spec);
            CAPTURE(i);
            REQUIRE(check_invariants(c).ok());
            Rational a(start(rng), 4);
            // each generator contributes at most ceil(b - a) cells
            int max_quarters = 4 * (200 / static_cast<int>(c.size()) - 1);
            Rational b = a + Rational(std::uniform_int_distribution<int>(1, max_quarters)(rng), 4);
            auto cells = dense_cells(c, a, b);
            REQUIRE(cells.size() <= 200);
            auto oracle = nonzero(dense_window_homology(c, a, b));
            for (auto backend : {Backend::Reference, Backend::Serial, Backend::Parallel})
                CHECK(nonzero(homology_window(c, a, b, backend).ranks) == oracle);
            checked += cells.size() > 0;
            bool multi = false;
            for (std::uint32_t g = 0; g < c.size(); ++g)
                for (auto& e : c.diff(g)) multi = multi || e.value.terms().size() > 1;
            multi_term += multi;
            big += cells.size() >= 100;
            std::size_t entries = 0;
            for (std::uint32_t g = 0; g < c.size(); ++g) entries += c.diff(g).size();
            mixed += entries > static_cast<std::size_t>(spec.pairs);
        }
        CHECK(checked >= 45);
        // the basis changes must actually mix generators
        CHECK(multi_term >= 10);
        CHECK(mixed >= 25);
        CHECK(big >= 10);
    }

    TEST_CASE("every constructed Floer complex satisfies the invariants") {
        for (auto rho : {q(1, 4), q(1, 2), Rational(1), q(3, 2), Rational(2)}) {
            CAPTURE(rho.str());
            CHECK(check_invariants(*build_stage(RadiusProfile::cochain_side(rho), 6)).ok());
            CHECK(check_invariants(*build_cochain_model(RadiusProfile::cochain_side(rho), 8)).ok());
            CHECK(check_invariants(*build_chain_model(RadiusProfile::chain_side(rho), 8)).ok());
        }
    }
}
