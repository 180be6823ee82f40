#include <gtest/gtest.h>

#include "omlbell/measures.hpp"
#include "oracles.hpp"

using namespace omlbell;

namespace {

LatticePtr mo3() { return share(build_mo(3)); }

SMap example1(const LatticePtr& l) { return SMap::make(l, oracle::example1_table(*l)); }

std::vector<Rational> uniform_mo3_state(const Oml& l) {
    std::vector<Rational> m(l.size(), Rational(1, 2));
    m[l.bottom()] = 0;
    m[l.top()] = 1;
    return m;
}

}  // namespace

TEST(State, Validation) {
    LatticePtr b2 = share(build_boolean(2));
    EXPECT_TRUE(validate_state(*b2, std::vector<Rational>{0, Rational(1, 2), Rational(1, 2), 1}).valid());

    LatticePtr l = mo3();
    EXPECT_TRUE(validate_state(*l, uniform_mo3_state(*l)).valid());

    std::vector<Rational> bad{0, Rational(7, 10), Rational(1, 2), 1};
    ValidationReport r = validate_state(*b2, bad);
    ASSERT_GT(r.count("additive"), 0u);
    EXPECT_THROW(State::make(b2, bad), ValidationError);
}

TEST(SMapTest, ExampleTableIsValid) {
    LatticePtr l = mo3();
    EXPECT_TRUE(smap_validate(*l, oracle::example1_table(*l)).valid());
}

TEST(SMapTest, ProductTableFailsS2) {
    LatticePtr l = mo3();
    auto m = uniform_mo3_state(*l);
    const std::size_t n = l->size();
    std::vector<Rational> p(n * n);
    for (ElementId a = 0; a < n; ++a)
        for (ElementId b = 0; b < n; ++b) p[a * n + b] = m[a] * m[b];
    ValidationReport r = smap_validate(*l, p);
    ElementId a1 = l->at("a1"), a1c = l->at("a1'");
    bool saw = false;
    for (const auto& f : r.failures)
        if (f.axiom == "s2" && f.witness == std::vector<ElementId>{a1, a1c}) saw = true;
    EXPECT_TRUE(saw);
}

TEST(SMapTest, ClassicalTableOnBoolean) {
    LatticePtr l = share(build_boolean(3));
    State m = oracle::uniform_boolean_state(l);
    SMap p = classical_smap_from_state(m);
    const std::size_t n = l->size();
    for (ElementId a = 0; a < n; ++a)
        for (ElementId b = 0; b < n; ++b) EXPECT_EQ(p(a, b), m(l->meet(a, b)));
    EXPECT_EQ(p(l->top(), l->top()), 1);
    EXPECT_EQ(state_from_smap(p).values(), m.values());

    LatticePtr b2 = share(build_boolean(2));
    SMap q = classical_smap_from_state(oracle::uniform_boolean_state(b2));
    EXPECT_EQ(q(b2->at("a"), b2->at("a'")), 0);
    EXPECT_EQ(q(b2->at("a"), b2->at("a")), Rational(1, 2));

    LatticePtr nb = mo3();
    EXPECT_THROW(classical_smap_from_state(State::make(nb, uniform_mo3_state(*nb))), ArgumentError);
}

TEST(SMapTest, StateFromSmap) {
    LatticePtr l = mo3();
    SMap p = example1(l);
    State m = state_from_smap(p);
    for (auto a : l->atoms()) EXPECT_EQ(m(a), Rational(1, 2));
    EXPECT_EQ(m(l->top()), 1);
    EXPECT_EQ(m(l->bottom()), 0);
}

TEST(SMapTest, JoinMapValues) {
    LatticePtr l = mo3();
    SMap p = example1(l);
    JMap q = jmap_from_smap(p);
    ElementId a1 = l->at("a1"), a2 = l->at("a2");
    EXPECT_EQ(q(a1, a2), Rational(9, 10));
    EXPECT_EQ(q(a1, l->ortho(a1)), 1);
    EXPECT_EQ(q(l->bottom(), l->bottom()), 0);
    EXPECT_TRUE(jmap_validate(*l, q.values()).valid());
}

TEST(SMapTest, DifferenceMapValues) {
    LatticePtr l = mo3();
    SMap p = example1(l);
    DMap d = dmap_from_smap(p);
    ElementId a1 = l->at("a1"), a2 = l->at("a2");
    EXPECT_EQ(d(a1, a2), Rational(4, 5));
    for (ElementId a = 0; a < l->size(); ++a) {
        EXPECT_EQ(d(a, a), 0);
        EXPECT_EQ(d(a, l->bottom()), p.diag(a));
    }
    EXPECT_TRUE(dmap_validate(*l, d.values()).valid());
    EXPECT_TRUE(d.symmetric());
}

TEST(SMapTest, DMapAxiomFailure) {
    LatticePtr l = share(build_boolean(2));
    SMap p = classical_smap_from_state(oracle::uniform_boolean_state(l));
    auto d = dmap_from_smap(p).values();
    d[1 * l->size() + 1] = Rational(1, 2);
    EXPECT_GT(dmap_validate(*l, d).count("d1"), 0u);
}

TEST(SMapTest, JMapAxiomFailure) {
    LatticePtr l = share(build_boolean(2));
    SMap p = classical_smap_from_state(oracle::uniform_boolean_state(l));
    auto q = jmap_from_smap(p).values();
    q[l->top() * l->size() + l->top()] = Rational(1, 2);
    EXPECT_GT(jmap_validate(*l, q).count("j1"), 0u);
}

TEST(SMapTest, IdentityAuditsPassOnExample) {
    LatticePtr l = mo3();
    SMap p = example1(l);
    EXPECT_TRUE(smap_identity_audit(p).valid()) << smap_identity_audit(p).summary();
    EXPECT_TRUE(de_morgan_audit(p).valid());
}

TEST(SMapTest, DeMorganAuditCatchesCorruption) {
    LatticePtr l = mo3();
    auto table = oracle::example1_table(*l);
    const std::size_t n = l->size();
    ElementId a1 = l->at("a1"), a2 = l->at("a2");
    table[a1 * n + a2] = Rational(1, 5);
    ValidationReport r = de_morgan_audit(*l, table);
    ASSERT_FALSE(r.valid());
    EXPECT_EQ(r.failures.front().axiom, "de-morgan-conj");
    EXPECT_EQ(r.failures.front().witness, (std::vector<ElementId>{a1, a2}));
}

TEST(SMapTest, DeMorganHoldsForClassicalMaps) {
    LatticePtr l = share(build_boolean(3));
    SMap p = classical_smap_from_state(oracle::uniform_boolean_state(l));
    EXPECT_TRUE(de_morgan_audit(p).valid());
    EXPECT_TRUE(smap_identity_audit(p).valid());
}

TEST(NMapTest, TrivariateClassical) {
    LatticePtr l = share(build_boolean(2));
    State m = oracle::uniform_boolean_state(l);
    const std::size_t n = l->size();
    std::vector<Rational> t(n * n * n);
    for_each_tuple(n, 3, [&](std::span<const ElementId> x) {
        t[(x[0] * n + x[1]) * n + x[2]] = m(l->meet(l->meet(x[0], x[1]), x[2]));
    });
    NMap p3 = NMap::make(l, 3, t);
    std::vector<std::size_t> keep{0, 1};
    NMap p2 = marginal_map(p3, keep);
    for (ElementId a = 0; a < n; ++a)
        for (ElementId b = 0; b < n; ++b) {
            std::vector<ElementId> ab{a, b}, ba{b, a};
            EXPECT_EQ(p2(ab), m(l->meet(a, b)));
            EXPECT_EQ(p2(ab), p2(ba));
        }

    // keep {0,1} then {0} equals keeping {0}
    std::vector<std::size_t> first{0};
    NMap direct = marginal_map(p3, first);
    NMap twice = marginal_map(p2, first);
    EXPECT_EQ(direct.values(), twice.values());
    std::vector<std::size_t> k12{1, 2}, k02{0, 2};
    EXPECT_EQ(marginal_map(marginal_map(p3, k12), first).values(), marginal_map(p3, std::vector<std::size_t>{1}).values());
    EXPECT_EQ(marginal_map(marginal_map(p3, k02), std::vector<std::size_t>{1}).values(),
              marginal_map(p3, std::vector<std::size_t>{2}).values());

    t[(1 * n + l->ortho(1)) * n + 3] = Rational(1, 4);
    EXPECT_GT(nmap_validate(*l, t, 3).count("sn2"), 0u);
}

TEST(NMapTest, SmapReadAsArityTwo) {
    LatticePtr l = mo3();
    SMap p = example1(l);
    NMap n2 = to_nmap(p);
    EXPECT_TRUE(nmap_validate(*l, n2.values(), 2).valid());
    EXPECT_EQ(to_smap(n2).values(), p.values());
}

TEST(NMapTest, MarginalArgumentErrors) {
    LatticePtr l = mo3();
    NMap n2 = to_nmap(example1(l));
    EXPECT_THROW(marginal_map(n2, std::vector<std::size_t>{}), ArgumentError);
    EXPECT_THROW(marginal_map(n2, std::vector<std::size_t>{0, 1}), ArgumentError);
    EXPECT_THROW(marginal_map(n2, std::vector<std::size_t>{2}), ArgumentError);
    EXPECT_THROW(table_size(*l, 4), SizeError);
}

TEST(Counterfactual, ExampleValues) {
    LatticePtr l = mo3();
    SMap p = example1(l);
    EXPECT_EQ(counterfactual_eval(p, parse_formula("a1 & a2", *l)), Rational(1, 10));
    EXPECT_EQ(counterfactual_eval(p, parse_formula("a1 | a1'", *l)), 1);
    EXPECT_EQ(counterfactual_eval(p, parse_formula("a1' & a2'", *l)), Rational(1, 10));
    EXPECT_EQ(counterfactual_eval(p, parse_formula("~(a1 | a2)", *l)), Rational(1, 10));
    EXPECT_EQ(counterfactual_eval(p, parse_formula("~a1 & ~a2", *l)), Rational(1, 10));
    EXPECT_EQ(counterfactual_eval(p, parse_formula("~a1", *l)), Rational(1, 2));
    EXPECT_EQ(counterfactual_eval(p, parse_formula("a3", *l)), Rational(1, 2));
    EXPECT_EQ(counterfactual_eval(p, parse_formula("~(a1 & a2)", *l)), Rational(9, 10));
}

TEST(Counterfactual, RejectsDeepNesting) {
    LatticePtr l = mo3();
    SMap p = example1(l);
    EXPECT_THROW(counterfactual_eval(p, parse_formula("(a1 & a2) & a3", *l)), UnsupportedFormulaError);
    EXPECT_THROW(counterfactual_eval(p, parse_formula("~~a1", *l)), UnsupportedFormulaError);
    EXPECT_THROW(parse_formula("a1 &", *l), ParseError);
    EXPECT_THROW(parse_formula("zz", *l), ParseError);
    EXPECT_EQ(to_string(parse_formula("~(a1|a2')", *l), *l), "~(a1 | a2')");
}
