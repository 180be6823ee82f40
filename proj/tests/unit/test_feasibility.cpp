#include <gtest/gtest.h>

#include "omlbell/feasibility.hpp"
#include "oracles.hpp"

using namespace omlbell;

namespace {

// MO(2) s-map with p(a1,a2) = 1/10 but p(a2,a1) = 3/10; all states 1/2.
SMap noncommutative_mo2(const LatticePtr& l) {
    const std::size_t n = l->size();
    std::vector<Rational> p(n * n);
    auto set = [&](const char* a, const char* b, Rational v) { p[l->at(a) * n + l->at(b)] = v; };
    const Rational half(1, 2);
    set("1", "1", 1);
    for (const char* x : {"a1", "a1'", "a2", "a2'"}) {
        set(x, x, half);
        set(x, "1", half);
        set("1", x, half);
    }
    const Rational t(1, 10), s(3, 10);
    set("a1", "a2", t);
    set("a1", "a2'", half - t);
    set("a1'", "a2", half - t);
    set("a1'", "a2'", t);
    set("a2", "a1", s);
    set("a2", "a1'", half - s);
    set("a2'", "a1", half - s);
    set("a2'", "a1'", s);
    return SMap::make(l, std::move(p));
}

}  // namespace

TEST(SmapSystem, ExampleLatticeHasWitness) {
    Oml l = build_mo(3);
    LinSystem sys = assemble_smap_system(l);
    EXPECT_EQ(sys.variable_count(), 64u);
    EXPECT_TRUE(check_witness(sys, oracle::example1_table(l)).valid());
    FeasibilityResult r = solve(sys);
    ASSERT_TRUE(r.feasible());
    EXPECT_TRUE(smap_validate(l, r.witness).valid());
}

TEST(SmapSystem, PinnedTableIsReproduced) {
    Oml l = build_mo(3);
    auto table = oracle::example1_table(l);
    SmapOptions opts;
    for (ElementId a = 0; a < l.size(); ++a)
        for (ElementId b = 0; b < l.size(); ++b) opts.fixed_values[{a, b}] = table[a * l.size() + b];
    FeasibilityResult r = solve(assemble_smap_system(l, opts));
    ASSERT_TRUE(r.feasible());
    EXPECT_EQ(r.witness, table);
}

TEST(SmapSystem, ContradictoryPins) {
    Oml l = build_mo(3);
    auto pin = [&](ElementId a, ElementId b, Rational v) {
        SmapOptions o;
        o.fixed_values[{a, b}] = v;
        return o;
    };
    EXPECT_THROW(assemble_smap_system(l, pin(l.top(), l.top(), 0)), ArgumentError);
    EXPECT_THROW(assemble_smap_system(l, pin(l.at("a1"), l.at("a1'"), Rational(1, 10))), ArgumentError);
    EXPECT_THROW(assemble_smap_system(l, pin(l.at("a1"), l.at("a2"), Rational(3, 2))), ArgumentError);
    EXPECT_THROW(assemble_smap_system(l, pin(99, 0, 0)), ArgumentError);

    SmapOptions comm = pin(l.at("a1"), l.at("a2"), Rational(1, 10));
    comm.fixed_values[{l.at("a2"), l.at("a1")}] = Rational(1, 5);
    EXPECT_NO_THROW(assemble_smap_system(l, comm));
    comm.commutative = true;
    EXPECT_THROW(assemble_smap_system(l, comm), ArgumentError);

    LatticePtr shared = share(build_mo(3));
    std::vector<Rational> m(8, Rational(1, 2));
    m[0] = 0;
    m[7] = 1;
    SmapOptions st = pin(shared->at("a1"), shared->at("a1"), Rational(1, 4));
    st.fixed_state = State::make(shared, m);
    EXPECT_THROW(assemble_smap_system(*shared, st), ArgumentError);
}

TEST(SmapSystem, InfeasiblePinsGiveCertificate) {
    Oml l = build_mo(3);
    SmapOptions opts;
    opts.fixed_values[{l.at("a1"), l.at("a1")}] = Rational(1, 2);
    opts.fixed_values[{l.at("a1"), l.top()}] = Rational(1, 4);
    LinSystem sys = assemble_smap_system(l, opts);
    FeasibilityResult r = solve(sys);
    ASSERT_FALSE(r.feasible());
    EXPECT_TRUE(check_certificate(sys, *r.certificate).valid());
}

TEST(SmapSystem, DegenerateLattice) {
    Oml l = build_boolean(1);
    FeasibilityResult r = solve(assemble_smap_system(l));
    ASSERT_TRUE(r.feasible());
    EXPECT_EQ(r.witness, (std::vector<Rational>{0, 0, 0, 1}));
}

TEST(SmapSystem, FixedStateIsRespected) {
    LatticePtr l = share(build_mo(2));
    std::vector<Rational> m(l->size());
    m[l->top()] = 1;
    m[l->at("a1")] = m[l->at("a2")] = Rational(4, 5);
    m[l->at("a1'")] = m[l->at("a2'")] = Rational(1, 5);
    SmapOptions opts;
    opts.fixed_state = State::make(l, m);
    SampleResult r = sample_smaps(l, 3, 1, opts);
    ASSERT_EQ(r.maps.size(), 3u);
    for (const auto& p : r.maps) EXPECT_EQ(state_from_smap(p).values(), m);
}

TEST(Extension, ExampleMapHasNoTrivariateExtension) {
    LatticePtr l = share(build_mo(3));
    SMap p = SMap::make(l, oracle::example1_table(*l));
    LinSystem sys = assemble_extension_system(*l, p);
    EXPECT_EQ(sys.variable_count(), 512u);
    FeasibilityResult r = solve(sys);
    ASSERT_FALSE(r.feasible());
    EXPECT_TRUE(check_certificate(sys, *r.certificate).valid());
}

TEST(Extension, ClassicalMapExtends) {
    LatticePtr l = share(build_boolean(3));
    State m = oracle::uniform_boolean_state(l);
    SMap p = classical_smap_from_state(m);
    LinSystem sys = assemble_extension_system(*l, p);
    const std::size_t n = l->size();
    std::vector<Rational> w(n * n * n);
    for_each_tuple(n, 3, [&](std::span<const ElementId> t) {
        w[(t[0] * n + t[1]) * n + t[2]] = m(l->meet(l->meet(t[0], t[1]), t[2]));
    });
    EXPECT_TRUE(check_witness(sys, w).valid());
    FeasibilityResult r = solve(sys);
    ASSERT_TRUE(r.feasible());
    NMap p3 = nmap_from_witness(l, 3, r.witness);
    EXPECT_EQ(marginal_map(p3, std::vector<std::size_t>{0, 1}).values(), p.values());
}

TEST(Extension, NoncommutativeMapDoesNotExtend) {
    LatticePtr l = share(build_mo(2));
    SMap p = noncommutative_mo2(l);
    ASSERT_FALSE(p.commutative());
    LinSystem sys = assemble_extension_system(*l, p);
    FeasibilityResult r = solve(sys);
    ASSERT_FALSE(r.feasible());
    EXPECT_TRUE(check_certificate(sys, *r.certificate).valid());
}

TEST(Extension, LatticeMismatch) {
    LatticePtr l = share(build_mo(3));
    SMap p = SMap::make(l, oracle::example1_table(*l));
    EXPECT_THROW(assemble_extension_system(build_mo(2), p), ArgumentError);
}

TEST(Optimize, B2pMaximumOverCommutativeMaps) {
    Oml l = build_mo(3);
    std::vector<ElementId> args{l.at("a1"), l.at("a2"), l.at("a3")};
    SmapOptions opts;
    opts.commutative = true;
    FeasibilityResult r = optimize_inequality_side(l, InequalityId::B2p, args, 0, true, Sense::Maximize, opts);
    ASSERT_TRUE(r.feasible());
    EXPECT_EQ(*r.objective_value, Rational(3, 2));
    EXPECT_EQ(*r.objective_value, oracle::mo3_b2p_max_by_vertices());
}

TEST(Optimize, B1pNeverExceedsOne) {
    Oml l = build_mo(3);
    for (ElementId a = 0; a < l.size(); ++a)
        for (ElementId b = 0; b < l.size(); ++b) {
            std::vector<ElementId> args{a, b};
            auto r = optimize_inequality_side(l, InequalityId::B1p, args, 0, true, Sense::Maximize);
            ASSERT_TRUE(r.feasible());
            EXPECT_LE(*r.objective_value, 1);
            if (a == l.top() && b == l.top()) EXPECT_EQ(*r.objective_value, 1);
        }
}

TEST(Optimize, B2pOnClassicalMapsStaysBelowOne) {
    Oml l = build_boolean(3);
    const std::size_t n = l.size();
    SmapOptions opts;
    opts.commutative = true;
    LinSystem sys = assemble_smap_system(l, opts);
    for (ElementId a = 0; a < n; ++a)
        for (ElementId b = 0; b < n; ++b) {
            ElementId ab = l.meet(a, b);
            sys.add_constraint({{a * n + b, 1}, {ab * n + ab, -1}}, Relation::Equal, 0, "meet");
        }
    for_each_tuple(n, 3, [&](std::span<const ElementId> t) {
        auto forms = smap_inequality_forms(l, InequalityId::B2p, t);
        auto r = optimize(sys, pair_objective(l, forms.first), Sense::Maximize);
        ASSERT_TRUE(r.feasible());
        EXPECT_LE(*r.objective_value + forms.first.constant, 1);
    });
}

TEST(Sampling, ExampleLatticeSamplesAreValid) {
    LatticePtr l = share(build_mo(3));
    SampleResult r = sample_smaps(l, 5, 42);
    EXPECT_EQ(r.status, FeasibilityStatus::Feasible);
    ASSERT_EQ(r.maps.size(), 5u);
    for (const auto& p : r.maps) {
        EXPECT_TRUE(smap_validate(*l, p.values()).valid());
        for (ElementId a = 0; a < l->size(); ++a)
            for (ElementId b = 0; b < l->size(); ++b) EXPECT_TRUE(in_unit_interval(p.join_value(a, b)));
    }
    SampleResult again = sample_smaps(l, 5, 42);
    for (std::size_t k = 0; k < 5; ++k) EXPECT_EQ(r.maps[k].values(), again.maps[k].values());
}

TEST(Sampling, BooleanSamplesSatisfyN2) {
    LatticePtr l = share(build_boolean(2));
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        SampleResult r = sample_smaps(l, 3, seed);
        for (const auto& p : r.maps)
            for (ElementId a = 0; a < l->size(); ++a)
                for (ElementId b = 0; b < l->size(); ++b) {
                    EXPECT_EQ(p(a, b), p.diag(l->meet(a, b)));
                    EXPECT_EQ(p(a, b), p(b, a));
                }
    }
}

TEST(Sampling, Errors) {
    LatticePtr l = share(build_mo(3));
    EXPECT_THROW(sample_smaps(l, 0, 1), ArgumentError);
    SmapOptions opts;
    opts.fixed_values[{l->at("a1"), l->at("a1")}] = Rational(1, 2);
    opts.fixed_values[{l->at("a1"), l->top()}] = Rational(1, 4);
    SampleResult r = sample_smaps(l, 2, 1, opts);
    EXPECT_EQ(r.status, FeasibilityStatus::Infeasible);
    EXPECT_TRUE(r.maps.empty());
}

TEST(Extension, CoherenceOnSampledCommutativeMaps) {
    SmapOptions opts;
    opts.commutative = true;
    for (const auto& l : {share(build_mo(2)), share(build_mo(3))}) {
        SampleResult r = sample_smaps(l, 3, 11, opts);
        for (const auto& p : r.maps) {
            bool violated = !scan(p, InequalityId::B2p, false).violations.empty();
            bool extends = solve(assemble_extension_system(*l, p)).feasible();
            if (violated) EXPECT_FALSE(extends);
            if (extends) EXPECT_FALSE(violated);
        }
    }
}
