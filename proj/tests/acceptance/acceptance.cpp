#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "omlbell/feasibility.hpp"
#include "omlbell/io.hpp"
#include "oracles.hpp"

using namespace omlbell;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::string note;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) note = what;
        pass = pass && ok;
    }
};

struct Sampled {
    LatticePtr lattice;
    SMap map;
    bool commutative;
};

std::vector<Sampled> g_samples;
double g_sampling_seconds = 0;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string pos(const Oml& l, std::span<const ElementId> t) {
    std::string s;
    for (auto e : t) s += (s.empty() ? "" : ",") + l.label(e);
    return s;
}

// 1. The worked MO(3) example.
Outcome example_end_to_end() {
    Outcome o;
    auto t0 = Clock::now();
    Oml parts[] = {build_boolean(2), build_boolean(2), build_boolean(2)};
    LatticePtr l = share(build_horizontal_sum(parts));
    MapDocument doc = parse_map(bundled_example1_smap(), l);
    const SMap& p = std::get<SMap>(doc.map);
    o.require(smap_validate(*l, p.values()).valid(), "bundled map fails validation");
    std::vector<ElementId> args{l->at("a1"), l->at("a2"), l->at("a3")};
    InequalityReport r = eval_smap_inequality(p, InequalityId::B2p, args);
    o.require(r.lhs == Rational(6, 5), "lhs is " + format_rational(r.lhs));
    o.require(!r.satisfied, "B2p reported satisfied");
    double s = seconds_since(t0);
    o.require(s < 1.0, "took " + std::to_string(s) + " s");
    o.note = o.pass ? "lhs 6/5 > 1 in " + std::to_string(s) + " s" : o.note;
    return o;
}

// 2. B1p holds on sampled maps.
Outcome b1p_on_samples() {
    Outcome o;
    auto t0 = Clock::now();
    std::uint64_t seed = 1;
    for (const auto& l : oracle::sampling_lattices())
        for (bool commutative : {false, true}) {
            SmapOptions opts;
            opts.commutative = commutative;
            SampleResult r = sample_smaps(l, 10, seed++, opts);
            o.require(r.maps.size() == 10, "sampling failed on a " + std::to_string(l->size()) + "-element lattice");
            for (auto& p : r.maps) g_samples.push_back({l, std::move(p), commutative});
        }
    g_sampling_seconds = seconds_since(t0);
    for (const auto& s : g_samples) {
        ScanResult r = scan(s.map, InequalityId::B1p, false);
        o.require(r.violations.empty(), "B1p violated at " + (r.violations.empty() ? "" : pos(*s.lattice, r.violations[0].args)));
        const Oml& l = *s.lattice;
        for (ElementId a = 0; a < l.size(); ++a)
            for (ElementId b = 0; b < l.size(); ++b)
                o.require(in_unit_interval(s.map.join_value(a, b)), "q_p outside [0,1]");
    }
    double t = seconds_since(t0);
    o.require(g_samples.size() == 100, "sampled " + std::to_string(g_samples.size()) + " maps");
    o.require(t < 30.0, "took " + std::to_string(t) + " s");
    if (o.pass) o.note = std::to_string(g_samples.size()) + " maps, 0 violations in " + std::to_string(t) + " s";
    return o;
}

// 3. Identity and De Morgan suites.
Outcome identity_suites() {
    Outcome o;
    MapDocument doc = load_map("example1-smap");
    std::vector<const SMap*> maps{&std::get<SMap>(doc.map)};
    for (const auto& s : g_samples) maps.push_back(&s.map);
    for (const SMap* p : maps) {
        ValidationReport id = smap_identity_audit(*p);
        ValidationReport dm = de_morgan_audit(*p);
        o.require(id.valid(), "identity audit: " + id.summary());
        o.require(dm.valid(), "De Morgan audit: " + dm.summary());
    }
    o.require(maps.size() > 1, "no sampled maps");
    if (o.pass) o.note = std::to_string(maps.size()) + " maps clean";
    return o;
}

// 4. Triangle-form equivalences.
Outcome triangle_equivalences() {
    Outcome o;
    MapDocument doc = load_map("example1-smap");
    std::vector<const SMap*> maps{&std::get<SMap>(doc.map)};
    for (const auto& s : g_samples) maps.push_back(&s.map);
    for (const SMap* p : maps) {
        ValidationReport r = equivalence_audit(*p);
        o.require(r.valid(), "equivalence audit: " + r.summary());
    }
    if (o.pass) o.note = std::to_string(maps.size()) + " maps, 0 mismatches";
    return o;
}

// 5. Commutative maps without B2p violations satisfy C1p and C2p.
Outcome commutative_implication() {
    Outcome o;
    std::size_t checked = 0;
    for (const auto& s : g_samples) {
        if (!s.map.commutative()) continue;
        if (!scan(s.map, InequalityId::B2p, false).violations.empty()) continue;
        ++checked;
        o.require(scan(s.map, InequalityId::C1p, false).violations.empty(), "C1p violated");
        o.require(scan(s.map, InequalityId::C2p, false).violations.empty(), "C2p violated");
    }
    o.require(checked > 0, "no commutative map without B2p violations");
    if (o.pass) o.note = std::to_string(checked) + " maps checked";
    return o;
}

// 6. Trivariate extension.
Outcome extension() {
    Outcome o;
    MapDocument doc = load_map("example1-smap");
    LinSystem ex = assemble_extension_system(*doc.lattice, std::get<SMap>(doc.map));
    FeasibilityResult r = solve(ex);
    o.require(!r.feasible(), "example extension reported feasible");
    o.require(r.certificate && check_certificate(ex, *r.certificate).valid(), "certificate does not verify");

    LatticePtr b3 = share(build_boolean(3));
    State m = oracle::uniform_boolean_state(b3);
    LinSystem cl = assemble_extension_system(*b3, classical_smap_from_state(m));
    const std::size_t n = b3->size();
    std::vector<Rational> w(n * n * n);
    for_each_tuple(n, 3, [&](std::span<const ElementId> t) {
        w[(t[0] * n + t[1]) * n + t[2]] = m(b3->meet(b3->meet(t[0], t[1]), t[2]));
    });
    o.require(check_witness(cl, w).valid(), "classical witness fails");
    o.require(solve(cl).feasible(), "classical extension reported infeasible");
    if (o.pass) o.note = "example infeasible with verified certificate, classical witness verified";
    return o;
}

// 7. Maximum B2p left-hand side.
Outcome max_violation() {
    Outcome o;
    Rational oracle = oracle::mo3_b2p_max_by_vertices();
    Oml l = build_mo(3);
    std::vector<ElementId> args{l.at("a1"), l.at("a2"), l.at("a3")};
    SmapOptions opts;
    opts.commutative = true;
    FeasibilityResult r = optimize_inequality_side(l, InequalityId::B2p, args, 0, true, Sense::Maximize, opts);
    o.require(r.feasible() && r.objective_value, "optimization failed");
    if (!o.pass) return o;
    o.require(oracle == Rational(3, 2), "oracle gives " + format_rational(oracle));
    o.require(*r.objective_value == Rational(3, 2), "solver gives " + format_rational(*r.objective_value));
    if (o.pass) o.note = "solver 3/2, vertex oracle 3/2";
    return o;
}

// 8. State form against s-map form on MO(2).
Outcome meet_contrast() {
    Outcome o;
    LatticePtr l = share(build_mo(2));
    std::vector<Rational> v(l->size());
    v[l->top()] = 1;
    v[l->at("a1")] = v[l->at("a2")] = Rational(4, 5);
    v[l->at("a1'")] = v[l->at("a2'")] = Rational(1, 5);
    State m = State::make(l, v);
    std::vector<ElementId> args{l->at("a1"), l->at("a2")};
    InequalityReport r = eval_state_inequality(m, InequalityId::B1, args);
    o.require(r.lhs == Rational(8, 5) && !r.satisfied, "B1 lhs " + format_rational(r.lhs));
    SmapOptions opts;
    opts.fixed_state = m;
    for (ElementId a = 0; a < l->size(); ++a)
        for (ElementId b = 0; b < l->size(); ++b) {
            std::vector<ElementId> t{a, b};
            for (const SmapOptions& oo : {SmapOptions{}, opts}) {
                FeasibilityResult mx = optimize_inequality_side(*l, InequalityId::B1p, t, 0, true, Sense::Maximize, oo);
                o.require(mx.feasible() && *mx.objective_value <= 1, "B1p can exceed 1 at " + pos(*l, t));
            }
        }
    for (const auto& s : g_samples)
        if (s.lattice->size() == l->size() && *s.lattice == *l)
            o.require(scan(s.map, InequalityId::B1p, false).violations.empty(), "sampled MO(2) map violates B1p");
    if (o.pass) o.note = "B1 lhs 8/5 violated, B1p max over all MO(2) s-maps <= 1";
    return o;
}

// 9. Simplex against Fourier-Motzkin.
Outcome solver_oracle() {
    Outcome o;
    std::mt19937_64 gen(2024);
    std::size_t feasible = 0;
    for (int k = 0; k < 200; ++k) {
        LinSystem sys = oracle::random_system(gen);
        bool expected = oracle::fm_feasible(sys);
        FeasibilityResult r = solve(sys);
        o.require(r.feasible() == expected, "case " + std::to_string(k) + " disagrees");
        if (r.feasible())
            o.require(check_witness(sys, r.witness).valid(), "witness of case " + std::to_string(k));
        else
            o.require(r.certificate && check_certificate(sys, *r.certificate).valid(),
                      "certificate of case " + std::to_string(k));
        feasible += r.feasible();
    }
    if (o.pass) o.note = "200 cases agree (" + std::to_string(feasible) + " feasible)";
    return o;
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"example end-to-end", example_end_to_end},
        {"B1p on 100 sampled s-maps", b1p_on_samples},
        {"identity and De Morgan suites", identity_suites},
        {"triangle-form equivalences", triangle_equivalences},
        {"commutative B2p implies C1p and C2p", commutative_implication},
        {"trivariate extension", extension},
        {"maximum B2p left-hand side", max_violation},
        {"state form against s-map form", meet_contrast},
        {"simplex against Fourier-Motzkin", solver_oracle},
    };
    int failed = 0;
    int index = 1;
    auto start = Clock::now();
    for (const auto& [name, fn] : criteria) {
        auto t0 = Clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o.pass = false;
            o.note = std::string("exception: ") + e.what();
        }
        failed += !o.pass;
        std::printf("%s %d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", index++, name, o.note.c_str(),
                    seconds_since(t0));
        std::fflush(stdout);
    }
    std::printf("%d of %d criteria passed in %.2f s\n", 9 - failed, 9, seconds_since(start));
    return failed == 0 ? 0 : 1;
}
