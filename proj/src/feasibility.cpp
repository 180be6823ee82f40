#include "omlbell/feasibility.hpp"

#include <random>

namespace omlbell {
namespace {

std::string tuple_name(const Oml& oml, std::string_view head, std::span<const ElementId> t) {
    std::string s(head);
    s += '(';
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) s += ',';
        s += oml.label(t[i]);
    }
    return s + ')';
}

void check_pins(const Oml& oml, const SmapOptions& options) {
    const std::size_t n = oml.size();
    auto where = [&](ElementId a, ElementId b) { return "pin p(" + oml.label(a) + "," + oml.label(b) + ")"; };
    if (options.fixed_state && options.fixed_state->lattice() != oml)
        throw ArgumentError("fixed state lives on a different lattice");
    for (const auto& [key, v] : options.fixed_values) {
        auto [a, b] = key;
        if (a >= n || b >= n) throw ArgumentError("pinned entry refers to an element outside the lattice");
        if (!in_unit_interval(v)) throw ArgumentError(where(a, b) + " = " + format_rational(v) + " is outside [0,1]");
        if (a == oml.top() && b == oml.top() && v != 1)
            throw ArgumentError(where(a, b) + " = " + format_rational(v) + " contradicts p(1,1) = 1");
        if (oml.orthogonal(a, b) && sgn(v) != 0)
            throw ArgumentError(where(a, b) + " = " + format_rational(v) + " on an orthogonal pair");
        if (a == b && options.fixed_state && (*options.fixed_state)(a) != v)
            throw ArgumentError(where(a, b) + " = " + format_rational(v) + " contradicts the fixed state value " +
                                format_rational((*options.fixed_state)(a)));
        if (options.commutative) {
            auto it = options.fixed_values.find({b, a});
            if (it != options.fixed_values.end() && it->second != v)
                throw ArgumentError(where(a, b) + " and " + where(b, a) + " differ under commutativity");
        }
    }
}

// Orthogonal pairs a <= b (ids), including (0,0).
std::vector<std::pair<ElementId, ElementId>> orthogonal_pairs(const Oml& oml) {
    std::vector<std::pair<ElementId, ElementId>> out;
    for (ElementId a = 0; a < oml.size(); ++a)
        for (ElementId b = a; b < oml.size(); ++b)
            if (oml.orthogonal(a, b)) out.emplace_back(a, b);
    return out;
}

// s_n axioms over the dense |L|^arity variable block.
void add_nmap_axioms(LinSystem& sys, const Oml& oml, std::size_t arity, std::string_view head) {
    const std::size_t n = oml.size();
    auto index = [&](std::span<const ElementId> t) {
        std::size_t i = 0;
        for (auto e : t) i = i * n + e;
        return i;
    };
    std::vector<ElementId> ones(arity, oml.top());
    sys.add_constraint({{index(ones), 1}}, Relation::Equal, 1, std::string(head) + "1");

    for_each_tuple(n, arity, [&](std::span<const ElementId> t) {
        bool clash = false;
        for (std::size_t i = 0; i < arity && !clash; ++i)
            for (std::size_t j = i + 1; j < arity && !clash; ++j) clash = oml.orthogonal(t[i], t[j]);
        if (clash) sys.add_constraint({{index(t), 1}}, Relation::Equal, 0, std::string(head) + "2 " + tuple_name(oml, "p", t));
    });

    const auto pairs = orthogonal_pairs(oml);
    for (std::size_t pos = 0; pos < arity; ++pos)
        for_each_tuple(n, arity, [&](std::span<const ElementId> base) {
            if (base[pos] != 0) return;
            std::vector<ElementId> t(base.begin(), base.end());
            for (auto [a, b] : pairs) {
                t[pos] = oml.join(a, b);
                std::size_t whole = index(t);
                t[pos] = a;
                std::size_t ia = index(t);
                std::string label = std::string(head) + "3-" + std::to_string(pos + 1) + " " + tuple_name(oml, "p", t);
                t[pos] = b;
                std::size_t ib = index(t);
                label += " + " + oml.label(b);
                sys.add_constraint({{whole, 1}, {ia, -1}, {ib, -1}}, Relation::Equal, 0, std::move(label));
            }
        });
}

}  // namespace

LinSystem assemble_smap_system(const Oml& oml, const SmapOptions& options) {
    check_pins(oml, options);
    const std::size_t n = oml.size();
    LinSystem sys;
    for_each_tuple(n, 2, [&](std::span<const ElementId> t) {
        sys.add_variable(tuple_name(oml, "p", t), {t.begin(), t.end()});
    });
    add_nmap_axioms(sys, oml, 2, "s");
    if (options.commutative)
        for (ElementId a = 0; a < n; ++a)
            for (ElementId b = a + 1; b < n; ++b)
                sys.add_constraint({{a * n + b, 1}, {b * n + a, -1}}, Relation::Equal, 0,
                                   "commutative " + oml.label(a) + "," + oml.label(b));
    if (options.fixed_state)
        for (ElementId a = 0; a < n; ++a)
            sys.add_constraint({{a * n + a, 1}}, Relation::Equal, (*options.fixed_state)(a), "state " + oml.label(a));
    for (const auto& [key, v] : options.fixed_values) {
        auto [a, b] = key;
        sys.add_constraint({{a * n + b, 1}}, Relation::Equal, v, "pin " + oml.label(a) + "," + oml.label(b));
    }
    return sys;
}

LinSystem assemble_extension_system(const Oml& oml, const SMap& p) {
    if (p.lattice() != oml) throw ArgumentError("s-map lives on a different lattice");
    const std::size_t n = oml.size();
    const ElementId one = oml.top();
    LinSystem sys;
    for_each_tuple(n, 3, [&](std::span<const ElementId> t) {
        sys.add_variable(tuple_name(oml, "p3", t), {t.begin(), t.end()});
    });
    add_nmap_axioms(sys, oml, 3, "s3");
    auto idx = [&](ElementId x, ElementId y, ElementId z) { return (x * n + y) * n + z; };
    for (ElementId x = 0; x < n; ++x)
        for (ElementId y = 0; y < n; ++y) {
            std::string pair = oml.label(x) + "," + oml.label(y);
            sys.add_constraint({{idx(x, y, one), 1}}, Relation::Equal, p(x, y), "marginal12 " + pair);
            sys.add_constraint({{idx(x, one, y), 1}}, Relation::Equal, p(x, y), "marginal13 " + pair);
            sys.add_constraint({{idx(one, x, y), 1}}, Relation::Equal, p(x, y), "marginal23 " + pair);
        }
    return sys;
}

SMap smap_from_witness(LatticePtr lattice, std::vector<Rational> witness) {
    return SMap::make(std::move(lattice), std::move(witness));
}

NMap nmap_from_witness(LatticePtr lattice, std::size_t arity, std::vector<Rational> witness) {
    return NMap::make(std::move(lattice), arity, std::move(witness));
}

std::vector<Rational> pair_objective(const Oml& oml, const PairForm& form) {
    const std::size_t n = oml.size();
    std::vector<Rational> c(n * n);
    for (const auto& [key, v] : form.coeffs) c.at(key.first * n + key.second) += v;
    return c;
}

FeasibilityResult optimize_inequality_side(const Oml& oml, InequalityId id, std::span<const ElementId> args,
                                           std::uint32_t variant, bool lhs, Sense sense,
                                           const SmapOptions& options) {
    auto forms = smap_inequality_forms(oml, id, args, variant);
    const PairForm& form = lhs ? forms.first : forms.second;
    FeasibilityResult r = optimize(assemble_smap_system(oml, options), pair_objective(oml, form), sense);
    if (r.objective_value) *r.objective_value += form.constant;
    return r;
}

SampleResult sample_smaps(const LatticePtr& lattice, std::size_t count, std::uint64_t seed,
                          const SmapOptions& options) {
    if (count == 0) throw ArgumentError("sample count must be at least 1");
    const Oml& oml = *lattice;
    const LinSystem sys = assemble_smap_system(oml, options);
    std::mt19937_64 gen(seed);
    SampleResult out;
    for (std::size_t k = 0; k < count; ++k) {
        std::vector<Rational> objective(sys.variable_count());
        for (auto& c : objective) c = static_cast<long>(gen() % 11) - 5;
        FeasibilityResult r = optimize(sys, objective, Sense::Maximize);
        if (!r.feasible()) {
            out.status = FeasibilityStatus::Infeasible;
            out.maps.clear();
            return out;
        }
        out.maps.push_back(smap_from_witness(lattice, std::move(r.witness)));
    }
    return out;
}

}  // namespace omlbell
