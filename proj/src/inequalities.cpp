#include "omlbell/inequalities.hpp"

#include <array>
#include <functional>
#include <limits>

namespace omlbell {

namespace {

struct IdInfo {
    InequalityId id;
    std::string_view tag;
    std::size_t arity;
    bool smap;
    std::size_t joint_terms;  // s-map terms that admit an argument swap
    bool less_equal;
};

constexpr std::array<IdInfo, 11> kInfo{{
    {InequalityId::B1, "B1", 2, false, 0, true},
    {InequalityId::B2, "B2", 3, false, 0, true},
    {InequalityId::C1, "C1", 4, false, 0, false},
    {InequalityId::C2, "C2", 4, false, 0, false},
    {InequalityId::B1p, "B1p", 2, true, 1, true},
    {InequalityId::B2p, "B2p", 3, true, 3, true},
    {InequalityId::C1p, "C1p", 4, true, 4, false},
    {InequalityId::C2p, "C2p", 4, true, 4, false},
    {InequalityId::TRI, "TRI", 3, true, 0, true},
    {InequalityId::TRIp, "TRIp", 4, true, 0, true},
    {InequalityId::TRIpp, "TRIpp", 4, true, 0, true},
}};

const IdInfo& info(InequalityId id) { return kInfo[static_cast<std::size_t>(id)]; }

template <class T>
struct Sides {
    T lhs, rhs;
};

/// Meet-based forms. `m(x)` returns the state value, `one` the constant 1.
template <class T, class M>
Sides<T> state_sides(InequalityId id, std::span<const ElementId> x, const Oml& l, M m, const T& one) {
    switch (id) {
        case InequalityId::B1:
            return {m(x[0]) + m(x[1]) - m(l.meet(x[0], x[1])), one};
        case InequalityId::B2:
            return {m(x[0]) + m(x[1]) + m(x[2]) - m(l.meet(x[0], x[1])) - m(l.meet(x[0], x[2])) -
                        m(l.meet(x[1], x[2])),
                    one};
        case InequalityId::C1:
            return {m(x[1]) + m(x[2]),
                    m(l.meet(x[0], x[1])) + m(l.meet(x[1], x[2])) + m(l.meet(x[2], x[3])) - m(l.meet(x[0], x[3]))};
        case InequalityId::C2:
            return {m(l.meet(x[0], x[1])) + m(l.meet(x[1], x[2])) + m(l.meet(x[2], x[3])) - m(l.meet(x[0], x[3])) -
                        m(x[1]) - m(x[2]),
                    T(-one)};
        default:
            throw ArgumentError(std::string(info(id).tag) + " is not a state inequality");
    }
}

/// s-map forms. Bit i of `variant` swaps the arguments of the i-th joint term.
template <class T, class P>
Sides<T> smap_sides(InequalityId id, std::span<const ElementId> x, std::uint32_t variant, const Oml& l, P p,
                    const T& one) {
    std::size_t term = 0;
    auto joint = [&](ElementId u, ElementId v) -> T {
        bool swap = (variant >> term++) & 1;
        return swap ? p(v, u) : p(u, v);
    };
    auto d = [&](ElementId u, ElementId v) -> T { return p(u, l.ortho(v)) + p(l.ortho(u), v); };
    auto diag = [&](ElementId u) -> T { return p(u, u); };

    switch (id) {
        case InequalityId::B1p: {
            T j = joint(x[0], x[1]);
            return {diag(x[0]) + diag(x[1]) - j, one};
        }
        case InequalityId::B2p: {
            T ab = joint(x[0], x[1]);
            T ac = joint(x[0], x[2]);
            T bc = joint(x[1], x[2]);
            return {diag(x[0]) + diag(x[1]) + diag(x[2]) - ab - ac - bc, one};
        }
        case InequalityId::C1p: {
            T ab = joint(x[0], x[1]);
            T bc = joint(x[1], x[2]);
            T cd = joint(x[2], x[3]);
            T ad = joint(x[0], x[3]);
            return {diag(x[1]) + diag(x[2]), ab + bc + cd - ad};
        }
        case InequalityId::C2p: {
            T ab = joint(x[0], x[1]);
            T bc = joint(x[1], x[2]);
            T cd = joint(x[2], x[3]);
            T ad = joint(x[0], x[3]);
            return {ab + bc + cd - ad - diag(x[1]) - diag(x[2]), T(-one)};
        }
        case InequalityId::TRI: {
            ElementId nb = l.ortho(x[1]);
            return {d(x[0], x[2]), d(x[0], nb) + d(nb, x[2])};
        }
        case InequalityId::TRIp:
            return {d(x[0], x[3]), d(x[0], x[1]) + d(x[1], x[2]) + d(x[2], x[3])};
        case InequalityId::TRIpp:
            return {d(x[0], x[1]) + d(x[1], x[2]) + d(x[2], x[3]), one + one + d(x[0], x[3])};
        default:
            throw ArgumentError(std::string(info(id).tag) + " is not an s-map inequality");
    }
}

template <class T>
bool holds(InequalityId id, const Sides<T>& s) {
    return info(id).less_equal ? s.lhs <= s.rhs : s.lhs >= s.rhs;
}

InequalityReport make_report(InequalityId id, std::span<const ElementId> args, std::uint32_t variant,
                             Sides<Rational> s) {
    InequalityReport r{id, {args.begin(), args.end()}, variant, std::move(s.lhs), std::move(s.rhs), {}, false};
    r.slack = info(id).less_equal ? Rational(r.rhs - r.lhs) : Rational(r.lhs - r.rhs);
    r.satisfied = sgn(r.slack) >= 0;
    return r;
}

void check_args(InequalityId id, std::span<const ElementId> args, const Oml& oml) {
    if (args.size() != info(id).arity)
        throw ArgumentError(std::string(info(id).tag) + " takes " + std::to_string(info(id).arity) +
                            " arguments, got " + std::to_string(args.size()));
    for (auto a : args)
        if (a >= oml.size()) throw ArgumentError("element id " + std::to_string(a) + " out of range");
}

/// Table values scaled to a common denominator, when small enough for
/// 64-bit sums of a handful of terms.
struct ScaledTable {
    std::vector<std::int64_t> values;
    std::int64_t one = 0;
};

std::optional<ScaledTable> scale(const std::vector<Rational>& values) {
    mpz_class denom = 1;
    for (const auto& v : values) mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(), v.get_den_mpz_t());
    const mpz_class limit = mpz_class(1) << 50;
    if (denom > limit) return std::nullopt;
    ScaledTable out;
    out.one = denom.get_si();
    out.values.reserve(values.size());
    for (const auto& v : values) {
        mpz_class scaled = v.get_num() * (denom / v.get_den());
        if (abs(scaled) > limit) return std::nullopt;
        out.values.push_back(scaled.get_si());
    }
    return out;
}

/// Fast satisfied-test for an s-map inequality over a scaled table.
bool holds_scaled(InequalityId id, std::span<const ElementId> args, std::uint32_t variant, const Oml& l,
                  const ScaledTable& t) {
    const std::size_t n = l.size();
    auto p = [&](ElementId a, ElementId b) { return t.values[a * n + b]; };
    return holds(id, smap_sides<std::int64_t>(id, args, variant, l, p, t.one));
}

bool holds_scaled_state(InequalityId id, std::span<const ElementId> args, const Oml& l, const ScaledTable& t) {
    auto m = [&](ElementId a) { return t.values[a]; };
    return holds(id, state_sides<std::int64_t>(id, args, l, m, t.one));
}

/// PairForm with the arithmetic smap_sides needs.
struct FormExpr {
    PairForm f;

    FormExpr() = default;
    explicit FormExpr(Rational c) { f.constant = std::move(c); }
    static FormExpr entry(ElementId a, ElementId b) {
        FormExpr e;
        e.f.coeffs[{a, b}] = 1;
        return e;
    }
    FormExpr& add(const FormExpr& o, int sign) {
        f.constant += sign * o.f.constant;
        for (const auto& [k, v] : o.f.coeffs) {
            Rational& c = f.coeffs[k];
            c += sign * v;
            if (sgn(c) == 0) f.coeffs.erase(k);
        }
        return *this;
    }
    FormExpr operator-() const { return FormExpr().add(*this, -1); }
    friend FormExpr operator+(FormExpr a, const FormExpr& b) { return a.add(b, 1); }
    friend FormExpr operator-(FormExpr a, const FormExpr& b) { return a.add(b, -1); }
};

}  // namespace

std::pair<PairForm, PairForm> smap_inequality_forms(const Oml& oml, InequalityId id, std::span<const ElementId> args,
                                                    std::uint32_t variant) {
    if (!needs_smap(id)) throw ArgumentError(std::string(to_string(id)) + " needs a state, not an s-map");
    check_args(id, args, oml);
    if (variant >= variant_count(id))
        throw ArgumentError(std::string(to_string(id)) + " has " + std::to_string(variant_count(id)) + " variants");
    auto p = [](ElementId a, ElementId b) { return FormExpr::entry(a, b); };
    auto s = smap_sides<FormExpr>(id, args, variant, oml, p, FormExpr(Rational(1)));
    return {std::move(s.lhs.f), std::move(s.rhs.f)};
}

std::string_view to_string(InequalityId id) { return info(id).tag; }

InequalityId parse_inequality_id(std::string_view tag) {
    for (const auto& i : kInfo)
        if (i.tag == tag) return i.id;
    throw ArgumentError("unknown inequality \"" + std::string(tag) +
                        "\" (expected B1, B2, C1, C2, B1p, B2p, C1p, C2p, TRI, TRIp or TRIpp)");
}

std::size_t arity(InequalityId id) { return info(id).arity; }
bool needs_smap(InequalityId id) { return info(id).smap; }
std::size_t variant_count(InequalityId id) { return std::size_t{1} << info(id).joint_terms; }

InequalityReport eval_state_inequality(const State& m, InequalityId id, std::span<const ElementId> args) {
    if (needs_smap(id)) throw ArgumentError(std::string(to_string(id)) + " needs an s-map, not a state");
    check_args(id, args, m.lattice());
    auto value = [&](ElementId a) { return m(a); };
    return make_report(id, args, 0, state_sides<Rational>(id, args, m.lattice(), value, Rational(1)));
}

InequalityReport eval_smap_inequality(const SMap& p, InequalityId id, std::span<const ElementId> args,
                                      std::uint32_t variant) {
    if (!needs_smap(id)) throw ArgumentError(std::string(to_string(id)) + " needs a state, not an s-map");
    check_args(id, args, p.lattice());
    if (variant >= variant_count(id))
        throw ArgumentError(std::string(to_string(id)) + " has " + std::to_string(variant_count(id)) + " variants");
    auto value = [&](ElementId a, ElementId b) { return p(a, b); };
    return make_report(id, args, variant, smap_sides<Rational>(id, args, variant, p.lattice(), value, Rational(1)));
}

ScanResult scan(const Measure& measure, InequalityId id, bool order_variants) {
    ScanResult result;
    const bool is_smap = std::holds_alternative<SMap>(measure);
    if (is_smap != needs_smap(id))
        throw ArgumentError(std::string(to_string(id)) + (needs_smap(id) ? " needs an s-map" : " needs a state"));

    const Oml& oml = is_smap ? std::get<SMap>(measure).lattice() : std::get<State>(measure).lattice();
    const std::uint32_t variants = order_variants ? static_cast<std::uint32_t>(variant_count(id)) : 1;
    const auto& values = is_smap ? std::get<SMap>(measure).values() : std::get<State>(measure).values();
    const auto scaled = scale(values);

    for_each_tuple(oml.size(), arity(id), [&](std::span<const ElementId> t) {
        ++result.tuples_checked;
        for (std::uint32_t v = 0; v < variants; ++v) {
            ++result.variants_checked;
            if (scaled) {
                bool ok = is_smap ? holds_scaled(id, t, v, oml, *scaled) : holds_scaled_state(id, t, oml, *scaled);
                if (ok) continue;
            }
            InequalityReport r = is_smap ? eval_smap_inequality(std::get<SMap>(measure), id, t, v)
                                         : eval_state_inequality(std::get<State>(measure), id, t);
            if (!r.satisfied) result.violations.push_back(std::move(r));
        }
    });
    return result;
}

ValidationReport equivalence_audit(const SMap& p) {
    const Oml& oml = p.lattice();
    const std::size_t n = oml.size();
    ValidationReport report;

    std::function<bool(InequalityId, std::span<const ElementId>)> ok;
    const auto scaled = scale(p.values());
    if (scaled) {
        ok = [&](InequalityId id, std::span<const ElementId> t) { return holds_scaled(id, t, 0, oml, *scaled); };
    } else {
        ok = [&](InequalityId id, std::span<const ElementId> t) { return eval_smap_inequality(p, id, t).satisfied; };
    }

    auto pair_up = [&](InequalityId a, InequalityId b, std::span<const ElementId> t) {
        bool ha = ok(a, t), hb = ok(b, t);
        std::string an(to_string(a)), bn(to_string(b));
        if (ha && !hb) report.add(an + "=>" + bn, {t.begin(), t.end()});
        if (hb && !ha) report.add(bn + "=>" + an, {t.begin(), t.end()});
        return ha;
    };

    std::optional<std::vector<ElementId>> b2_violation, c1_violation, c2_violation;
    for_each_tuple(n, 3, [&](std::span<const ElementId> t) {
        if (!pair_up(InequalityId::B2p, InequalityId::TRI, t) && !b2_violation) b2_violation.emplace(t.begin(), t.end());
    });
    for_each_tuple(n, 4, [&](std::span<const ElementId> t) {
        if (!pair_up(InequalityId::C1p, InequalityId::TRIp, t) && !c1_violation) c1_violation.emplace(t.begin(), t.end());
        if (!pair_up(InequalityId::C2p, InequalityId::TRIpp, t) && !c2_violation) c2_violation.emplace(t.begin(), t.end());
    });

    if (!b2_violation && c1_violation) report.add("allB2p=>allC1p", *c1_violation);
    if (!c1_violation && b2_violation) report.add("allC1p=>allB2p", *b2_violation);
    if (p.commutative() && !b2_violation && c2_violation) report.add("commutative-allB2p=>allC2p", *c2_violation);
    return report;
}

}  // namespace omlbell
