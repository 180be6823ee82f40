#include "omlbell/measures.hpp"

#include <cctype>
#include <optional>

namespace omlbell {

namespace {

std::string show(const Rational& v) { return format_rational(v); }

std::string mismatch(const Rational& got, const Rational& want) {
    return "value " + show(got) + ", expected " + show(want);
}

void expect_size(std::span<const Rational> values, std::size_t size, const char* what) {
    if (values.size() != size)
        throw ArgumentError(std::string(what) + " table has " + std::to_string(values.size()) + " entries, expected " +
                            std::to_string(size));
}

void check_range(std::span<const Rational> values, std::size_t n, std::size_t arity, ValidationReport& report) {
    std::size_t i = 0;
    for_each_tuple(n, arity, [&](std::span<const ElementId> t) {
        if (!in_unit_interval(values[i]))
            report.add("range", {t.begin(), t.end()}, "value " + show(values[i]) + " outside [0,1]");
        ++i;
    });
}

/// Orthogonal pairs a <= b (as ids), including (0,0).
std::vector<std::pair<ElementId, ElementId>> orthogonal_pairs(const Oml& oml) {
    std::vector<std::pair<ElementId, ElementId>> out;
    for (ElementId a = 0; a < oml.size(); ++a)
        for (ElementId b = a; b < oml.size(); ++b)
            if (oml.orthogonal(a, b)) out.emplace_back(a, b);
    return out;
}

}  // namespace

std::size_t table_size(const Oml& oml, std::size_t arity) {
    if (arity == 0 || arity > kMaxArity)
        throw SizeError("arity " + std::to_string(arity) + " outside 1.." + std::to_string(kMaxArity));
    std::size_t size = 1;
    for (std::size_t i = 0; i < arity; ++i) size *= oml.size();
    return size;
}

ValidationReport validate_state(const Oml& oml, std::span<const Rational> m) {
    expect_size(m, oml.size(), "state");
    ValidationReport report;
    check_range(m, oml.size(), 1, report);
    if (m[oml.top()] != 1) report.add("unit", {oml.top()}, mismatch(m[oml.top()], 1));
    for (auto [a, b] : orthogonal_pairs(oml)) {
        Rational sum = m[a] + m[b];
        if (m[oml.join(a, b)] != sum) report.add("additive", {a, b}, mismatch(m[oml.join(a, b)], sum));
    }
    return report;
}

ValidationReport smap_validate(const Oml& oml, std::span<const Rational> p) {
    const std::size_t n = oml.size();
    expect_size(p, n * n, "s-map");
    auto at = [&](ElementId a, ElementId b) -> const Rational& { return p[a * n + b]; };

    ValidationReport report;
    check_range(p, n, 2, report);
    if (at(oml.top(), oml.top()) != 1) report.add("s1", {oml.top(), oml.top()}, mismatch(at(oml.top(), oml.top()), 1));
    for (ElementId a = 0; a < n; ++a)
        for (ElementId b = 0; b < n; ++b)
            if (oml.orthogonal(a, b) && sgn(at(a, b)) != 0) report.add("s2", {a, b}, mismatch(at(a, b), 0));
    for (auto [a, b] : orthogonal_pairs(oml)) {
        ElementId ab = oml.join(a, b);
        for (ElementId c = 0; c < n; ++c) {
            Rational left = at(a, c) + at(b, c);
            if (at(ab, c) != left) report.add("s3-left", {a, b, c}, mismatch(at(ab, c), left));
            Rational right = at(c, a) + at(c, b);
            if (at(c, ab) != right) report.add("s3-right", {a, b, c}, mismatch(at(c, ab), right));
        }
    }
    return report;
}

ValidationReport jmap_validate(const Oml& oml, std::span<const Rational> q) {
    const std::size_t n = oml.size();
    expect_size(q, n * n, "j-map");
    auto at = [&](ElementId a, ElementId b) -> const Rational& { return q[a * n + b]; };
    const ElementId zero = oml.bottom(), one = oml.top();

    ValidationReport report;
    check_range(q, n, 2, report);
    if (sgn(at(zero, zero)) != 0) report.add("j1", {zero, zero}, mismatch(at(zero, zero), 0));
    if (at(one, one) != 1) report.add("j1", {one, one}, mismatch(at(one, one), 1));
    for (ElementId a = 0; a < n; ++a)
        for (ElementId b = 0; b < n; ++b) {
            if (!oml.orthogonal(a, b)) continue;
            Rational want = at(a, a) + at(b, b);
            if (at(a, b) != want) report.add("j2", {a, b}, mismatch(at(a, b), want));
        }
    for (auto [a, b] : orthogonal_pairs(oml)) {
        ElementId ab = oml.join(a, b);
        for (ElementId c = 0; c < n; ++c) {
            Rational left = at(a, c) + at(b, c) - at(c, c);
            if (at(ab, c) != left) report.add("j3-left", {a, b, c}, mismatch(at(ab, c), left));
            Rational right = at(c, a) + at(c, b) - at(c, c);
            if (at(c, ab) != right) report.add("j3-right", {a, b, c}, mismatch(at(c, ab), right));
        }
    }
    return report;
}

ValidationReport dmap_validate(const Oml& oml, std::span<const Rational> d) {
    const std::size_t n = oml.size();
    expect_size(d, n * n, "d-map");
    auto at = [&](ElementId a, ElementId b) -> const Rational& { return d[a * n + b]; };
    const ElementId zero = oml.bottom(), one = oml.top();

    ValidationReport report;
    check_range(d, n, 2, report);
    for (ElementId a = 0; a < n; ++a)
        if (sgn(at(a, a)) != 0) report.add("d1", {a, a}, mismatch(at(a, a), 0));
    if (at(one, zero) != 1) report.add("d1", {one, zero}, mismatch(at(one, zero), 1));
    if (at(zero, one) != 1) report.add("d1", {zero, one}, mismatch(at(zero, one), 1));
    for (ElementId a = 0; a < n; ++a)
        for (ElementId b = 0; b < n; ++b) {
            if (!oml.orthogonal(a, b)) continue;
            Rational want = at(a, zero) + at(zero, b);
            if (at(a, b) != want) report.add("d2", {a, b}, mismatch(at(a, b), want));
        }
    for (auto [a, b] : orthogonal_pairs(oml)) {
        ElementId ab = oml.join(a, b);
        for (ElementId c = 0; c < n; ++c) {
            Rational left = at(a, c) + at(b, c) - at(zero, c);
            if (at(ab, c) != left) report.add("d3-left", {a, b, c}, mismatch(at(ab, c), left));
            Rational right = at(c, a) + at(c, b) - at(c, zero);
            if (at(c, ab) != right) report.add("d3-right", {a, b, c}, mismatch(at(c, ab), right));
        }
    }
    return report;
}

ValidationReport nmap_validate(const Oml& oml, std::span<const Rational> p, std::size_t arity) {
    const std::size_t n = oml.size();
    expect_size(p, table_size(oml, arity), "s_n-map");
    auto index = [&](std::span<const ElementId> t) {
        std::size_t i = 0;
        for (auto e : t) i = i * n + e;
        return i;
    };

    ValidationReport report;
    check_range(p, n, arity, report);
    std::vector<ElementId> ones(arity, oml.top());
    if (p[index(ones)] != 1) report.add("sn1", ones, mismatch(p[index(ones)], 1));

    for_each_tuple(n, arity, [&](std::span<const ElementId> t) {
        bool clash = false;
        for (std::size_t i = 0; i < arity && !clash; ++i)
            for (std::size_t j = i + 1; j < arity && !clash; ++j) clash = oml.orthogonal(t[i], t[j]);
        if (clash && sgn(p[index(t)]) != 0) report.add("sn2", {t.begin(), t.end()}, mismatch(p[index(t)], 0));
    });

    const auto pairs = orthogonal_pairs(oml);
    for (std::size_t pos = 0; pos < arity; ++pos)
        for_each_tuple(n, arity, [&](std::span<const ElementId> base) {
            if (base[pos] != 0) return;  // enumerate the other coordinates once
            std::vector<ElementId> t(base.begin(), base.end());
            for (auto [a, b] : pairs) {
                t[pos] = a;
                Rational sum = p[index(t)];
                t[pos] = b;
                sum += p[index(t)];
                t[pos] = oml.join(a, b);
                const Rational& whole = p[index(t)];
                if (whole != sum) {
                    std::vector<ElementId> witness = t;
                    witness[pos] = a;
                    witness.push_back(b);
                    report.add("sn3-" + std::to_string(pos + 1), std::move(witness), mismatch(whole, sum));
                }
            }
        });
    return report;
}

State State::make(LatticePtr lattice, std::vector<Rational> values) {
    ValidationReport report = validate_state(*lattice, values);
    if (!report.valid()) throw ValidationError("not a state", std::move(report));
    return State(std::move(lattice), std::move(values));
}

bool PairMap::commutative() const {
    const std::size_t n = lattice_->size();
    for (ElementId a = 0; a < n; ++a)
        for (ElementId b = a + 1; b < n; ++b)
            if ((*this)(a, b) != (*this)(b, a)) return false;
    return true;
}

SMap SMap::make(LatticePtr lattice, std::vector<Rational> values) {
    ValidationReport report = smap_validate(*lattice, values);
    if (!report.valid()) throw ValidationError("not an s-map", std::move(report));
    return SMap(std::move(lattice), std::move(values));
}

JMap JMap::make(LatticePtr lattice, std::vector<Rational> values) {
    ValidationReport report = jmap_validate(*lattice, values);
    if (!report.valid()) throw ValidationError("not a j-map", std::move(report));
    return JMap(std::move(lattice), std::move(values));
}

DMap DMap::make(LatticePtr lattice, std::vector<Rational> values) {
    ValidationReport report = dmap_validate(*lattice, values);
    if (!report.valid()) throw ValidationError("not a d-map", std::move(report));
    return DMap(std::move(lattice), std::move(values));
}

NMap NMap::make(LatticePtr lattice, std::size_t arity, std::vector<Rational> values) {
    ValidationReport report = nmap_validate(*lattice, values, arity);
    if (!report.valid()) throw ValidationError("not an s_" + std::to_string(arity) + "-map", std::move(report));
    return NMap(std::move(lattice), arity, std::move(values));
}

std::size_t NMap::index(std::span<const ElementId> tuple) const {
    if (tuple.size() != arity_) throw ArgumentError("tuple length does not match arity");
    std::size_t i = 0;
    for (auto e : tuple) i = i * lattice_->size() + e;
    return i;
}

State state_from_smap(const SMap& p) {
    std::vector<Rational> m(p.lattice().size());
    for (ElementId a = 0; a < m.size(); ++a) m[a] = p.diag(a);
    return State::make(p.lattice_ptr(), std::move(m));
}

JMap jmap_from_smap(const SMap& p) {
    const std::size_t n = p.lattice().size();
    std::vector<Rational> q(n * n);
    for (ElementId a = 0; a < n; ++a)
        for (ElementId b = 0; b < n; ++b) q[a * n + b] = p.join_value(a, b);
    return JMap::make(p.lattice_ptr(), std::move(q));
}

DMap dmap_from_smap(const SMap& p) {
    const std::size_t n = p.lattice().size();
    std::vector<Rational> d(n * n);
    for (ElementId a = 0; a < n; ++a)
        for (ElementId b = 0; b < n; ++b) {
            d[a * n + b] = p.difference_value(a, b);
            Rational closed = p.diag(a) + p.diag(b) - 2 * p(a, b);
            if (d[a * n + b] != closed)
                throw ConsistencyError("d_p(" + p.lattice().label(a) + "," + p.lattice().label(b) + ") = " +
                                       show(d[a * n + b]) + " but p(a,a)+p(b,b)-2p(a,b) = " + show(closed));
        }
    return DMap::make(p.lattice_ptr(), std::move(d));
}

SMap classical_smap_from_state(const State& m) {
    const Oml& oml = m.lattice();
    if (!oml.all_compatible()) throw ArgumentError("classical s-map needs a lattice whose pairs are all compatible");
    const std::size_t n = oml.size();
    std::vector<Rational> p(n * n);
    for (ElementId a = 0; a < n; ++a)
        for (ElementId b = 0; b < n; ++b) p[a * n + b] = m(oml.meet(a, b));
    return SMap::make(m.lattice_ptr(), std::move(p));
}

NMap to_nmap(const SMap& p) { return NMap::make(p.lattice_ptr(), 2, p.values()); }

SMap to_smap(const NMap& p) {
    if (p.arity() != 2) throw ArgumentError("only an arity-2 map is an s-map");
    return SMap::make(p.lattice_ptr(), p.values());
}

NMap marginal_map(const NMap& p, std::span<const std::size_t> keep) {
    if (keep.empty() || keep.size() >= p.arity()) throw ArgumentError("marginal must keep 1..arity-1 coordinates");
    std::vector<std::uint8_t> seen(p.arity(), 0);
    for (auto k : keep) {
        if (k >= p.arity()) throw ArgumentError("coordinate " + std::to_string(k) + " out of range");
        if (seen[k]++) throw ArgumentError("coordinate " + std::to_string(k) + " kept twice");
    }
    const Oml& oml = p.lattice();
    std::vector<Rational> values(table_size(oml, keep.size()));
    std::vector<ElementId> full(p.arity(), oml.top());
    std::size_t i = 0;
    for_each_tuple(oml.size(), keep.size(), [&](std::span<const ElementId> t) {
        for (std::size_t k = 0; k < keep.size(); ++k) full[keep[k]] = t[k];
        values[i++] = p(full);
    });
    return NMap::make(p.lattice_ptr(), keep.size(), std::move(values));
}

ValidationReport smap_identity_audit(const SMap& p) {
    const Oml& oml = p.lattice();
    const std::size_t n = oml.size();
    const ElementId zero = oml.bottom(), one = oml.top();
    ValidationReport report;

    std::vector<Rational> m(n);
    for (ElementId a = 0; a < n; ++a) m[a] = p.diag(a);
    ValidationReport state = validate_state(oml, m);
    for (auto& f : state.failures) report.add("N1-state", f.witness, f.axiom + ": " + f.detail);

    bool commutative = p.commutative();
    for (ElementId a = 0; a < n; ++a) {
        if (p(a, one) != p.diag(a) || p(one, a) != p.diag(a)) report.add("N1", {a}, "p(a,a), p(a,1), p(1,a) differ");
        Rational d0 = p.difference_value(a, zero);
        if (d0 != p.diag(a) || p.difference_value(zero, a) != p.diag(a))
            report.add("lemma1-b", {a}, "d_p(a,0) = " + show(d0) + ", m_p(a) = " + show(p.diag(a)));
        for (ElementId b = 0; b < n; ++b) {
            if (oml.compatible(a, b) && (p(a, b) != p.diag(oml.meet(a, b)) || p(a, b) != p(b, a)))
                report.add("N2", {a, b}, "compatible pair: p(a,b) = " + show(p(a, b)) + ", m_p(a^b) = " +
                                             show(p.diag(oml.meet(a, b))));
            Rational n3 = 1 - p.diag(a) - p.diag(b) + p(a, b);
            if (p(oml.ortho(a), oml.ortho(b)) != n3)
                report.add("N3", {a, b}, mismatch(p(oml.ortho(a), oml.ortho(b)), n3));
            Rational closed = p.diag(a) + p.diag(b) - 2 * p(a, b);
            if (p.difference_value(a, b) != closed)
                report.add("lemma1-a", {a, b}, mismatch(p.difference_value(a, b), closed));
            if (!in_unit_interval(p.join_value(a, b)))
                report.add("jmap-range", {a, b}, "q_p = " + show(p.join_value(a, b)));
            if (commutative && p.difference_value(a, b) != p.difference_value(b, a))
                report.add("dmap-symmetric", {a, b});
        }
    }
    return report;
}

ValidationReport de_morgan_audit(const Oml& oml, std::span<const Rational> p) {
    const std::size_t n = oml.size();
    expect_size(p, n * n, "s-map");
    auto at = [&](ElementId a, ElementId b) -> const Rational& { return p[a * n + b]; };
    auto q = [&](ElementId a, ElementId b) { return Rational(at(a, a) + at(b, b) - at(a, b)); };
    ValidationReport report;
    for (ElementId a = 0; a < n; ++a)
        for (ElementId b = 0; b < n; ++b) {
            ElementId na = oml.ortho(a), nb = oml.ortho(b);
            Rational conj = 1 - q(a, b);
            if (at(na, nb) != conj) report.add("de-morgan-conj", {a, b}, "p(a',b') " + mismatch(at(na, nb), conj));
            Rational disj = 1 - at(a, b);
            if (q(na, nb) != disj) report.add("de-morgan-disj", {a, b}, "q_p(a',b') " + mismatch(q(na, nb), disj));
        }
    return report;
}

ValidationReport de_morgan_audit(const SMap& p) { return de_morgan_audit(p.lattice(), p.values()); }

namespace {

class FormulaParser {
public:
    FormulaParser(std::string_view text, const Oml& oml) : text_(text), oml_(oml) {}

    Formula parse() {
        Formula f = expr();
        skip();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return f;
    }

private:
    Formula expr() {
        Formula left = term();
        skip();
        if (pos_ < text_.size() && (text_[pos_] == '&' || text_[pos_] == '|')) {
            char op = text_[pos_++];
            Formula right = term();
            return op == '&' ? Formula::conj(std::move(left), std::move(right))
                             : Formula::disj(std::move(left), std::move(right));
        }
        return left;
    }

    Formula term() {
        skip();
        if (pos_ >= text_.size()) fail("unexpected end of formula");
        if (text_[pos_] == '~') {
            ++pos_;
            return Formula::negation(term());
        }
        if (text_[pos_] == '(') {
            ++pos_;
            Formula f = expr();
            skip();
            if (pos_ >= text_.size() || text_[pos_] != ')') fail("missing ')'");
            ++pos_;
            return f;
        }
        std::size_t start = pos_;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
               std::string_view("&|~()").find(text_[pos_]) == std::string_view::npos)
            ++pos_;
        if (start == pos_) fail("expected a label");
        auto label = text_.substr(start, pos_ - start);
        auto id = oml_.find(label);
        if (!id) fail("unknown label \"" + std::string(label) + "\"");
        return Formula::literal(*id);
    }

    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError("formula \"" + std::string(text_) + "\" at offset " + std::to_string(pos_) + ": " + why);
    }

    std::string_view text_;
    const Oml& oml_;
    std::size_t pos_ = 0;
};

/// Literal or negated literal, resolved to the element it denotes.
std::optional<ElementId> literal_element(const Formula& f, const Oml& oml) {
    if (f.kind == Formula::Kind::Literal) return f.element;
    if (f.kind == Formula::Kind::Not && f.args.front().kind == Formula::Kind::Literal)
        return oml.ortho(f.args.front().element);
    return std::nullopt;
}

}  // namespace

Formula parse_formula(std::string_view text, const Oml& oml) { return FormulaParser(text, oml).parse(); }

std::string to_string(const Formula& f, const Oml& oml) {
    switch (f.kind) {
        case Formula::Kind::Literal:
            return oml.label(f.element);
        case Formula::Kind::Not: {
            const Formula& inner = f.args.front();
            std::string s = to_string(inner, oml);
            return inner.kind == Formula::Kind::Literal || inner.kind == Formula::Kind::Not ? "~" + s
                                                                                           : "~(" + s + ")";
        }
        case Formula::Kind::And:
        case Formula::Kind::Or: {
            auto side = [&](const Formula& g) {
                bool wrap = g.kind == Formula::Kind::And || g.kind == Formula::Kind::Or;
                return wrap ? "(" + to_string(g, oml) + ")" : to_string(g, oml);
            };
            return side(f.args[0]) + (f.kind == Formula::Kind::And ? " & " : " | ") + side(f.args[1]);
        }
    }
    return {};
}

Rational counterfactual_eval(const SMap& p, const Formula& f) {
    const Oml& oml = p.lattice();
    auto connective = [&](const Formula& g) -> std::optional<Rational> {
        if (g.kind != Formula::Kind::And && g.kind != Formula::Kind::Or) return std::nullopt;
        auto x = literal_element(g.args[0], oml);
        auto y = literal_element(g.args[1], oml);
        if (!x || !y)
            throw UnsupportedFormulaError("connectives take literals or negated literals only: " + to_string(g, oml));
        return g.kind == Formula::Kind::And ? Rational(p(*x, *y)) : p.join_value(*x, *y);
    };

    if (f.kind == Formula::Kind::Literal) return p.diag(f.element);
    if (auto v = connective(f)) return *v;
    // f is a negation
    const Formula& inner = f.args.front();
    if (inner.kind == Formula::Kind::Literal) return 1 - p.diag(inner.element);
    if (auto v = connective(inner)) return 1 - *v;
    throw UnsupportedFormulaError("nested negation is not evaluable: " + to_string(f, oml));
}

}  // namespace omlbell
