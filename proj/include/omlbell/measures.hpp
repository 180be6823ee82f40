#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "omlbell/common.hpp"
#include "omlbell/oml.hpp"
#include "omlbell/rational.hpp"

namespace omlbell {

using LatticePtr = std::shared_ptr<const Oml>;

inline LatticePtr share(Oml oml) { return std::make_shared<const Oml>(std::move(oml)); }

/// Checks range, m(1) = 1 and additivity over every orthogonal pair.
ValidationReport validate_state(const Oml& oml, std::span<const Rational> values);

/// Checks (s1), (s2), (s3) and the [0,1] range on a row-major |L| x |L| table.
ValidationReport smap_validate(const Oml& oml, std::span<const Rational> values);

/// Checks (j1)-(j3) and range.
ValidationReport jmap_validate(const Oml& oml, std::span<const Rational> values);

/// Checks (d1)-(d3) and range.
ValidationReport dmap_validate(const Oml& oml, std::span<const Rational> values);

/// Checks (s_n1)-(s_n3) and range on a row-major |L|^arity table.
ValidationReport nmap_validate(const Oml& oml, std::span<const Rational> values, std::size_t arity);

/// Probability measure on a lattice. Only constructible from valid data.
class State {
public:
    /// Throws ValidationError if `values` is not a state on `lattice`.
    static State make(LatticePtr lattice, std::vector<Rational> values);

    const Oml& lattice() const { return *lattice_; }
    const LatticePtr& lattice_ptr() const { return lattice_; }
    const Rational& operator()(ElementId a) const { return values_[a]; }
    const std::vector<Rational>& values() const { return values_; }

private:
    State(LatticePtr lattice, std::vector<Rational> values)
        : lattice_(std::move(lattice)), values_(std::move(values)) {}

    LatticePtr lattice_;
    std::vector<Rational> values_;
};

/// Common storage for the bivariate maps: a dense row-major table over L x L.
class PairMap {
public:
    const Oml& lattice() const { return *lattice_; }
    const LatticePtr& lattice_ptr() const { return lattice_; }
    const Rational& operator()(ElementId a, ElementId b) const { return values_[a * lattice_->size() + b]; }
    const std::vector<Rational>& values() const { return values_; }
    bool commutative() const;

protected:
    PairMap(LatticePtr lattice, std::vector<Rational> values)
        : lattice_(std::move(lattice)), values_(std::move(values)) {}

    LatticePtr lattice_;
    std::vector<Rational> values_;
};

/// Map for simultaneous measurements.
class SMap : public PairMap {
public:
    static SMap make(LatticePtr lattice, std::vector<Rational> values);

    /// m_p(a) = p(a,a).
    const Rational& diag(ElementId a) const { return (*this)(a, a); }
    /// q_p(a,b) = p(a,a) + p(b,b) - p(a,b).
    Rational join_value(ElementId a, ElementId b) const { return diag(a) + diag(b) - (*this)(a, b); }
    /// d_p(a,b) = p(a,b') + p(a',b).
    Rational difference_value(ElementId a, ElementId b) const {
        const Oml& l = lattice();
        return (*this)(a, l.ortho(b)) + (*this)(l.ortho(a), b);
    }

private:
    using PairMap::PairMap;
};

/// Join map.
class JMap : public PairMap {
public:
    static JMap make(LatticePtr lattice, std::vector<Rational> values);

private:
    using PairMap::PairMap;
};

/// Difference map.
class DMap : public PairMap {
public:
    static DMap make(LatticePtr lattice, std::vector<Rational> values);
    bool symmetric() const { return commutative(); }

private:
    using PairMap::PairMap;
};

/// n-variate s-map over L^arity, dense and row-major (first coordinate
/// slowest). Arity 1 is allowed and then coincides with a state.
class NMap {
public:
    static NMap make(LatticePtr lattice, std::size_t arity, std::vector<Rational> values);

    const Oml& lattice() const { return *lattice_; }
    const LatticePtr& lattice_ptr() const { return lattice_; }
    std::size_t arity() const { return arity_; }
    const Rational& operator()(std::span<const ElementId> tuple) const { return values_[index(tuple)]; }
    const std::vector<Rational>& values() const { return values_; }
    std::size_t index(std::span<const ElementId> tuple) const;

private:
    NMap(LatticePtr lattice, std::size_t arity, std::vector<Rational> values)
        : lattice_(std::move(lattice)), arity_(arity), values_(std::move(values)) {}

    LatticePtr lattice_;
    std::size_t arity_;
    std::vector<Rational> values_;
};

/// Largest arity accepted for dense n-variate tables.
inline constexpr std::size_t kMaxArity = 3;

/// Table length |L|^arity; throws SizeError above kMaxArity.
std::size_t table_size(const Oml& oml, std::size_t arity);

/// Calls `fn(tuple)` for every tuple of L^arity in row-major order.
template <class Fn>
void for_each_tuple(std::size_t n, std::size_t arity, Fn&& fn) {
    std::vector<ElementId> t(arity, 0);
    if (n == 0) return;
    while (true) {
        fn(std::span<const ElementId>(t));
        std::size_t k = arity;
        while (k > 0) {
            if (++t[k - 1] < n) break;
            t[k - 1] = 0;
            --k;
        }
        if (k == 0) return;
    }
}

/// m_p(a) = p(a,a).
State state_from_smap(const SMap& p);

/// q_p(a,b) = p(a,a) + p(b,b) - p(a,b).
JMap jmap_from_smap(const SMap& p);

/// d_p(a,b) = p(a,b') + p(a',b). Also checks the closed form
/// p(a,a) + p(b,b) - 2 p(a,b) on every pair and throws ConsistencyError on a
/// mismatch.
DMap dmap_from_smap(const SMap& p);

/// p(a,b) = m(a ^ b). Requires every pair of the lattice to be compatible;
/// throws ArgumentError otherwise.
SMap classical_smap_from_state(const State& m);

NMap to_nmap(const SMap& p);
/// Re-reads an arity-2 NMap as an s-map.
SMap to_smap(const NMap& p);

/// Fixes every coordinate not in `keep` to the top element. The result's
/// coordinate i is the input's coordinate keep[i]. Throws ArgumentError on an
/// empty, repeated, out-of-range or full `keep`.
NMap marginal_map(const NMap& p, std::span<const std::size_t> keep);

/// Identities every valid s-map satisfies: (N1), (N2), (N3), the two d-map
/// forms, d_p(a,0) = d_p(0,a) = m_p(a), q_p in [0,1], and symmetry of d_p for
/// commutative p.
ValidationReport smap_identity_audit(const SMap& p);

/// p(a',b') = 1 - q_p(a,b) and q_p(a',b') = 1 - p(a,b) on all ordered pairs.
ValidationReport de_morgan_audit(const SMap& p);
/// Same audit on a raw row-major table, which need not be an s-map.
ValidationReport de_morgan_audit(const Oml& oml, std::span<const Rational> table);

/// Counterfactual formula over element literals. Only two-literal
/// connectives are evaluable; anything deeper is rejected at evaluation.
struct Formula {
    enum class Kind { Literal, Not, And, Or };

    Kind kind = Kind::Literal;
    ElementId element = 0;
    std::vector<Formula> args;

    static Formula literal(ElementId e) { return {Kind::Literal, e, {}}; }
    static Formula negation(Formula f) { return {Kind::Not, 0, {std::move(f)}}; }
    static Formula conj(Formula x, Formula y) { return {Kind::And, 0, {std::move(x), std::move(y)}}; }
    static Formula disj(Formula x, Formula y) { return {Kind::Or, 0, {std::move(x), std::move(y)}}; }
};

/// Grammar: expr := term (('&' | '|') term)?, term := '~' term | '(' expr ')'
/// | label. '&' is the counterfactual conjunction, '|' the disjunction.
Formula parse_formula(std::string_view text, const Oml& oml);
std::string to_string(const Formula& f, const Oml& oml);

/// literal a -> m_p(a); ~a -> 1 - m_p(a); x & y -> p(x,y); x | y -> q_p(x,y),
/// where a negated literal argument is read as a'; ~(x & y) and ~(x | y)
/// -> 1 minus the value. Throws UnsupportedFormulaError on deeper nesting.
Rational counterfactual_eval(const SMap& p, const Formula& f);

}  // namespace omlbell
