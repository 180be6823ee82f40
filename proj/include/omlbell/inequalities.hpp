#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "omlbell/measures.hpp"

namespace omlbell {

/// Bell-type inequalities. Unprimed forms are evaluated on a State with
/// lattice meets; primed forms and the triangle forms need an s-map.
enum class InequalityId { B1, B2, C1, C2, B1p, B2p, C1p, C2p, TRI, TRIp, TRIpp };

std::string_view to_string(InequalityId id);
/// Accepts the tag names above (e.g. "B2p"); throws ArgumentError otherwise.
InequalityId parse_inequality_id(std::string_view tag);

std::size_t arity(InequalityId id);
bool needs_smap(InequalityId id);
/// Number of argument-order variants: 2^(number of s-map terms) for
/// B1p/B2p/C1p/C2p, 1 for everything else.
std::size_t variant_count(InequalityId id);

struct InequalityReport {
    InequalityId id;
    std::vector<ElementId> args;
    /// Bit i set means the i-th s-map term (in display order) has its
    /// arguments swapped. Always 0 for forms without variants.
    std::uint32_t variant = 0;
    Rational lhs;
    Rational rhs;
    /// rhs - lhs for "<=" forms, lhs - rhs for ">=" forms.
    Rational slack;
    bool satisfied = false;
};

/// B1, B2, C1, C2 on a state. Throws ArgumentError on a primed id or an
/// argument count that does not match.
InequalityReport eval_state_inequality(const State& m, InequalityId id, std::span<const ElementId> args);

/// B1p..C2p and the triangle forms on an s-map. The triangle form TRI uses
/// b' in the middle: d_p(a,c) <= d_p(a,b') + d_p(b',c).
InequalityReport eval_smap_inequality(const SMap& p, InequalityId id, std::span<const ElementId> args,
                                      std::uint32_t variant = 0);

/// Affine form constant + sum of coeff * p(a,b) over s-map entries.
struct PairForm {
    std::map<std::pair<ElementId, ElementId>, Rational> coeffs;
    Rational constant;
};

/// Both sides of an s-map inequality as affine forms in an unknown s-map.
/// Used to optimize an inequality side over the s-map polytope.
std::pair<PairForm, PairForm> smap_inequality_forms(const Oml& oml, InequalityId id, std::span<const ElementId> args,
                                                    std::uint32_t variant = 0);

using Measure = std::variant<State, SMap>;

struct ScanResult {
    /// Violations only, ordered by argument tuple, then variant.
    std::vector<InequalityReport> violations;
    std::size_t tuples_checked = 0;
    std::size_t variants_checked = 0;
};

/// Evaluates `id` on every ordered tuple (repetition allowed) of the
/// required arity; with `order_variants`, every argument-order variant too.
/// Throws ArgumentError when the measure kind does not suit `id`.
ScanResult scan(const Measure& measure, InequalityId id, bool order_variants);

/// Empirical audit of the triangle-form equivalences and the commutative
/// quadruple implication:
///   B2p <=> TRI per triple, C1p <=> TRIp and C2p <=> TRIpp per quadruple,
///   (all B2p) <=> (all C1p), and for commutative p, (all B2p) => all C2p.
/// Each implication direction is reported under its own name.
ValidationReport equivalence_audit(const SMap& p);

}  // namespace omlbell
