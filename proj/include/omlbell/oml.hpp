#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "omlbell/common.hpp"

namespace omlbell {

/// Largest lattice the builders and the loader accept.
inline constexpr std::size_t kMaxElements = 512;

/// Unvalidated lattice data as read from a document or assembled by a
/// builder. Tables are row-major n x n. `meet`/`join` may be left empty, in
/// which case they are derived from `leq`.
struct RawLattice {
    std::vector<std::string> labels;
    std::vector<std::uint8_t> leq;
    std::vector<ElementId> ortho;
    std::vector<ElementId> meet;
    std::vector<ElementId> join;

    std::size_t size() const { return labels.size(); }
};

/// Checks partial order, glb/lub tables, the three ortholattice conditions,
/// the orthomodular law and atomisticity. Every failure carries a witness
/// tuple; checks that need a lattice are skipped when the order is broken.
ValidationReport validate_oml(const RawLattice& candidate);

/// A finite orthomodular lattice. Immutable once constructed.
///
/// Elements are stored in canonical order: bottom first, atoms in builder
/// order, then the remaining elements by rank and label, top last.
class Oml {
public:
    /// Validates `raw` and canonicalizes the element order. Throws
    /// ValidationError with the full report when an axiom fails and
    /// SizeError above kMaxElements.
    static Oml from_raw(const RawLattice& raw);

    std::size_t size() const { return labels_.size(); }
    ElementId bottom() const { return 0; }
    ElementId top() const { return size() - 1; }

    bool leq(ElementId a, ElementId b) const { return leq_[a * size() + b] != 0; }
    ElementId meet(ElementId a, ElementId b) const { return meet_[a * size() + b]; }
    ElementId join(ElementId a, ElementId b) const { return join_[a * size() + b]; }
    ElementId ortho(ElementId a) const { return ortho_[a]; }

    /// a is orthogonal to b iff a <= b'.
    bool orthogonal(ElementId a, ElementId b) const { return leq(a, ortho(b)); }
    /// a is compatible with b iff a = (a meet b) join (a meet b').
    bool compatible(ElementId a, ElementId b) const { return compat_[a * size() + b] != 0; }
    bool all_compatible() const;

    const std::string& label(ElementId a) const { return labels_[a]; }
    const std::vector<std::string>& labels() const { return labels_; }
    std::optional<ElementId> find(std::string_view label) const;
    /// Like find() but throws ArgumentError naming the unknown label.
    ElementId at(std::string_view label) const;

    const std::vector<ElementId>& atoms() const { return atoms_; }
    bool is_atom(ElementId a) const;
    /// Height of `a`: number of atoms in any orthogonal decomposition.
    std::size_t rank(ElementId a) const { return rank_[a]; }

    /// Maximal pairwise-compatible subsets, each sorted, listed in
    /// lexicographic order.
    const std::vector<std::vector<ElementId>>& blocks() const { return blocks_; }

    /// All sets of pairwise-orthogonal atoms whose join is `a`, each sorted,
    /// in lexicographic order. For the bottom element: one empty set.
    std::vector<std::vector<ElementId>> orthogonal_atom_decomposition(ElementId a) const;

    /// Covering pairs (a, b): a < b with nothing strictly between.
    std::vector<std::pair<ElementId, ElementId>> covers() const;

    RawLattice raw() const;

    friend bool operator==(const Oml&, const Oml&) = default;

private:
    Oml() = default;

    std::vector<std::string> labels_;
    std::vector<std::uint8_t> leq_;
    std::vector<ElementId> ortho_;
    std::vector<ElementId> meet_;
    std::vector<ElementId> join_;
    std::vector<std::uint8_t> compat_;
    std::vector<ElementId> atoms_;
    std::vector<std::size_t> rank_;
    std::vector<std::vector<ElementId>> blocks_;
};

inline bool is_orthogonal(const Oml& oml, ElementId a, ElementId b) { return oml.orthogonal(a, b); }
inline bool is_compatible(const Oml& oml, ElementId a, ElementId b) { return oml.compatible(a, b); }

/// Greechie diagram: atoms 0..atomCount-1 and the blocks they form.
struct GreechieDiagram {
    std::size_t atom_count = 0;
    std::vector<std::vector<std::size_t>> blocks;
};

/// Power-set lattice 2^atomCount. Labels: {0,1} for one atom, {0,a,a',1} for
/// two, otherwise atoms e1..en and joins written "e1+e3".
Oml build_boolean(std::size_t atom_count);

/// Identifies all bottoms and all tops; every other element stays disjoint.
/// With more than one part, labels are tagged with the 1-based part index
/// ("a'" in part 2 becomes "a2'").
Oml build_horizontal_sum(std::span<const Oml> parts);

/// MO(n): horizontal sum of n copies of 2^2. MO(3) has atoms a1, a1', ..., a3'.
Oml build_mo(std::size_t n);

/// Pastes one Boolean block per diagram block, identifying shared atoms and
/// their block complements, then verifies the result axiomatically.
/// Throws DiagramError on a malformed diagram and ConstructionError when the
/// pasting is not an orthomodular lattice.
Oml build_from_greechie(const GreechieDiagram& diagram);

}  // namespace omlbell
