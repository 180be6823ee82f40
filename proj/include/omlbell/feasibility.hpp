#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "omlbell/inequalities.hpp"
#include "omlbell/linsystem.hpp"
#include "omlbell/measures.hpp"

namespace omlbell {

struct SmapOptions {
    /// Adds p(a,b) = p(b,a) for every pair.
    bool commutative = false;
    /// Pinned entries p(a,b) = v.
    std::map<std::pair<ElementId, ElementId>, Rational> fixed_values;
    /// Adds p(a,a) = m(a).
    std::optional<State> fixed_state;
};

/// One variable per ordered pair, variable index a * |L| + b, bounds [0,1].
/// Throws ArgumentError on pins that contradict each other, (s1), (s2), the
/// fixed state or commutativity, and on pins outside [0,1].
LinSystem assemble_smap_system(const Oml& oml, const SmapOptions& options = {});

/// One variable per ordered triple, index (x * |L| + y) * |L| + z, with the
/// s_3 axioms and p_3(x,y,1) = p_3(x,1,y) = p_3(1,x,y) = p(x,y).
/// `p` must live on `oml` (ArgumentError otherwise).
LinSystem assemble_extension_system(const Oml& oml, const SMap& p);

/// Reads a witness of assemble_smap_system / assemble_extension_system back
/// as a validated map.
SMap smap_from_witness(LatticePtr lattice, std::vector<Rational> witness);
NMap nmap_from_witness(LatticePtr lattice, std::size_t arity, std::vector<Rational> witness);

/// Dense objective over the s-map variables for an affine form; the
/// constant is dropped.
std::vector<Rational> pair_objective(const Oml& oml, const PairForm& form);

/// Optimum of one side of an s-map inequality over the s-map polytope. The
/// reported objective value includes the form's constant.
FeasibilityResult optimize_inequality_side(const Oml& oml, InequalityId id, std::span<const ElementId> args,
                                           std::uint32_t variant, bool lhs, Sense sense,
                                           const SmapOptions& options = {});

struct SampleResult {
    FeasibilityStatus status = FeasibilityStatus::Feasible;
    std::vector<SMap> maps;
};

/// Objective coefficients for sample k: a std::mt19937_64 seeded with
/// `seed` is drawn |L|^2 times per sample, coefficient = (draw % 11) - 5, and
/// the sample maximizes. Throws ArgumentError when count is 0. An infeasible
/// polytope yields an empty list with status Infeasible.
SampleResult sample_smaps(const LatticePtr& lattice, std::size_t count, std::uint64_t seed,
                          const SmapOptions& options = {});

}  // namespace omlbell
