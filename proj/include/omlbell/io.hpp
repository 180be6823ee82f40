#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "omlbell/measures.hpp"

namespace omlbell {

/// Lattice documents (JSON):
///   {"kind": "boolean", "n": 3}
///   {"kind": "mo", "n": 3}
///   {"kind": "horizontal-sum", "parts": [<lattice document>, ...]}
///   {"kind": "greechie", "atoms": 5, "blocks": [[0,1,2], [2,3,4]]}
///   {"kind": "explicit", "labels": [...], "leq": [[lower, upper], ...],
///    "ortho": [...]}
/// In the explicit form "leq" lists generating pairs (cover pairs suffice;
/// the order is their reflexive-transitive closure) by label or index, and
/// "ortho" gives each element's complement by index or label.
/// Throws ParseError with a location on malformed input and
/// ValidationError when the explicit lattice fails an axiom.
Oml parse_lattice(std::string_view text);

/// Explicit document listing cover pairs, in canonical element order.
std::string serialize_lattice(const Oml& oml);

/// "example1" (MO(3)), "moN" and "booleanN", e.g. "mo5", "boolean3".
/// Throws ArgumentError on an unknown name.
Oml named_lattice(std::string_view name);

/// A lattice given on the command line: a named lattice, else a file path.
Oml load_lattice(std::string_view name_or_path);

/// Arity 1 reads as a State, 2 as an SMap, 3 as an NMap.
using AnyMap = std::variant<State, SMap, NMap>;

struct MapDocument {
    std::string name;
    LatticePtr lattice;
    AnyMap map;
};

/// Map documents (JSON):
///   {"name": "...", "lattice": <lattice document or named lattice>,
///    "arity": 2, "default": "0", "values": {"a1,a2": "1/10", ...}}
/// Keys join element labels with commas. Values are rational strings
/// ("1/10"), decimal strings with "." or "," ("0,1") or JSON integers.
/// Tuples missing from "values" take "default"; without one, a missing
/// tuple raises CoverageError. When `lattice` is given it is used, and a
/// lattice named in the document must equal it.
MapDocument parse_map(std::string_view text, LatticePtr lattice = nullptr);

/// Deterministic document: explicit lattice, default "0", nonzero entries
/// in row-major tuple order.
std::string serialize_map(const AnyMap& map, std::string_view name = {});

/// The bundled MO(3) s-map document ("example1-smap").
std::string_view bundled_example1_smap();

/// "example1-smap" resolves to the bundled document, anything else is read
/// as a file path.
MapDocument load_map(std::string_view name_or_path);

/// Reads a whole file; throws ArgumentError when it cannot be opened.
std::string read_file(const std::string& path);

/// Comma-separated element labels, e.g. "a1,a2,a3".
std::vector<ElementId> parse_labels(std::string_view text, const Oml& oml);

/// Entry point of the omlbell tool. Exit codes: 0 success or satisfied,
/// 1 violations found or infeasible, 2 input or validation error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace omlbell
