#include "omlbell/io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace omlbell {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

json parse_json(std::string_view text) {
    std::vector<std::set<std::string>> keys;
    json::parser_callback_t check_duplicates = [&](int, json::parse_event_t event, json& parsed) {
        if (event == json::parse_event_t::object_start) keys.emplace_back();
        if (event == json::parse_event_t::object_end) keys.pop_back();
        if (event == json::parse_event_t::key && !keys.back().insert(parsed.get<std::string>()).second)
            throw ParseError("duplicate key \"" + parsed.get<std::string>() + "\"");
        return true;
    };
    try {
        return json::parse(text.begin(), text.end(), check_duplicates);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
}

const json& field(const json& obj, const char* key, const std::string& path) {
    if (!obj.is_object()) throw ParseError(path + ": expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(path + ": missing \"" + key + "\"");
    return *it;
}

std::size_t size_field(const json& obj, const char* key, const std::string& path) {
    const json& v = field(obj, key, path);
    if (!v.is_number_unsigned()) throw ParseError(path + "." + key + ": expected a non-negative integer");
    return v.get<std::size_t>();
}

ElementId element_ref(const json& v, const std::vector<std::string>& labels, const std::string& path) {
    if (v.is_number_unsigned()) {
        auto i = v.get<std::size_t>();
        if (i >= labels.size()) throw ParseError(path + ": index " + std::to_string(i) + " out of range");
        return i;
    }
    if (v.is_string()) {
        auto s = v.get<std::string>();
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == s) return i;
        throw ParseError(path + ": unknown label \"" + s + "\"");
    }
    throw ParseError(path + ": expected a label or an index");
}

Oml lattice_from_json(const json& doc, const std::string& path);

Oml explicit_lattice(const json& doc, const std::string& path) {
    const json& labels_json = field(doc, "labels", path);
    if (!labels_json.is_array()) throw ParseError(path + ".labels: expected an array");
    RawLattice raw;
    for (std::size_t i = 0; i < labels_json.size(); ++i) {
        if (!labels_json[i].is_string()) throw ParseError(path + ".labels[" + std::to_string(i) + "]: expected a string");
        raw.labels.push_back(labels_json[i].get<std::string>());
    }
    const std::size_t n = raw.labels.size();
    if (n > kMaxElements) throw SizeError(std::to_string(n) + " elements exceed the limit of " + std::to_string(kMaxElements));

    raw.leq.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) raw.leq[i * n + i] = 1;
    const json& leq = field(doc, "leq", path);
    if (!leq.is_array()) throw ParseError(path + ".leq: expected an array");
    for (std::size_t k = 0; k < leq.size(); ++k) {
        std::string where = path + ".leq[" + std::to_string(k) + "]";
        if (!leq[k].is_array() || leq[k].size() != 2) throw ParseError(where + ": expected a pair");
        raw.leq[element_ref(leq[k][0], raw.labels, where) * n + element_ref(leq[k][1], raw.labels, where)] = 1;
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (raw.leq[i * n + k])
                for (std::size_t j = 0; j < n; ++j)
                    if (raw.leq[k * n + j]) raw.leq[i * n + j] = 1;

    const json& ortho = field(doc, "ortho", path);
    if (!ortho.is_array() || ortho.size() != n)
        throw ParseError(path + ".ortho: expected one entry per label");
    for (std::size_t i = 0; i < n; ++i)
        raw.ortho.push_back(element_ref(ortho[i], raw.labels, path + ".ortho[" + std::to_string(i) + "]"));
    return Oml::from_raw(raw);
}

Oml lattice_from_json(const json& doc, const std::string& path) {
    if (doc.is_string()) return named_lattice(doc.get<std::string>());
    const json& kind_json = field(doc, "kind", path);
    if (!kind_json.is_string()) throw ParseError(path + ".kind: expected a string");
    const auto kind = kind_json.get<std::string>();
    if (kind == "boolean") return build_boolean(size_field(doc, "n", path));
    if (kind == "mo") return build_mo(size_field(doc, "n", path));
    if (kind == "horizontal-sum") {
        const json& parts = field(doc, "parts", path);
        if (!parts.is_array()) throw ParseError(path + ".parts: expected an array");
        std::vector<Oml> built;
        for (std::size_t i = 0; i < parts.size(); ++i)
            built.push_back(lattice_from_json(parts[i], path + ".parts[" + std::to_string(i) + "]"));
        return build_horizontal_sum(built);
    }
    if (kind == "greechie") {
        GreechieDiagram d;
        d.atom_count = size_field(doc, "atoms", path);
        const json& blocks = field(doc, "blocks", path);
        if (!blocks.is_array()) throw ParseError(path + ".blocks: expected an array");
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            std::string where = path + ".blocks[" + std::to_string(i) + "]";
            if (!blocks[i].is_array()) throw ParseError(where + ": expected an array of atom indices");
            std::vector<std::size_t> block;
            for (const auto& a : blocks[i]) {
                if (!a.is_number_unsigned()) throw ParseError(where + ": expected atom indices");
                block.push_back(a.get<std::size_t>());
            }
            d.blocks.push_back(std::move(block));
        }
        return build_from_greechie(d);
    }
    if (kind == "explicit") return explicit_lattice(doc, path);
    throw ParseError(path + ".kind: unknown lattice kind \"" + kind + "\"");
}

Rational value_from_json(const json& v, const std::string& where) {
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (v.is_string()) {
        try {
            return parse_rational(v.get<std::string>());
        } catch (const ParseError& e) {
            throw ParseError(where + ": " + e.what());
        }
    }
    throw ParseError(where + ": expected a rational string or an integer");
}

std::string tuple_key(const Oml& oml, std::span<const ElementId> t) {
    std::string key;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) key += ',';
        key += oml.label(t[i]);
    }
    return key;
}

ordered_json lattice_to_json(const Oml& oml) {
    ordered_json doc;
    doc["kind"] = "explicit";
    doc["labels"] = oml.labels();
    ordered_json leq = ordered_json::array();
    for (auto [a, b] : oml.covers()) leq.push_back({oml.label(a), oml.label(b)});
    doc["leq"] = std::move(leq);
    ordered_json ortho = ordered_json::array();
    for (ElementId a = 0; a < oml.size(); ++a) ortho.push_back(oml.ortho(a));
    doc["ortho"] = std::move(ortho);
    return doc;
}

bool parse_size(std::string_view s, std::size_t& out) {
    if (s.empty()) return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

Oml parse_lattice(std::string_view text) { return lattice_from_json(parse_json(text), "lattice"); }

std::string serialize_lattice(const Oml& oml) { return lattice_to_json(oml).dump(2) + "\n"; }

Oml named_lattice(std::string_view name) {
    std::size_t n = 0;
    if (name == "example1") return build_mo(3);
    if (name.starts_with("mo") && parse_size(name.substr(2), n)) return build_mo(n);
    if (name.starts_with("boolean") && parse_size(name.substr(7), n)) return build_boolean(n);
    throw ArgumentError("unknown lattice name \"" + std::string(name) + "\" (expected example1, moN or booleanN)");
}

Oml load_lattice(std::string_view name_or_path) {
    std::string s(name_or_path);
    std::ifstream probe(s);
    if (probe) return parse_lattice(read_file(s));
    return named_lattice(s);
}

MapDocument parse_map(std::string_view text, LatticePtr lattice) {
    const json doc = parse_json(text);
    if (!doc.is_object()) throw ParseError("map: expected an object");
    std::string name;
    if (auto it = doc.find("name"); it != doc.end()) {
        if (!it->is_string()) throw ParseError("map.name: expected a string");
        name = it->get<std::string>();
    }
    if (auto it = doc.find("lattice"); it != doc.end()) {
        Oml declared = lattice_from_json(*it, "map.lattice");
        if (lattice && *lattice != declared) throw ParseError("map.lattice: does not match the given lattice");
        if (!lattice) lattice = share(std::move(declared));
    }
    if (!lattice) throw ParseError("map: missing \"lattice\"");
    const Oml& oml = *lattice;

    const std::size_t arity = size_field(doc, "arity", "map");
    const std::size_t size = table_size(oml, arity);
    std::optional<Rational> fallback;
    if (auto it = doc.find("default"); it != doc.end()) fallback = value_from_json(*it, "map.default");

    std::vector<std::optional<Rational>> values(size);
    const json& entries = field(doc, "values", "map");
    if (!entries.is_object()) throw ParseError("map.values: expected an object");
    const std::size_t n = oml.size();
    for (const auto& [key, v] : entries.items()) {
        std::string where = "map.values[\"" + key + "\"]";
        std::vector<ElementId> t;
        try {
            t = parse_labels(key, oml);
        } catch (const ArgumentError& e) {
            throw ParseError(where + ": " + e.what());
        }
        if (t.size() != arity) throw ParseError(where + ": expected " + std::to_string(arity) + " labels");
        std::size_t idx = 0;
        for (auto e : t) idx = idx * n + e;
        values[idx] = value_from_json(v, where);
    }

    std::vector<Rational> table(size);
    std::size_t i = 0;
    for_each_tuple(n, arity, [&](std::span<const ElementId> t) {
        if (values[i])
            table[i] = *values[i];
        else if (fallback)
            table[i] = *fallback;
        else
            throw CoverageError("map: no value for (" + tuple_key(oml, t) + ") and no default");
        ++i;
    });

    auto build = [&]() -> AnyMap {
        if (arity == 1) return State::make(lattice, std::move(table));
        if (arity == 2) return SMap::make(lattice, std::move(table));
        return NMap::make(lattice, arity, std::move(table));
    };
    AnyMap map = build();
    return {std::move(name), std::move(lattice), std::move(map)};
}

std::string serialize_map(const AnyMap& map, std::string_view name) {
    const Oml* oml = nullptr;
    const std::vector<Rational>* values = nullptr;
    std::size_t arity = 0;
    std::visit(
        [&](const auto& m) {
            oml = &m.lattice();
            values = &m.values();
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, State>)
                arity = 1;
            else if constexpr (std::is_same_v<T, SMap>)
                arity = 2;
            else
                arity = m.arity();
        },
        map);

    ordered_json doc;
    if (!name.empty()) doc["name"] = std::string(name);
    doc["lattice"] = lattice_to_json(*oml);
    doc["arity"] = arity;
    doc["default"] = "0";
    ordered_json entries = ordered_json::object();
    std::size_t i = 0;
    for_each_tuple(oml->size(), arity, [&](std::span<const ElementId> t) {
        const Rational& v = (*values)[i++];
        if (sgn(v) != 0) entries[tuple_key(*oml, t)] = format_rational(v);
    });
    doc["values"] = std::move(entries);
    return doc.dump(2) + "\n";
}

MapDocument load_map(std::string_view name_or_path) {
    if (name_or_path == "example1-smap") return parse_map(bundled_example1_smap());
    return parse_map(read_file(std::string(name_or_path)));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ArgumentError("cannot open \"" + path + "\"");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<ElementId> parse_labels(std::string_view text, const Oml& oml) {
    std::vector<ElementId> out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = text.find(',', start);
        std::string_view label = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        out.push_back(oml.at(label));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace omlbell
