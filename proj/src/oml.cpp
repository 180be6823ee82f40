#include "omlbell/oml.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <numeric>
#include <set>
#include <tuple>

namespace omlbell {

namespace {

constexpr ElementId kNone = static_cast<ElementId>(-1);

bool label_ok(const std::string& label) {
    if (label.empty()) return false;
    return std::none_of(label.begin(), label.end(), [](char c) {
        return c == ',' || c == '"' || c == '(' || c == ')' || c == '&' || c == '|' || c == '~' ||
               std::isspace(static_cast<unsigned char>(c));
    });
}

/// Greatest lower bound of a and b under `leq`, or kNone.
ElementId glb(const std::vector<std::uint8_t>& leq, std::size_t n, ElementId a, ElementId b) {
    ElementId best = kNone;
    for (ElementId c = 0; c < n; ++c) {
        if (!leq[c * n + a] || !leq[c * n + b]) continue;
        if (best == kNone || leq[best * n + c]) best = c;
    }
    if (best == kNone) return kNone;
    for (ElementId c = 0; c < n; ++c)
        if (leq[c * n + a] && leq[c * n + b] && !leq[c * n + best]) return kNone;
    return best;
}

ElementId lub(const std::vector<std::uint8_t>& leq, std::size_t n, ElementId a, ElementId b) {
    ElementId best = kNone;
    for (ElementId c = 0; c < n; ++c) {
        if (!leq[a * n + c] || !leq[b * n + c]) continue;
        if (best == kNone || leq[c * n + best]) best = c;
    }
    if (best == kNone) return kNone;
    for (ElementId c = 0; c < n; ++c)
        if (leq[a * n + c] && leq[b * n + c] && !leq[best * n + c]) return kNone;
    return best;
}

struct Tables {
    std::vector<ElementId> meet, join;
};

/// Fills meet/join from leq when they were not supplied. Returns false when
/// some pair has no glb or lub.
bool derive_tables(const RawLattice& raw, Tables& out) {
    const std::size_t n = raw.size();
    out.meet.assign(n * n, kNone);
    out.join.assign(n * n, kNone);
    for (ElementId a = 0; a < n; ++a)
        for (ElementId b = a; b < n; ++b) {
            ElementId m = glb(raw.leq, n, a, b);
            ElementId j = lub(raw.leq, n, a, b);
            if (m == kNone || j == kNone) return false;
            out.meet[a * n + b] = out.meet[b * n + a] = m;
            out.join[a * n + b] = out.join[b * n + a] = j;
        }
    return true;
}

std::vector<std::uint64_t> bitsets_for(const std::vector<std::uint8_t>& compat, std::size_t n) {
    std::vector<std::uint64_t> rows(n, 0);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (a != b && compat[a * n + b]) rows[a] |= std::uint64_t{1} << b;
    return rows;
}

void bron_kerbosch(std::uint64_t r, std::uint64_t p, std::uint64_t x, const std::vector<std::uint64_t>& adj,
                   std::vector<std::uint64_t>& out) {
    if (p == 0 && x == 0) {
        out.push_back(r);
        return;
    }
    std::uint64_t px = p | x;
    int pivot = std::countr_zero(px);
    std::uint64_t candidates = p & ~adj[pivot];
    while (candidates) {
        int v = std::countr_zero(candidates);
        std::uint64_t bit = std::uint64_t{1} << v;
        bron_kerbosch(r | bit, p & adj[v], x & adj[v], adj, out);
        p &= ~bit;
        x |= bit;
        candidates &= ~bit;
    }
}

std::vector<std::vector<ElementId>> compute_blocks(const std::vector<std::uint8_t>& compat, std::size_t n,
                                                   const std::vector<ElementId>& atoms) {
    std::vector<std::vector<ElementId>> blocks;
    if (n <= 64) {
        std::vector<std::uint64_t> cliques;
        std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
        bron_kerbosch(0, all, 0, bitsets_for(compat, n), cliques);
        for (auto c : cliques) {
            std::vector<ElementId> block;
            for (ElementId e = 0; e < n; ++e)
                if (c >> e & 1) block.push_back(e);
            blocks.push_back(std::move(block));
        }
    } else {
        // greedy closure seeded at each atom, then at anything still uncovered
        std::vector<std::uint8_t> covered(n, 0);
        auto grow = [&](ElementId seed) {
            std::vector<ElementId> block{seed};
            for (ElementId e = 0; e < n; ++e) {
                if (e == seed) continue;
                if (std::all_of(block.begin(), block.end(), [&](ElementId f) { return compat[e * n + f] != 0; }))
                    block.push_back(e);
            }
            std::sort(block.begin(), block.end());
            for (auto e : block) covered[e] = 1;
            blocks.push_back(std::move(block));
        };
        for (auto a : atoms) grow(a);
        for (ElementId e = 0; e < n; ++e)
            if (!covered[e]) grow(e);
    }
    std::sort(blocks.begin(), blocks.end());
    blocks.erase(std::unique(blocks.begin(), blocks.end()), blocks.end());
    return blocks;
}

std::string tag_label(const std::string& label, std::size_t part) {
    std::size_t end = label.size();
    while (end > 0 && label[end - 1] == '\'') --end;
    std::string base = label.substr(0, end);
    std::string primes = label.substr(end);
    bool digit_tail = !base.empty() && std::isdigit(static_cast<unsigned char>(base.back()));
    return base + (digit_tail ? "_" : "") + std::to_string(part) + primes;
}

}  // namespace

ValidationReport validate_oml(const RawLattice& c) {
    ValidationReport report;
    const std::size_t n = c.size();
    if (n < 2) {
        report.add("nontrivial", {}, "an orthomodular lattice needs 0 != 1");
        return report;
    }
    if (c.leq.size() != n * n || c.ortho.size() != n || (!c.meet.empty() && c.meet.size() != n * n) ||
        (!c.join.empty() && c.join.size() != n * n)) {
        report.add("dimensions", {}, "tables do not match the element count");
        return report;
    }
    auto in_range = [n](ElementId e) { return e < n; };
    if (!std::all_of(c.ortho.begin(), c.ortho.end(), in_range) ||
        !std::all_of(c.meet.begin(), c.meet.end(), in_range) || !std::all_of(c.join.begin(), c.join.end(), in_range)) {
        report.add("dimensions", {}, "table entry out of range");
        return report;
    }

    std::set<std::string> seen;
    for (ElementId a = 0; a < n; ++a) {
        if (!label_ok(c.labels[a])) report.add("label-syntax", {a}, "labels must be non-empty without ,\"()&|~ or spaces");
        if (!seen.insert(c.labels[a]).second) report.add("distinct-labels", {a}, c.labels[a]);
    }

    auto leq = [&](ElementId a, ElementId b) { return c.leq[a * n + b] != 0; };

    // partial order
    bool order_ok = true;
    for (ElementId a = 0; a < n; ++a)
        if (!leq(a, a)) report.add("reflexive", {a}), order_ok = false;
    for (ElementId a = 0; a < n; ++a)
        for (ElementId b = a + 1; b < n; ++b)
            if (leq(a, b) && leq(b, a)) report.add("antisymmetric", {a, b}), order_ok = false;
    for (ElementId a = 0; a < n; ++a)
        for (ElementId b = 0; b < n; ++b) {
            if (!leq(a, b)) continue;
            for (ElementId d = 0; d < n; ++d)
                if (leq(b, d) && !leq(a, d)) report.add("transitive", {a, b, d}), order_ok = false;
        }
    if (!order_ok) return report;

    ElementId bottom = kNone, top = kNone;
    for (ElementId a = 0; a < n; ++a) {
        bool below_all = true, above_all = true;
        for (ElementId b = 0; b < n; ++b) {
            below_all = below_all && leq(a, b);
            above_all = above_all && leq(b, a);
        }
        if (below_all) bottom = a;
        if (above_all) top = a;
    }
    if (bottom == kNone || top == kNone) {
        report.add("bounded", {}, "no least or no greatest element");
        return report;
    }

    // meet/join tables against glb/lub recomputed from leq
    std::vector<ElementId> meet(n * n), join(n * n);
    bool lattice_ok = true;
    for (ElementId a = 0; a < n; ++a)
        for (ElementId b = 0; b < n; ++b) {
            ElementId m = glb(c.leq, n, a, b);
            ElementId j = lub(c.leq, n, a, b);
            if (m == kNone) report.add("meet-exists", {a, b}), lattice_ok = false;
            if (j == kNone) report.add("join-exists", {a, b}), lattice_ok = false;
            if (!c.meet.empty() && m != kNone && c.meet[a * n + b] != m)
                report.add("meet-table", {a, b}), lattice_ok = false;
            if (!c.join.empty() && j != kNone && c.join[a * n + b] != j)
                report.add("join-table", {a, b}), lattice_ok = false;
            meet[a * n + b] = m;
            join[a * n + b] = j;
        }
    if (!lattice_ok) return report;

    const auto& ortho = c.ortho;
    for (ElementId a = 0; a < n; ++a)
        if (ortho[ortho[a]] != a) report.add("involution", {a}, "a'' != a");
    for (ElementId a = 0; a < n; ++a)
        for (ElementId b = 0; b < n; ++b)
            if (leq(a, b) && !leq(ortho[b], ortho[a])) report.add("antitone", {a, b}, "a <= b but not b' <= a'");
    for (ElementId a = 0; a < n; ++a)
        if (join[a * n + ortho[a]] != top) report.add("complement", {a}, "a v a' != 1");
    for (ElementId a = 0; a < n; ++a)
        for (ElementId b = 0; b < n; ++b)
            if (leq(a, b) && join[a * n + meet[ortho[a] * n + b]] != b)
                report.add("orthomodular", {a, b}, "a <= b but a v (a' ^ b) != b");

    // atomistic: a maximal orthogonal set of atoms under x must join to x
    std::vector<ElementId> atoms;
    for (ElementId a = 0; a < n; ++a) {
        if (a == bottom) continue;
        bool covers_bottom = true;
        for (ElementId b = 0; b < n; ++b)
            if (b != bottom && b != a && leq(b, a)) covers_bottom = false;
        if (covers_bottom) atoms.push_back(a);
    }
    for (ElementId x = 0; x < n; ++x) {
        if (x == bottom) continue;
        ElementId acc = bottom;
        for (auto at : atoms)
            if (leq(at, x) && leq(at, ortho[acc])) acc = join[acc * n + at];
        if (acc != x) report.add("atomistic", {x}, "not a join of orthogonal atoms");
    }
    return report;
}

Oml Oml::from_raw(const RawLattice& raw) {
    if (raw.size() > kMaxElements)
        throw SizeError("lattice has " + std::to_string(raw.size()) + " elements; the cap is " +
                        std::to_string(kMaxElements));
    ValidationReport report = validate_oml(raw);
    if (!report.valid()) throw ValidationError("not an orthomodular lattice", std::move(report));

    const std::size_t n = raw.size();
    Tables tables{raw.meet, raw.join};
    if (tables.meet.empty() || tables.join.empty()) derive_tables(raw, tables);

    auto leq = [&](ElementId a, ElementId b) { return raw.leq[a * n + b] != 0; };
    ElementId bottom = 0, top = 0;
    std::vector<std::size_t> below(n, 0);
    for (ElementId a = 0; a < n; ++a)
        for (ElementId b = 0; b < n; ++b)
            if (leq(b, a)) ++below[a];
    for (ElementId a = 0; a < n; ++a) {
        if (below[a] == 1) bottom = a;
        if (below[a] == n) top = a;
    }

    // height by longest chain, processing elements by size of their down-set
    std::vector<ElementId> by_down(n);
    std::iota(by_down.begin(), by_down.end(), 0);
    std::stable_sort(by_down.begin(), by_down.end(), [&](ElementId a, ElementId b) { return below[a] < below[b]; });
    std::vector<std::size_t> rank(n, 0);
    for (auto x : by_down)
        for (ElementId y = 0; y < n; ++y)
            if (y != x && leq(y, x)) rank[x] = std::max(rank[x], rank[y] + 1);

    std::vector<ElementId> order{bottom};
    for (ElementId a = 0; a < n; ++a)
        if (a != top && rank[a] == 1) order.push_back(a);
    std::vector<ElementId> rest;
    for (ElementId a = 0; a < n; ++a)
        if (a != bottom && a != top && rank[a] != 1) rest.push_back(a);
    std::sort(rest.begin(), rest.end(), [&](ElementId a, ElementId b) {
        return std::tie(rank[a], raw.labels[a]) < std::tie(rank[b], raw.labels[b]);
    });
    order.insert(order.end(), rest.begin(), rest.end());
    order.push_back(top);

    std::vector<ElementId> pos(n);
    for (ElementId i = 0; i < n; ++i) pos[order[i]] = i;

    Oml out;
    out.labels_.resize(n);
    out.leq_.assign(n * n, 0);
    out.ortho_.resize(n);
    out.meet_.resize(n * n);
    out.join_.resize(n * n);
    out.rank_.resize(n);
    for (ElementId i = 0; i < n; ++i) {
        ElementId a = order[i];
        out.labels_[i] = raw.labels[a];
        out.ortho_[i] = pos[raw.ortho[a]];
        out.rank_[i] = rank[a];
        for (ElementId j = 0; j < n; ++j) {
            ElementId b = order[j];
            out.leq_[i * n + j] = raw.leq[a * n + b];
            out.meet_[i * n + j] = pos[tables.meet[a * n + b]];
            out.join_[i * n + j] = pos[tables.join[a * n + b]];
        }
    }
    for (ElementId i = 0; i < n; ++i)
        if (out.rank_[i] == 1) out.atoms_.push_back(i);

    out.compat_.assign(n * n, 0);
    for (ElementId a = 0; a < n; ++a)
        for (ElementId b = 0; b < n; ++b)
            out.compat_[a * n + b] = out.join(out.meet(a, b), out.meet(a, out.ortho(b))) == a;

    out.blocks_ = compute_blocks(out.compat_, n, out.atoms_);
    return out;
}

bool Oml::all_compatible() const {
    return std::all_of(compat_.begin(), compat_.end(), [](std::uint8_t v) { return v != 0; });
}

std::optional<ElementId> Oml::find(std::string_view label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<ElementId>(it - labels_.begin());
}

ElementId Oml::at(std::string_view label) const {
    if (auto id = find(label)) return *id;
    throw ArgumentError("unknown element label \"" + std::string(label) + "\"");
}

bool Oml::is_atom(ElementId a) const { return rank_[a] == 1; }

std::vector<std::vector<ElementId>> Oml::orthogonal_atom_decomposition(ElementId a) const {
    std::vector<ElementId> below;
    for (auto at : atoms_)
        if (leq(at, a)) below.push_back(at);

    std::vector<std::vector<ElementId>> out;
    std::vector<ElementId> current;
    auto search = [&](auto&& self, std::size_t from, ElementId acc) -> void {
        if (acc == a) {
            out.push_back(current);
            return;
        }
        for (std::size_t i = from; i < below.size(); ++i) {
            ElementId at = below[i];
            bool pairwise = std::all_of(current.begin(), current.end(), [&](ElementId c) { return orthogonal(at, c); });
            if (!pairwise) continue;
            current.push_back(at);
            self(self, i + 1, join(acc, at));
            current.pop_back();
        }
    };
    search(search, 0, bottom());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::pair<ElementId, ElementId>> Oml::covers() const {
    std::vector<std::pair<ElementId, ElementId>> out;
    const std::size_t n = size();
    for (ElementId a = 0; a < n; ++a)
        for (ElementId b = 0; b < n; ++b) {
            if (a == b || !leq(a, b)) continue;
            bool direct = true;
            for (ElementId c = 0; c < n && direct; ++c)
                if (c != a && c != b && leq(a, c) && leq(c, b)) direct = false;
            if (direct) out.emplace_back(a, b);
        }
    return out;
}

RawLattice Oml::raw() const { return RawLattice{labels_, leq_, ortho_, meet_, join_}; }

Oml build_boolean(std::size_t atom_count) {
    if (atom_count < 1) throw ArgumentError("a Boolean algebra needs at least one atom");
    if (atom_count > 9 || (std::size_t{1} << atom_count) > kMaxElements)
        throw SizeError("2^" + std::to_string(atom_count) + " exceeds the element cap of " +
                        std::to_string(kMaxElements));

    const std::size_t n = std::size_t{1} << atom_count;
    const std::size_t full = n - 1;
    RawLattice raw;
    raw.labels.resize(n);
    raw.leq.assign(n * n, 0);
    raw.ortho.resize(n);
    raw.meet.resize(n * n);
    raw.join.resize(n * n);
    for (std::size_t s = 0; s < n; ++s) {
        if (s == 0) {
            raw.labels[s] = "0";
        } else if (s == full) {
            raw.labels[s] = "1";
        } else if (atom_count == 2) {
            raw.labels[s] = s == 1 ? "a" : "a'";
        } else {
            std::string label;
            for (std::size_t i = 0; i < atom_count; ++i)
                if (s >> i & 1) label += (label.empty() ? "e" : "+e") + std::to_string(i + 1);
            raw.labels[s] = label;
        }
        raw.ortho[s] = full ^ s;
        for (std::size_t t = 0; t < n; ++t) {
            raw.leq[s * n + t] = (s & t) == s;
            raw.meet[s * n + t] = s & t;
            raw.join[s * n + t] = s | t;
        }
    }
    return Oml::from_raw(raw);
}

Oml build_horizontal_sum(std::span<const Oml> parts) {
    if (parts.empty()) throw ArgumentError("horizontal sum needs at least one part");
    if (parts.size() == 1) return parts.front();

    std::size_t n = 2;
    for (const auto& p : parts) n += p.size() - 2;
    if (n > kMaxElements) throw SizeError("horizontal sum has " + std::to_string(n) + " elements; the cap is " +
                                          std::to_string(kMaxElements));

    RawLattice raw;
    raw.labels.assign(n, {});
    raw.leq.assign(n * n, 0);
    raw.ortho.assign(n, 0);
    const ElementId bottom = 0, top = n - 1;
    raw.labels[bottom] = "0";
    raw.labels[top] = "1";
    raw.ortho[bottom] = top;
    raw.ortho[top] = bottom;

    ElementId offset = 1;
    for (std::size_t k = 0; k < parts.size(); ++k) {
        const Oml& part = parts[k];
        // part ids 1..size-2 map to offset..offset+size-3
        auto map = [&](ElementId e) -> ElementId {
            if (e == part.bottom()) return bottom;
            if (e == part.top()) return top;
            return offset + e - 1;
        };
        for (ElementId e = 1; e + 1 < part.size(); ++e) {
            raw.labels[map(e)] = tag_label(part.label(e), k + 1);
            raw.ortho[map(e)] = map(part.ortho(e));
            for (ElementId f = 1; f + 1 < part.size(); ++f) raw.leq[map(e) * n + map(f)] = part.leq(e, f);
        }
        offset += part.size() - 2;
    }
    for (ElementId e = 0; e < n; ++e) {
        raw.leq[bottom * n + e] = 1;
        raw.leq[e * n + top] = 1;
    }
    return Oml::from_raw(raw);
}

Oml build_mo(std::size_t n) {
    if (n < 1) throw ArgumentError("MO(n) needs n >= 1");
    std::vector<Oml> parts(n, build_boolean(2));
    return build_horizontal_sum(parts);
}

Oml build_from_greechie(const GreechieDiagram& diagram) {
    const auto& blocks = diagram.blocks;
    if (diagram.atom_count == 0 || blocks.empty()) throw DiagramError("diagram needs atoms and at least one block");

    std::vector<std::uint8_t> used(diagram.atom_count, 0);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const auto& block = blocks[b];
        if (block.size() < 2) throw DiagramError("block " + std::to_string(b) + " has fewer than 2 atoms");
        if (block.size() > 9) throw SizeError("block " + std::to_string(b) + " has more than 9 atoms");
        std::set<std::size_t> distinct(block.begin(), block.end());
        if (distinct.size() != block.size()) throw DiagramError("block " + std::to_string(b) + " repeats an atom");
        for (auto a : block) {
            if (a >= diagram.atom_count) throw DiagramError("atom " + std::to_string(a) + " out of range");
            used[a] = 1;
        }
    }
    for (std::size_t a = 0; a < diagram.atom_count; ++a)
        if (!used[a]) throw DiagramError("atom " + std::to_string(a) + " lies in no block");
    for (std::size_t b = 0; b < blocks.size(); ++b)
        for (std::size_t c = b + 1; c < blocks.size(); ++c) {
            std::size_t shared = 0;
            for (auto a : blocks[b]) shared += std::count(blocks[c].begin(), blocks[c].end(), a);
            if (shared >= 2)
                throw DiagramError("blocks " + std::to_string(b) + " and " + std::to_string(c) +
                                   " share more than one atom");
        }

    // one item per (block, subset of block atoms)
    std::vector<std::size_t> offset(blocks.size() + 1, 0);
    for (std::size_t b = 0; b < blocks.size(); ++b) offset[b + 1] = offset[b] + (std::size_t{1} << blocks[b].size());
    const std::size_t items = offset.back();
    std::vector<std::size_t> parent(items);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](std::size_t x, std::size_t y) { parent[find(x)] = find(y); };
    auto full = [&](std::size_t b) { return (std::size_t{1} << blocks[b].size()) - 1; };

    for (std::size_t b = 1; b < blocks.size(); ++b) {
        unite(offset[b], offset[0]);
        unite(offset[b] + full(b), offset[0] + full(0));
    }
    for (std::size_t b = 0; b < blocks.size(); ++b)
        for (std::size_t c = b + 1; c < blocks.size(); ++c)
            for (std::size_t i = 0; i < blocks[b].size(); ++i)
                for (std::size_t j = 0; j < blocks[c].size(); ++j) {
                    if (blocks[b][i] != blocks[c][j]) continue;
                    std::size_t si = std::size_t{1} << i, sj = std::size_t{1} << j;
                    unite(offset[b] + si, offset[c] + sj);
                    unite(offset[b] + (full(b) ^ si), offset[c] + (full(c) ^ sj));
                }

    // atom set of each item, used to pick the label representative
    std::vector<std::vector<std::size_t>> atom_set(items);
    for (std::size_t b = 0; b < blocks.size(); ++b)
        for (std::size_t s = 0; s <= full(b); ++s) {
            auto& set = atom_set[offset[b] + s];
            for (std::size_t i = 0; i < blocks[b].size(); ++i)
                if (s >> i & 1) set.push_back(blocks[b][i]);
            std::sort(set.begin(), set.end());
        }

    // element order: bottom, atoms by diagram index, other classes, top
    std::vector<std::size_t> class_id(items, kNone);
    std::vector<std::size_t> rep_item;
    auto assign = [&](std::size_t item) {
        std::size_t root = find(item);
        if (class_id[root] == kNone) {
            class_id[root] = rep_item.size();
            rep_item.push_back(item);
        }
    };
    assign(offset[0]);
    for (std::size_t a = 0; a < diagram.atom_count; ++a)
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            auto it = std::find(blocks[b].begin(), blocks[b].end(), a);
            if (it != blocks[b].end()) {
                assign(offset[b] + (std::size_t{1} << (it - blocks[b].begin())));
                break;
            }
        }
    const std::size_t top_item = offset[0] + full(0);
    for (std::size_t item = 0; item < items; ++item)
        if (find(item) != find(top_item)) assign(item);
    assign(top_item);

    const std::size_t n = rep_item.size();
    if (n > kMaxElements)
        throw SizeError("pasting has " + std::to_string(n) + " elements; the cap is " + std::to_string(kMaxElements));
    auto cls = [&](std::size_t item) { return class_id[find(item)]; };

    for (std::size_t item = 0; item < items; ++item) {
        auto& best = atom_set[rep_item[cls(item)]];
        const auto& cand = atom_set[item];
        if (cand.size() < best.size() || (cand.size() == best.size() && cand < best)) rep_item[cls(item)] = item;
    }

    RawLattice raw;
    raw.labels.resize(n);
    raw.leq.assign(n * n, 0);
    raw.ortho.assign(n, kNone);
    for (ElementId e = 0; e < n; ++e) {
        const auto& set = atom_set[rep_item[e]];
        std::string label;
        for (auto a : set) label += (label.empty() ? "x" : "+x") + std::to_string(a);
        raw.labels[e] = label;
    }
    raw.labels[cls(offset[0])] = "0";
    raw.labels[cls(top_item)] = "1";

    ValidationReport ortho_report;
    for (std::size_t b = 0; b < blocks.size(); ++b)
        for (std::size_t s = 0; s <= full(b); ++s) {
            ElementId e = cls(offset[b] + s);
            ElementId comp = cls(offset[b] + (full(b) ^ s));
            if (raw.ortho[e] == kNone) raw.ortho[e] = comp;
            else if (raw.ortho[e] != comp) ortho_report.add("ortho-well-defined", {e, raw.ortho[e], comp});
            for (std::size_t t = 0; t <= full(b); ++t)
                if ((s & t) == s) raw.leq[e * n + cls(offset[b] + t)] = 1;
        }
    if (!ortho_report.valid())
        throw ConstructionError("pasting has no well-defined orthocomplement", std::move(ortho_report));

    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (raw.leq[i * n + k])
                for (std::size_t j = 0; j < n; ++j)
                    if (raw.leq[k * n + j]) raw.leq[i * n + j] = 1;

    ValidationReport report = validate_oml(raw);
    if (!report.valid()) throw ConstructionError("pasting is not an orthomodular lattice", std::move(report));
    return Oml::from_raw(raw);
}

}  // namespace omlbell
