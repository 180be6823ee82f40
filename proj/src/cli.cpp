#include <fstream>
#include <ostream>

#include "CLI11.hpp"
#include "omlbell/feasibility.hpp"
#include "omlbell/inequalities.hpp"
#include "omlbell/io.hpp"

namespace omlbell {
namespace {

struct Options {
    std::string lattice;
    std::string map;
    std::string ineq;
    std::string args;
    std::string out;
    std::string fix_state;
    std::uint64_t seed = 0;
    std::size_t count = 0;
    std::uint32_t variant = 0;
    bool decimal = false;
    bool variants = false;
    bool commutative = false;
};

class Command {
public:
    Command(const Options& o, std::ostream& out) : o_(o), out_(out) {}

    std::string value(const Rational& v) const {
        return o_.decimal ? format_decimal(v) : format_rational(v);
    }

    void emit(const std::string& text) const {
        if (o_.out.empty()) {
            out_ << text;
            return;
        }
        std::ofstream f(o_.out, std::ios::binary);
        if (!f) throw ArgumentError("cannot write \"" + o_.out + "\"");
        f << text;
    }

    std::string summary(const Oml& oml) const {
        return std::to_string(oml.size()) + " elements, " + std::to_string(oml.atoms().size()) + " atoms, " +
               std::to_string(oml.blocks().size()) + " blocks";
    }

    std::string report_line(const Oml& oml, const InequalityReport& r) const {
        std::string s(to_string(r.id));
        s += '(';
        for (std::size_t i = 0; i < r.args.size(); ++i) s += (i ? "," : "") + oml.label(r.args[i]);
        s += ')';
        if (variant_count(r.id) > 1) s += " variant " + std::to_string(r.variant);
        s += ": lhs " + value(r.lhs) + ", rhs " + value(r.rhs) + ", ";
        s += r.satisfied ? "satisfied, slack " + value(r.slack) : "violated by " + value(-r.slack);
        return s;
    }

    void print_failures(const ValidationReport& report, std::size_t limit = 10) const {
        for (std::size_t i = 0; i < report.failures.size() && i < limit; ++i) {
            const auto& f = report.failures[i];
            out_ << "  " << f.axiom << " at (";
            for (std::size_t k = 0; k < f.witness.size(); ++k) out_ << (k ? "," : "") << f.witness[k];
            out_ << ")";
            if (!f.detail.empty()) out_ << ": " << f.detail;
            out_ << "\n";
        }
        if (report.failures.size() > limit) out_ << "  ... " << report.failures.size() - limit << " more\n";
    }

    LatticePtr lattice() const {
        if (o_.lattice.empty()) throw ArgumentError("--lattice is required");
        return share(load_lattice(o_.lattice));
    }

    MapDocument map() const {
        if (o_.map.empty()) throw ArgumentError("--map is required");
        return load_map(o_.map);
    }

    std::string map_name(const MapDocument& doc) const { return doc.name.empty() ? o_.map : doc.name; }

    InequalityId ineq() const {
        if (o_.ineq.empty()) throw ArgumentError("--ineq is required");
        return parse_inequality_id(o_.ineq);
    }

    SmapOptions smap_options(const LatticePtr& lattice) const {
        SmapOptions opts;
        opts.commutative = o_.commutative;
        if (!o_.fix_state.empty()) {
            MapDocument doc = parse_map(read_file(o_.fix_state), lattice);
            if (!std::holds_alternative<State>(doc.map)) throw ArgumentError("--fix-state needs an arity-1 map");
            opts.fixed_state = std::get<State>(doc.map);
        }
        return opts;
    }

    int gen() const {
        emit(serialize_lattice(*lattice()));
        return 0;
    }

    int validate() const {
        if (o_.lattice.empty() && o_.map.empty()) throw ArgumentError("validate needs --lattice or --map");
        if (!o_.lattice.empty()) out_ << "lattice " << o_.lattice << ": " << summary(*lattice()) << ", valid\n";
        if (!o_.map.empty()) {
            MapDocument doc = map();
            std::size_t arity = std::visit(
                [](const auto& m) -> std::size_t {
                    using T = std::decay_t<decltype(m)>;
                    if constexpr (std::is_same_v<T, State>)
                        return 1;
                    else if constexpr (std::is_same_v<T, SMap>)
                        return 2;
                    else
                        return m.arity();
                },
                doc.map);
            out_ << "map " << map_name(doc) << ": arity " << arity << " on " << summary(*doc.lattice) << ", valid\n";
        }
        return 0;
    }

    InequalityReport evaluate(const MapDocument& doc, InequalityId id, std::span<const ElementId> args) const {
        if (std::holds_alternative<SMap>(doc.map)) {
            const SMap& p = std::get<SMap>(doc.map);
            if (needs_smap(id)) return eval_smap_inequality(p, id, args, o_.variant);
            return eval_state_inequality(state_from_smap(p), id, args);
        }
        if (std::holds_alternative<State>(doc.map)) return eval_state_inequality(std::get<State>(doc.map), id, args);
        throw ArgumentError("inequalities need an arity-1 or arity-2 map");
    }

    int check() const {
        MapDocument doc = map();
        if (o_.args.empty()) throw ArgumentError("--args is required");
        auto args = parse_labels(o_.args, *doc.lattice);
        InequalityReport r = evaluate(doc, ineq(), args);
        out_ << report_line(*doc.lattice, r) << "\n";
        return r.satisfied ? 0 : 1;
    }

    int scan_cmd() const {
        MapDocument doc = map();
        InequalityId id = ineq();
        Measure measure = [&]() -> Measure {
            if (std::holds_alternative<State>(doc.map)) return std::get<State>(doc.map);
            if (!std::holds_alternative<SMap>(doc.map)) throw ArgumentError("scan needs an arity-1 or arity-2 map");
            const SMap& p = std::get<SMap>(doc.map);
            if (needs_smap(id)) return p;
            return state_from_smap(p);
        }();
        ScanResult r = scan(measure, id, o_.variants);
        out_ << "scan " << to_string(id) << " on " << map_name(doc) << ": " << r.tuples_checked << " tuples, "
             << r.variants_checked << " evaluations, " << r.violations.size() << " violations\n";
        for (const auto& v : r.violations) out_ << "  " << report_line(*doc.lattice, v) << "\n";
        return r.violations.empty() ? 0 : 1;
    }

    int audit() const {
        MapDocument doc = map();
        if (!std::holds_alternative<SMap>(doc.map)) throw ArgumentError("audit needs an s-map");
        const SMap& p = std::get<SMap>(doc.map);
        const std::pair<const char*, ValidationReport> suites[] = {
            {"identities", smap_identity_audit(p)},
            {"de-morgan", de_morgan_audit(p)},
            {"triangle-equivalence", equivalence_audit(p)},
        };
        bool clean = true;
        for (const auto& [name, report] : suites) {
            if (report.valid()) {
                out_ << name << ": ok\n";
                continue;
            }
            clean = false;
            out_ << name << ": " << report.failures.size() << " failures\n";
            print_failures(report);
        }
        return clean ? 0 : 1;
    }

    void print_certificate(const Certificate& cert) const {
        std::size_t rows = 0, bounds = 0;
        for (const auto& y : cert.row) rows += sgn(y) != 0;
        for (std::size_t j = 0; j < cert.lower.size(); ++j) bounds += (sgn(cert.lower[j]) != 0) + (sgn(cert.upper[j]) != 0);
        out_ << "certificate verified: " << rows << " constraint and " << bounds << " bound multipliers\n";
    }

    int find_smap() const {
        LatticePtr l = lattice();
        SmapOptions opts = smap_options(l);
        if (o_.count > 0) {
            SampleResult r = sample_smaps(l, o_.count, o_.seed, opts);
            if (r.status == FeasibilityStatus::Infeasible) {
                out_ << "infeasible: no s-map satisfies the constraints\n";
                return 1;
            }
            std::string text = "[\n";
            for (std::size_t k = 0; k < r.maps.size(); ++k) {
                if (k) text += ",\n";
                text += serialize_map(r.maps[k], "sample-" + std::to_string(k));
            }
            emit(text + "]\n");
            return 0;
        }
        FeasibilityResult r = solve(assemble_smap_system(*l, opts));
        if (!r.feasible()) {
            out_ << "infeasible: no s-map satisfies the constraints\n";
            print_certificate(*r.certificate);
            return 1;
        }
        emit(serialize_map(smap_from_witness(l, std::move(r.witness)), "found-smap"));
        return 0;
    }

    int max() const {
        LatticePtr l = lattice();
        InequalityId id = ineq();
        if (o_.args.empty()) throw ArgumentError("--args is required");
        auto args = parse_labels(o_.args, *l);
        FeasibilityResult r =
            optimize_inequality_side(*l, id, args, o_.variant, true, Sense::Maximize, smap_options(l));
        if (!r.feasible()) {
            out_ << "infeasible: no s-map satisfies the constraints\n";
            return 1;
        }
        std::string head = std::string(to_string(id)) + "(" + o_.args + ")";
        out_ << "max lhs of " << head << (o_.commutative ? " over commutative s-maps" : " over s-maps") << ": "
             << value(*r.objective_value) << "\n";
        if (!o_.out.empty()) emit(serialize_map(smap_from_witness(l, std::move(r.witness)), "maximizer"));
        return 0;
    }

    int extend() const {
        MapDocument doc = map();
        if (!std::holds_alternative<SMap>(doc.map)) throw ArgumentError("extend needs an s-map");
        FeasibilityResult r = solve(assemble_extension_system(*doc.lattice, std::get<SMap>(doc.map)));
        if (!r.feasible()) {
            out_ << "extension of " << map_name(doc) << " to a trivariate map: infeasible\n";
            print_certificate(*r.certificate);
            return 1;
        }
        out_ << "extension of " << map_name(doc) << " to a trivariate map: feasible\n";
        if (!o_.out.empty()) emit(serialize_map(nmap_from_witness(doc.lattice, 3, std::move(r.witness)), "extension"));
        return 0;
    }

    int example1() const {
        MapDocument doc = parse_map(bundled_example1_smap());
        const Oml& l = *doc.lattice;
        const SMap& p = std::get<SMap>(doc.map);
        out_ << "lattice MO(3): " << summary(l) << "\n";
        out_ << "s-map " << doc.name << ": valid" << (p.commutative() ? ", commutative" : "") << "\n";
        std::vector<ElementId> args{l.at("a1"), l.at("a2"), l.at("a3")};
        InequalityReport r = eval_smap_inequality(p, InequalityId::B2p, args);
        out_ << report_line(l, r) << "\n";
        return r.satisfied ? 0 : 1;
    }

private:
    const Options& o_;
    std::ostream& out_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite orthomodular lattices, s-maps and Bell-type inequalities.", "omlbell"};
    app.require_subcommand(1);
    Options o;

    auto lattice = [&](CLI::App* c, bool required = true) {
        auto* opt = c->add_option("--lattice", o.lattice, "lattice file or name (example1, moN, booleanN)");
        if (required) opt->required();
    };
    auto map = [&](CLI::App* c) {
        c->add_option("--map", o.map, "map file, or example1-smap for the bundled map")->required();
    };
    auto ineq = [&](CLI::App* c) {
        c->add_option("--ineq", o.ineq, "inequality tag: B1 B2 C1 C2 B1p B2p C1p C2p TRI TRIp TRIpp")->required();
    };
    auto common = [&](CLI::App* c) {
        c->add_option("--out", o.out, "write the document to this file");
        c->add_flag("--decimal", o.decimal, "show values as decimals (display only)");
    };
    auto smap_flags = [&](CLI::App* c) {
        c->add_flag("--commutative", o.commutative, "require p(a,b) = p(b,a)");
        c->add_option("--fix-state", o.fix_state, "arity-1 map document fixing p(a,a)");
    };

    auto* gen = app.add_subcommand("gen", "emit a lattice document");
    lattice(gen);
    common(gen);
    auto* validate = app.add_subcommand("validate", "validate a lattice or a map");
    lattice(validate, false);
    validate->add_option("--map", o.map, "map file, or example1-smap for the bundled map");
    common(validate);
    auto* check = app.add_subcommand("check", "evaluate one inequality instance");
    map(check);
    ineq(check);
    check->add_option("--args", o.args, "comma-separated element labels")->required();
    check->add_option("--variant", o.variant, "argument-order variant (bit i swaps the i-th joint term)");
    common(check);
    auto* scan = app.add_subcommand("scan", "evaluate an inequality on every tuple");
    map(scan);
    ineq(scan);
    scan->add_flag("--variants", o.variants, "also try every argument-order variant");
    common(scan);
    auto* audit = app.add_subcommand("audit", "identity, De Morgan and triangle-equivalence suites");
    map(audit);
    common(audit);
    auto* find = app.add_subcommand("find-smap", "decide whether an s-map exists, or sample some");
    lattice(find);
    smap_flags(find);
    find->add_option("--count", o.count, "number of sampled maps (vertices)");
    find->add_option("--seed", o.seed, "seed for the sampling objectives");
    common(find);
    auto* max = app.add_subcommand("max", "maximize an inequality's left-hand side over s-maps");
    lattice(max);
    ineq(max);
    max->add_option("--args", o.args, "comma-separated element labels")->required();
    max->add_option("--variant", o.variant, "argument-order variant");
    smap_flags(max);
    common(max);
    auto* extend = app.add_subcommand("extend", "decide whether an s-map extends to a trivariate map");
    map(extend);
    common(extend);
    auto* example1 = app.add_subcommand("example1", "reproduce the MO(3) example");
    common(example1);

    std::vector<const char*> argv{"omlbell"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (app.exit(e, out, err) == 0) return 0;
        err << app.help();
        return 2;
    }

    Command cmd(o, out);
    try {
        if (*gen) return cmd.gen();
        if (*validate) return cmd.validate();
        if (*check) return cmd.check();
        if (*scan) return cmd.scan_cmd();
        if (*audit) return cmd.audit();
        if (*find) return cmd.find_smap();
        if (*max) return cmd.max();
        if (*extend) return cmd.extend();
        if (*example1) return cmd.example1();
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        for (const auto& f : e.report().failures) {
            err << "  " << f.axiom;
            if (!f.detail.empty()) err << ": " << f.detail;
            err << "\n";
        }
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << app.help();
    return 2;
}

}  // namespace omlbell
