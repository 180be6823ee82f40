#include "omlbell/linsystem.hpp"

#include <algorithm>
#include <map>

namespace omlbell {

std::size_t LinSystem::add_variable(std::string name, std::vector<ElementId> tuple, Rational lower, Rational upper) {
    if (lower > upper) throw ArgumentError("variable " + name + " has lower bound above upper bound");
    variables_.push_back({std::move(name), std::move(tuple), std::move(lower), std::move(upper)});
    return variables_.size() - 1;
}

void LinSystem::add_constraint(std::vector<Term> terms, Relation relation, Rational bound, std::string label) {
    std::map<std::size_t, Rational> merged;
    for (auto& t : terms) {
        if (t.var >= variables_.size()) throw ArgumentError("constraint refers to unknown variable " + std::to_string(t.var));
        merged[t.var] += t.coeff;
    }
    Constraint c{{}, relation, std::move(bound), std::move(label)};
    for (auto& [var, coeff] : merged)
        if (sgn(coeff) != 0) c.terms.push_back({var, coeff});
    constraints_.push_back(std::move(c));
}

void LinSystem::set_bounds(std::size_t var, Rational lower, Rational upper) {
    if (var >= variables_.size()) throw ArgumentError("unknown variable " + std::to_string(var));
    if (lower > upper) throw ArgumentError("variable " + variables_[var].name + " has lower bound above upper bound");
    variables_[var].lower = std::move(lower);
    variables_[var].upper = std::move(upper);
}

std::vector<Rational> LinSystem::dense_row(std::size_t constraint) const {
    std::vector<Rational> row(variables_.size());
    for (const auto& t : constraints_.at(constraint).terms) row[t.var] = t.coeff;
    return row;
}

ValidationReport check_witness(const LinSystem& system, const std::vector<Rational>& witness) {
    ValidationReport report;
    if (witness.size() != system.variable_count()) {
        report.add("witness-size", {}, std::to_string(witness.size()) + " values for " +
                                           std::to_string(system.variable_count()) + " variables");
        return report;
    }
    for (std::size_t j = 0; j < witness.size(); ++j) {
        const auto& v = system.variables()[j];
        if (witness[j] < v.lower || witness[j] > v.upper)
            report.add("bound", v.tuple, v.name + " = " + format_rational(witness[j]));
    }
    for (std::size_t i = 0; i < system.constraint_count(); ++i) {
        const auto& c = system.constraints()[i];
        Rational lhs;
        for (const auto& t : c.terms) lhs += t.coeff * witness[t.var];
        bool ok = c.relation == Relation::Equal       ? lhs == c.bound
                  : c.relation == Relation::LessEqual ? lhs <= c.bound
                                                      : lhs >= c.bound;
        if (!ok) report.add("constraint", {i}, c.label + ": lhs " + format_rational(lhs) + " vs " + format_rational(c.bound));
    }
    return report;
}

ValidationReport check_certificate(const LinSystem& system, const Certificate& cert) {
    ValidationReport report;
    const std::size_t n = system.variable_count(), m = system.constraint_count();
    if (cert.row.size() != m || cert.lower.size() != n || cert.upper.size() != n) {
        report.add("certificate-size", {});
        return report;
    }
    std::vector<Rational> combined(n);
    Rational rhs;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& c = system.constraints()[i];
        const Rational& y = cert.row[i];
        if ((c.relation == Relation::LessEqual && sgn(y) < 0) || (c.relation == Relation::GreaterEqual && sgn(y) > 0))
            report.add("multiplier-sign", {i}, c.label);
        if (sgn(y) == 0) continue;
        for (const auto& t : c.terms) combined[t.var] += y * t.coeff;
        rhs += y * c.bound;
    }
    for (std::size_t j = 0; j < n; ++j) {
        const auto& v = system.variables()[j];
        if (sgn(cert.lower[j]) < 0 || sgn(cert.upper[j]) < 0) report.add("bound-multiplier-sign", {j}, v.name);
        combined[j] += cert.upper[j] - cert.lower[j];
        rhs += cert.upper[j] * v.upper - cert.lower[j] * v.lower;
    }
    for (std::size_t j = 0; j < n; ++j)
        if (sgn(combined[j]) != 0)
            report.add("nonzero-combination", {j}, system.variables()[j].name + " keeps coefficient " +
                                                       format_rational(combined[j]));
    if (sgn(rhs) >= 0) report.add("no-contradiction", {}, "combined right-hand side " + format_rational(rhs));
    return report;
}

}  // namespace omlbell
