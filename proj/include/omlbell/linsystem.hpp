#pragma once

#include <optional>
#include <string>
#include <vector>

#include "omlbell/common.hpp"
#include "omlbell/rational.hpp"

namespace omlbell {

enum class Relation { Equal, LessEqual, GreaterEqual };

struct Term {
    std::size_t var;
    Rational coeff;
};

struct Constraint {
    /// Sparse coefficients; a variable appears at most once.
    std::vector<Term> terms;
    Relation relation = Relation::Equal;
    Rational bound;
    std::string label;
};

struct Variable {
    std::string name;
    /// Element tuple the variable stands for, e.g. (a, b) for p(a,b).
    std::vector<ElementId> tuple;
    Rational lower = 0;
    Rational upper = 1;
};

/// Rational linear system over box-bounded variables.
class LinSystem {
public:
    std::size_t add_variable(std::string name, std::vector<ElementId> tuple = {}, Rational lower = 0,
                             Rational upper = 1);
    /// Merges repeated variables and drops zero coefficients. Throws
    /// ArgumentError on an unknown variable index.
    void add_constraint(std::vector<Term> terms, Relation relation, Rational bound, std::string label = {});

    const std::vector<Variable>& variables() const { return variables_; }
    const std::vector<Constraint>& constraints() const { return constraints_; }
    std::size_t variable_count() const { return variables_.size(); }
    std::size_t constraint_count() const { return constraints_.size(); }

    /// Narrows a variable's box. Throws ArgumentError when lower > upper.
    void set_bounds(std::size_t var, Rational lower, Rational upper);

    /// Dense coefficient row of a constraint.
    std::vector<Rational> dense_row(std::size_t constraint) const;

private:
    std::vector<Variable> variables_;
    std::vector<Constraint> constraints_;
};

/// Farkas certificate. Adding `row[i]` times constraint i (written as
/// a.x <= b, a.x >= b or a.x = b), `lower[j]` times (-x_j <= -lo_j) and
/// `upper[j]` times (x_j <= hi_j) yields 0 <= -1. Sign rules: row multipliers
/// are >= 0 on "<=" rows, <= 0 on ">=" rows, free on "=" rows; bound
/// multipliers are >= 0.
struct Certificate {
    std::vector<Rational> row;
    std::vector<Rational> lower;
    std::vector<Rational> upper;
};

enum class FeasibilityStatus { Feasible, Infeasible };

struct FeasibilityResult {
    FeasibilityStatus status = FeasibilityStatus::Infeasible;
    std::vector<Rational> witness;
    std::optional<Certificate> certificate;
    std::optional<Rational> objective_value;

    bool feasible() const { return status == FeasibilityStatus::Feasible; }
};

enum class Sense { Maximize, Minimize };

/// Phase-1 simplex over exact rationals with Bland's rule. Redundant
/// equalities are pruned by Gaussian elimination first. A feasible result's
/// witness has been re-checked against every constraint; an infeasible
/// result carries a certificate that has been re-verified.
FeasibilityResult solve(const LinSystem& system);

/// Exact optimum of `objective . x` over the system (dense objective, one
/// coefficient per variable). Returns infeasible when the system is.
FeasibilityResult optimize(const LinSystem& system, const std::vector<Rational>& objective, Sense sense);

/// Exact check of every constraint and bound. Reports violations by label.
ValidationReport check_witness(const LinSystem& system, const std::vector<Rational>& witness);

/// Exact check that the certificate's combination reads 0 <= c with c < 0.
ValidationReport check_certificate(const LinSystem& system, const Certificate& certificate);

}  // namespace omlbell
