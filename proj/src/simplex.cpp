#include <algorithm>
#include <map>
#include <optional>

#include "omlbell/linsystem.hpp"

namespace omlbell {
namespace {

// Drops equality rows that are linear combinations of earlier equality rows.
// Rows reducing to 0 = c with c != 0 are kept so phase 1 reports them.
std::vector<std::size_t> prune_equalities(const LinSystem& system) {
    const std::size_t n = system.variable_count();
    struct EchelonRow {
        std::vector<std::pair<std::size_t, Rational>> entries;  // first entry is the pivot, coefficient 1
        Rational rhs;
    };
    std::vector<std::optional<EchelonRow>> by_pivot(n);
    std::vector<std::size_t> kept;
    std::vector<Rational> work(n);

    for (std::size_t i = 0; i < system.constraint_count(); ++i) {
        const auto& c = system.constraints()[i];
        if (c.relation != Relation::Equal) {
            kept.push_back(i);
            continue;
        }
        std::size_t first = n;
        for (const auto& t : c.terms) {
            work[t.var] = t.coeff;
            first = std::min(first, t.var);
        }
        Rational rhs = c.bound;
        bool independent = false;
        for (std::size_t col = first; col < n; ++col) {
            if (sgn(work[col]) == 0) continue;
            if (!by_pivot[col]) {
                EchelonRow row;
                Rational inv = 1 / work[col];
                for (std::size_t k = col; k < n; ++k)
                    if (sgn(work[k]) != 0) {
                        row.entries.emplace_back(k, work[k] * inv);
                        work[k] = 0;
                    }
                row.rhs = rhs * inv;
                by_pivot[col] = std::move(row);
                independent = true;
                break;
            }
            Rational f = work[col];
            for (const auto& [k, v] : by_pivot[col]->entries) work[k] -= f * v;
            rhs -= f * by_pivot[col]->rhs;
        }
        if (independent || sgn(rhs) != 0) kept.push_back(i);
    }
    return kept;
}

struct Bound {
    Rational lo;
    std::optional<Rational> hi;
    bool fixed() const { return hi && *hi == lo; }
};

class Tableau {
public:
    Tableau(const LinSystem& system, std::vector<std::size_t> rows) : system_(system), rows_(std::move(rows)) {
        n_ = system.variable_count();
        const std::size_t m = rows_.size();
        for (std::size_t i = 0; i < m; ++i)
            if (system.constraints()[rows_[i]].relation != Relation::Equal) slack_of_row_.push_back(i);
        slack_col_.assign(m, SIZE_MAX);
        for (std::size_t k = 0; k < slack_of_row_.size(); ++k) slack_col_[slack_of_row_[k]] = n_ + k;
        art0_ = n_ + slack_of_row_.size();
        width_ = art0_ + m;

        bounds_.resize(width_);
        value_.resize(width_);
        at_upper_.assign(width_, false);
        for (std::size_t j = 0; j < n_; ++j) {
            bounds_[j] = {system.variables()[j].lower, system.variables()[j].upper};
            value_[j] = bounds_[j].lo;
        }
        for (std::size_t j = n_; j < width_; ++j) bounds_[j] = {0, std::nullopt};

        t_.assign(m, std::vector<Rational>(width_));
        tau_.resize(m);
        basis_.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            const auto& c = system.constraints()[rows_[i]];
            Rational residual = c.bound;
            for (const auto& term : c.terms) residual -= term.coeff * value_[term.var];
            tau_[i] = sgn(residual) < 0 ? -1 : 1;
            for (const auto& term : c.terms) t_[i][term.var] = term.coeff * tau_[i];
            if (slack_col_[i] != SIZE_MAX)
                t_[i][slack_col_[i]] = (c.relation == Relation::LessEqual ? 1 : -1) * tau_[i];
            t_[i][art0_ + i] = 1;
            basis_[i] = art0_ + i;
            value_[art0_ + i] = abs(residual);
        }
    }

    // Phase 1. Returns true when the artificial sum reaches 0.
    bool phase1() {
        std::vector<Rational> cost(width_);
        for (std::size_t i = 0; i < rows_.size(); ++i) cost[art0_ + i] = 1;
        set_cost(cost);
        run();
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (sgn(value_[art0_ + i]) != 0) return false;
        return true;
    }

    // Phase 2 minimizing `cost` over structural columns. Artificials are fixed at 0.
    void phase2(const std::vector<Rational>& structural_cost) {
        for (std::size_t i = 0; i < rows_.size(); ++i) bounds_[art0_ + i].hi = Rational(0);
        std::vector<Rational> cost(width_);
        std::copy(structural_cost.begin(), structural_cost.end(), cost.begin());
        set_cost(cost);
        run();
    }

    std::vector<Rational> witness() const { return {value_.begin(), value_.begin() + n_}; }

    // Farkas certificate read off the phase-1 optimum; see the sign rules on Certificate.
    Certificate certificate() const {
        const std::size_t m_all = system_.constraint_count();
        Certificate cert{std::vector<Rational>(m_all), std::vector<Rational>(n_), std::vector<Rational>(n_)};
        Rational w;
        for (std::size_t i = 0; i < rows_.size(); ++i) w += value_[art0_ + i];
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            Rational y = (1 - d_[art0_ + i]) / tau_[i];
            cert.row[rows_[i]] = -y / w;
        }
        for (std::size_t j = 0; j < n_; ++j) {
            if (sgn(d_[j]) > 0)
                cert.lower[j] = d_[j] / w;
            else if (sgn(d_[j]) < 0)
                cert.upper[j] = -d_[j] / w;
        }
        return cert;
    }

private:
    void set_cost(const std::vector<Rational>& cost) {
        d_ = cost;
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            const Rational& cb = cost[basis_[i]];
            if (sgn(cb) == 0) continue;
            for (std::size_t j = 0; j < width_; ++j)
                if (sgn(t_[i][j]) != 0) d_[j] -= cb * t_[i][j];
        }
    }

    void run() {
        std::vector<bool> is_basic(width_, false);
        for (auto b : basis_) is_basic[b] = true;
        for (;;) {
            std::size_t enter = SIZE_MAX;
            int dir = 0;
            for (std::size_t j = 0; j < width_; ++j) {
                if (is_basic[j] || bounds_[j].fixed()) continue;
                int s = sgn(d_[j]);
                if (!at_upper_[j] && s < 0) {
                    enter = j;
                    dir = 1;
                    break;
                }
                if (at_upper_[j] && s > 0) {
                    enter = j;
                    dir = -1;
                    break;
                }
            }
            if (enter == SIZE_MAX) return;

            std::optional<Rational> flip;
            if (bounds_[enter].hi) flip = *bounds_[enter].hi - bounds_[enter].lo;
            std::optional<Rational> step;
            std::size_t leave_row = SIZE_MAX;
            bool leave_to_upper = false;
            for (std::size_t i = 0; i < basis_.size(); ++i) {
                const Rational& a = t_[i][enter];
                if (sgn(a) == 0) continue;
                std::size_t b = basis_[i];
                int rate = -dir * sgn(a);
                Rational limit;
                bool to_upper = false;
                if (rate < 0) {
                    limit = (value_[b] - bounds_[b].lo) / abs(a);
                } else if (bounds_[b].hi) {
                    limit = (*bounds_[b].hi - value_[b]) / abs(a);
                    to_upper = true;
                } else {
                    continue;
                }
                if (!step || limit < *step || (limit == *step && b < basis_[leave_row])) {
                    step = limit;
                    leave_row = i;
                    leave_to_upper = to_upper;
                }
            }
            if (flip && (!step || *flip <= *step)) {
                step = flip;
                leave_row = SIZE_MAX;
            }
            if (!step) throw ConsistencyError("simplex: unbounded direction in a bounded system");

            const Rational delta = dir * *step;
            if (sgn(delta) != 0) {
                value_[enter] += delta;
                for (std::size_t i = 0; i < basis_.size(); ++i)
                    if (sgn(t_[i][enter]) != 0) value_[basis_[i]] -= t_[i][enter] * delta;
            }
            if (leave_row == SIZE_MAX) {
                at_upper_[enter] = !at_upper_[enter];
                value_[enter] = at_upper_[enter] ? *bounds_[enter].hi : bounds_[enter].lo;
                continue;
            }
            std::size_t leaving = basis_[leave_row];
            value_[leaving] = leave_to_upper ? *bounds_[leaving].hi : bounds_[leaving].lo;
            at_upper_[leaving] = leave_to_upper;
            if (leaving >= art0_) bounds_[leaving].hi = Rational(0);
            pivot(leave_row, enter);
            is_basic[leaving] = false;
            is_basic[enter] = true;
            at_upper_[enter] = false;
        }
    }

    void pivot(std::size_t r, std::size_t col) {
        auto& prow = t_[r];
        Rational inv = 1 / prow[col];
        std::vector<std::size_t> nz;
        for (std::size_t j = 0; j < width_; ++j)
            if (sgn(prow[j]) != 0) {
                prow[j] *= inv;
                nz.push_back(j);
            }
        auto eliminate = [&](std::vector<Rational>& row) {
            if (sgn(row[col]) == 0) return;
            Rational f = row[col];
            for (auto j : nz) row[j] -= f * prow[j];
        };
        for (std::size_t i = 0; i < t_.size(); ++i)
            if (i != r) eliminate(t_[i]);
        eliminate(d_);
        basis_[r] = col;
    }

    const LinSystem& system_;
    std::vector<std::size_t> rows_;
    std::size_t n_ = 0, art0_ = 0, width_ = 0;
    std::vector<std::size_t> slack_of_row_, slack_col_;
    std::vector<Bound> bounds_;
    std::vector<Rational> value_;
    std::vector<bool> at_upper_;
    std::vector<std::vector<Rational>> t_;
    std::vector<Rational> tau_;
    std::vector<std::size_t> basis_;
    std::vector<Rational> d_;
};

FeasibilityResult run_simplex(const LinSystem& system, const std::vector<Rational>* cost) {
    Tableau tableau(system, prune_equalities(system));
    FeasibilityResult result;
    if (!tableau.phase1()) {
        Certificate cert = tableau.certificate();
        auto report = check_certificate(system, cert);
        if (!report.valid()) throw ValidationError("simplex produced an invalid infeasibility certificate", report);
        result.status = FeasibilityStatus::Infeasible;
        result.certificate = std::move(cert);
        return result;
    }
    if (cost) tableau.phase2(*cost);
    result.witness = tableau.witness();
    auto report = check_witness(system, result.witness);
    if (!report.valid()) throw ValidationError("simplex produced an invalid witness", report);
    result.status = FeasibilityStatus::Feasible;
    return result;
}

}  // namespace

FeasibilityResult solve(const LinSystem& system) { return run_simplex(system, nullptr); }

FeasibilityResult optimize(const LinSystem& system, const std::vector<Rational>& objective, Sense sense) {
    if (objective.size() != system.variable_count())
        throw ArgumentError("objective has " + std::to_string(objective.size()) + " coefficients for " +
                            std::to_string(system.variable_count()) + " variables");
    std::vector<Rational> cost(objective);
    if (sense == Sense::Maximize)
        for (auto& c : cost) c = -c;
    FeasibilityResult result = run_simplex(system, &cost);
    if (result.feasible()) {
        Rational value;
        for (std::size_t j = 0; j < objective.size(); ++j) value += objective[j] * result.witness[j];
        result.objective_value = value;
    }
    return result;
}

}  // namespace omlbell
