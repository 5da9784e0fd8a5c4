#pragma once

#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "rplan/errors.hpp"

namespace rplan {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class RowSense { LE, EQ, GE };

enum class SolveStatus { Optimal, Infeasible, Unbounded };

inline const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::Unbounded: return "unbounded";
    }
    return "?";
}

struct SparseEntry {
    int col = 0;
    double value = 0.0;
};

// Linear program in row form:
//   min c'x   s.t.  a_i'x {<=,=,>=} b_i,   lb <= x <= ub
// Rows are stored as sparse entry lists in insertion order. Variable and row
// names must be unique; they key the CSV/MPS output and the layout maps.
class LinearProgram {
  public:
    int add_variable(const std::string& name, double lb, double ub, double cost) {
        if (lb > ub)
            throw DomainError("variable '" + name + "': lb > ub");
        if (!var_index_.emplace(name, static_cast<int>(var_names_.size())).second)
            throw DomainError("duplicate variable name '" + name + "'");
        var_names_.push_back(name);
        lb_.push_back(lb);
        ub_.push_back(ub);
        cost_.push_back(cost);
        return static_cast<int>(var_names_.size()) - 1;
    }

    int add_row(const std::string& name, RowSense sense, double rhs,
                std::vector<SparseEntry> entries) {
        if (!row_index_.emplace(name, static_cast<int>(row_names_.size())).second)
            throw DomainError("duplicate row name '" + name + "'");
        for (const auto& e : entries)
            if (e.col < 0 || e.col >= num_vars())
                throw DimensionMismatch("row '" + name + "' references unknown column");
        row_names_.push_back(name);
        senses_.push_back(sense);
        rhs_.push_back(rhs);
        rows_.push_back(std::move(entries));
        return static_cast<int>(row_names_.size()) - 1;
    }

    int num_vars() const { return static_cast<int>(var_names_.size()); }
    int num_rows() const { return static_cast<int>(row_names_.size()); }
    std::size_t num_nonzeros() const {
        std::size_t n = 0;
        for (const auto& r : rows_) n += r.size();
        return n;
    }

    const std::vector<double>& objective() const { return cost_; }
    const std::vector<double>& lower_bounds() const { return lb_; }
    const std::vector<double>& upper_bounds() const { return ub_; }
    const std::vector<double>& rhs() const { return rhs_; }
    const std::vector<RowSense>& senses() const { return senses_; }
    const std::vector<std::vector<SparseEntry>>& rows() const { return rows_; }
    const std::vector<std::string>& var_names() const { return var_names_; }
    const std::vector<std::string>& row_names() const { return row_names_; }

    double& cost(int j) { return cost_.at(j); }
    void set_bounds(int j, double lb, double ub) {
        if (lb > ub) throw DomainError("set_bounds: lb > ub");
        lb_.at(j) = lb;
        ub_.at(j) = ub;
    }
    double lower_bound(int j) const { return lb_.at(j); }
    double upper_bound(int j) const { return ub_.at(j); }

    int var(const std::string& name) const {
        auto it = var_index_.find(name);
        if (it == var_index_.end())
            throw MissingReference("unknown variable '" + name + "'");
        return it->second;
    }

  private:
    std::vector<std::string> var_names_;
    std::vector<double> lb_, ub_, cost_;
    std::unordered_map<std::string, int> var_index_;

    std::vector<std::string> row_names_;
    std::vector<RowSense> senses_;
    std::vector<double> rhs_;
    std::vector<std::vector<SparseEntry>> rows_;
    std::unordered_map<std::string, int> row_index_;
};

// Compact restart state: per-column basis status of a previous solve on a
// structurally identical program. Strings over {B,L,U,F}; see Simplex docs.
struct BasisHint {
    std::string statuses;
    bool empty() const { return statuses.empty(); }
};

struct Solution {
    SolveStatus status = SolveStatus::Infeasible;
    double objective = 0.0;
    std::vector<double> primal;      // per variable
    std::vector<double> duals;       // per row
    std::vector<double> reduced_costs;
    long iterations = 0;
    BasisHint basis;                 // restart state for warm starts
};

// Residual of primal feasibility: max over rows/bounds of constraint
// violation (absolute).
double primal_infeasibility(const LinearProgram& lp, const std::vector<double>& x);

// |primal objective - dual objective| computed from scratch for a solution
// claiming optimality. Throws StatusError if sol is not Optimal.
double duality_gap(const LinearProgram& lp, const Solution& sol);

} // namespace rplan
