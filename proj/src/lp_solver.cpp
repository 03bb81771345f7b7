#include "lmopt/lp_solver.hpp"

#include "lmopt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

namespace lmopt {

void LinearProgram::validate() const {
  if (c.size() == 0) throw UsageError("lp: need at least one variable");
  if (A.rows() == 0) throw UsageError("lp: need at least one constraint");
  if (A.cols() != c.size() || A.rows() != b.size())
    throw UsageError("lp: inconsistent dimensions");
  if (!A.allFinite() || !b.allFinite() || !c.allFinite())
    throw UsageError("lp: non-finite coefficient");
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::unbounded: return "unbounded";
  }
  return "?";
}

namespace {

class Tableau {
 public:
  Tableau(const LinearProgram& lp)
      : n_real_(static_cast<int>(lp.c.size())),
        rows_(static_cast<int>(lp.A.rows())) {
    Matrix a = lp.A;
    rhs_ = lp.b;
    for (int i = 0; i < rows_; ++i) {
      if (rhs_[i] < 0.0) {
        a.row(i) = -a.row(i);
        rhs_[i] = -rhs_[i];
      }
    }

    // Seed the basis with singleton columns where possible; each remaining
    // row gets an artificial. A negative singleton can still serve when its
    // row has zero right-hand side (flip the row).
    basis_.assign(rows_, -1);
    std::vector<int> artificial_rows;
    std::vector<char> used(n_real_, 0);
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < n_real_; ++j) {
        if (used[j]) continue;
        const Real entry = a(i, j);
        if (std::abs(entry) <= kPivotTol) continue;
        bool singleton = true;
        for (int r = 0; r < rows_ && singleton; ++r)
          if (r != i && a(r, j) != 0.0) singleton = false;
        if (!singleton) continue;
        if (entry < 0.0) {
          if (rhs_[i] != 0.0) continue;
          a.row(i) = -a.row(i);
        }
        basis_[i] = j;
        used[j] = 1;
        break;
      }
      if (basis_[i] < 0) artificial_rows.push_back(i);
    }

    n_total_ = n_real_ + static_cast<int>(artificial_rows.size());
    body_.setZero(rows_, n_total_);
    body_.leftCols(n_real_) = a;
    int next = n_real_;
    for (const int i : artificial_rows) {
      body_(i, next) = 1.0;
      basis_[i] = next;
      ++next;
    }
    // Normalize seeded rows so basic columns are exact unit columns.
    for (int i = 0; i < rows_; ++i) {
      const Real pivot = body_(i, basis_[i]);
      if (pivot != 1.0) {
        body_.row(i) /= pivot;
        rhs_[i] /= pivot;
      }
    }
  }

  int real_variables() const { return n_real_; }
  int artificial_begin() const { return n_real_; }
  int total_variables() const { return n_total_; }
  int rows() const { return rows_; }
  const std::vector<int>& basis() const { return basis_; }
  Real rhs(int i) const { return rhs_[i]; }
  std::uint64_t iterations() const { return iterations_; }

  bool is_basic(int column) const {
    return std::find(basis_.begin(), basis_.end(), column) != basis_.end();
  }

  // Runs simplex iterations for the given costs. `allow` masks columns that
  // may enter. Returns false when the objective is unbounded above.
  bool maximize(const Vector& costs, const std::vector<char>& allow) {
    reduced_ = costs;
    for (int i = 0; i < rows_; ++i)
      if (costs[basis_[i]] != 0.0) reduced_ -= costs[basis_[i]] * body_.row(i).transpose();

    for (;;) {
      if (++iterations_ > kIterationCap)
        throw SolverError("simplex: iteration cap exceeded (" +
                          std::to_string(kIterationCap) + ")");
      // Bland: smallest improving index enters.
      int entering = -1;
      for (int j = 0; j < n_total_; ++j) {
        if (allow[j] && reduced_[j] > kPivotTol) {
          entering = j;
          break;
        }
      }
      if (entering < 0) return true;

      // Ratio test; ties broken by smallest basic variable index.
      int leaving = -1;
      Real best_ratio = 0.0;
      for (int i = 0; i < rows_; ++i) {
        const Real coef = body_(i, entering);
        if (coef <= kPivotTol) continue;
        const Real ratio = rhs_[i] / coef;
        if (leaving < 0 || ratio < best_ratio - kPivotTol ||
            (std::abs(ratio - best_ratio) <= kPivotTol && basis_[i] < basis_[leaving])) {
          leaving = i;
          best_ratio = ratio;
        }
      }
      if (leaving < 0) return false;
      pivot(leaving, entering);
    }
  }

  void pivot(int row, int column) {
    const Real pivot_value = body_(row, column);
    body_.row(row) /= pivot_value;
    rhs_[row] /= pivot_value;
    for (int i = 0; i < rows_; ++i) {
      if (i == row) continue;
      const Real factor = body_(i, column);
      if (factor == 0.0) continue;
      body_.row(i) -= factor * body_.row(row);
      rhs_[i] -= factor * rhs_[row];
      body_(i, column) = 0.0;
    }
    const Real rc = reduced_[column];
    if (rc != 0.0) reduced_ -= rc * body_.row(row).transpose();
    reduced_[column] = 0.0;
    basis_[row] = column;
  }

  // After phase one: pivot leftover artificials out of the basis, dropping
  // rows that turn out redundant.
  void remove_artificials() {
    for (int i = rows_ - 1; i >= 0; --i) {
      if (basis_[i] < n_real_) continue;
      int entering = -1;
      for (int j = 0; j < n_real_; ++j) {
        if (std::abs(body_(i, j)) > kPivotTol && !is_basic(j)) {
          entering = j;
          break;
        }
      }
      if (entering >= 0) {
        pivot(i, entering);
        continue;
      }
      drop_row(i);
    }
  }

  Vector extract_x() const {
    Vector x = Vector::Zero(n_real_);
    for (int i = 0; i < rows_; ++i)
      if (basis_[i] < n_real_) x[basis_[i]] = rhs_[i];
    return x;
  }

 private:
  static constexpr std::uint64_t kIterationCap = 1'000'000;

  void drop_row(int row) {
    const int last = rows_ - 1;
    if (row != last) {
      body_.row(row) = body_.row(last);
      rhs_[row] = rhs_[last];
      basis_[row] = basis_[last];
    }
    body_.conservativeResize(last, Eigen::NoChange);
    rhs_.conservativeResize(last);
    basis_.resize(last);
    rows_ = last;
  }

  int n_real_;
  int rows_;
  int n_total_ = 0;
  Matrix body_;
  Vector rhs_;
  Vector reduced_;
  std::vector<int> basis_;
  std::uint64_t iterations_ = 0;
};

}  // namespace

SimplexSolution solve(const LinearProgram& lp) {
  lp.validate();
  Tableau tableau(lp);

  const int n_real = tableau.real_variables();
  const int n_total = tableau.total_variables();
  std::vector<char> allow(static_cast<std::size_t>(n_total), 1);

  // Phase one: minimize the artificial mass (as max of its negation).
  if (n_total > n_real) {
    Vector phase1 = Vector::Zero(n_total);
    for (int j = n_real; j < n_total; ++j) phase1[j] = -1.0;
    if (!tableau.maximize(phase1, allow))
      throw SolverError("simplex: phase one unbounded (cannot happen for valid input)");

    Real artificial_mass = 0.0;
    for (int i = 0; i < tableau.rows(); ++i)
      if (tableau.basis()[i] >= n_real) artificial_mass += tableau.rhs(i);
    if (artificial_mass > kFeasTol) {
      SimplexSolution solution;
      solution.status = SolveStatus::infeasible;
      solution.iterations = tableau.iterations();
      return solution;
    }
    tableau.remove_artificials();
    for (int j = n_real; j < n_total; ++j) allow[j] = 0;
  }

  // Phase two: the real objective.
  Vector costs = Vector::Zero(n_total);
  costs.head(n_real) = lp.c;
  const bool bounded = tableau.maximize(costs, allow);

  SimplexSolution solution;
  solution.iterations = tableau.iterations();
  if (!bounded) {
    solution.status = SolveStatus::unbounded;
    solution.objective_value = kInf;
    return solution;
  }

  solution.status = SolveStatus::optimal;
  solution.x = tableau.extract_x();
  solution.objective_value = lp.c.dot(solution.x);
  solution.basis = tableau.basis();

  const Real residual = (lp.A * solution.x - lp.b).cwiseAbs().maxCoeff();
  const Real scale = std::max(Real(1), lp.b.cwiseAbs().maxCoeff());
  if (residual > kFeasTol * scale) {
    std::ostringstream diag;
    diag << "simplex: residual " << residual << " exceeds tolerance after "
         << solution.iterations << " iterations (rows=" << lp.A.rows()
         << ", cols=" << lp.A.cols() << ")";
    throw SolverError(diag.str());
  }
  return solution;
}

void dump(const LinearProgram& lp, std::ostream& out) {
  std::ostringstream line;
  line.setf(std::ios::fixed);
  line.precision(9);
  line << "maximize";
  for (Index j = 0; j < lp.c.size(); ++j) line << ' ' << lp.c[j];
  out << line.str() << '\n';
  out << "subject to\n";
  for (Index i = 0; i < lp.A.rows(); ++i) {
    std::ostringstream row;
    row.setf(std::ios::fixed);
    row.precision(9);
    for (Index j = 0; j < lp.A.cols(); ++j) {
      if (j) row << ' ';
      row << lp.A(i, j);
    }
    row << " = " << lp.b[i];
    out << row.str() << '\n';
  }
}

}  // namespace lmopt
