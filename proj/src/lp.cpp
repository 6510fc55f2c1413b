#include "edgesched/lp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

#include "edgesched/model.hpp"

namespace edgesched {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kOptTol = 1e-9;
constexpr double kPivotTol = 1e-8;
constexpr double kDegenerateStep = 1e-12;
constexpr double kPhase1Tol = 1e-7;
constexpr int kBlandTrigger = 40;
constexpr std::int64_t kMaxIterations = 500000;

class Simplex {
 public:
  explicit Simplex(const LinearProgram& lp) : lp_(lp) {}

  LpResult run() {
    LpResult res;
    for (int j = 0; j < lp_.var_count; ++j) {
      if (lp_.lower[j] > lp_.upper[j]) return res;  // empty box, infeasible
    }
    build();
    if (artificial_begin_ < cols_) {
      recompute_reduced([&](int j) { return j >= artificial_begin_ ? 1.0 : 0.0; });
      run_phase();
      double infeas = 0.0;
      for (int r = 0; r < rows_; ++r) {
        if (basis_[r] >= artificial_begin_) infeas += xb_[r];
      }
      if (infeas > kPhase1Tol) return res;
      for (int j = artificial_begin_; j < cols_; ++j) up_[j] = 0.0;
    }
    recompute_reduced([&](int j) {
      return j < lp_.var_count ? lp_.objective[j] : 0.0;
    });
    run_phase();

    res.status = LpStatus::Optimal;
    res.pivots = pivots_;
    res.x.assign(lp_.var_count, 0.0);
    for (int j = 0; j < lp_.var_count; ++j) {
      res.x[j] = at_upper_[j] ? up_[j] : lo_[j];
    }
    for (int r = 0; r < rows_; ++r) {
      if (basis_[r] < lp_.var_count) res.x[basis_[r]] = xb_[r];
    }
    for (int j = 0; j < lp_.var_count; ++j) {
      res.x[j] = std::min(std::max(res.x[j], lo_[j]), up_[j]);
    }
    check_rows(res.x);
    KahanSum obj;
    for (int j = 0; j < lp_.var_count; ++j) {
      if (res.x[j] != 0.0) obj.add(lp_.objective[j] * res.x[j]);
    }
    res.objective = obj.value();
    return res;
  }

 private:
  double* row(int r) { return tab_.data() + static_cast<std::size_t>(r) * cols_; }

  void build() {
    rows_ = static_cast<int>(lp_.rows.size());
    int slack_count = 0;
    for (const LinearRow& lr : lp_.rows) {
      if (lr.sense != RowSense::EQ) ++slack_count;
    }
    // Worst case one artificial per row; unused ones are trimmed below.
    int max_cols = lp_.var_count + slack_count + rows_;
    lo_.assign(max_cols, 0.0);
    up_.assign(max_cols, kInf);
    at_upper_.assign(max_cols, 0);
    is_basic_.assign(max_cols, 0);
    for (int j = 0; j < lp_.var_count; ++j) {
      if (!std::isfinite(lp_.lower[j])) {
        throw std::runtime_error("variable " + std::to_string(j) +
                                 " has no finite lower bound");
      }
      lo_[j] = lp_.lower[j];
      up_[j] = lp_.upper[j];
    }

    basis_.assign(rows_, -1);
    xb_.assign(rows_, 0.0);

    // First pass decides the column layout: slacks for inequality rows, then
    // artificials only where the slack cannot start basic.
    std::vector<double> residual(rows_, 0.0);
    std::vector<int> slack_col(rows_, -1);
    std::vector<double> slack_sign(rows_, 0.0);
    int next = lp_.var_count;
    for (int r = 0; r < rows_; ++r) {
      const LinearRow& lr = lp_.rows[r];
      double lhs = 0.0;
      for (auto [j, c] : lr.coeffs) {
        if (j < 0 || j >= lp_.var_count) {
          throw std::runtime_error("row coefficient references variable " +
                                   std::to_string(j));
        }
        if (lo_[j] != 0.0) lhs += c * lo_[j];
      }
      residual[r] = lr.rhs - lhs;
      if (lr.sense == RowSense::LE) {
        slack_col[r] = next++;
        slack_sign[r] = 1.0;
      } else if (lr.sense == RowSense::GE) {
        slack_col[r] = next++;
        slack_sign[r] = -1.0;
      }
    }
    artificial_begin_ = next;
    std::vector<int> art_col(rows_, -1);
    std::vector<double> art_sign(rows_, 0.0);
    for (int r = 0; r < rows_; ++r) {
      double slack_val = slack_sign[r] != 0.0 ? slack_sign[r] * residual[r] : -1.0;
      if (slack_sign[r] != 0.0 && slack_val >= 0.0) {
        basis_[r] = slack_col[r];
        xb_[r] = slack_val;
      } else {
        art_col[r] = next++;
        art_sign[r] = residual[r] >= 0.0 ? 1.0 : -1.0;
        basis_[r] = art_col[r];
        xb_[r] = std::abs(residual[r]);
      }
    }
    cols_ = next;

    tab_.assign(static_cast<std::size_t>(rows_) * cols_, 0.0);
    for (int r = 0; r < rows_; ++r) {
      double* a = row(r);
      for (auto [j, c] : lp_.rows[r].coeffs) a[j] += c;
      if (slack_col[r] >= 0) a[slack_col[r]] = slack_sign[r];
      if (art_col[r] >= 0) a[art_col[r]] = art_sign[r];
      // The starting basis matrix is diagonal (+-1), so B^-1 A is just a row
      // scaling.
      double d = a[basis_[r]];
      if (d != 1.0) {
        for (int j = 0; j < cols_; ++j) a[j] /= d;
      }
      is_basic_[basis_[r]] = 1;
    }
    red_.assign(cols_, 0.0);
  }

  void recompute_reduced(const std::function<double(int)>& cost) {
    for (int j = 0; j < cols_; ++j) red_[j] = cost(j);
    for (int r = 0; r < rows_; ++r) {
      double cb = cost(basis_[r]);
      if (cb == 0.0) continue;
      const double* a = row(r);
      for (int j = 0; j < cols_; ++j) red_[j] -= cb * a[j];
    }
  }

  void run_phase() {
    int degenerate_streak = 0;
    bool bland = false;
    while (true) {
      if (pivots_ > kMaxIterations) {
        throw std::runtime_error("simplex iteration limit exceeded");
      }
      int enter = -1;
      int dir = 0;
      double best = 0.0;
      for (int j = 0; j < cols_; ++j) {
        if (is_basic_[j] || up_[j] <= lo_[j]) continue;
        double d = red_[j];
        int cand_dir = 0;
        if (!at_upper_[j] && d < -kOptTol) {
          cand_dir = 1;
        } else if (at_upper_[j] && d > kOptTol) {
          cand_dir = -1;
        } else {
          continue;
        }
        if (bland) {
          enter = j;
          dir = cand_dir;
          break;
        }
        if (std::abs(d) > best) {
          best = std::abs(d);
          enter = j;
          dir = cand_dir;
        }
      }
      if (enter < 0) return;

      // Ratio test: how far the entering variable may move before a basic
      // variable hits one of its bounds or the entering one hits its own.
      double step = up_[enter] - lo_[enter];
      int leave = -1;
      bool leave_at_upper = false;
      for (int r = 0; r < rows_; ++r) {
        double w = dir * row(r)[enter];
        double t;
        bool hits_upper;
        if (w > kPivotTol) {
          t = (xb_[r] - lo_[basis_[r]]) / w;
          hits_upper = false;
        } else if (w < -kPivotTol) {
          if (up_[basis_[r]] == kInf) continue;
          t = (up_[basis_[r]] - xb_[r]) / (-w);
          hits_upper = true;
        } else {
          continue;
        }
        if (t < step - kDegenerateStep ||
            (leave >= 0 && t < step + kDegenerateStep &&
             basis_[r] < basis_[leave])) {
          step = t;
          leave = r;
          leave_at_upper = hits_upper;
        }
      }
      if (leave < 0 && !std::isfinite(step)) {
        throw std::runtime_error("linear program is unbounded");
      }
      step = std::max(step, 0.0);
      ++pivots_;

      if (leave < 0) {
        // Bound flip, no basis change.
        for (int r = 0; r < rows_; ++r) {
          double w = row(r)[enter];
          if (w != 0.0) xb_[r] -= dir * w * step;
        }
        at_upper_[enter] ^= 1;
        degenerate_streak = 0;
        bland = false;
        continue;
      }

      double enter_val = (at_upper_[enter] ? up_[enter] : lo_[enter]) + dir * step;
      for (int r = 0; r < rows_; ++r) {
        if (r == leave) continue;
        double w = row(r)[enter];
        if (w != 0.0) xb_[r] -= dir * w * step;
      }

      int out = basis_[leave];
      is_basic_[out] = 0;
      at_upper_[out] = leave_at_upper ? 1 : 0;

      double* prow = row(leave);
      double piv = prow[enter];
      for (int j = 0; j < cols_; ++j) prow[j] /= piv;
      prow[enter] = 1.0;
      for (int r = 0; r < rows_; ++r) {
        if (r == leave) continue;
        double f = row(r)[enter];
        if (f == 0.0) continue;
        double* a = row(r);
        for (int j = 0; j < cols_; ++j) a[j] -= f * prow[j];
        a[enter] = 0.0;
      }
      double f = red_[enter];
      if (f != 0.0) {
        for (int j = 0; j < cols_; ++j) red_[j] -= f * prow[j];
        red_[enter] = 0.0;
      }

      basis_[leave] = enter;
      is_basic_[enter] = 1;
      xb_[leave] = enter_val;

      if (step <= kDegenerateStep) {
        if (++degenerate_streak >= kBlandTrigger) bland = true;
      } else {
        degenerate_streak = 0;
        bland = false;
      }
    }
  }

  void check_rows(const std::vector<double>& x) const {
    for (const LinearRow& lr : lp_.rows) {
      KahanSum lhs;
      for (auto [j, c] : lr.coeffs) {
        if (x[j] != 0.0) lhs.add(c * x[j]);
      }
      double v = lhs.value();
      double tol = 1e-6 * std::max(1.0, std::abs(lr.rhs));
      bool ok = true;
      if (lr.sense == RowSense::LE) ok = v <= lr.rhs + tol;
      if (lr.sense == RowSense::GE) ok = v >= lr.rhs - tol;
      if (lr.sense == RowSense::EQ) ok = std::abs(v - lr.rhs) <= tol;
      if (!ok) {
        throw std::logic_error("simplex produced a point violating its rows");
      }
    }
  }

  const LinearProgram& lp_;
  int rows_ = 0;
  int cols_ = 0;
  int artificial_begin_ = 0;
  std::vector<double> tab_;
  std::vector<double> red_;
  std::vector<double> xb_;
  std::vector<double> lo_, up_;
  std::vector<int> basis_;
  std::vector<char> at_upper_;
  std::vector<char> is_basic_;
  std::int64_t pivots_ = 0;
};

}  // namespace

int LinearProgram::add_variable(double cost, double lo, double up,
                                bool is_integral) {
  objective.push_back(cost);
  lower.push_back(lo);
  upper.push_back(up);
  integral.push_back(is_integral ? 1 : 0);
  return var_count++;
}

LpResult solve_lp(const LinearProgram& lp) {
  if (static_cast<int>(lp.objective.size()) != lp.var_count ||
      static_cast<int>(lp.lower.size()) != lp.var_count ||
      static_cast<int>(lp.upper.size()) != lp.var_count ||
      static_cast<int>(lp.integral.size()) != lp.var_count) {
    throw std::runtime_error("linear program field lengths disagree");
  }
  Simplex solver(lp);
  return solver.run();
}

}  // namespace edgesched
