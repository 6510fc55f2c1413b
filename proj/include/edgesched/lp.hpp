#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace edgesched {

enum class RowSense { LE, EQ, GE };

struct LinearRow {
  std::vector<std::pair<int, double>> coeffs;  // (variable index, coefficient)
  RowSense sense = RowSense::LE;
  double rhs = 0.0;
};

// Minimization program over bounded variables. Lower bounds must be finite;
// upper bounds may be +infinity. Integrality markers are carried for the
// branch-and-bound layer and ignored by the relaxation solver.
struct LinearProgram {
  int var_count = 0;
  std::vector<double> objective;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<std::uint8_t> integral;
  std::vector<LinearRow> rows;

  int add_variable(double cost, double lo, double up, bool is_integral);
};

enum class LpStatus { Optimal, Infeasible };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  double objective = 0.0;
  std::vector<double> x;
  std::int64_t pivots = 0;
};

// Two-phase primal simplex on a dense tableau with explicit variable bounds.
// Pricing is steepest reduced cost; after a run of degenerate steps it falls
// back to Bland's rule until progress resumes, so the solve cannot cycle.
// Fully deterministic for identical inputs. Throws std::runtime_error on
// unbounded or malformed programs.
LpResult solve_lp(const LinearProgram& lp);

}  // namespace edgesched
