#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "llenhance/gradient.hpp"
#include "llenhance/image.hpp"

namespace llenhance {

enum class SweepOrder {
  Lexicographic,
  RedBlack,
};

struct SolverConfig {
  /// Threshold on the max-norm projected residual, in intensity levels.
  double tol = 1e-3;
  int max_sweeps = 10000;
  /// Relaxation factor, 0 < omega < 2. Unset selects optimal_omega() for the
  /// grid being solved.
  std::optional<double> omega;
  /// Target mean for fixing the free constant of the solution.
  std::optional<double> anchor_mean;
  SweepOrder order = SweepOrder::Lexicographic;
  /// Worker count for the red-black path; > 1 implies red-black ordering.
  int threads = 1;
  /// Record the objective after every sweep in SolveReport::objective_history.
  bool record_history = false;

  void validate() const;
};

struct SolveReport {
  int sweeps_used = 0;
  double final_residual = 0.0;
  double objective = 0.0;
  bool converged = false;
  double omega = 0.0;
  /// Objective before the first sweep, then after every sweep.
  std::vector<double> objective_history;
};

struct IntegrationResult {
  GrayImage image;
  SolveReport report;
};

/// Classical optimal SOR factor 2 / (1 + sqrt(1 - rho^2)) for the Neumann
/// Laplacian on a width x height grid, rho = (1 + cos(pi / max(w, h))) / 2
/// being the Jacobi spectral radius of its slowest non-constant mode.
double optimal_omega(int width, int height);

/// Box-constrained least-squares integration of a gradient field.
///
/// Minimizes sum (D u - q)^2 subject to r_min <= u <= r_max with projected
/// Gauss-Seidel / SOR on the normal equations. Every pixel update is clamped
/// into the box, so the result is feasible at every sweep. After the residual
/// test passes the free constant is fixed by `anchor`. Running out of sweeps is
/// not an error: the best iterate is returned with `converged == false`.
///
/// `init` must match the field dimensions and lie inside the range. Without it
/// the solve starts from the constant clip(anchor_mean) or the range midpoint.
IntegrationResult integrate(const GradientField& q, const IntensityRange& range,
                            const SolverConfig& cfg,
                            const GrayImage* init = nullptr);

/// Shifts `u` by the constant closest to anchor_mean - mean(u) that keeps every
/// pixel in range. The objective is unchanged by construction.
GrayImage anchor(const GrayImage& u, const IntensityRange& range, double anchor_mean);

/// sum over all gradient samples of (D u - q)^2.
double objective(const GrayImage& u, const GradientField& q);

/// Per-pixel normal-equation residual r = (D^T D u - D^T q), i.e. half the
/// objective gradient. Zero at an unconstrained optimum.
GrayImage normal_residual(const GrayImage& u, const GradientField& q);

/// max over pixels of |u - clip(u - r)|.
double projected_residual(const GrayImage& u, const GradientField& q,
                          const IntensityRange& range);

enum class PixelClass : unsigned char {
  Interior,
  AtLower,
  AtUpper,
  Excluded,
};

struct KktReport {
  GrayImage residual;
  std::vector<PixelClass> classes;
  std::size_t interior = 0;
  std::size_t at_lower = 0;
  std::size_t at_upper = 0;
  std::size_t excluded = 0;
  std::size_t violations = 0;
  double max_violation = 0.0;
};

/// First-order optimality check of `u` for the box-constrained problem.
///
/// Interior pixels need |r| <= tol, pixels on the lower bound r >= -tol, pixels
/// on the upper bound r <= tol. Pixels flagged in `exclude` (same size as u,
/// nonzero = skip) are classified Excluded and never counted as violations.
KktReport kkt_report(const GrayImage& u, const GradientField& q,
                     const IntensityRange& range, double tol,
                     const std::vector<unsigned char>* exclude = nullptr);

}  // namespace llenhance
