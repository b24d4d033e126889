#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace gfc {

/// Uniform grid t_j = j * step, j = 0..J, over [0, T].
class Grid {
 public:
  /// Throws DomainError unless step divides T (1e-12 relative) and J >= 8.
  static Grid make(double horizon, double step);

  double horizon() const { return horizon_; }
  double step() const { return step_; }
  /// Number of panels J; evaluation points are j = 1..J.
  int size() const { return size_; }
  double t(int j) const { return j * step_; }
  Grid halved() const { return make(horizon_, 0.5 * step_); }
  /// First index with t_j >= eps.
  int first_index_at_or_after(double eps) const;
  std::string key() const;

  bool operator==(const Grid& other) const = default;

 private:
  Grid(double horizon, double step, int size) : horizon_(horizon), step_(step), size_(size) {}
  double horizon_;
  double step_;
  int size_;
};

/// Function t^p g(t) sampled as g(t_j), j = 0..J (g is sampled at t = 0 too).
class SampledFunction {
 public:
  SampledFunction(Grid grid, double exponent, std::vector<double> smooth);
  static SampledFunction zero(const Grid& grid);

  const Grid& grid() const { return grid_; }
  double exponent() const { return exponent_; }
  std::span<const double> smooth() const { return smooth_; }
  /// t_j^p g(t_j), j >= 1.
  double value(int j) const;
  /// Values at j = 1..J (index 0 of the result is t_1).
  std::vector<double> values() const;

  SampledFunction scaled(double factor) const;

 private:
  Grid grid_;
  double exponent_;
  std::vector<double> smooth_;
};

/// Sum of sampled functions, written over the smallest exponent present.
SampledFunction add(const SampledFunction& a, const SampledFunction& b);

enum class Verdict { Pass, Fail };

std::string to_string(Verdict v);

/// Residual r(t_j) = lhs - rhs on the observation window [eps, T].
struct ResidualProfile {
  std::vector<double> t;
  std::vector<double> residual;
  /// max |reference side| over the window; sets the roundoff floor.
  double scale = 1.0;
};

/// Sup-norm residual of an identity plus convergence evidence.
struct ResidualReport {
  double sup_residual = 0.0;
  double argmax_t = 0.0;
  double residual_halved_step = 0.0;
  double estimated_order = 0.0;
  Verdict verdict = Verdict::Fail;

  double eps = 0.0;
  double step = 0.0;
  double tolerance = 0.0;
  /// Coarse-grid residual profile over the window.
  ResidualProfile profile;

  /// Residual at the window point nearest to t.
  double residual_at(double t) const;
};

/// Thresholds turning two residual profiles into a verdict.
struct AssessmentPolicy {
  /// Absolute bound on the coarse-grid sup residual.
  double tolerance = 5e-3;
  /// Minimum log2 error ratio under step halving.
  double min_order = 0.8;
  /// Residuals at or below noise_floor * max(1, scale) count as converged to
  /// roundoff; their order is reported as +inf.
  double noise_floor = 1e-10;
};

using ResidualEvaluator = std::function<ResidualProfile(const Grid&, double eps)>;

/// Evaluate on `grid` and on its halving over the same window [eps, T].
ResidualReport assess(const ResidualEvaluator& evaluate, const Grid& grid, double eps,
                      const AssessmentPolicy& policy = {});

}  // namespace gfc
