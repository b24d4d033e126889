#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "gfc/algebra.hpp"
#include "gfc/grid.hpp"

namespace gfc {

class ConvCache;

/// A function X(t) = t^p g(t) in C_{-1}, with optional analytic derivatives
/// X^(k) = t^(p_k) g_k(t) and initial values X^(k)(0).
class TestFunction {
 public:
  using Fn = std::function<double(double)>;

  struct Derivative {
    double exponent = 0.0;
    Fn smooth;
  };

  /// Declared smoothness for functions in C^n_{-1} for every n.
  static constexpr int kAnyOrder = std::numeric_limits<int>::max();

  /// `derivatives[k-1]` is X^(k); `initial_values[k]` is X^(k)(0).
  /// `smooth_order` declares X in C^n_{-1} for n <= smooth_order.
  /// Analytic derivatives are checked against centered differences on a
  /// probe grid; inconsistent data throws DomainError.
  TestFunction(std::string name, double exponent, Fn smooth, std::vector<Derivative> derivatives,
               std::vector<double> initial_values, int smooth_order);

  /// A function known only through samples on one grid. No analytic
  /// derivatives; numeric differentiation is allowed up to `smooth_order`.
  static TestFunction from_samples(std::string name, SampledFunction samples, int smooth_order = 0,
                                   std::vector<double> initial_values = {});

  const std::string& name() const { return name_; }
  double exponent() const { return exponent_; }
  double value(double t) const;
  const Fn& smooth() const { return smooth_; }
  const std::vector<Derivative>& derivatives() const { return derivatives_; }
  int smooth_order() const { return smooth_order_; }
  bool in_cn(int n) const { return smooth_order_ >= n; }
  int analytic_derivative_count() const { return static_cast<int>(derivatives_.size()); }
  /// X^(k)(t) for t > 0 from the analytic evaluators (k <= count).
  double derivative(int k, double t) const;
  const std::vector<double>& initial_values() const { return initial_values_; }
  bool has_initial_values(int n) const { return static_cast<int>(initial_values_.size()) >= n; }
  bool is_sampled() const { return samples_.has_value(); }
  const std::optional<SampledFunction>& samples() const { return samples_; }

  SampledFunction sample(const Grid& grid) const;
  /// X^(k) on the grid: analytic when available, else numeric (needs
  /// in_cn(k)). Throws DomainError if X^(k) is not declared to exist.
  SampledFunction sample_derivative(int k, const Grid& grid) const;

 private:
  std::string name_;
  double exponent_ = 0.0;
  Fn smooth_;
  std::vector<Derivative> derivatives_;
  std::vector<double> initial_values_;
  int smooth_order_ = 0;
  std::optional<SampledFunction> samples_;
};

/// a X1 + b X2, keeping analytic derivatives and initial values that both
/// operands supply.
TestFunction linear_combination(double a, const TestFunction& x1, double b, const TestFunction& x2);

/// Catalog: "1", "t", "t2", "exp", "cos", "sin", "h0.6".
std::vector<std::string> function_names();
/// Throws DomainError for an unknown name.
TestFunction named_function(const std::string& name);

/// GF-integral I_(M) X = M * X.
SampledFunction gfi(const KernelPair& pair, const TestFunction& x, const Grid& grid,
                    ConvCache* cache = nullptr);

/// Caputo-type GF-derivative N * X^(n), n = pair.order.
SampledFunction gfd_caputo(const KernelPair& pair, const TestFunction& x, const Grid& grid,
                           ConvCache* cache = nullptr);

enum class RlPath { Auto, Regularized, Numeric };

std::string to_string(RlPath p);

struct RlInfo {
  RlPath used = RlPath::Numeric;
  /// The regularized path was requested but not applicable.
  bool fell_back = false;
};

/// Riemann-Liouville-type GF-derivative d^n/dt^n (N * X).
///
/// Regularized: N * X^(n) + sum_{k<n} X^(k)(0) N^(n-1-k), for X in C^n_{-1}
/// with initial values and N with derivatives up to n-1. Numeric: finite
/// differences of the sampled convolution, n <= kMaxNumericDerivative.
/// Auto prefers the regularized path.
SampledFunction gfd_rl(const KernelPair& pair, const TestFunction& x, const Grid& grid,
                       RlPath path = RlPath::Auto, RlInfo* info = nullptr,
                       ConvCache* cache = nullptr);

}  // namespace gfc
