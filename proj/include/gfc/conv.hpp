#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "gfc/algebra.hpp"
#include "gfc/grid.hpp"
#include "gfc/kernels.hpp"

namespace gfc {

/// Memo of materialized kernel expressions, keyed by canonical expression
/// key and grid. Safe for concurrent insert-or-get; values are
/// deterministic, so a duplicated computation is harmless.
class ConvCache {
 public:
  std::shared_ptr<const SampledFunction> find(const std::string& key) const;
  std::shared_ptr<const SampledFunction> insert(const std::string& key, SampledFunction value);
  std::size_t size() const;

 private:
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<const SampledFunction>> entries_;
};

/// Samples the kernel's smooth factor at t_0..t_J.
SampledFunction sample(const Kernel& k, const Grid& grid);

/// Samples a kernel expression; Conv nodes are simplified and then
/// evaluated as a left fold of pairwise convolutions, each prefix cached.
SampledFunction materialize(const KernelExpr& e, const Grid& grid, ConvCache* cache = nullptr);

/// Laplace convolution (f * g)(t_j) = int_0^t_j f(t_j - s) g(s) ds.
///
/// Product integration: on every panel the weight s^pg (t_j - s)^pf is
/// integrated exactly (Gauss-Jacobi on the two end panels, Gauss-Legendre on
/// smooth interior panels) against the linear interpolant of the product of
/// the smooth factors. The result has exponent pf + pg + 1; its smooth factor
/// at t = 0 is g_f(0) g_g(0) B(pf + 1, pg + 1).
SampledFunction num_conv(const SampledFunction& f, const SampledFunction& g);
SampledFunction num_conv(const KernelExpr& f, const SampledFunction& g, ConvCache* cache = nullptr);
SampledFunction num_conv(const KernelExpr& f, const KernelExpr& g, const Grid& grid,
                         ConvCache* cache = nullptr);

/// I^n X = h_n * X.
SampledFunction iterated_integral(const SampledFunction& x, int n);

/// Largest derivative order the finite-difference engine supports.
inline constexpr int kMaxNumericDerivative = 4;

/// n-th derivative of t^q G(t) through Leibniz' rule, with the exact
/// derivatives of t^q and second-order finite differences of the sampled
/// smooth factor G (centered inside, one-sided near the ends).
///
/// The result exponent is q - n, or 0 when q is a non-negative integer
/// below n. Throws DomainError if the result leaves C_{-1} and
/// UnsupportedError for n > kMaxNumericDerivative.
SampledFunction differentiate(const SampledFunction& x, int n);

/// Finite-difference weights for the `order`-th derivative at `x0` from
/// samples at `nodes` (Fornberg's recursion).
std::vector<double> fd_weights(double x0, const std::vector<double>& nodes, int order);

/// t^p g(t) samples whose exponent may be <= -1; pointwise data only.
struct PointwiseSamples {
  double exponent = 0.0;
  std::vector<double> smooth;
};

/// Samples of the j-th derivative of a kernel expression (see has_derivative).
std::optional<PointwiseSamples> derivative_samples(const KernelExpr& e, int order,
                                                   const Grid& grid, ConvCache* cache = nullptr);

}  // namespace gfc
