#pragma once

#include <compare>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gfc {

enum class KernelFamily { Power, Tempered, Kummer, BesselJ, BesselI, Moment };

std::string to_string(KernelFamily family);

/// An atomic kernel t^p g(t) with g continuous on [0, inf).
///
/// Kernels are immutable values; copies share the smooth-factor evaluator.
/// Ordering and equality compare (family, params) only, which is what the
/// expression algebra uses to put convolution factors in canonical order.
class Kernel {
 public:
  using Smooth = std::function<double(double)>;

  Kernel(KernelFamily family, std::vector<double> params, double exponent, Smooth smooth,
         bool has_analytic_derivatives, std::string label);

  KernelFamily family() const { return family_; }
  std::span<const double> params() const { return params_; }
  /// Singular exponent p.
  double exponent() const { return exponent_; }
  /// Smooth factor g(t), t >= 0.
  double smooth(double t) const { return (*smooth_)(t); }
  /// Kernel value t^p g(t), t > 0.
  double operator()(double t) const;
  bool has_analytic_derivatives() const { return analytic_derivatives_; }
  const std::string& label() const { return label_; }

  /// Membership in C_{-1,0}: -1 < p < 0.
  bool in_c_minus_one_zero() const { return exponent_ > -1.0 && exponent_ < 0.0; }

  /// Order a of a power-like kernel t^(a-1)/Gamma(a) (Power, Moment, Tempered mu-side).
  double power_order() const;

  /// Pointwise j-th derivative for kernels with analytic derivatives.
  /// The result may leave C_{-1} (it is a pointwise value for t > 0).
  double derivative(int order, double t) const;

  std::partial_ordering operator<=>(const Kernel& other) const;
  bool operator==(const Kernel& other) const;

 private:
  KernelFamily family_;
  std::vector<double> params_;
  double exponent_;
  std::shared_ptr<const Smooth> smooth_;
  bool analytic_derivatives_;
  std::string label_;
};

using KernelCouple = std::pair<Kernel, Kernel>;

/// h_a(t) = t^(a-1)/Gamma(a), a > 0.
Kernel power_kernel(double a);

/// {1}^k = h_k for a positive integer k.
Kernel moment_kernel(int k);

/// e^(-lambda t) h_a(t), a > 0, lambda >= 0; the mu-side tempered kernel.
Kernel tempered_power_kernel(double a, double lambda);

/// Partner of tempered_power_kernel(alpha, lambda):
/// t^-alpha e^-lambda t / Gamma(1-alpha) + lambda^alpha gamma(1-alpha, lambda t) / Gamma(1-alpha).
Kernel tempered_partner_kernel(double alpha, double lambda);

/// scale * t^p * Phi(b, a; -lambda t).
Kernel kummer_kernel(double scale, double p, double b, double a, double lambda);

/// t^(index/2) J_index(2 sqrt t) = t^index * sum_k (-t)^k / (k! Gamma(index+k+1)).
Kernel bessel_j_kernel(double index);

/// t^(index/2) I_index(2 sqrt t) = t^index * sum_k t^k / (k! Gamma(index+k+1)).
Kernel bessel_i_kernel(double index);

/// (h_alpha, h_{1-alpha}), 0 < alpha < 1.
KernelCouple sonine_pair_power(double alpha);

/// Tempered Sonine pair, 0 < alpha < 1, lambda >= 0.
KernelCouple sonine_pair_tempered(double alpha, double lambda);

/// (t^(alpha-1) Phi(beta, alpha; -lambda t), sin(pi alpha)/pi t^-alpha Phi(-beta, 1-alpha; -lambda t)).
KernelCouple sonine_pair_kummer(double alpha, double beta, double lambda);

/// Bessel pair of order n: n = 1 requires -1 < alpha < 0, n = 2 requires
/// 0 < alpha < 1 and in general n - 2 < alpha < n - 1. The pair satisfies
/// (M * N)(t) = h_n(t).
KernelCouple bessel_pair(int order_n, double alpha);

/// Number formatting used in kernel labels (shortest round-trip-ish, %.12g).
std::string format_param(double x);

}  // namespace gfc
