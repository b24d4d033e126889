#include "gfc/kernels.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "gfc/errors.hpp"
#include "gfc/specfun.hpp"

namespace gfc {

namespace {

// Tempered kernels carry a trailing side marker in their parameter list.
constexpr double kMuSide = 0.0;
constexpr double kNuSide = 1.0;

void require(bool ok, const std::string& message) {
  if (!ok) throw DomainError(message);
}

}  // namespace

std::string to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::Power:
      return "power";
    case KernelFamily::Tempered:
      return "tempered";
    case KernelFamily::Kummer:
      return "kummer";
    case KernelFamily::BesselJ:
      return "besselJ";
    case KernelFamily::BesselI:
      return "besselI";
    case KernelFamily::Moment:
      return "moment";
  }
  return "unknown";
}

std::string format_param(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

Kernel::Kernel(KernelFamily family, std::vector<double> params, double exponent, Smooth smooth,
               bool has_analytic_derivatives, std::string label)
    : family_(family),
      params_(std::move(params)),
      exponent_(exponent),
      smooth_(std::make_shared<const Smooth>(std::move(smooth))),
      analytic_derivatives_(has_analytic_derivatives),
      label_(std::move(label)) {
  require(exponent_ > -1.0, "kernel " + label_ + " has singular exponent <= -1 (not in C_{-1})");
}

double Kernel::operator()(double t) const { return std::pow(t, exponent_) * smooth(t); }

double Kernel::power_order() const {
  if (family_ == KernelFamily::Power || family_ == KernelFamily::Moment ||
      (family_ == KernelFamily::Tempered && params_[2] == kMuSide)) {
    return params_[0];
  }
  throw DomainError("kernel " + label_ + " is not of power type");
}

double Kernel::derivative(int order, double t) const {
  if (order < 0) throw DomainError("negative derivative order");
  if (order == 0) return (*this)(t);
  if (!analytic_derivatives_) {
    throw UnsupportedError("kernel " + label_ + " has no analytic derivatives");
  }
  // d^j/dt^j h_a = h_{a-j} pointwise for t > 0.
  const double a = power_order() - order;
  return std::pow(t, a - 1.0) * specfun::rgamma(a);
}

std::partial_ordering Kernel::operator<=>(const Kernel& other) const {
  if (auto c = family_ <=> other.family_; c != 0) return c;
  return std::lexicographical_compare_three_way(params_.begin(), params_.end(),
                                                other.params_.begin(), other.params_.end());
}

bool Kernel::operator==(const Kernel& other) const {
  return family_ == other.family_ && params_ == other.params_;
}

Kernel power_kernel(double a) {
  require(a > 0.0, "power_kernel: order must be positive");
  const double c = specfun::rgamma(a);
  return Kernel(KernelFamily::Power, {a}, a - 1.0, [c](double) { return c; }, true,
                "h(" + format_param(a) + ")");
}

Kernel moment_kernel(int k) {
  require(k >= 1, "moment_kernel: power must be a positive integer");
  const double c = specfun::rgamma(k);
  return Kernel(KernelFamily::Moment, {static_cast<double>(k)}, k - 1.0,
                [c](double) { return c; }, true, "{1}^" + std::to_string(k));
}

Kernel tempered_power_kernel(double a, double lambda) {
  require(a > 0.0, "tempered kernel: order must be positive");
  require(lambda >= 0.0, "tempered kernel: lambda must be non-negative");
  const double c = specfun::rgamma(a);
  return Kernel(KernelFamily::Tempered, {a, lambda, kMuSide}, a - 1.0,
                [c, lambda](double t) { return c * std::exp(-lambda * t); }, false,
                "exp(-" + format_param(lambda) + "t)h(" + format_param(a) + ")");
}

Kernel tempered_partner_kernel(double alpha, double lambda) {
  require(alpha > 0.0 && alpha < 1.0, "tempered partner: alpha must lie in (0, 1)");
  require(lambda >= 0.0, "tempered partner: lambda must be non-negative");
  const double c = specfun::rgamma(1.0 - alpha);
  const double lam_alpha = std::pow(lambda, alpha);
  // g(t) = e^-lambda t / Gamma(1-alpha) + t^alpha lambda^alpha gamma(1-alpha, lambda t) / Gamma(1-alpha)
  auto smooth = [=](double t) {
    double g = c * std::exp(-lambda * t);
    if (lambda > 0.0 && t > 0.0) {
      g += c * std::pow(t, alpha) * lam_alpha * specfun::gamma_lower(1.0 - alpha, lambda * t);
    }
    return g;
  };
  return Kernel(KernelFamily::Tempered, {alpha, lambda, kNuSide}, -alpha, smooth, false,
                "tempered_nu(" + format_param(alpha) + "," + format_param(lambda) + ")");
}

Kernel kummer_kernel(double scale, double p, double b, double a, double lambda) {
  require(lambda >= 0.0, "kummer kernel: lambda must be non-negative");
  require(!(a <= 0.0 && std::floor(a) == a), "kummer kernel: a must not be a non-positive integer");
  auto smooth = [=](double t) { return scale * specfun::kummer_phi(b, a, -lambda * t); };
  return Kernel(KernelFamily::Kummer, {scale, p, b, a, lambda}, p, smooth, false,
                "kummer(" + format_param(scale) + "," + format_param(p) + "," + format_param(b) +
                    "," + format_param(a) + "," + format_param(lambda) + ")");
}

Kernel bessel_j_kernel(double index) {
  require(index > -1.0, "bessel J kernel: index must exceed -1");
  // t^(index/2) J_index(2 sqrt t): the series' leading term is t^index / Gamma(index+1).
  auto smooth = [index](double t) { return specfun::bessel_j_reduced(index, t).value; };
  return Kernel(KernelFamily::BesselJ, {index}, index, smooth, false,
                "besselJ(" + format_param(index) + ")");
}

Kernel bessel_i_kernel(double index) {
  require(index > -1.0, "bessel I kernel: index must exceed -1");
  auto smooth = [index](double t) { return specfun::bessel_i_reduced(index, t).value; };
  return Kernel(KernelFamily::BesselI, {index}, index, smooth, false,
                "besselI(" + format_param(index) + ")");
}

KernelCouple sonine_pair_power(double alpha) {
  require(alpha > 0.0 && alpha < 1.0, "sonine_pair_power: alpha must lie in (0, 1)");
  return {power_kernel(alpha), power_kernel(1.0 - alpha)};
}

KernelCouple sonine_pair_tempered(double alpha, double lambda) {
  require(alpha > 0.0 && alpha < 1.0, "sonine_pair_tempered: alpha must lie in (0, 1)");
  require(lambda >= 0.0, "sonine_pair_tempered: lambda must be non-negative");
  return {tempered_power_kernel(alpha, lambda), tempered_partner_kernel(alpha, lambda)};
}

KernelCouple sonine_pair_kummer(double alpha, double beta, double lambda) {
  require(alpha > 0.0 && alpha < 1.0, "sonine_pair_kummer: alpha must lie in (0, 1)");
  require(lambda >= 0.0, "sonine_pair_kummer: lambda must be non-negative");
  require(std::isfinite(beta), "sonine_pair_kummer: beta must be finite");
  const double partner_scale = std::sin(std::numbers::pi * alpha) / std::numbers::pi;
  return {kummer_kernel(1.0, alpha - 1.0, beta, alpha, lambda),
          kummer_kernel(partner_scale, -alpha, -beta, 1.0 - alpha, lambda)};
}

KernelCouple bessel_pair(int order_n, double alpha) {
  require(order_n >= 1, "bessel_pair: order must be at least 1");
  require(alpha > order_n - 2.0 && alpha < order_n - 1.0,
          "bessel_pair: alpha must lie in (" + std::to_string(order_n - 2) + ", " +
              std::to_string(order_n - 1) + ") for order " + std::to_string(order_n));
  // M = t^(alpha/2) J_alpha(2 sqrt t); N = t^(n/2 - alpha/2 - 1) I_{n-alpha-2}(2 sqrt t).
  // For n = 1 and n = 2 this is t^(-1/2-alpha/2) I_{-alpha-1} and t^(-alpha/2) I_{-alpha}.
  return {bessel_j_kernel(alpha), bessel_i_kernel(order_n - alpha - 2.0)};
}

}  // namespace gfc
