#include "gfc/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gfc/errors.hpp"

namespace gfc::specfun {

namespace {

bool is_non_positive_integer(double x) { return x <= 0.0 && std::floor(x) == x; }

[[noreturn]] void fail_convergence(const char* what, const SeriesPolicy& policy) {
  throw EvaluationError(std::string(what) + ": series did not converge within " +
                        std::to_string(policy.max_terms) + " terms");
}

// Sum of a series whose terms follow term[k+1] = term[k] * ratio(k).
// Stops once a term is negligible against the running sum and the terms
// are shrinking, so an early small term in a growing series never ends it.
template <typename Ratio>
SeriesValue sum_series(double first, Ratio ratio, const SeriesPolicy& policy, const char* what) {
  SeriesValue out;
  double term = first;
  double sum = first;
  double largest = std::abs(first);
  for (int k = 0; k < policy.max_terms; ++k) {
    const double r = ratio(k);
    term *= r;
    sum += term;
    largest = std::max(largest, std::abs(term));
    if (!std::isfinite(sum)) {
      throw EvaluationError(std::string(what) + ": series overflow");
    }
    const bool shrinking = std::abs(r) < 1.0;
    if (term == 0.0 || (shrinking && std::abs(term) <= policy.rel_term_tol * std::abs(sum))) {
      out.value = sum;
      out.terms = k + 2;
      if (sum != 0.0 && largest > 0.0) {
        out.digits_lost = std::max(0.0, std::log10(largest / std::abs(sum)));
      } else if (largest > 0.0) {
        out.digits_lost = std::numeric_limits<double>::infinity();
      }
      out.accuracy_warning = out.digits_lost > 6.0;
      return out;
    }
  }
  fail_convergence(what, policy);
}

// Upper incomplete gamma by the Legendre continued fraction (modified Lentz).
double gamma_upper_cf(double beta, double t, const SeriesPolicy& policy) {
  constexpr double tiny = 1e-300;
  double b = t + 1.0 - beta;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= policy.max_terms; ++i) {
    const double an = -i * (i - beta);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) <= policy.rel_term_tol) {
      return std::exp(beta * std::log(t) - t) * h;
    }
  }
  fail_convergence("gamma_lower", policy);
}

}  // namespace

void SeriesPolicy::validate() const {
  if (!(rel_term_tol > 0.0)) throw DomainError("SeriesPolicy: rel_term_tol must be positive");
  if (max_terms < 1) throw DomainError("SeriesPolicy: max_terms must be at least 1");
}

double gamma_fn(double x) {
  if (!(x > 0.0)) throw DomainError("gamma_fn: argument must be positive");
  return std::tgamma(x);
}

double rgamma(double x) {
  if (std::isnan(x)) throw DomainError("rgamma: NaN argument");
  if (is_non_positive_integer(x)) return 0.0;
  return 1.0 / std::tgamma(x);
}

double gamma_lower(double beta, double t, const SeriesPolicy& policy) {
  policy.validate();
  if (!(beta > 0.0)) throw DomainError("gamma_lower: beta must be positive");
  if (!(t >= 0.0)) throw DomainError("gamma_lower: t must be non-negative");
  if (t == 0.0) return 0.0;
  if (t > beta + 10.0) {
    return gamma_fn(beta) - gamma_upper_cf(beta, t, policy);
  }
  // gamma(beta, t) = t^beta e^-t sum_k t^k / (beta (beta+1) ... (beta+k))
  const auto series = sum_series(
      1.0 / beta, [&](int k) { return t / (beta + k + 1.0); }, policy, "gamma_lower");
  return std::exp(beta * std::log(t) - t) * series.value;
}

double kummer_phi(double beta, double alpha, double z, const SeriesPolicy& policy) {
  policy.validate();
  if (is_non_positive_integer(alpha)) {
    throw DomainError("kummer_phi: alpha must not be a non-positive integer");
  }
  if (z == 0.0) return 1.0;
  // Kummer's transformation keeps the summed series free of sign changes
  // for negative arguments: Phi(b, a; z) = e^z Phi(a - b, a; -z).
  double scale = 1.0;
  if (z < 0.0) {
    scale = std::exp(z);
    beta = alpha - beta;
    z = -z;
  }
  const auto series = sum_series(
      1.0, [&](int k) { return (beta + k) * z / ((alpha + k) * (k + 1.0)); }, policy,
      "kummer_phi");
  return scale * series.value;
}

SeriesValue bessel_j_reduced(double alpha, double y, const SeriesPolicy& policy) {
  policy.validate();
  if (!(alpha > -1.0)) throw DomainError("bessel_j: order must exceed -1");
  if (!(y >= 0.0)) throw DomainError("bessel_j: argument must be non-negative");
  const double first = rgamma(alpha + 1.0);
  if (y == 0.0) return {first, 1, 0.0, false};
  return sum_series(
      first, [&](int k) { return -y / ((k + 1.0) * (alpha + k + 1.0)); }, policy, "bessel_j");
}

SeriesValue bessel_i_reduced(double alpha, double y, const SeriesPolicy& policy) {
  policy.validate();
  if (!(alpha > -1.0)) throw DomainError("bessel_i: order must exceed -1");
  if (!(y >= 0.0)) throw DomainError("bessel_i: argument must be non-negative");
  const double first = rgamma(alpha + 1.0);
  if (y == 0.0) return {first, 1, 0.0, false};
  return sum_series(
      first, [&](int k) { return y / ((k + 1.0) * (alpha + k + 1.0)); }, policy, "bessel_i");
}

namespace {

SeriesValue scale_reduced(SeriesValue reduced, double alpha, double t, const char* what) {
  if (t == 0.0) {
    if (alpha < 0.0) throw DomainError(std::string(what) + ": singular at t = 0 for negative order");
    reduced.value = alpha == 0.0 ? reduced.value : 0.0;
    return reduced;
  }
  reduced.value *= std::pow(0.5 * t, alpha);
  return reduced;
}

}  // namespace

SeriesValue bessel_j(double alpha, double t, const SeriesPolicy& policy) {
  if (!(t >= 0.0)) throw DomainError("bessel_j: argument must be non-negative");
  return scale_reduced(bessel_j_reduced(alpha, 0.25 * t * t, policy), alpha, t, "bessel_j");
}

SeriesValue bessel_i(double alpha, double t, const SeriesPolicy& policy) {
  if (!(t >= 0.0)) throw DomainError("bessel_i: argument must be non-negative");
  return scale_reduced(bessel_i_reduced(alpha, 0.25 * t * t, policy), alpha, t, "bessel_i");
}

double bessel_i_term(double alpha, double t, int k) {
  if (!(alpha > -1.0)) throw DomainError("bessel_i: order must exceed -1");
  if (k < 0) throw DomainError("bessel_i_term: negative index");
  return std::pow(0.5 * t, 2.0 * k + alpha) * rgamma(k + 1.0) * rgamma(alpha + k + 1.0);
}

double bessel_j_term(double alpha, double t, int k) {
  const double magnitude = bessel_i_term(alpha, t, k);
  return (k % 2 == 0) ? magnitude : -magnitude;
}

}  // namespace gfc::specfun
