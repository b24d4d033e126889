#pragma once

// Real-argument special functions needed by the kernel families:
// gamma, lower incomplete gamma, Kummer's confluent hypergeometric
// function and the Bessel functions J and I of real order.

namespace gfc::specfun {

/// Truncation rule shared by every series evaluation in this module.
struct SeriesPolicy {
  double rel_term_tol = 1e-15;
  int max_terms = 300;

  /// Throws DomainError when a field is out of range.
  void validate() const;
};

/// Value of a series together with what the summation observed.
struct SeriesValue {
  double value = 0.0;
  int terms = 0;
  /// log10(max |term| / |sum|); the number of decimal digits lost to
  /// cancellation in an alternating sum.
  double digits_lost = 0.0;
  /// Set when more than six digits were lost.
  bool accuracy_warning = false;
};

/// Gamma(x) for x > 0.
double gamma_fn(double x);

/// 1/Gamma(x) for any real x; zero at the non-positive integers.
double rgamma(double x);

/// Lower incomplete gamma function gamma(beta, t) = int_0^t s^(beta-1) e^-s ds.
double gamma_lower(double beta, double t, const SeriesPolicy& policy = {});

/// Kummer's function Phi(beta, alpha; z) = sum_k (beta)_k / (alpha)_k z^k / k!.
double kummer_phi(double beta, double alpha, double z, const SeriesPolicy& policy = {});

/// Bessel function of the first kind J_alpha(t), alpha > -1, t >= 0.
SeriesValue bessel_j(double alpha, double t, const SeriesPolicy& policy = {});

/// Modified Bessel function I_alpha(t), alpha > -1, t >= 0.
SeriesValue bessel_i(double alpha, double t, const SeriesPolicy& policy = {});

/// sum_k (-y)^k / (k! Gamma(alpha + k + 1)), so that
/// J_alpha(t) = (t/2)^alpha * bessel_j_reduced(alpha, t^2/4).
SeriesValue bessel_j_reduced(double alpha, double y, const SeriesPolicy& policy = {});

/// sum_k y^k / (k! Gamma(alpha + k + 1)); the I_alpha analogue of
/// bessel_j_reduced.
SeriesValue bessel_i_reduced(double alpha, double y, const SeriesPolicy& policy = {});

/// k-th term of the J_alpha(t) series (signed).
double bessel_j_term(double alpha, double t, int k);

/// k-th term of the I_alpha(t) series.
double bessel_i_term(double alpha, double t, int k);

}  // namespace gfc::specfun
