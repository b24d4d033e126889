#include "gfc/operators.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include "gfc/conv.hpp"
#include "gfc/errors.hpp"
#include "gfc/specfun.hpp"

namespace gfc {

namespace {

double power_times(double t, double p, double g) {
  if (p == 0.0) return g;
  if (t == 0.0) {
    if (p > 0.0 || g == 0.0) return 0.0;
    return std::copysign(INFINITY, g);
  }
  return std::pow(t, p) * g;
}

// Centered-difference probe of X^(k) against X^(k-1).
constexpr double kProbeStep = 1e-3;
constexpr double kProbeTolerance = 1e-6;

void validate_derivatives(const TestFunction& x, const std::vector<TestFunction::Derivative>& d,
                          double p0, const TestFunction::Fn& g0) {
  for (std::size_t k = 0; k < d.size(); ++k) {
    const double pk = k == 0 ? p0 : d[k - 1].exponent;
    const TestFunction::Fn& gk = k == 0 ? g0 : d[k - 1].smooth;
    const auto lower = [&](double t) { return power_times(t, pk, gk(t)); };
    std::vector<double> analytic;
    std::vector<double> centered;
    double scale = 1.0;
    for (int i = 0; i < 11; ++i) {
      const double t = 0.5 + 0.25 * i;
      analytic.push_back(power_times(t, d[k].exponent, d[k].smooth(t)));
      centered.push_back((lower(t + kProbeStep) - lower(t - kProbeStep)) / (2.0 * kProbeStep));
      scale = std::max(scale, std::abs(analytic.back()));
    }
    for (std::size_t i = 0; i < analytic.size(); ++i) {
      if (!(std::abs(analytic[i] - centered[i]) <= kProbeTolerance * scale)) {
        throw DomainError("test function " + x.name() + ": derivative " + std::to_string(k + 1) +
                          " disagrees with finite differences");
      }
    }
  }
}

void validate_initial_values(const std::string& name, double p0, const TestFunction::Fn& g0,
                             const std::vector<TestFunction::Derivative>& d,
                             const std::vector<double>& iv) {
  const std::size_t checked = std::min(iv.size(), d.size() + 1);
  for (std::size_t k = 0; k < checked; ++k) {
    const double p = k == 0 ? p0 : d[k - 1].exponent;
    const double g = k == 0 ? g0(0.0) : d[k - 1].smooth(0.0);
    const double expected = power_times(0.0, p, g);
    if (!std::isfinite(expected) ||
        std::abs(expected - iv[k]) > 1e-12 * std::max(1.0, std::abs(expected))) {
      throw DomainError("test function " + name + ": initial value X^(" + std::to_string(k) +
                        ")(0) is inconsistent with the evaluator");
    }
  }
}

}  // namespace

TestFunction::TestFunction(std::string name, double exponent, Fn smooth,
                           std::vector<Derivative> derivatives, std::vector<double> initial_values,
                           int smooth_order)
    : name_(std::move(name)),
      exponent_(exponent),
      smooth_(std::move(smooth)),
      derivatives_(std::move(derivatives)),
      initial_values_(std::move(initial_values)),
      smooth_order_(smooth_order) {
  if (!(exponent_ > -1.0)) throw DomainError("test function " + name_ + " is not in C_{-1}");
  if (smooth_order_ < 0) throw DomainError("test function " + name_ + ": negative smoothness");
  if (static_cast<int>(derivatives_.size()) > smooth_order_) {
    throw DomainError("test function " + name_ + ": derivatives beyond the declared smoothness");
  }
  validate_derivatives(*this, derivatives_, exponent_, smooth_);
  validate_initial_values(name_, exponent_, smooth_, derivatives_, initial_values_);
}

TestFunction TestFunction::from_samples(std::string name, SampledFunction samples, int smooth_order,
                                        std::vector<double> initial_values) {
  auto shared = std::make_shared<const SampledFunction>(samples);
  // Linear interpolation of the smooth factor between nodes.
  Fn smooth = [shared](double t) {
    const Grid& g = shared->grid();
    const auto s = shared->smooth();
    const double x = std::clamp(t / g.step(), 0.0, static_cast<double>(g.size()));
    const int j = std::min(static_cast<int>(x), g.size() - 1);
    const double w = x - j;
    return (1.0 - w) * s[j] + w * s[j + 1];
  };
  TestFunction f(std::move(name), samples.exponent(), std::move(smooth), {}, {}, smooth_order);
  f.initial_values_ = std::move(initial_values);
  f.samples_ = std::move(samples);
  return f;
}

double TestFunction::value(double t) const { return power_times(t, exponent_, smooth_(t)); }

double TestFunction::derivative(int k, double t) const {
  if (k == 0) return value(t);
  if (k < 0 || k > analytic_derivative_count()) {
    throw DomainError("test function " + name_ + " has no analytic derivative of order " +
                      std::to_string(k));
  }
  const Derivative& d = derivatives_[k - 1];
  return power_times(t, d.exponent, d.smooth(t));
}

SampledFunction TestFunction::sample(const Grid& grid) const {
  if (samples_) {
    if (!(samples_->grid() == grid)) {
      throw DomainError("test function " + name_ + " is sampled on a different grid");
    }
    return *samples_;
  }
  std::vector<double> g(grid.size() + 1);
  for (int j = 0; j <= grid.size(); ++j) g[j] = smooth_(grid.t(j));
  return SampledFunction(grid, exponent_, std::move(g));
}

SampledFunction TestFunction::sample_derivative(int k, const Grid& grid) const {
  if (k == 0) return sample(grid);
  if (k < 0) throw DomainError("negative derivative order");
  if (k <= analytic_derivative_count()) {
    const Derivative& d = derivatives_[k - 1];
    std::vector<double> g(grid.size() + 1);
    for (int j = 0; j <= grid.size(); ++j) g[j] = d.smooth(grid.t(j));
    return SampledFunction(grid, d.exponent, std::move(g));
  }
  if (!in_cn(k)) {
    throw DomainError("test function " + name_ + " is not declared in C^" + std::to_string(k) +
                      "_{-1}");
  }
  return differentiate(sample(grid), k);
}

namespace {

// a t^p1 g1 + b t^p2 g2 written over t^min(p1, p2).
TestFunction::Fn combine_smooth(double a, double p1, TestFunction::Fn g1, double b, double p2,
                                TestFunction::Fn g2) {
  const double p = std::min(p1, p2);
  return [=](double t) {
    const double w1 = p1 == p ? 1.0 : power_times(t, p1 - p, 1.0);
    const double w2 = p2 == p ? 1.0 : power_times(t, p2 - p, 1.0);
    return a * w1 * g1(t) + b * w2 * g2(t);
  };
}

}  // namespace

TestFunction linear_combination(double a, const TestFunction& x1, double b, const TestFunction& x2) {
  const std::string name =
      format_param(a) + "*" + x1.name() + "+" + format_param(b) + "*" + x2.name();
  const int order = std::min(x1.smooth_order(), x2.smooth_order());
  const std::size_t n_iv = std::min(x1.initial_values().size(), x2.initial_values().size());
  std::vector<double> iv(n_iv);
  for (std::size_t k = 0; k < n_iv; ++k) {
    iv[k] = a * x1.initial_values()[k] + b * x2.initial_values()[k];
  }
  if (x1.is_sampled() || x2.is_sampled()) {
    if (!(x1.is_sampled() && x2.is_sampled())) {
      throw DomainError("linear_combination: cannot mix sampled and analytic functions");
    }
    return TestFunction::from_samples(name, add(x1.samples()->scaled(a), x2.samples()->scaled(b)),
                                      order, std::move(iv));
  }
  const std::size_t n_d = std::min(x1.derivatives().size(), x2.derivatives().size());
  std::vector<TestFunction::Derivative> d(n_d);
  for (std::size_t k = 0; k < n_d; ++k) {
    const auto& d1 = x1.derivatives()[k];
    const auto& d2 = x2.derivatives()[k];
    d[k] = {std::min(d1.exponent, d2.exponent),
            combine_smooth(a, d1.exponent, d1.smooth, b, d2.exponent, d2.smooth)};
  }
  return TestFunction(name, std::min(x1.exponent(), x2.exponent()),
                      combine_smooth(a, x1.exponent(), x1.smooth(), b, x2.exponent(), x2.smooth()),
                      std::move(d), std::move(iv), order);
}

namespace {

constexpr int kCatalogDerivatives = 6;

TestFunction monomial(const std::string& name, int degree) {
  std::vector<TestFunction::Derivative> d;
  std::vector<double> iv(kCatalogDerivatives + 1, 0.0);
  double c = 1.0;
  for (int k = 1; k <= kCatalogDerivatives; ++k) {
    if (k <= degree) {
      c *= degree - k + 1;
      d.push_back({static_cast<double>(degree - k), [c](double) { return c; }});
    } else {
      d.push_back({0.0, [](double) { return 0.0; }});
    }
  }
  iv[degree] = std::tgamma(degree + 1.0);
  return TestFunction(name, degree, [](double) { return 1.0; }, std::move(d), std::move(iv),
                      TestFunction::kAnyOrder);
}

// sin/cos: X^(k)(t) = sin(t + phase + k pi/2).
TestFunction trig(const std::string& name, double phase) {
  std::vector<TestFunction::Derivative> d;
  std::vector<double> iv;
  for (int k = 0; k <= kCatalogDerivatives; ++k) {
    const double shift = phase + k * std::numbers::pi / 2.0;
    if (k > 0) d.push_back({0.0, [shift](double t) { return std::sin(t + shift); }});
    iv.push_back(std::round(std::sin(shift)));
  }
  return TestFunction(name, 0.0, [phase](double t) { return std::sin(t + phase); }, std::move(d),
                      std::move(iv), TestFunction::kAnyOrder);
}

}  // namespace

std::vector<std::string> function_names() { return {"1", "t", "t2", "exp", "cos", "sin", "h0.6"}; }

TestFunction named_function(const std::string& name) {
  if (name == "1") return monomial(name, 0);
  if (name == "t") return monomial(name, 1);
  if (name == "t2") return monomial(name, 2);
  if (name == "cos") return trig(name, std::numbers::pi / 2.0);
  if (name == "sin") return trig(name, 0.0);
  if (name == "exp") {
    const auto e = [](double t) { return std::exp(t); };
    std::vector<TestFunction::Derivative> d(kCatalogDerivatives, {0.0, e});
    return TestFunction(name, 0.0, e, std::move(d), std::vector<double>(kCatalogDerivatives + 1, 1.0),
                        TestFunction::kAnyOrder);
  }
  if (name == "h0.6") {
    const double c = specfun::rgamma(0.6);
    return TestFunction(name, -0.4, [c](double) { return c; }, {}, {}, 0);
  }
  throw DomainError("unknown test function '" + name + "'");
}

SampledFunction gfi(const KernelPair& pair, const TestFunction& x, const Grid& grid,
                    ConvCache* cache) {
  return num_conv(pair.M, x.sample(grid), cache);
}

SampledFunction gfd_caputo(const KernelPair& pair, const TestFunction& x, const Grid& grid,
                           ConvCache* cache) {
  const int n = pair.order;
  if (!x.in_cn(n)) {
    throw DomainError("gfd_caputo: " + x.name() + " is not declared in C^" + std::to_string(n) +
                      "_{-1}");
  }
  return num_conv(pair.N, x.sample_derivative(n, grid), cache);
}

std::string to_string(RlPath p) {
  switch (p) {
    case RlPath::Auto:
      return "auto";
    case RlPath::Regularized:
      return "regularized";
    case RlPath::Numeric:
      return "numeric";
  }
  return "unknown";
}

namespace {

// N * X^(n) + sum_k X^(k)(0) N^(n-1-k); empty when a needed kernel
// derivative is unavailable or leaves C_{-1}.
std::optional<SampledFunction> rl_regularized(const KernelPair& pair, const TestFunction& x,
                                              const Grid& grid, ConvCache* cache) {
  const int n = pair.order;
  std::vector<PointwiseSamples> terms;
  for (int k = 0; k < n; ++k) {
    const double c = x.initial_values()[k];
    if (c == 0.0) continue;
    auto d = derivative_samples(pair.N, n - 1 - k, grid, cache);
    if (!d || !(d->exponent > -1.0)) return std::nullopt;
    for (double& v : d->smooth) v *= c;
    terms.push_back(std::move(*d));
  }
  SampledFunction acc = num_conv(pair.N, x.sample_derivative(n, grid), cache);
  for (PointwiseSamples& t : terms) {
    acc = add(acc, SampledFunction(grid, t.exponent, std::move(t.smooth)));
  }
  return acc;
}

}  // namespace

SampledFunction gfd_rl(const KernelPair& pair, const TestFunction& x, const Grid& grid, RlPath path,
                       RlInfo* info, ConvCache* cache) {
  const int n = pair.order;
  RlInfo local;
  RlInfo& out = info ? *info : local;
  out = {};
  const bool function_qualifies = x.in_cn(n) && x.has_initial_values(n);
  if (path != RlPath::Numeric && function_qualifies) {
    if (auto r = rl_regularized(pair, x, grid, cache)) {
      out.used = RlPath::Regularized;
      return *r;
    }
  }
  out.fell_back = path == RlPath::Regularized || (path == RlPath::Auto && function_qualifies);
  out.used = RlPath::Numeric;
  if (n > kMaxNumericDerivative) {
    throw UnsupportedError("gfd_rl: numeric differentiation supports order <= " +
                           std::to_string(kMaxNumericDerivative) + ", pair has order " +
                           std::to_string(n));
  }
  return differentiate(num_conv(pair.N, x.sample(grid), cache), n);
}

}  // namespace gfc
