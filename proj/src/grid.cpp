#include "gfc/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "gfc/errors.hpp"

namespace gfc {

Grid Grid::make(double horizon, double step) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw DomainError("grid: horizon must be positive");
  if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("grid: step must be positive");
  const double ratio = horizon / step;
  const double panels = std::round(ratio);
  if (std::abs(panels * step - horizon) > 1e-12 * horizon) {
    throw DomainError("grid: step must divide the horizon");
  }
  if (panels < 8) throw DomainError("grid: at least 8 panels required");
  if (panels > 1e7) throw DomainError("grid: too many panels");
  return Grid(horizon, step, static_cast<int>(panels));
}

int Grid::first_index_at_or_after(double eps) const {
  const int j = static_cast<int>(std::ceil(eps / step_ * (1.0 - 1e-12)));
  return std::clamp(j, 1, size_);
}

std::string Grid::key() const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "T=%.17g,h=%.17g", horizon_, step_);
  return buf;
}

SampledFunction::SampledFunction(Grid grid, double exponent, std::vector<double> smooth)
    : grid_(grid), exponent_(exponent), smooth_(std::move(smooth)) {
  if (!(exponent_ > -1.0)) throw DomainError("sampled function: exponent must exceed -1");
  if (smooth_.size() != static_cast<std::size_t>(grid_.size()) + 1) {
    throw DomainError("sampled function: expected J+1 smooth samples");
  }
  for (double v : smooth_) {
    if (!std::isfinite(v)) throw EvaluationError("sampled function: non-finite smooth factor");
  }
}

SampledFunction SampledFunction::zero(const Grid& grid) {
  return SampledFunction(grid, 0.0, std::vector<double>(grid.size() + 1, 0.0));
}

double SampledFunction::value(int j) const {
  if (j == 0) {
    if (exponent_ == 0.0) return smooth_[0];
    if (exponent_ > 0.0 || smooth_[0] == 0.0) return 0.0;
    return std::numeric_limits<double>::infinity();
  }
  return std::pow(grid_.t(j), exponent_) * smooth_[j];
}

std::vector<double> SampledFunction::values() const {
  std::vector<double> out(grid_.size());
  for (int j = 1; j <= grid_.size(); ++j) out[j - 1] = value(j);
  return out;
}

SampledFunction SampledFunction::scaled(double factor) const {
  std::vector<double> s(smooth_);
  for (double& v : s) v *= factor;
  return SampledFunction(grid_, exponent_, std::move(s));
}

SampledFunction add(const SampledFunction& a, const SampledFunction& b) {
  if (!(a.grid() == b.grid())) throw DomainError("add: grids differ");
  const Grid& grid = a.grid();
  const double p = std::min(a.exponent(), b.exponent());
  std::vector<double> g(grid.size() + 1, 0.0);
  for (const SampledFunction* f : {&a, &b}) {
    const double shift = f->exponent() - p;
    const auto s = f->smooth();
    for (int j = 0; j <= grid.size(); ++j) {
      const double w = shift == 0.0 ? 1.0 : (j == 0 ? 0.0 : std::pow(grid.t(j), shift));
      g[j] += w * s[j];
    }
  }
  return SampledFunction(grid, p, std::move(g));
}

std::string to_string(Verdict v) { return v == Verdict::Pass ? "pass" : "fail"; }

double ResidualReport::residual_at(double t) const {
  if (profile.t.empty()) throw DomainError("residual_at: empty profile");
  const auto it = std::lower_bound(profile.t.begin(), profile.t.end(), t);
  std::size_t i = static_cast<std::size_t>(it - profile.t.begin());
  if (i == profile.t.size()) --i;
  if (i > 0 && std::abs(profile.t[i - 1] - t) < std::abs(profile.t[i] - t)) --i;
  return profile.residual[i];
}

namespace {

struct SupNorm {
  double value = 0.0;
  double at = 0.0;
};

SupNorm sup_norm(const ResidualProfile& p) {
  SupNorm s;
  for (std::size_t i = 0; i < p.t.size(); ++i) {
    const double r = std::abs(p.residual[i]);
    if (std::isnan(r)) return {std::numeric_limits<double>::infinity(), p.t[i]};
    if (r > s.value) s = {r, p.t[i]};
  }
  return s;
}

}  // namespace

ResidualReport assess(const ResidualEvaluator& evaluate, const Grid& grid, double eps,
                      const AssessmentPolicy& policy) {
  if (!(eps > 0.0) || !(eps < grid.horizon())) throw DomainError("assess: need 0 < eps < T");
  ResidualReport report;
  report.eps = eps;
  report.step = grid.step();
  report.tolerance = policy.tolerance;
  report.profile = evaluate(grid, eps);
  const ResidualProfile fine = evaluate(grid.halved(), eps);

  const SupNorm coarse_sup = sup_norm(report.profile);
  report.sup_residual = coarse_sup.value;
  report.argmax_t = coarse_sup.at;
  report.residual_halved_step = sup_norm(fine).value;

  const double floor = policy.noise_floor * std::max(1.0, report.profile.scale);
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (report.sup_residual <= floor || report.residual_halved_step == 0.0) {
    report.estimated_order = inf;
  } else {
    report.estimated_order = std::log2(report.sup_residual / report.residual_halved_step);
  }
  const bool converging = report.estimated_order >= policy.min_order;
  report.verdict = (converging && report.sup_residual <= policy.tolerance) ? Verdict::Pass
                                                                          : Verdict::Fail;
  return report;
}

}  // namespace gfc
