#include "gfc/conv.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "gfc/errors.hpp"
#include "gfc/specfun.hpp"

namespace gfc {

std::shared_ptr<const SampledFunction> ConvCache::find(const std::string& key) const {
  std::lock_guard lock(mutex_);
  const auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : it->second;
}

std::shared_ptr<const SampledFunction> ConvCache::insert(const std::string& key,
                                                         SampledFunction value) {
  auto ptr = std::make_shared<const SampledFunction>(std::move(value));
  std::lock_guard lock(mutex_);
  entries_[key] = ptr;
  return ptr;
}

std::size_t ConvCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

namespace {

// Gauss rule on [0, 1].
struct Rule {
  std::vector<double> x;
  std::vector<double> w;
};

// Gauss-Jacobi rule for the weight s^beta on [0, 1] (Golub-Welsch on the
// Jacobi matrix of P^(0, beta), mapped from [-1, 1]).
Rule gauss_jacobi01(int m, double beta) {
  Eigen::VectorXd diag(m);
  Eigen::VectorXd sub(std::max(m - 1, 1));
  for (int k = 0; k < m; ++k) {
    const double s = 2.0 * k + beta;
    diag(k) = k == 0 ? beta / (beta + 2.0) : beta * beta / (s * (s + 2.0));
  }
  for (int k = 1; k < m; ++k) {
    const double s = 2.0 * k + beta;
    const double bk = 4.0 * k * k * (k + beta) * (k + beta) / (s * s * (s + 1.0) * (s - 1.0));
    sub(k - 1) = std::sqrt(bk);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub.head(m - 1));
  Rule r;
  r.x.resize(m);
  r.w.resize(m);
  for (int q = 0; q < m; ++q) {
    const double v0 = solver.eigenvectors()(0, q);
    r.x[q] = 0.5 * (solver.eigenvalues()(q) + 1.0);
    r.w[q] = v0 * v0 / (beta + 1.0);
  }
  return r;
}

const Rule& legendre_near() {
  static const Rule r = gauss_jacobi01(12, 0.0);
  return r;
}

const Rule& legendre_far() {
  static const Rule r = gauss_jacobi01(4, 0.0);
  return r;
}

// Interior panels closer than this (in panels) to a singular end use the
// 12-point rule; the rest use 4 points.
constexpr int kNearPanels = 8;

// Interior-panel weight tables for one rule: for panel i and node q,
// left[i][q] = w_q (1 - x_q) (i + x_q)^pg, right[i][q] = w_q x_q (i + x_q)^pg,
// dist[k][q] = (k - x_q)^pf.
struct PanelTables {
  int m = 0;
  std::vector<double> left;
  std::vector<double> right;
  std::vector<double> dist;

  PanelTables(const Rule& rule, int panels, double pg, double pf) : m(static_cast<int>(rule.x.size())) {
    left.assign(static_cast<std::size_t>(panels + 1) * m, 0.0);
    right.assign(left.size(), 0.0);
    dist.assign(left.size(), 0.0);
    for (int i = 1; i <= panels; ++i) {
      for (int q = 0; q < m; ++q) {
        const double a = std::pow(i + rule.x[q], pg);
        left[i * m + q] = rule.w[q] * (1.0 - rule.x[q]) * a;
        right[i * m + q] = rule.w[q] * rule.x[q] * a;
        dist[i * m + q] = std::pow(i - rule.x[q], pf);
      }
    }
  }

  // Sum over panels lo..hi of the output index j.
  double accumulate(int j, int lo, int hi, const double* f, const double* g) const {
    double total = 0.0;
    for (int i = lo; i <= hi; ++i) {
      const double* l = &left[i * m];
      const double* r = &right[i * m];
      const double* d = &dist[(j - i) * m];
      double wl = 0.0;
      double wr = 0.0;
      for (int q = 0; q < m; ++q) {
        wl += l[q] * d[q];
        wr += r[q] * d[q];
      }
      total += wl * f[j - i] * g[i] + wr * f[j - i - 1] * g[i + 1];
    }
    return total;
  }
};

bool is_integer(double x) { return std::abs(x - std::round(x)) < 1e-12; }

}  // namespace

SampledFunction sample(const Kernel& k, const Grid& grid) {
  std::vector<double> g(grid.size() + 1);
  for (int j = 0; j <= grid.size(); ++j) g[j] = k.smooth(grid.t(j));
  return SampledFunction(grid, k.exponent(), std::move(g));
}

SampledFunction num_conv(const SampledFunction& f, const SampledFunction& g) {
  if (!(f.grid() == g.grid())) throw DomainError("num_conv: operands live on different grids");
  const Grid& grid = f.grid();
  const double pf = f.exponent();
  const double pg = g.exponent();
  if (!(pf > -1.0) || !(pg > -1.0)) throw DomainError("num_conv: operand not integrable");
  const int J = grid.size();
  const double* F = f.smooth().data();
  const double* G = g.smooth().data();
  const double pr = pf + pg + 1.0;

  std::vector<double> out(J + 1, 0.0);
  out[0] = F[0] * G[0] * std::beta(pg + 1.0, pf + 1.0);
  out[1] = F[1] * G[0] * std::beta(pg + 1.0, pf + 2.0) + F[0] * G[1] * std::beta(pg + 2.0, pf + 1.0);

  const Rule left_end = gauss_jacobi01(12, pg);
  const Rule right_end = gauss_jacobi01(12, pf);
  const PanelTables near(legendre_near(), J, pg, pf);
  const PanelTables far(legendre_far(), J, pg, pf);

  for (int j = 2; j <= J; ++j) {
    double total = 0.0;
    // Panel [0, 1]: weight s^pg exact, (j - s)^pf smooth.
    for (std::size_t q = 0; q < left_end.x.size(); ++q) {
      const double s = left_end.x[q];
      total += left_end.w[q] * std::pow(j - s, pf) *
               ((1.0 - s) * F[j] * G[0] + s * F[j - 1] * G[1]);
    }
    // Panel [j-1, j] in u = j - s: weight u^pf exact, (j - u)^pg smooth.
    for (std::size_t q = 0; q < right_end.x.size(); ++q) {
      const double u = right_end.x[q];
      total += right_end.w[q] * std::pow(j - u, pg) *
               (u * F[1] * G[j - 1] + (1.0 - u) * F[0] * G[j]);
    }
    if (j >= 3) {
      const int lo_end = std::min(j - 2, kNearPanels - 1);
      const int hi_start = std::max(lo_end + 1, j - kNearPanels);
      total += near.accumulate(j, 1, lo_end, F, G);
      if (hi_start <= j - 2) total += near.accumulate(j, hi_start, j - 2, F, G);
      if (lo_end + 1 <= hi_start - 1) total += far.accumulate(j, lo_end + 1, hi_start - 1, F, G);
    }
    out[j] = total / std::pow(static_cast<double>(j), pr);
  }
  return SampledFunction(grid, pr, std::move(out));
}

SampledFunction materialize(const KernelExpr& e, const Grid& grid, ConvCache* cache) {
  const KernelExpr s = simplify(e);
  const std::string suffix = "@" + grid.key();
  if (cache) {
    if (auto hit = cache->find(s.key() + suffix)) return *hit;
  }
  const auto& leaves = s.leaves();
  SampledFunction acc = sample(leaves.front(), grid);
  std::string prefix = leaves.front().label();
  for (std::size_t i = 1; i < leaves.size(); ++i) {
    prefix += "*" + leaves[i].label();
    if (cache) {
      if (auto hit = cache->find(prefix + suffix)) {
        acc = *hit;
        continue;
      }
    }
    acc = num_conv(acc, sample(leaves[i], grid));
    if (cache) cache->insert(prefix + suffix, acc);
  }
  if (cache && leaves.size() == 1) cache->insert(prefix + suffix, acc);
  return acc;
}

SampledFunction num_conv(const KernelExpr& f, const SampledFunction& g, ConvCache* cache) {
  return num_conv(materialize(f, g.grid(), cache), g);
}

SampledFunction num_conv(const KernelExpr& f, const KernelExpr& g, const Grid& grid,
                         ConvCache* cache) {
  return num_conv(materialize(f, grid, cache), materialize(g, grid, cache));
}

SampledFunction iterated_integral(const SampledFunction& x, int n) {
  if (n < 1) throw DomainError("iterated_integral: order must be at least 1");
  return num_conv(sample(moment_kernel(n), x.grid()), x);
}

std::vector<double> fd_weights(double x0, const std::vector<double>& nodes, int order) {
  const int n = static_cast<int>(nodes.size());
  if (order < 0 || order >= n) throw DomainError("fd_weights: need more nodes than the order");
  // c[i][k]: weight of node i for the k-th derivative.
  std::vector<std::vector<double>> c(n, std::vector<double>(order + 1, 0.0));
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = c[i][order];
  return w;
}

namespace {

// m-th derivative of the samples at every node, second-order accurate.
std::vector<double> derivative_of_samples(std::span<const double> v, int m, double h) {
  const int J = static_cast<int>(v.size()) - 1;
  std::vector<double> out(J + 1, 0.0);
  if (m == 0) {
    std::copy(v.begin(), v.end(), out.begin());
    return out;
  }
  const int half = (m + 1) / 2;        // centered stencil j-half..j+half
  const int one_sided = m + 2;         // one-sided stencil width
  if (J + 1 < one_sided) throw DomainError("differentiate: grid too small");
  const double scale = std::pow(h, -m);
  std::vector<double> offsets(2 * half + 1);
  for (int i = 0; i <= 2 * half; ++i) offsets[i] = i - half;
  const auto centered = fd_weights(0.0, offsets, m);
  for (int j = 0; j <= J; ++j) {
    if (j - half >= 0 && j + half <= J) {
      double acc = 0.0;
      for (int i = 0; i <= 2 * half; ++i) acc += centered[i] * v[j - half + i];
      out[j] = acc * scale;
      continue;
    }
    const int start = j - half < 0 ? 0 : J - one_sided + 1;
    std::vector<double> nodes(one_sided);
    for (int i = 0; i < one_sided; ++i) nodes[i] = start + i - j;
    const auto w = fd_weights(0.0, nodes, m);
    double acc = 0.0;
    for (int i = 0; i < one_sided; ++i) acc += w[i] * v[start + i];
    out[j] = acc * scale;
  }
  return out;
}

}  // namespace

SampledFunction differentiate(const SampledFunction& x, int n) {
  if (n < 0) throw DomainError("differentiate: negative order");
  if (n == 0) return x;
  if (n > kMaxNumericDerivative) {
    throw UnsupportedError("numeric differentiation is limited to order " +
                           std::to_string(kMaxNumericDerivative));
  }
  const Grid& grid = x.grid();
  const double q = x.exponent();
  const bool integer_power = is_integer(q) && q > -0.5;
  const double r = (integer_power && q < n) ? 0.0 : q - n;
  if (!(r > -1.0)) {
    throw DomainError("differentiate: derivative of order " + std::to_string(n) +
                      " leaves C_{-1} (exponent " + format_param(r) + ")");
  }
  std::vector<std::vector<double>> dg(n + 1);
  for (int m = 0; m <= n; ++m) dg[m] = derivative_of_samples(x.smooth(), m, grid.step());

  // d^n (t^q G) = sum_k C(n,k) q(q-1)..(q-k+1) t^(q-k) G^(n-k), written over t^r.
  std::vector<double> out(grid.size() + 1, 0.0);
  double falling = 1.0;
  double binom = 1.0;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) {
      falling *= (q - (k - 1));
      binom = binom * (n - k + 1) / k;
    }
    if (falling == 0.0 || (integer_power && k > std::lround(q))) break;
    const int power = static_cast<int>(std::lround(q - k - r));
    const double c = binom * falling;
    for (int j = 0; j <= grid.size(); ++j) {
      const double tp = power == 0 ? 1.0 : std::pow(grid.t(j), power);
      out[j] += c * tp * dg[n - k][j];
    }
  }
  return SampledFunction(grid, r, std::move(out));
}

std::optional<PointwiseSamples> derivative_samples(const KernelExpr& e, int order,
                                                   const Grid& grid, ConvCache* cache) {
  if (order < 0) throw DomainError("derivative_samples: negative order");
  if (order == 0) {
    const auto s = materialize(e, grid, cache);
    return PointwiseSamples{s.exponent(), {s.smooth().begin(), s.smooth().end()}};
  }
  if (!has_derivative(e, order)) return std::nullopt;
  const KernelExpr s = simplify(e);
  if (s.is_leaf()) {
    const double a = s.kernel().power_order() - order;
    return PointwiseSamples{a - 1.0, std::vector<double>(grid.size() + 1, specfun::rgamma(a))};
  }
  // (h_a * B)^(j) = h_(a-j) * B for a > j.
  std::vector<KernelExpr> factors;
  for (const Kernel& k : s.leaves()) {
    const bool power = k.family() == KernelFamily::Power || k.family() == KernelFamily::Moment;
    factors.emplace_back(power ? power_kernel(k.power_order() - order) : k);
  }
  const auto m = materialize(conv_expr(std::move(factors)), grid, cache);
  return PointwiseSamples{m.exponent(), {m.smooth().begin(), m.smooth().end()}};
}

}  // namespace gfc
