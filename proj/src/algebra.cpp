#include "gfc/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "gfc/conv.hpp"
#include "gfc/errors.hpp"
#include "gfc/specfun.hpp"

namespace gfc {

KernelExpr::KernelExpr(Kernel leaf)
    : node_(std::make_shared<const Node>(Node{{leaf}, leaf.exponent(), leaf.label()})) {}

const Kernel& KernelExpr::kernel() const {
  if (!is_leaf()) throw DomainError("kernel(): expression " + key() + " is not a leaf");
  return node_->leaves.front();
}

std::vector<KernelExpr> KernelExpr::factors() const {
  std::vector<KernelExpr> out;
  if (is_leaf()) return out;
  for (const Kernel& k : node_->leaves) out.emplace_back(k);
  return out;
}

KernelExpr conv_expr(std::vector<KernelExpr> factors) {
  if (factors.empty()) throw DomainError("conv_expr: empty factor list");
  if (factors.size() == 1) return factors.front();
  KernelExpr::Node node;
  for (const KernelExpr& f : factors) {
    node.leaves.insert(node.leaves.end(), f.leaves().begin(), f.leaves().end());
  }
  std::stable_sort(node.leaves.begin(), node.leaves.end(),
                   [](const Kernel& a, const Kernel& b) { return (a <=> b) < 0; });
  node.exponent = static_cast<double>(node.leaves.size()) - 1.0;
  for (std::size_t i = 0; i < node.leaves.size(); ++i) {
    node.exponent += node.leaves[i].exponent();
    if (i > 0) node.key += "*";
    node.key += node.leaves[i].label();
  }
  return KernelExpr(std::make_shared<const KernelExpr::Node>(std::move(node)));
}

namespace {

bool is_power_like(const Kernel& k) {
  return k.family() == KernelFamily::Power || k.family() == KernelFamily::Moment ||
         (k.family() == KernelFamily::Tempered && k.params()[2] == 0.0 && k.params()[1] == 0.0);
}

bool is_tempered_mu(const Kernel& k) {
  return k.family() == KernelFamily::Tempered && k.params()[2] == 0.0 && k.params()[1] > 0.0;
}

}  // namespace

KernelExpr simplify(const KernelExpr& e) {
  if (e.is_leaf()) return e;
  double power_sum = 0.0;
  int power_count = 0;
  bool all_moments = true;
  std::map<double, std::pair<double, std::vector<Kernel>>> tempered;  // lambda -> (sum, leaves)
  std::vector<KernelExpr> rest;
  for (const Kernel& k : e.leaves()) {
    if (is_power_like(k)) {
      power_sum += k.power_order();
      ++power_count;
      all_moments = all_moments && k.family() == KernelFamily::Moment;
    } else if (is_tempered_mu(k)) {
      auto& slot = tempered[k.params()[1]];
      slot.first += k.power_order();
      slot.second.push_back(k);
    } else {
      rest.emplace_back(k);
    }
  }
  std::vector<KernelExpr> merged;
  if (power_count == 1) {
    for (const Kernel& k : e.leaves()) {
      if (is_power_like(k)) merged.emplace_back(k);
    }
  } else if (power_count > 1) {
    merged.emplace_back(all_moments ? moment_kernel(static_cast<int>(std::lround(power_sum)))
                                    : power_kernel(power_sum));
  }
  for (auto& [lambda, slot] : tempered) {
    if (slot.second.size() == 1) {
      merged.emplace_back(slot.second.front());
    } else {
      merged.emplace_back(tempered_power_kernel(slot.first, lambda));
    }
  }
  merged.insert(merged.end(), rest.begin(), rest.end());
  return conv_expr(std::move(merged));
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::Atomic:
      return "atomic";
    case Provenance::Tn:
      return "T_n";
    case Provenance::Tnm:
      return "T_n,m";
    case Provenance::Tnml:
      return "T_n,m,l";
    case Provenance::TnMultiset:
      return "T_n,{m}";
    case Provenance::TnMultisetL:
      return "T_n,{m},l";
  }
  return "unknown";
}

namespace {

KernelPair blank_pair(KernelExpr M, KernelExpr N) {
  return KernelPair{std::move(M), std::move(N), 1, Provenance::Atomic, 0, 0, {}, {}};
}

}  // namespace

KernelPair atomic_pair(const KernelCouple& couple, int order, std::string label) {
  if (order < 1) throw DomainError("atomic_pair: order must be at least 1");
  KernelPair p = blank_pair(couple.first, couple.second);
  p.order = order;
  p.provenance = Provenance::Atomic;
  p.m = order;
  p.label = label.empty() ? "(" + couple.first.label() + ", " + couple.second.label() + ")"
                          : std::move(label);
  return p;
}

KernelPair build_tn(std::span<const KernelCouple> sonine_pairs) {
  if (sonine_pairs.empty()) throw DomainError("build_tn: at least one Sonine pair required");
  std::vector<KernelExpr> mu;
  std::vector<KernelExpr> nu;
  std::string label = "T" + std::to_string(sonine_pairs.size()) + "[";
  for (std::size_t i = 0; i < sonine_pairs.size(); ++i) {
    mu.emplace_back(sonine_pairs[i].first);
    nu.emplace_back(sonine_pairs[i].second);
    label += (i ? "; " : "") + sonine_pairs[i].first.label() + ", " + sonine_pairs[i].second.label();
  }
  KernelPair p = blank_pair(conv_expr(std::move(mu)), conv_expr(std::move(nu)));
  p.order = static_cast<int>(sonine_pairs.size());
  p.provenance = Provenance::Tn;
  p.m = 1;
  p.label = label + "]";
  return p;
}

namespace {

KernelExpr shift(int k, const KernelExpr& e) {
  return k == 0 ? e : conv_expr({KernelExpr(moment_kernel(k)), e});
}

}  // namespace

KernelPair build_tnm(const KernelPair& base, int n) {
  const int m = base.order;
  if (n < m) throw DomainError("build_tnm: n must be at least the base order m");
  if (n == m) return base;
  KernelPair p = blank_pair(shift(n - m, base.M), base.N);
  p.order = n;
  p.provenance = Provenance::Tnm;
  p.m = m;
  p.l = m;
  p.label = "T" + std::to_string(n) + "," + std::to_string(m) + "[" + base.label + "]";
  return p;
}

KernelPair build_tnml(const KernelPair& base, int n, int l) {
  const int m = base.order;
  if (m < 1 || m > n) throw DomainError("build_tnml: need 1 <= m <= n");
  if (l < m || l > n) throw DomainError("build_tnml: need m <= l <= n");
  KernelPair p = blank_pair(shift(n - l, base.M), shift(l - m, base.N));
  p.order = n;
  p.provenance = Provenance::Tnml;
  p.m = m;
  p.l = l;
  p.label = "T" + std::to_string(n) + "," + std::to_string(m) + "," + std::to_string(l) + "[" +
            base.label + "]";
  return p;
}

KernelPair build_multiset(std::span<const KernelPair> bases, int n, std::optional<int> l) {
  if (bases.empty()) throw DomainError("build_multiset: at least one base pair required");
  int eta = 0;
  std::vector<KernelExpr> ms;
  std::vector<KernelExpr> ns;
  std::vector<int> orders;
  std::string inner;
  for (const KernelPair& b : bases) {
    eta += b.order;
    orders.push_back(b.order);
    ms.push_back(b.M);
    ns.push_back(b.N);
    inner += (inner.empty() ? "" : "; ") + b.label;
  }
  KernelExpr M = conv_expr(std::move(ms));
  KernelExpr N = conv_expr(std::move(ns));
  KernelPair p = blank_pair(M, N);
  p.order = n;
  p.m = eta;
  p.base_orders = std::move(orders);
  if (!l) {
    if (eta != n) {
      throw DomainError("build_multiset: base orders sum to " + std::to_string(eta) +
                        ", expected " + std::to_string(n));
    }
    p.provenance = Provenance::TnMultiset;
    p.l = n;
    p.label = "T" + std::to_string(n) + ",{m}[" + inner + "]";
    return p;
  }
  if (*l < eta || *l > n) {
    throw DomainError("build_multiset: need eta <= l <= n (eta = " + std::to_string(eta) + ")");
  }
  p.M = shift(n - *l, M);
  p.N = shift(*l - eta, N);
  p.provenance = Provenance::TnMultisetL;
  p.l = *l;
  p.label = "T" + std::to_string(n) + ",{m}," + std::to_string(*l) + "[" + inner + "]";
  return p;
}

bool has_derivative(const KernelExpr& e, int order) {
  if (order < 0) return false;
  if (order == 0) return true;
  const KernelExpr s = simplify(e);
  if (s.is_leaf()) return s.kernel().has_analytic_derivatives();
  return std::any_of(s.leaves().begin(), s.leaves().end(), [order](const Kernel& k) {
    return (k.family() == KernelFamily::Power || k.family() == KernelFamily::Moment) &&
           k.power_order() > order;
  });
}

ResidualReport check_pair(const KernelPair& pair, const CheckOptions& options, ConvCache* cache) {
  const Grid grid = Grid::make(options.horizon, options.step);
  const double eps = options.eps > 0.0 ? options.eps : 10.0 * options.step;
  const int n = pair.order;
  const double inv_factorial = specfun::rgamma(n);
  auto evaluate = [&](const Grid& g, double window) {
    const SampledFunction product = num_conv(pair.M, pair.N, g, cache);
    ResidualProfile profile;
    profile.scale = 0.0;
    for (int j = g.first_index_at_or_after(window); j <= g.size(); ++j) {
      const double t = g.t(j);
      const double target = std::pow(t, n - 1) * inv_factorial;
      profile.t.push_back(t);
      profile.residual.push_back(product.value(j) - target);
      profile.scale = std::max(profile.scale, std::abs(target));
    }
    return profile;
  };
  return assess(evaluate, grid, eps, options.policy);
}

}  // namespace gfc
