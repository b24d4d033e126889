#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gfc/grid.hpp"
#include "gfc/kernels.hpp"

namespace gfc {

/// Kernel expression: a leaf kernel or a Laplace convolution of factors.
///
/// Conv nodes are always flat (no Conv child) and their factors are kept in
/// canonical order, so two expressions denoting the same product of leaves
/// compare equal through key().
class KernelExpr {
 public:
  KernelExpr(Kernel leaf);  // NOLINT(google-explicit-constructor)

  bool is_leaf() const { return node_->leaves.size() == 1; }
  /// The kernel of a leaf. Throws DomainError for Conv nodes.
  const Kernel& kernel() const;
  /// Leaves in canonical order (a single entry for a leaf).
  const std::vector<Kernel>& leaves() const { return node_->leaves; }
  /// Factors of a Conv node as leaf expressions (empty for a leaf).
  std::vector<KernelExpr> factors() const;
  /// Singular exponent: sum of leaf exponents plus (#leaves - 1).
  double exponent() const { return node_->exponent; }
  /// Canonical text form, e.g. "h(0.3)*tempered_nu(0.4,1)".
  const std::string& key() const { return node_->key; }

  bool operator==(const KernelExpr& other) const { return key() == other.key(); }

 private:
  struct Node {
    std::vector<Kernel> leaves;
    double exponent = 0.0;
    std::string key;
  };
  explicit KernelExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;

  friend KernelExpr conv_expr(std::vector<KernelExpr> factors);
};

/// Flattened, canonically ordered convolution of the factors; a single
/// factor is returned unchanged.
KernelExpr conv_expr(std::vector<KernelExpr> factors);

/// Merges power/moment leaves into one power kernel and equal-lambda
/// tempered mu-side leaves into one tempered kernel. Idempotent.
KernelExpr simplify(const KernelExpr& e);

enum class Provenance { Atomic, Tn, Tnm, Tnml, TnMultiset, TnMultisetL };

std::string to_string(Provenance p);

/// Luchko pair (M, N) of declared order n: (M * N)(t) = h_n(t).
struct KernelPair {
  KernelExpr M;
  KernelExpr N;
  int order = 1;
  Provenance provenance = Provenance::Atomic;
  /// Order of the base pair (T_{n,m}, T_{n,m,l}) or the multiset sum eta.
  int m = 0;
  /// Split index for T_{n,m,l} and T_{n,{m},l}.
  int l = 0;
  /// Orders m_j of the bases of a multiset construction.
  std::vector<int> base_orders;
  std::string label;
};

/// A pair taken as given, e.g. straight from a kernel-family constructor.
KernelPair atomic_pair(const KernelCouple& couple, int order, std::string label = {});

/// T_n: M = mu_1 * ... * mu_n, N = nu_1 * ... * nu_n from n Sonine pairs.
KernelPair build_tn(std::span<const KernelCouple> sonine_pairs);

/// T_{n,m}: M = {1}^(n-m) * base.M, N = base.N; n == m returns base.
KernelPair build_tnm(const KernelPair& base, int n);

/// T_{n,m,l}: M = {1}^(n-l) * base.M, N = {1}^(l-m) * base.N, m <= l <= n.
KernelPair build_tnml(const KernelPair& base, int n, int l);

/// T_{n,{m}} (no l): product of the bases, sum of orders must equal n.
/// T_{n,{m},l}: the product of order eta is shifted by {1}^(n-l) and
/// {1}^(l-eta), eta <= l <= n.
KernelPair build_multiset(std::span<const KernelPair> bases, int n, std::optional<int> l = {});

/// Observation settings for check_pair.
struct CheckOptions {
  double horizon = 5.0;
  double step = 1.0 / 512.0;
  /// Window start; defaults to 10 * step when not positive.
  double eps = 0.0;
  AssessmentPolicy policy{};
};

class ConvCache;

/// Numerical check of the Luchko condition (M * N)(t) = h_n(t) on [eps, T].
ResidualReport check_pair(const KernelPair& pair, const CheckOptions& options = {},
                          ConvCache* cache = nullptr);

/// Pointwise j-th derivative of a kernel expression is available in closed
/// form or by a derivative-free rewrite (leaf power kernels, or a Conv
/// containing a power factor h_a with a > j).
bool has_derivative(const KernelExpr& e, int order);

}  // namespace gfc
