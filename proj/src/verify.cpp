#include "gfc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <tuple>

#include "gfc/conv.hpp"
#include "gfc/errors.hpp"
#include "gfc/specfun.hpp"

namespace gfc {

std::string to_string(Theorem t) {
  switch (t) {
    case Theorem::FT1_Caputo:
      return "ft1-caputo";
    case Theorem::FT2_Caputo:
      return "ft2-caputo";
    case Theorem::FT1_RL:
      return "ft1-rl";
    case Theorem::FT2_RL:
      return "ft2-rl";
  }
  return "unknown";
}

std::optional<Theorem> parse_theorem(std::string_view name) {
  for (Theorem t : all_theorems()) {
    if (to_string(t) == name) return t;
  }
  return std::nullopt;
}

std::vector<Theorem> all_theorems() {
  return {Theorem::FT1_Caputo, Theorem::FT2_Caputo, Theorem::FT1_RL, Theorem::FT2_RL};
}

std::string to_string(Admissibility a) {
  switch (a) {
    case Admissibility::Declared:
      return "declared";
    case Admissibility::ImageOfN:
      return "N*Y";
    case Admissibility::ImageOfM:
      return "M*Y";
  }
  return "unknown";
}

Admissibility admissibility_for(Theorem t) {
  switch (t) {
    case Theorem::FT1_Caputo:
      return Admissibility::ImageOfN;
    case Theorem::FT2_RL:
      return Admissibility::ImageOfM;
    default:
      return Admissibility::Declared;
  }
}

std::string to_string(CaseStatus s) {
  switch (s) {
    case CaseStatus::Pass:
      return "pass";
    case CaseStatus::Fail:
      return "fail";
    case CaseStatus::Error:
      return "error";
    case CaseStatus::Inadmissible:
      return "inadmissible";
  }
  return "unknown";
}

namespace {

// Memoizes the intermediate functions of one (pair, function) chain so the
// four theorems can share them.
class Chain {
 public:
  Chain(const FTCase& c, const Grid& grid, ConvCache* cache) : c_(c), grid_(grid), cache_(cache) {
    if (cache_ && !c.function.is_sampled()) {
      prefix_ = "ft|" + c.pair.M.key() + "|" + c.pair.N.key() + "|n=" +
                std::to_string(c.pair.order) + "|" + c.function.name() + "|";
    }
  }

  SampledFunction stage(const std::string& name, const std::function<SampledFunction()>& compute) {
    if (prefix_.empty()) return compute();
    const std::string key = prefix_ + name + "@" + grid_.key();
    if (auto hit = cache_->find(key)) return *hit;
    return *cache_->insert(key, compute());
  }

  const KernelPair& pair() const { return c_.pair; }
  const TestFunction& fn() const { return c_.function; }
  const Grid& grid() const { return grid_; }
  ConvCache* cache() const { return cache_; }

  SampledFunction m_of_y() {
    return stage("M*Y", [&] { return gfi(pair(), fn(), grid_, cache_); });
  }

  // d^n (N * (M * Y)), shared by FT1-RL (X = Y) and FT2-RL (X = M * Y).
  SampledFunction rl_of_m_of_y() {
    return stage("D(M*Y)", [&] {
      const TestFunction x = TestFunction::from_samples("M*" + fn().name(), m_of_y());
      return gfd_rl(pair(), x, grid_, RlPath::Numeric, nullptr, cache_);
    });
  }

 private:
  const FTCase& c_;
  const Grid& grid_;
  ConvCache* cache_;
  std::string prefix_;
};

using Chained = std::function<ResidualProfile(Chain&, double eps)>;

// Residual lhs - rhs on the window, scale = max |rhs|.
ResidualProfile profile_of(const SampledFunction& lhs, const std::function<double(int)>& rhs,
                           double eps) {
  const Grid& g = lhs.grid();
  ResidualProfile p;
  p.scale = 0.0;
  for (int j = g.first_index_at_or_after(eps); j <= g.size(); ++j) {
    const double r = rhs(j);
    p.t.push_back(g.t(j));
    p.residual.push_back(lhs.value(j) - r);
    p.scale = std::max(p.scale, std::abs(r));
  }
  return p;
}

ResidualReport run_case(const FTCase& c, ConvCache* cache, const Chained& body) {
  const Grid grid = Grid::make(c.horizon, c.step);
  const double eps = c.eps > 0.0 ? c.eps : 10.0 * c.step;
  auto evaluate = [&](const Grid& g, double window) {
    Chain chain(c, g, cache);
    return body(chain, window);
  };
  return assess(evaluate, grid, eps, c.policy);
}

void require_theorem(const FTCase& c, Theorem t) {
  if (c.theorem != t) {
    throw DomainError("case is for " + to_string(c.theorem) + ", not " + to_string(t));
  }
}

}  // namespace

ResidualReport verify_ft1_caputo(const FTCase& c, ConvCache* cache) {
  require_theorem(c, Theorem::FT1_Caputo);
  return run_case(c, cache, [](Chain& ch, double eps) {
    const int n = ch.pair().order;
    const SampledFunction x = ch.stage("N*Y", [&] {
      return num_conv(ch.pair().N, ch.fn().sample(ch.grid()), ch.cache());
    });
    const SampledFunction z = ch.stage("M*N*Y", [&] { return num_conv(ch.pair().M, x, ch.cache()); });
    // I_(M) X = h_n * Y lies in C^n_{-1}.
    const TestFunction zf = TestFunction::from_samples("I(N*" + ch.fn().name() + ")", z, n);
    const SampledFunction d = gfd_caputo(ch.pair(), zf, ch.grid(), ch.cache());
    return profile_of(d, [&](int j) { return x.value(j); }, eps);
  });
}

ResidualReport verify_ft2_caputo(const FTCase& c, ConvCache* cache) {
  require_theorem(c, Theorem::FT2_Caputo);
  const int n = c.pair.order;
  if (!c.function.in_cn(n)) {
    throw DomainError("ft2-caputo: " + c.function.name() + " is not declared in C^" +
                      std::to_string(n) + "_{-1}");
  }
  if (!c.function.has_initial_values(n)) {
    throw DomainError("ft2-caputo: " + c.function.name() + " lacks initial values X^(k)(0), k < " +
                      std::to_string(n));
  }
  return run_case(c, cache, [n](Chain& ch, double eps) {
    const SampledFunction d = ch.stage("C(Y)", [&] {
      return gfd_caputo(ch.pair(), ch.fn(), ch.grid(), ch.cache());
    });
    const SampledFunction lhs = num_conv(ch.pair().M, d, ch.cache());
    const auto& iv = ch.fn().initial_values();
    const SampledFunction x = ch.fn().sample(ch.grid());
    return profile_of(lhs, [&](int j) {
      const double t = ch.grid().t(j);
      double taylor = 0.0;
      double term = 1.0;  // t^k / k!
      for (int k = 0; k < n; ++k) {
        taylor += iv[k] * term;
        term *= t / (k + 1);
      }
      return x.value(j) - taylor;
    }, eps);
  });
}

ResidualReport verify_ft1_rl(const FTCase& c, ConvCache* cache) {
  require_theorem(c, Theorem::FT1_RL);
  return run_case(c, cache, [](Chain& ch, double eps) {
    const SampledFunction d = ch.rl_of_m_of_y();
    const SampledFunction x = ch.fn().sample(ch.grid());
    return profile_of(d, [&](int j) { return x.value(j); }, eps);
  });
}

ResidualReport verify_ft2_rl(const FTCase& c, ConvCache* cache) {
  require_theorem(c, Theorem::FT2_RL);
  return run_case(c, cache, [](Chain& ch, double eps) {
    const SampledFunction x = ch.m_of_y();
    const SampledFunction d = ch.rl_of_m_of_y();
    const SampledFunction lhs = num_conv(ch.pair().M, d, ch.cache());
    return profile_of(lhs, [&](int j) { return x.value(j); }, eps);
  });
}

ResidualReport verify(const FTCase& c, ConvCache* cache) {
  switch (c.theorem) {
    case Theorem::FT1_Caputo:
      return verify_ft1_caputo(c, cache);
    case Theorem::FT2_Caputo:
      return verify_ft2_caputo(c, cache);
    case Theorem::FT1_RL:
      return verify_ft1_rl(c, cache);
    case Theorem::FT2_RL:
      return verify_ft2_rl(c, cache);
  }
  throw DomainError("unknown theorem");
}

std::vector<CatalogPair> default_pair_catalog() {
  auto named = [](KernelPair p, std::string label) {
    p.label = std::move(label);
    return p;
  };
  const KernelPair power = named(atomic_pair(sonine_pair_power(0.5), 1), "power(0.5)");
  const std::vector<KernelCouple> tn = {sonine_pair_power(0.3), sonine_pair_tempered(0.4, 1.0)};
  std::vector<CatalogPair> out;
  out.push_back({power, true});
  out.push_back({named(atomic_pair(sonine_pair_tempered(0.3, 1.0), 1), "tempered(0.3,1)"), true});
  out.push_back({named(atomic_pair(sonine_pair_kummer(0.4, 0.7, 2.0), 1), "kummer(0.4,0.7,2)"), true});
  out.push_back({named(atomic_pair(bessel_pair(2, 0.5), 2), "besselL2(0.5)"), true});
  out.push_back({named(build_tn(tn), "T2[power(0.3);tempered(0.4,1)]"), true});
  out.push_back({build_tnml(power, 3, 2), false});
  out.push_back({build_tnml(power, 2, 1), false});
  out.push_back({build_tnml(power, 2, 2), false});
  return out;
}

std::vector<CatalogFunction> default_function_catalog() {
  return {{named_function("1"), false},  {named_function("t"), true},
          {named_function("t2"), true},  {named_function("exp"), true},
          {named_function("cos"), true}, {named_function("h0.6"), false}};
}

namespace {

bool admissible(const KernelPair& pair, const TestFunction& f, Theorem t) {
  if (t != Theorem::FT2_Caputo) return true;
  return f.in_cn(pair.order) && f.has_initial_values(pair.order);
}

}  // namespace

std::vector<CaseResult> run_suite(std::span<const CatalogPair> pairs,
                                  std::span<const CatalogFunction> functions,
                                  const SuiteOptions& options) {
  std::vector<CaseResult> results;
  ConvCache cache;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const CatalogPair& cp = pairs[i];
    if (options.pair_label && cp.pair.label != *options.pair_label) continue;
    if (!cp.gating && !options.include_informational) continue;
    for (std::size_t j = 0; j < functions.size(); ++j) {
      const CatalogFunction& cf = functions[j];
      if (options.function_name && cf.function.name() != *options.function_name) continue;
      if (!cf.gating && !options.include_informational) continue;
      for (Theorem t : all_theorems()) {
        if (options.theorem && t != *options.theorem) continue;
        char key[48];
        std::snprintf(key, sizeof key, "P%02zu/F%02zu/", i, j);
        CaseResult r;
        r.key = key + to_string(t);
        r.pair_label = cp.pair.label;
        r.order = cp.pair.order;
        r.function = cf.function.name();
        r.theorem = t;
        r.admissibility = admissibility_for(t);
        r.gating = cp.gating && cf.gating;
        if (!admissible(cp.pair, cf.function, t)) {
          r.gating = false;
          r.status = CaseStatus::Inadmissible;
          r.message = cf.function.name() + " is not in C^" + std::to_string(cp.pair.order) +
                      "_{-1} with initial values";
          results.push_back(std::move(r));
          continue;
        }
        FTCase c{cp.pair, cf.function, t, options.horizon, options.step, options.eps,
                 options.policy};
        try {
          r.report = verify(c, &cache);
          r.status = r.report->verdict == Verdict::Pass ? CaseStatus::Pass : CaseStatus::Fail;
        } catch (const std::exception& e) {
          r.status = CaseStatus::Error;
          r.message = e.what();
        }
        results.push_back(std::move(r));
      }
    }
  }
  std::sort(results.begin(), results.end(),
            [](const CaseResult& a, const CaseResult& b) { return a.key < b.key; });
  return results;
}

bool gating_passed(std::span<const CaseResult> results) {
  return std::all_of(results.begin(), results.end(), [](const CaseResult& r) {
    return !r.gating || r.status == CaseStatus::Pass;
  });
}

}  // namespace gfc
