// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.
// Usage: acceptance <path-to-gfc-binary>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "classical_limit.hpp"
#include "gfc/conv.hpp"
#include "gfc/specfun.hpp"
#include "gfc/verify.hpp"

using namespace gfc;

namespace {

constexpr double kT = 5.0;
constexpr double kStep = 1.0 / 512;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// Shared by criteria 1 and 2: sup <= 5e-3 and order >= 0.8 at the default grid.
struct PairTally {
  int total = 0;
  int failed = 0;
  double worst_sup = 0.0;
  double min_order = INFINITY;
  std::string failures;

  void add(const KernelPair& p) {
    const ResidualReport r = check_pair(p, {kT, kStep, 10 * kStep, {5e-3, 0.8, 1e-10}});
    ++total;
    worst_sup = std::max(worst_sup, r.sup_residual);
    min_order = std::min(min_order, r.estimated_order);
    if (r.verdict != Verdict::Pass || r.sup_residual > 5e-3 || !(r.estimated_order >= 0.8)) {
      ++failed;
      failures += " [" + p.label + ": sup " + sci(r.sup_residual) + ", order " + sci(r.estimated_order) + "]";
    }
  }

  Outcome outcome() const {
    return {failed == 0, std::to_string(total) + " pairs, worst sup " + sci(worst_sup) + ", min order " +
                             sci(min_order) + failures};
  }
};

Outcome sonine_suite() {
  PairTally tally;
  for (double a : {0.25, 0.5, 0.75}) tally.add(atomic_pair(sonine_pair_power(a), 1));
  for (double lambda : {0.0, 1.0, 5.0}) tally.add(atomic_pair(sonine_pair_tempered(0.3, lambda), 1));
  tally.add(atomic_pair(sonine_pair_kummer(0.4, 0.7, 2.0), 1));
  tally.add(atomic_pair(bessel_pair(1, -0.5), 1));
  return tally.outcome();
}

Outcome luchko_suite() {
  PairTally tally;
  for (const auto& entry : default_pair_catalog()) tally.add(entry.pair);
  const KernelPair tempered = atomic_pair(sonine_pair_tempered(0.3, 1.0), 1);
  const KernelPair kummer = atomic_pair(sonine_pair_kummer(0.4, 0.7, 2.0), 1);
  const KernelPair power = atomic_pair(sonine_pair_power(0.25), 1);
  const KernelPair l2 = atomic_pair(bessel_pair(2, 0.5), 2);
  tally.add(build_tnm(tempered, 3));
  tally.add(build_tnm(l2, 3));
  const std::vector<KernelPair> two = {kummer, power};
  tally.add(build_multiset(two, 2));
  tally.add(build_multiset(two, 4, 3));
  const std::vector<KernelPair> mixed = {power, l2};
  tally.add(build_multiset(mixed, 3));
  tally.add(atomic_pair(bessel_pair(3, 1.5), 3));
  return tally.outcome();
}

Outcome closed_form_suite() {
  std::mt19937_64 rng(20261016);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  const Grid grid = Grid::make(kT, kStep);
  const AssessmentPolicy policy{1e-3, 0.8, 1e-10};
  int failed = 0;
  double worst = 0.0;
  double min_order = INFINITY;
  std::string failures;
  for (int i = 0; i < 10; ++i) {
    const double a = 2.0 - u(rng);  // (0, 2]
    const double b = 2.0 - u(rng);
    const Kernel ha = power_kernel(a);
    const Kernel hb = power_kernel(b);
    const Kernel hab = power_kernel(a + b);
    // Numerical product of the sampled kernels; no symbolic merging.
    const ResidualEvaluator relative = [&](const Grid& g, double eps) {
      const SampledFunction c = num_conv(sample(ha, g), sample(hb, g));
      ResidualProfile p;
      for (int j = g.first_index_at_or_after(eps); j <= g.size(); ++j) {
        p.t.push_back(g.t(j));
        p.residual.push_back(c.value(j) / hab(g.t(j)) - 1.0);
      }
      return p;
    };
    const ResidualReport r = assess(relative, grid, 10 * kStep, policy);
    worst = std::max(worst, r.sup_residual);
    min_order = std::min(min_order, r.estimated_order);
    if (r.verdict != Verdict::Pass) {
      ++failed;
      failures += " [a=" + sci(a) + " b=" + sci(b) + ": " + sci(r.sup_residual) + "]";
    }
  }
  return {failed == 0, "10 random (a,b), worst relative error " + sci(worst) + ", min order " + sci(min_order) +
                           failures};
}

Outcome theorem_suite() {
  SuiteOptions o;
  o.include_informational = false;
  const auto start = std::chrono::steady_clock::now();
  const auto results = run_suite(default_pair_catalog(), default_function_catalog(), o);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  int gating = 0;
  int failed = 0;
  double worst = 0.0;
  double min_order = INFINITY;
  std::string failures;
  for (const auto& r : results) {
    if (!r.gating) continue;
    ++gating;
    const bool ok = r.status == CaseStatus::Pass && r.report && r.report->sup_residual <= 1e-2 &&
                    r.report->estimated_order >= 0.8;
    if (r.report) {
      worst = std::max(worst, r.report->sup_residual);
      min_order = std::min(min_order, r.report->estimated_order);
    }
    if (!ok) {
      ++failed;
      failures += " [" + r.key + " " + to_string(r.status) + "]";
    }
  }
  return {failed == 0 && gating == 80, std::to_string(gating) + " gating cases, worst sup " + sci(worst) +
                                           ", min order " + sci(min_order) + ", " + sci(seconds) + " s" + failures};
}

Outcome classical_limit() {
  const Grid grid = Grid::make(2.0, kStep);
  double worst = 0.0;
  int checked = 0;
  for (const auto& row : gfc_testdata::kClassicalLimit) {
    const KernelPair pair = atomic_pair(sonine_pair_power(row.alpha), 1);
    const TestFunction x = named_function(gfc_testdata::kClassicalFunctions[row.function]);
    const int j = static_cast<int>(std::lround(row.t / grid.step()));
    const double got[3] = {gfi(pair, x, grid).value(j), gfd_caputo(pair, x, grid).value(j),
                           gfd_rl(pair, x, grid).value(j)};
    const double want[3] = {row.gfi, row.caputo, row.rl};
    for (int k = 0; k < 3; ++k) {
      // A zero oracle (Caputo of a constant) is compared absolutely.
      const double err = want[k] == 0.0 ? std::abs(got[k]) : std::abs(got[k] / want[k] - 1.0);
      worst = std::max(worst, err);
      ++checked;
    }
  }
  return {worst <= 1e-3, std::to_string(checked) + " values, worst relative error " + sci(worst)};
}

Outcome negative_control() {
  const KernelPair p = atomic_pair({power_kernel(0.3), power_kernel(0.5)}, 1);
  const ResidualReport r = check_pair(p, {kT, kStep, 10 * kStep, {5e-3, 0.8, 1e-10}});
  const double oracle = std::abs(1.0 - 1.0 / std::tgamma(0.8));
  const double at1 = std::abs(r.residual_at(1.0));
  const bool ok = r.verdict == Verdict::Fail && std::abs(at1 - oracle) <= 1e-3;
  return {ok, "verdict " + to_string(r.verdict) + ", |residual(1)| " + sci(at1) + " vs " + sci(oracle)};
}

Outcome special_functions() {
  struct Case {
    const char* name;
    double got;
    double oracle;
  };
  const double pi = std::numbers::pi;
  const Case cases[] = {
      {"gamma(0.5,1)", specfun::gamma_lower(0.5, 1.0), std::sqrt(pi) * std::erf(1.0)},
      {"Phi(1,2;1)", specfun::kummer_phi(1.0, 2.0, 1.0), std::exp(1.0) - 1.0},
      {"J_1/2(1)", specfun::bessel_j(0.5, 1.0).value, std::sqrt(2.0 / pi) * std::sin(1.0)},
      {"Gamma(0.5)", specfun::gamma_fn(0.5), std::sqrt(pi)},
  };
  double worst = 0.0;
  std::string detail;
  for (const auto& c : cases) {
    const double rel = std::abs(c.got / c.oracle - 1.0);
    worst = std::max(worst, rel);
    detail += std::string(detail.empty() ? "" : ", ") + c.name + " " + sci(rel);
  }
  return {worst <= 1e-10, "relative errors: " + detail};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

Outcome cli_determinism(const char* gfc) {
  if (gfc == nullptr) return {false, "path to the gfc binary not given"};
  const auto dir = std::filesystem::temp_directory_path() / "gfc_acceptance";
  std::filesystem::create_directories(dir);
  std::string detail;
  bool ok = true;
  for (const char* format : {"csv", "json"}) {
    const auto a = dir / (std::string("verify_a.") + format);
    const auto b = dir / (std::string("verify_b.") + format);
    std::filesystem::remove(a);
    std::filesystem::remove(b);
    const std::string base = std::string("\"") + gfc + "\" verify --format " + format + " --out ";
    const int ca = std::system((base + "\"" + a.string() + "\" 2>/dev/null").c_str());
    const int cb = std::system((base + "\"" + b.string() + "\" 2>/dev/null").c_str());
    const std::string sa = slurp(a);
    const std::string sb = slurp(b);
    const bool same = !sa.empty() && sa == sb;
    ok = ok && same && ca == 0 && cb == 0;
    detail += std::string(detail.empty() ? "" : ", ") + format + " " + std::to_string(sa.size()) + " bytes " +
              (same ? "identical" : "DIFFER") + " (exit " + std::to_string(ca) + "/" + std::to_string(cb) + ")";
  }
  return {ok, detail};
}

}  // namespace

int main(int argc, char** argv) {
  const char* gfc = argc > 1 ? argv[1] : nullptr;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"Sonine-condition suite", sonine_suite},
      {"Luchko-condition suite", luchko_suite},
      {"closed-form oracle h_a * h_b = h_(a+b)", closed_form_suite},
      {"fundamental-theorem suite", theorem_suite},
      {"classical-limit regression", classical_limit},
      {"negative control (h_0.3, h_0.5)", negative_control},
      {"special-function oracles", special_functions},
      {"CLI determinism", [gfc] { return cli_determinism(gfc); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
