#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gfc/algebra.hpp"
#include "gfc/grid.hpp"
#include "gfc/operators.hpp"

namespace gfc {

class ConvCache;

enum class Theorem { FT1_Caputo, FT2_Caputo, FT1_RL, FT2_RL };

/// "ft1-caputo", "ft2-caputo", "ft1-rl", "ft2-rl".
std::string to_string(Theorem t);
std::optional<Theorem> parse_theorem(std::string_view name);
std::vector<Theorem> all_theorems();

/// How the theorem's function-space hypothesis is met.
enum class Admissibility {
  Declared,  // X itself, declared in C_{-1} or C^n_{-1}
  ImageOfN,  // X = N * Y
  ImageOfM,  // X = M * Y
};

std::string to_string(Admissibility a);
Admissibility admissibility_for(Theorem t);

/// One fundamental-theorem check. `function` is X for Declared cases and
/// the generator Y otherwise.
struct FTCase {
  KernelPair pair;
  TestFunction function;
  Theorem theorem = Theorem::FT1_Caputo;
  double horizon = 5.0;
  double step = 1.0 / 512.0;
  /// Window start; 10 * step when not positive.
  double eps = 0.0;
  AssessmentPolicy policy{1e-2, 0.8, 1e-10};
};

/// D*_(N) I_(M) X - X with X = N * Y.
ResidualReport verify_ft1_caputo(const FTCase& c, ConvCache* cache = nullptr);
/// I_(M) D*_(N) X - [X - sum_{k<n} X^(k)(0) h_{k+1}].
ResidualReport verify_ft2_caputo(const FTCase& c, ConvCache* cache = nullptr);
/// D_(N) I_(M) X - X.
ResidualReport verify_ft1_rl(const FTCase& c, ConvCache* cache = nullptr);
/// I_(M) D_(N) X - X with X = M * Y.
ResidualReport verify_ft2_rl(const FTCase& c, ConvCache* cache = nullptr);
ResidualReport verify(const FTCase& c, ConvCache* cache = nullptr);

struct CatalogPair {
  KernelPair pair;
  bool gating = true;
};

struct CatalogFunction {
  TestFunction function;
  bool gating = true;
};

/// Power (0.5), tempered (0.3, 1), Kummer (0.4, 0.7, 2), Bessel L2 (0.5),
/// T_2 from power 0.3 and tempered (0.4, 1) are gating; T_{3,1,2} over
/// power 0.5 and the endpoint cases l = m, l = n of T_{2,1,l} are
/// informational.
std::vector<CatalogPair> default_pair_catalog();
/// t, t^2, e^t, cos t gating; 1 and h_0.6 informational.
std::vector<CatalogFunction> default_function_catalog();

struct SuiteOptions {
  double horizon = 5.0;
  double step = 1.0 / 512.0;
  double eps = 0.0;
  AssessmentPolicy policy{1e-2, 0.8, 1e-10};
  std::optional<Theorem> theorem;
  std::optional<std::string> pair_label;
  std::optional<std::string> function_name;
  bool include_informational = true;
};

enum class CaseStatus { Pass, Fail, Error, Inadmissible };

std::string to_string(CaseStatus s);

struct CaseResult {
  /// "P<i>/F<j>/<theorem>" with catalog indices; results are sorted by it.
  std::string key;
  std::string pair_label;
  int order = 1;
  std::string function;
  Theorem theorem = Theorem::FT1_Caputo;
  Admissibility admissibility = Admissibility::Declared;
  bool gating = true;
  CaseStatus status = CaseStatus::Error;
  std::optional<ResidualReport> report;
  std::string message;
};

/// Pairs x functions x theorems. Failures and exceptions are recorded per
/// case; the suite never aborts.
std::vector<CaseResult> run_suite(std::span<const CatalogPair> pairs,
                                  std::span<const CatalogFunction> functions,
                                  const SuiteOptions& options = {});

/// True iff every gating case passed.
bool gating_passed(std::span<const CaseResult> results);

}  // namespace gfc
