#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <vector>

#include "gfc/errors.hpp"
#include "gfc/operators.hpp"
#include "gfc/verify.hpp"

namespace gfc::cli {

namespace {

using ojson = nlohmann::ordered_json;

// ---------------------------------------------------------------- spec text

int line_at(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(offset), '\n'));
}

// Line of the `occurrence`-th appearance of "key"; `fallback` if absent.
int key_line(const std::string& text, const std::string& key, int occurrence = 0, int fallback = 1) {
  const std::string quoted = "\"" + key + "\"";
  std::size_t pos = 0;
  for (int i = 0;; ++i) {
    pos = text.find(quoted, pos);
    if (pos == std::string::npos) return fallback;
    if (i == occurrence) return line_at(text, pos);
    pos += quoted.size();
  }
}

struct Generator {
  KernelCouple couple;
  int order = 1;
};

class SpecReader {
 public:
  explicit SpecReader(const std::string& text) : text_(text) {}

  KernelPair read() {
    ojson j;
    try {
      j = ojson::parse(text_);
    } catch (const ojson::parse_error& e) {
      std::string what = e.what();
      const auto colon = what.find(": ", what.find("column"));
      if (colon != std::string::npos) what = what.substr(colon + 2);
      throw SpecError(line_at(text_, e.byte == 0 ? 0 : e.byte - 1), "invalid JSON: " + what);
    }
    const int top = line_at(text_, text_.find('{'));
    if (!j.is_object()) throw SpecError(1, "pair spec must be a JSON object");
    static const std::set<std::string> known = {"order", "construction", "factors", "m", "l"};
    for (const auto& item : j.items()) {
      if (!known.contains(item.key())) {
        throw SpecError(key_line(text_, item.key(), 0, top), "unknown field \"" + item.key() + "\"");
      }
    }
    if (!j.contains("order")) throw SpecError(top, "missing field \"order\"");
    if (!j.contains("construction")) throw SpecError(top, "missing field \"construction\"");
    if (!j.contains("factors")) throw SpecError(top, "missing field \"factors\"");

    const int n = positive_int(j, "order");
    const auto& cons = j["construction"];
    const int cons_line = key_line(text_, "construction");
    if (!cons.is_string()) throw SpecError(cons_line, "\"construction\" must be a string");
    const std::string construction = cons.get<std::string>();

    const auto& factors = j["factors"];
    const int factors_line = key_line(text_, "factors");
    if (!factors.is_array() || factors.empty()) {
      throw SpecError(factors_line, "\"factors\" must be a non-empty array of kernel-spec objects");
    }
    const std::optional<int> m = j.contains("m") ? std::optional(positive_int(j, "m")) : std::nullopt;
    const std::optional<int> l = j.contains("l") ? std::optional(positive_int(j, "l")) : std::nullopt;
    auto reject = [&](const char* key, const std::optional<int>& v) {
      if (v) {
        throw SpecError(key_line(text_, key), std::string("\"") + key + "\" does not apply to construction " +
                                                  construction);
      }
    };
    const std::size_t count = factors.size();

    try {
      if (construction == "atomic") {
        reject("m", m);
        reject("l", l);
        if (count == 1) return atomic_pair(generator(factors[0], 0).couple, n);
        if (count == 2) return atomic_pair({kernel(factors[0], 0), kernel(factors[1], 1)}, n);
        throw SpecError(factors_line, "atomic construction takes one pair factor or two kernel factors");
      }
      if (construction == "tn") {
        reject("m", m);
        reject("l", l);
        if (static_cast<int>(count) != n) {
          throw SpecError(factors_line, "tn of order " + std::to_string(n) + " needs " + std::to_string(n) +
                                            " factors, got " + std::to_string(count));
        }
        std::vector<KernelCouple> couples;
        for (std::size_t i = 0; i < count; ++i) {
          Generator g = generator(factors[i], static_cast<int>(i));
          if (g.order != 1) throw SpecError(factor_line(static_cast<int>(i)), "tn factors must be Sonine pairs");
          couples.push_back(std::move(g.couple));
        }
        return build_tn(couples);
      }
      if (construction == "tnm" || construction == "tnml") {
        if (count != 1) throw SpecError(factors_line, construction + " takes exactly one base factor");
        const Generator g = generator(factors[0], 0);
        if (m && *m != g.order) {
          throw SpecError(key_line(text_, "m"), "\"m\" is " + std::to_string(*m) + " but the base pair has order " +
                                                    std::to_string(g.order));
        }
        if (n < g.order) throw SpecError(key_line(text_, "order"), "order is below the base order");
        const KernelPair base = atomic_pair(g.couple, g.order);
        if (construction == "tnm") {
          reject("l", l);
          return build_tnm(base, n);
        }
        if (!l) throw SpecError(top, "missing field \"l\"");
        if (*l < g.order || *l > n) throw SpecError(key_line(text_, "l"), "\"l\" must satisfy m <= l <= order");
        return build_tnml(base, n, *l);
      }
      if (construction == "multiset") {
        reject("m", m);
        std::vector<KernelPair> bases;
        for (std::size_t i = 0; i < count; ++i) {
          const Generator g = generator(factors[i], static_cast<int>(i));
          bases.push_back(atomic_pair(g.couple, g.order));
        }
        return build_multiset(bases, n, l);
      }
    } catch (const DomainError& e) {
      throw SpecError(factors_line, e.what());
    }
    throw SpecError(cons_line, "unknown construction \"" + construction + "\" (tn, tnm, tnml, multiset, atomic)");
  }

 private:
  int positive_int(const ojson& j, const char* key) const {
    const auto& v = j[key];
    if (!v.is_number_integer() || v.get<long long>() < 1) {
      throw SpecError(key_line(text_, key), std::string("\"") + key + "\" must be a positive integer");
    }
    return v.get<int>();
  }

  int factor_line(int index) const { return key_line(text_, "family", index, key_line(text_, "factors")); }

  struct Factor {
    std::string family;
    ojson params;
    std::optional<std::string> side;
    int line = 1;
  };

  Factor open(const ojson& f, int index) const {
    Factor out;
    out.line = factor_line(index);
    if (!f.is_object()) throw SpecError(out.line, "kernel spec must be an object");
    for (const auto& item : f.items()) {
      if (item.key() != "family" && item.key() != "params") {
        throw SpecError(out.line, "unknown kernel-spec field \"" + item.key() + "\"");
      }
    }
    if (!f.contains("family") || !f["family"].is_string()) {
      throw SpecError(out.line, "kernel spec needs a string \"family\"");
    }
    out.family = f["family"].get<std::string>();
    out.params = f.contains("params") ? f["params"] : ojson::object();
    if (!out.params.is_object()) throw SpecError(out.line, "\"params\" must be an object");
    if (out.params.contains("side")) {
      if (!out.params["side"].is_string()) throw SpecError(out.line, "\"side\" must be \"mu\" or \"nu\"");
      out.side = out.params["side"].get<std::string>();
      if (*out.side != "mu" && *out.side != "nu") throw SpecError(out.line, "\"side\" must be \"mu\" or \"nu\"");
    }
    return out;
  }

  void allow(const Factor& f, std::initializer_list<const char*> names) const {
    for (const auto& item : f.params.items()) {
      if (item.key() == "side") continue;
      if (std::none_of(names.begin(), names.end(), [&](const char* n) { return item.key() == n; })) {
        throw SpecError(f.line, "unknown parameter \"" + item.key() + "\" for family " + f.family);
      }
    }
  }

  double real(const Factor& f, const char* name) const {
    if (!f.params.contains(name) || !f.params[name].is_number()) {
      throw SpecError(f.line, f.family + " needs numeric parameter \"" + name + "\"");
    }
    return f.params[name].get<double>();
  }

  int integer(const Factor& f, const char* name) const {
    if (!f.params.contains(name) || !f.params[name].is_number_integer()) {
      throw SpecError(f.line, f.family + " needs integer parameter \"" + name + "\"");
    }
    return f.params[name].get<int>();
  }

  Generator couple_of(const Factor& f) const {
    try {
      if (f.family == "power") {
        allow(f, {"alpha"});
        return {sonine_pair_power(real(f, "alpha")), 1};
      }
      if (f.family == "tempered") {
        allow(f, {"alpha", "lambda"});
        return {sonine_pair_tempered(real(f, "alpha"), real(f, "lambda")), 1};
      }
      if (f.family == "kummer") {
        allow(f, {"alpha", "beta", "lambda"});
        return {sonine_pair_kummer(real(f, "alpha"), real(f, "beta"), real(f, "lambda")), 1};
      }
      if (f.family == "bessel") {
        allow(f, {"n", "alpha"});
        const int n = integer(f, "n");
        return {bessel_pair(n, real(f, "alpha")), n};
      }
    } catch (const DomainError& e) {
      throw SpecError(f.line, e.what());
    }
    if (f.family == "moment") throw SpecError(f.line, "moment is a single kernel; use it in a two-factor atomic spec");
    throw SpecError(f.line, "unknown family \"" + f.family + "\" (power, tempered, kummer, bessel, moment)");
  }

  Generator generator(const ojson& j, int index) const {
    const Factor f = open(j, index);
    if (f.side) throw SpecError(f.line, "\"side\" only applies to two-factor atomic specs");
    return couple_of(f);
  }

  Kernel kernel(const ojson& j, int index) const {
    const Factor f = open(j, index);
    const bool nu = f.side && *f.side == "nu";
    try {
      if (f.family == "moment") {
        allow(f, {"k"});
        if (f.side) throw SpecError(f.line, "moment kernels have no side");
        return moment_kernel(integer(f, "k"));
      }
      if (f.family == "power" && !nu) {
        allow(f, {"alpha"});
        return power_kernel(real(f, "alpha"));
      }
    } catch (const DomainError& e) {
      throw SpecError(f.line, e.what());
    }
    const Generator g = couple_of(f);
    return nu ? g.couple.second : g.couple.first;
  }

  const std::string& text_;
};

// ---------------------------------------------------------------- output

ojson number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return std::strtod(format_real(x).c_str(), nullptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

ojson report_json(const ResidualReport& r, bool with_profile) {
  ojson j;
  j["sup_residual"] = number(r.sup_residual);
  j["argmax_t"] = number(r.argmax_t);
  j["residual_halved_step"] = number(r.residual_halved_step);
  j["estimated_order"] = number(r.estimated_order);
  j["verdict"] = to_string(r.verdict);
  j["eps"] = number(r.eps);
  j["step"] = number(r.step);
  j["tolerance"] = number(r.tolerance);
  if (with_profile) {
    ojson t = ojson::array();
    ojson v = ojson::array();
    for (std::size_t i = 0; i < r.profile.t.size(); ++i) {
      t.push_back(number(r.profile.t[i]));
      v.push_back(number(r.profile.residual[i]));
    }
    j["profile"] = {{"scale", number(r.profile.scale)}, {"t", t}, {"residual", v}};
  }
  return j;
}

std::string table_csv(const std::vector<double>& t, const std::vector<double>& v) {
  std::string s = "t,value\n";
  for (std::size_t i = 0; i < t.size(); ++i) s += format_real(t[i]) + "," + format_real(v[i]) + "\n";
  return s;
}

// ---------------------------------------------------------------- config

struct RunConfig {
  double horizon = 5.0;
  std::string step_text = "1/512";
  int eps_factor = 10;
  std::string format = "csv";
  std::string out_path;

  double step = 0.0;
  double eps() const { return eps_factor * step; }
};

void add_run_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--T", cfg.horizon, "horizon T")->capture_default_str();
  sub->add_option("--step", cfg.step_text, "grid step, decimal or a/b")->capture_default_str();
  sub->add_option("--eps-factor", cfg.eps_factor, "window start eps = factor * step")->capture_default_str();
  sub->add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("--out", cfg.out_path, "output file (default stdout)");
}

std::optional<double> parse_real(const std::string& s) {
  const auto slash = s.find('/');
  auto whole = [](const std::string& part) -> std::optional<double> {
    if (part.empty()) return std::nullopt;
    char* end = nullptr;
    const double v = std::strtod(part.c_str(), &end);
    if (*end != '\0' || !std::isfinite(v)) return std::nullopt;
    return v;
  };
  if (slash == std::string::npos) return whole(s);
  const auto a = whole(s.substr(0, slash));
  const auto b = whole(s.substr(slash + 1));
  if (!a || !b || *b == 0.0) return std::nullopt;
  return *a / *b;
}

// Empty string when valid.
std::string validate(RunConfig& cfg) {
  const auto step = parse_real(cfg.step_text);
  if (!step) return "--step: not a number: " + cfg.step_text;
  cfg.step = *step;
  if (!(cfg.horizon > 0.0)) return "--T must be positive";
  if (!(cfg.step > 0.0)) return "--step must be positive";
  if (cfg.eps_factor < 1) return "--eps-factor must be at least 1";
  if (cfg.horizon / cfg.step < 8.0) return "--T / --step must be at least 8";
  try {
    Grid::make(cfg.horizon, cfg.step);
  } catch (const DomainError& e) {
    return e.what();
  }
  return {};
}

bool emit(const RunConfig& cfg, const std::string& payload, std::ostream& out, std::ostream& err) {
  if (cfg.out_path.empty()) {
    out << payload;
    return true;
  }
  std::ofstream f(cfg.out_path, std::ios::binary | std::ios::trunc);
  f << payload;
  if (!f) {
    err << "error: cannot write " << cfg.out_path << "\n";
    return false;
  }
  return true;
}

std::optional<KernelPair> load_pair(const std::string& path, std::ostream& err) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    err << "error: cannot read " << path << "\n";
    return std::nullopt;
  }
  const std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  try {
    return parse_pair_spec(text);
  } catch (const SpecError& e) {
    err << path << ":" << e.line() << ": " << e.what() << "\n";
    return std::nullopt;
  }
}

// ---------------------------------------------------------------- commands

struct FamilyInfo {
  const char* family;
  const char* params;
  const char* domain;
  const char* pair;
};

constexpr FamilyInfo kFamilies[] = {
    {"power", "alpha", "0 < alpha < 1 (any alpha > 0 as a single kernel)", "h_alpha, h_{1-alpha}; order 1"},
    {"tempered", "alpha, lambda", "0 < alpha < 1, lambda >= 0",
     "e^{-lambda t} h_alpha, tempered partner; order 1"},
    {"kummer", "alpha, beta, lambda", "0 < alpha < 1, beta real, lambda >= 0",
     "t^{alpha-1} Phi(beta, alpha; -lambda t), sin(pi alpha)/pi t^{-alpha} Phi(-beta, 1-alpha; -lambda t); order 1"},
    {"bessel", "n, alpha", "n >= 1, n-2 < alpha < n-1",
     "t^{alpha/2} J_alpha(2 sqrt t), t^{n/2-alpha/2-1} I_{n-alpha-2}(2 sqrt t); order n"},
    {"moment", "k", "integer k >= 1", "single kernel {1}^k = h_k; no partner"},
};

int cmd_list_kernels(bool as_json, std::ostream& out) {
  if (as_json) {
    ojson j = ojson::array();
    for (const auto& f : kFamilies) {
      j.push_back({{"family", f.family}, {"params", f.params}, {"domain", f.domain}, {"pair", f.pair}});
    }
    out << j.dump(2) << "\n";
    return 0;
  }
  for (const auto& f : kFamilies) {
    out << f.family << "\n  params: " << f.params << "\n  domain: " << f.domain << "\n  pair:   " << f.pair
        << "\n";
  }
  return 0;
}

int cmd_check_pair(const std::string& spec, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto pair = load_pair(spec, err);
  if (!pair) return 2;
  ResidualReport r;
  try {
    r = check_pair(*pair, {cfg.horizon, cfg.step, cfg.eps(), {}});
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  std::string payload;
  if (cfg.format == "json") {
    ojson j;
    j["pair"] = pair->label;
    j["order"] = pair->order;
    j["construction"] = to_string(pair->provenance);
    j["report"] = report_json(r, true);
    payload = j.dump(2) + "\n";
  } else {
    payload = table_csv(r.profile.t, r.profile.residual);
  }
  if (!emit(cfg, payload, out, err)) return 2;
  err << "check-pair " << pair->label << ": " << to_string(r.verdict) << ", sup residual "
      << format_real(r.sup_residual) << " at t=" << format_real(r.argmax_t) << ", order "
      << format_real(r.estimated_order) << ", residual at t=1 " << format_real(r.residual_at(1.0)) << "\n";
  return r.verdict == Verdict::Pass ? 0 : 1;
}

int cmd_apply(const std::string& op, const std::string& spec, const std::string& function,
              const std::string& rl_path, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto pair = load_pair(spec, err);
  if (!pair) return 2;
  std::optional<TestFunction> x;
  try {
    x = named_function(function);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  const Grid grid = Grid::make(cfg.horizon, cfg.step);
  std::optional<SampledFunction> result;
  RlInfo info;
  try {
    if (op == "gfi") {
      result = gfi(*pair, *x, grid);
    } else if (op == "caputo") {
      result = gfd_caputo(*pair, *x, grid);
    } else {
      const RlPath path = rl_path == "regularized" ? RlPath::Regularized
                          : rl_path == "numeric"   ? RlPath::Numeric
                                                   : RlPath::Auto;
      result = gfd_rl(*pair, *x, grid, path, &info);
    }
  } catch (const std::exception& e) {
    err << "error: " << op << " of " << function << " with " << pair->label << ": " << e.what() << "\n";
    return 1;
  }
  std::vector<double> t;
  std::vector<double> v;
  for (int j = grid.first_index_at_or_after(cfg.eps()); j <= grid.size(); ++j) {
    t.push_back(grid.t(j));
    v.push_back(result->value(j));
  }
  std::string payload;
  if (cfg.format == "json") {
    ojson j;
    j["op"] = op;
    j["pair"] = pair->label;
    j["order"] = pair->order;
    j["function"] = function;
    if (op == "rl") {
      j["rl_path"] = to_string(info.used);
      j["fell_back"] = info.fell_back;
    }
    ojson jt = ojson::array();
    ojson jv = ojson::array();
    for (std::size_t i = 0; i < t.size(); ++i) {
      jt.push_back(number(t[i]));
      jv.push_back(number(v[i]));
    }
    j["t"] = jt;
    j["value"] = jv;
    payload = j.dump(2) + "\n";
  } else {
    payload = table_csv(t, v);
  }
  if (op == "rl" && info.fell_back) err << "note: regularized path not applicable, used numeric\n";
  return emit(cfg, payload, out, err) ? 0 : 2;
}

int cmd_verify(const std::string& theorem, const std::string& spec, const std::string& function,
               bool informational, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  SuiteOptions o;
  o.horizon = cfg.horizon;
  o.step = cfg.step;
  o.eps = cfg.eps();
  o.include_informational = informational;
  if (!theorem.empty()) {
    o.theorem = parse_theorem(theorem);
    if (!o.theorem) {
      err << "error: unknown theorem " << theorem << " (ft1-caputo, ft2-caputo, ft1-rl, ft2-rl)\n";
      return 2;
    }
  }
  std::vector<CatalogPair> pairs;
  if (spec.empty()) {
    pairs = default_pair_catalog();
  } else {
    const auto p = load_pair(spec, err);
    if (!p) return 2;
    pairs.push_back({*p, true});
  }
  std::vector<CatalogFunction> functions = default_function_catalog();
  if (!function.empty()) {
    std::optional<TestFunction> x;
    try {
      x = named_function(function);
    } catch (const DomainError& e) {
      err << "error: " << e.what() << "\n";
      return 2;
    }
    const auto it = std::find_if(functions.begin(), functions.end(),
                                 [&](const CatalogFunction& f) { return f.function.name() == function; });
    const bool gating = it == functions.end() || it->gating;
    functions = {{*x, gating}};
    o.include_informational = true;
  }

  const auto results = run_suite(pairs, functions, o);
  const bool passed = gating_passed(results);
  int gating = 0;
  int failed = 0;
  for (const auto& r : results) {
    gating += r.gating;
    failed += r.gating && r.status != CaseStatus::Pass;
  }

  std::string payload;
  if (cfg.format == "json") {
    ojson j;
    j["config"] = {{"T", number(cfg.horizon)},
                   {"step", number(cfg.step)},
                   {"eps", number(cfg.eps())},
                   {"tolerance", number(o.policy.tolerance)},
                   {"min_order", number(o.policy.min_order)}};
    ojson cases = ojson::array();
    for (const auto& r : results) {
      ojson c;
      c["key"] = r.key;
      c["pair"] = r.pair_label;
      c["order"] = r.order;
      c["function"] = r.function;
      c["theorem"] = to_string(r.theorem);
      c["admissibility"] = to_string(r.admissibility);
      c["gating"] = r.gating;
      c["status"] = to_string(r.status);
      c["report"] = r.report ? report_json(*r.report, false) : ojson(nullptr);
      c["message"] = r.message;
      cases.push_back(c);
    }
    j["cases"] = cases;
    j["gating_cases"] = gating;
    j["gating_passed"] = passed;
    payload = j.dump(2) + "\n";
  } else {
    payload =
        "key,pair,order,function,theorem,admissibility,gating,status,sup_residual,argmax_t,"
        "residual_halved_step,estimated_order,tolerance,message\n";
    for (const auto& r : results) {
      std::string row = r.key + "," + csv_field(r.pair_label) + "," + std::to_string(r.order) + "," +
                        csv_field(r.function) + "," + to_string(r.theorem) + "," + to_string(r.admissibility) +
                        "," + (r.gating ? "yes" : "no") + "," + to_string(r.status) + ",";
      if (r.report) {
        row += format_real(r.report->sup_residual) + "," + format_real(r.report->argmax_t) + "," +
               format_real(r.report->residual_halved_step) + "," + format_real(r.report->estimated_order) + "," +
               format_real(r.report->tolerance) + ",";
      } else {
        row += ",,,,,";
      }
      payload += row + csv_field(r.message) + "\n";
    }
  }
  if (!emit(cfg, payload, out, err)) return 2;
  err << "verify: " << results.size() << " cases, " << gating << " gating, " << failed << " gating failed\n";
  return passed ? 0 : 1;
}

}  // namespace

KernelPair parse_pair_spec(const std::string& text) { return SpecReader(text).read(); }

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  const double a = std::abs(x);
  char buf[64];
  if (a < 1e-4 || a >= 1e6) {
    std::snprintf(buf, sizeof buf, "%.11e", x);
  } else {
    std::snprintf(buf, sizeof buf, "%.12g", x);
  }
  return buf;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"General fractional calculus: Sonine/Luchko pairs, GF operators and theorem checks", "gfc"};
  app.require_subcommand(1);

  bool as_json = false;
  auto* list = app.add_subcommand("list-kernels", "kernel families and parameter domains");
  list->add_flag("--json", as_json, "machine-readable catalog");

  RunConfig check_cfg;
  std::string check_spec;
  auto* check = app.add_subcommand("check-pair", "check (M * N)(t) = h_n(t) for a pair spec");
  check->add_option("--pair", check_spec, "pair-spec JSON file")->required();
  add_run_options(check, check_cfg);

  RunConfig apply_cfg;
  std::string op;
  std::string apply_spec;
  std::string apply_function;
  std::string rl_path = "auto";
  auto* apply = app.add_subcommand("apply", "apply a GF operator to a catalog function");
  apply->add_option("op", op, "gfi, caputo or rl")->required()->check(CLI::IsMember({"gfi", "caputo", "rl"}));
  apply->add_option("--pair", apply_spec, "pair-spec JSON file")->required();
  apply->add_option("--function", apply_function, "catalog function name")->required();
  apply->add_option("--rl-path", rl_path, "RL evaluation path")
      ->check(CLI::IsMember({"auto", "regularized", "numeric"}))
      ->capture_default_str();
  add_run_options(apply, apply_cfg);

  RunConfig verify_cfg;
  std::string theorem;
  std::string verify_spec;
  std::string verify_function;
  bool informational = false;
  auto* verify = app.add_subcommand("verify", "run the fundamental-theorem suite");
  verify->add_option("--theorem", theorem, "ft1-caputo, ft2-caputo, ft1-rl or ft2-rl");
  verify->add_option("--pair", verify_spec, "pair-spec JSON file replacing the pair catalog");
  verify->add_option("--function", verify_function, "single catalog function");
  verify->add_flag("--informational", informational, "include informational catalog entries");
  add_run_options(verify, verify_cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  auto configured = [&](RunConfig& cfg) {
    const std::string problem = validate(cfg);
    if (!problem.empty()) err << "error: " << problem << "\n";
    return problem.empty();
  };

  if (list->parsed()) return cmd_list_kernels(as_json, out);
  if (check->parsed()) {
    if (!configured(check_cfg)) return 2;
    return cmd_check_pair(check_spec, check_cfg, out, err);
  }
  if (apply->parsed()) {
    if (!configured(apply_cfg)) return 2;
    return cmd_apply(op, apply_spec, apply_function, rl_path, apply_cfg, out, err);
  }
  if (!configured(verify_cfg)) return 2;
  return cmd_verify(theorem, verify_spec, verify_function, informational, verify_cfg, out, err);
}

}  // namespace gfc::cli
