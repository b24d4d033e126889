#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"
#include "doctest.h"

using gfc::cli::format_real;
using gfc::cli::run_cli;

namespace {

const std::string kData = GFC_TEST_DATA;

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run gfc_run(std::vector<std::string> args) {
  args.insert(args.begin(), "gfc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  Run r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string data(const std::string& name) { return kData + "/" + name; }

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "gfc_test_cli";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto p = scratch(name);
  std::ofstream(p) << text;
  return p.string();
}

// Parses a "t,value" CSV table.
std::vector<std::pair<double, double>> rows(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  REQUIRE(line == "t,value");
  std::vector<std::pair<double, double>> out;
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    out.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
  }
  return out;
}

double value_at(const std::vector<std::pair<double, double>>& table, double t) {
  for (const auto& [x, v] : table) {
    if (std::abs(x - t) < 1e-12) return v;
  }
  FAIL("no row at t = " << t);
  return 0.0;
}

}  // namespace

TEST_CASE("real formatting") {
  CHECK(format_real(0.0) == "0");
  CHECK(format_real(-0.0) == "0");
  CHECK(format_real(0.14106298077525) == "0.141062980775");
  CHECK(format_real(1e-4) == "0.0001");
  CHECK(format_real(9.99e-5) == "9.99000000000e-05");
  CHECK(format_real(999999.0) == "999999");
  CHECK(format_real(1e6) == "1.00000000000e+06");
  CHECK(format_real(-2.5e-7) == "-2.50000000000e-07");
  CHECK(format_real(1.0 / 3.0) == "0.333333333333");
  CHECK(format_real(INFINITY) == "inf");
  CHECK(format_real(-INFINITY) == "-inf");
  CHECK(format_real(NAN) == "nan");
}

TEST_CASE("pair specs build the same pairs as the builders") {
  using namespace gfc;
  auto same = [](const KernelPair& a, const KernelPair& b) {
    CHECK(a.M.key() == b.M.key());
    CHECK(a.N.key() == b.N.key());
    CHECK(a.order == b.order);
    CHECK(a.provenance == b.provenance);
  };
  auto read = [](const std::string& file) {
    std::ifstream f(data(file));
    std::stringstream s;
    s << f.rdbuf();
    return cli::parse_pair_spec(s.str());
  };
  same(read("power_0.5.json"), atomic_pair(sonine_pair_power(0.5), 1));
  const std::vector<KernelCouple> couples = {sonine_pair_power(0.3), sonine_pair_tempered(0.4, 1.0)};
  same(read("t2_power_tempered.json"), build_tn(couples));
  same(read("bessel_l2.json"), atomic_pair(bessel_pair(2, 0.5), 2));
  same(read("t312_power.json"), build_tnml(atomic_pair(sonine_pair_power(0.5), 1), 3, 2));
  const std::vector<KernelPair> bases = {atomic_pair(sonine_pair_kummer(0.4, 0.7, 2.0), 1),
                                         atomic_pair(sonine_pair_power(0.25), 1)};
  same(read("multiset.json"), build_multiset(bases, 4, 3));
  same(read("mismatched.json"), atomic_pair({power_kernel(0.3), power_kernel(0.5)}, 1));

  const auto sides = cli::parse_pair_spec(R"({"order": 2, "construction": "atomic", "factors": [
      {"family": "tempered", "params": {"alpha": 0.4, "lambda": 1, "side": "nu"}},
      {"family": "moment", "params": {"k": 2}}]})");
  CHECK(sides.M.key() == tempered_partner_kernel(0.4, 1.0).label());
  CHECK(sides.N.key() == moment_kernel(2).label());
}

TEST_CASE("malformed pair specs report the offending line") {
  struct Bad {
    const char* text;
    int line;
  };
  const Bad cases[] = {
      {"{\n  \"construction\": \"tn\",\n  \"factors\": []\n}", 1},
      {"{\n  \"order\": 1,\n  \"construction\": \"tn\"\n  \"factors\": []\n}", 4},
      {"{\n  \"order\": 0,\n  \"construction\": \"tn\",\n  \"factors\": [{}]\n}", 2},
      {"{\n  \"order\": 1.5,\n  \"construction\": \"tn\",\n  \"factors\": [{}]\n}", 2},
      {"{\n  \"order\": 1,\n  \"construction\": \"tx\",\n  \"factors\": [{\"family\": \"power\"}]\n}", 3},
      {"{\n  \"order\": 1,\n  \"construction\": \"tn\",\n  \"factors\": []\n}", 4},
      {"{\n  \"order\": 2,\n  \"construction\": \"tn\",\n  \"factors\": [\n"
       "    {\"family\": \"power\", \"params\": {\"alpha\": 0.5}},\n"
       "    {\"family\": \"power\", \"params\": {\"alpha\": 1.5}}\n  ]\n}",
       6},
      {"{\n  \"order\": 1,\n  \"construction\": \"atomic\",\n  \"factors\": [\n"
       "    {\"family\": \"gamma\", \"params\": {}}\n  ]\n}",
       5},
      {"{\n  \"order\": 1,\n  \"construction\": \"atomic\",\n  \"factors\": [\n"
       "    {\"family\": \"power\", \"params\": {\"a\": 0.5}}\n  ]\n}",
       5},
      {"{\n  \"order\": 3,\n  \"construction\": \"tnml\",\n  \"factors\": [{\"family\": \"power\", "
       "\"params\": {\"alpha\": 0.5}}],\n  \"l\": 7\n}",
       5},
      {"{\n  \"order\": 3,\n  \"construction\": \"tnml\",\n  \"factors\": [{\"family\": \"power\", "
       "\"params\": {\"alpha\": 0.5}}]\n}",
       1},
      {"{\n  \"order\": 1,\n  \"construction\": \"atomic\",\n  \"factors\": [{\"family\": \"power\", "
       "\"params\": {\"alpha\": 0.5}}],\n  \"colour\": 1\n}",
       5},
      {"[1, 2]", 1},
      {"", 1},
  };
  int index = 0;
  for (const auto& c : cases) {
    CAPTURE(c.text);
    try {
      gfc::cli::parse_pair_spec(c.text);
      FAIL("accepted a malformed spec");
    } catch (const gfc::cli::SpecError& e) {
      CHECK(e.line() == c.line);
    }
    const std::string path = write_temp("bad" + std::to_string(index++) + ".json", c.text);
    const Run r = gfc_run({"check-pair", "--pair", path});
    CHECK(r.code == 2);
    CHECK(r.err.find(path + ":" + std::to_string(c.line) + ":") == 0);
  }
}

TEST_CASE("usage errors exit with 2") {
  CHECK(gfc_run({}).code == 2);
  CHECK(gfc_run({"frobnicate"}).code == 2);
  CHECK(gfc_run({"list-kernels", "--bogus"}).code == 2);
  CHECK(gfc_run({"--help"}).code == 0);
  const std::string p = data("power_0.5.json");
  CHECK(gfc_run({"check-pair"}).code == 2);
  CHECK(gfc_run({"check-pair", "--pair", data("no_such_file.json")}).code == 2);
  CHECK(gfc_run({"check-pair", "--pair", p, "--T", "0"}).code == 2);
  CHECK(gfc_run({"check-pair", "--pair", p, "--step", "-0.1"}).code == 2);
  CHECK(gfc_run({"check-pair", "--pair", p, "--step", "abc"}).code == 2);
  CHECK(gfc_run({"check-pair", "--pair", p, "--step", "0.3"}).code == 2);
  CHECK(gfc_run({"check-pair", "--pair", p, "--T", "1", "--step", "0.25"}).code == 2);
  CHECK(gfc_run({"check-pair", "--pair", p, "--eps-factor", "0"}).code == 2);
  CHECK(gfc_run({"check-pair", "--pair", p, "--format", "xml"}).code == 2);
  CHECK(gfc_run({"apply", "fft", "--pair", p, "--function", "1"}).code == 2);
  CHECK(gfc_run({"apply", "gfi", "--pair", p, "--function", "tan"}).code == 2);
  CHECK(gfc_run({"verify", "--theorem", "ft3"}).code == 2);
  CHECK(gfc_run({"verify", "--function", "tan"}).code == 2);
}

TEST_CASE("list-kernels") {
  const Run text = gfc_run({"list-kernels"});
  CHECK(text.code == 0);
  int families = 0;
  std::istringstream in(text.out);
  for (std::string line; std::getline(in, line);) families += !line.empty() && line[0] != ' ';
  CHECK(families == 5);

  const Run js = gfc_run({"list-kernels", "--json"});
  CHECK(js.code == 0);
  const auto j = nlohmann::json::parse(js.out);
  REQUIRE(j.size() == 5);
  CHECK(j[0]["family"] == "power");
  CHECK(j[4]["family"] == "moment");
}

TEST_CASE("check-pair exit codes and reports") {
  const Run pass = gfc_run({"check-pair", "--pair", data("power_0.5.json")});
  CHECK(pass.code == 0);

  const Run fail = gfc_run({"check-pair", "--pair", data("mismatched.json")});
  CHECK(fail.code == 1);
  // (h_0.3 * h_0.5)(1) - 1 = 1/Gamma(0.8) - 1.
  const double oracle = 1.0 / std::tgamma(0.8) - 1.0;
  CHECK(std::abs(value_at(rows(fail.out), 1.0) - oracle) <= 1e-3);

  const Run js = gfc_run({"check-pair", "--pair", data("bessel_l2.json"), "--format", "json"});
  CHECK(js.code == 0);
  const auto j = nlohmann::json::parse(js.out);
  CHECK(j["order"] == 2);
  CHECK(j["report"]["verdict"] == "pass");
  CHECK(j["report"]["sup_residual"].get<double>() <= 5e-3);
  CHECK(j["report"]["profile"]["t"].size() == j["report"]["profile"]["residual"].size());

  const auto out = scratch("report.csv");
  std::filesystem::remove(out);
  const Run to_file = gfc_run({"check-pair", "--pair", data("power_0.5.json"), "--out", out.string()});
  CHECK(to_file.code == 0);
  CHECK(to_file.out.empty());
  std::ifstream f(out);
  std::string header;
  std::getline(f, header);
  CHECK(header == "t,value");

  CHECK(gfc_run({"check-pair", "--pair", data("missing_order.json")}).code == 2);
}

TEST_CASE("apply") {
  const std::string p = data("power_0.5.json");
  const Run gfi = gfc_run({"apply", "gfi", "--pair", p, "--function", "1"});
  CHECK(gfi.code == 0);
  const auto table = rows(gfi.out);
  // h_0.5 * 1 = h_1.5, h_1.5(1) = 2/sqrt(pi).
  CHECK(value_at(table, 1.0) == doctest::Approx(2.0 / std::sqrt(std::numbers::pi)).epsilon(1e-10));
  CHECK(table.front().first == doctest::Approx(10.0 / 512.0));
  CHECK(table.back().first == doctest::Approx(5.0));

  const Run caputo = gfc_run({"apply", "caputo", "--pair", p, "--function", "1"});
  CHECK(caputo.code == 0);
  for (const auto& [t, v] : rows(caputo.out)) CHECK(v == 0.0);

  const Run rl = gfc_run({"apply", "rl", "--pair", p, "--function", "1", "--format", "json"});
  CHECK(rl.code == 0);
  const auto j = nlohmann::json::parse(rl.out);
  CHECK(j["rl_path"] == "regularized");
  CHECK(j["t"].size() == j["value"].size());

  const Run high = gfc_run({"apply", "rl", "--pair", data("order5.json"), "--function", "1"});
  CHECK(high.code == 1);
  CHECK(high.err.find("order <= 4") != std::string::npos);

  CHECK(gfc_run({"apply", "caputo", "--pair", p, "--function", "h0.6"}).code == 1);
}

TEST_CASE("verify filters, formats and determinism") {
  const Run ft2 = gfc_run({"verify", "--theorem", "ft2-caputo"});
  CHECK(ft2.code == 0);
  std::istringstream in(ft2.out);
  std::string line;
  std::getline(in, line);
  CHECK(line.rfind("key,pair,order,function,theorem", 0) == 0);
  int cases = 0;
  while (std::getline(in, line)) {
    ++cases;
    CHECK(line.find(",ft2-caputo,") != std::string::npos);
    CHECK(line.find(",yes,pass,") != std::string::npos);
  }
  CHECK(cases == 20);

  const std::vector<std::string> args = {"verify",     "--pair",   data("t2_power_tempered.json"),
                                         "--function", "cos",      "--format",
                                         "json",       "--step",   "1/64"};
  const Run a = gfc_run(args);
  const Run b = gfc_run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j["cases"].size() == 4);
  CHECK(j["gating_cases"] == 4);
  CHECK(j["gating_passed"] == true);

  // Halving the step shrinks the residuals.
  auto halved = args;
  halved.back() = "1/128";
  const auto h = nlohmann::json::parse(gfc_run(halved).out);
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& coarse = j["cases"][i]["report"];
    const auto& fine = h["cases"][i]["report"];
    CAPTURE(j["cases"][i]["theorem"]);
    CHECK(fine["sup_residual"].get<double>() <= coarse["sup_residual"].get<double>() + 1e-10);
  }
}
