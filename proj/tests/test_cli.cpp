#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "ratext/cli.hpp"

using namespace ratext;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() / ("ratext_cli_test_" + name);
  std::filesystem::remove_all(p);
  return p;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kMorse = R"({"family":"M","h":"10/3","mu":"1",
  "seeds":[{"overshoot":7},{"overshoot":8}],
  "checks":["nodeless","isospectral","shape-invariance"]})";

}  // namespace

TEST_CASE("config parsing") {
  const JobConfig c = JobConfig::parse(kMorse);
  CHECK(c.family == FamilyTag::M);
  CHECK(c.h == Rational(10, 3));
  CHECK(c.seeds == std::vector<SeedKind>{SeedKind::overshoot(7), SeedKind::overshoot(8)});
  CHECK(c.checks.size() == 3);
  CHECK(JobConfig::from_json(c.to_json()).to_json() == c.to_json());

  CHECK_THROWS_WITH_AS(JobConfig::parse(R"({"family":"M","h":"10/3","mu":"1","colour":1})"),
                       doctest::Contains("/colour"), ConfigError);
  CHECK_THROWS_WITH_AS(JobConfig::parse(R"({"family":"M","h":"10/3","numeric":{"gird":1}})"),
                       doctest::Contains("/numeric/gird"), ConfigError);
  CHECK_THROWS_WITH_AS(JobConfig::parse(R"({"family":"M","h":"10/3","seeds":[{"overshoot":7},{"sideways":1}]})"),
                       doctest::Contains("/seeds/1"), ConfigError);
  CHECK_THROWS_WITH_AS(JobConfig::parse(R"({"family":"M","h":3.3})"), doctest::Contains("/h"), ConfigError);
  CHECK_THROWS_WITH_AS(JobConfig::parse(R"({"family":"M","checks":["speed"]})"), doctest::Contains("/checks/0"),
                       ConfigError);
  CHECK_THROWS_AS(JobConfig::parse("{\"family\": "), ConfigError);
  CHECK_THROWS_WITH_AS(JobConfig::parse(R"({"family":"M","h":"10/3","mu":"1","seeds":[{"overshoot":5}]})").spec(),
                       doctest::Contains("invalid seed range"), InvalidSeedError);
  CHECK_THROWS_AS(JobConfig::parse(R"({"family":"M","h":"3","mu":"1"})").spec(), ConfigError);
}

TEST_CASE("run: Morse pipeline passes and reports round-trip") {
  JobConfig c = JobConfig::parse(kMorse);
  c.out_dir = scratch("morse").string();
  const RunReport r = run(c, Command::Verify);
  CHECK(r.pass);
  CHECK(exit_code(r) == 0);
  CHECK(r.checks.size() == 3);
  CHECK(r.system["ell"] == 14);
  CHECK(r.system["nodeless"] == true);
  CHECK(r.system["xi"].size() == 15);
  const nlohmann::json j = nlohmann::json::parse(slurp(r.artifacts.at("report.json")));
  CHECK(RunReport::from_json(j) == r);
  CHECK(RunReport::from_json(r.to_json()) == r);
}

TEST_CASE("run: failed checks give exit code 1") {
  JobConfig c = JobConfig::parse(
      R"({"family":"hst","h":"7/2","mu":"1","half_integer":true,"seeds":[{"overshoot":8}]})");
  c.out_dir = scratch("hst").string();
  const RunReport r = run(c, Command::Equivalence);
  CHECK_FALSE(r.pass);
  CHECK(exit_code(r) == 1);
  REQUIRE(r.checks.size() == 1);
  CHECK(r.checks[0].detail.find("equivalence unavailable") != std::string::npos);

  JobConfig s = JobConfig::parse(R"({"family":"s","h":"7/3","seeds":[{"overshoot":5}],"checks":["nodeless"]})");
  s.out_dir = scratch("s5").string();
  CHECK(exit_code(run(s, Command::Extend)) == 1);
}

TEST_CASE("outputs are deterministic") {
  JobConfig c = JobConfig::parse(kMorse);
  std::string first;
  for (int k = 0; k < 2; ++k) {
    c.out_dir = scratch("det" + std::to_string(k)).string();
    run(c, Command::Spectrum);
    run(c, Command::Curve);
    const std::string all = slurp(std::filesystem::path(c.out_dir) / "spectrum.csv") +
                            slurp(std::filesystem::path(c.out_dir) / "potential.csv") +
                            slurp(std::filesystem::path(c.out_dir) / "curve.csv");
    if (k == 0) {
      first = all;
    } else {
      CHECK(all == first);
    }
  }
  CHECK(first.find("1,5.6666666666666661,") != std::string::npos);
}

TEST_CASE("energy curve regions") {
  const auto labels = [](const EnergyCurve& c, const Rational& n) {
    for (const auto& s : c.samples) {
      if (s.n == n) return s.region;
    }
    return std::string("?");
  };
  const Params m = Params::morse(Rational(10, 3), Rational(1));
  const EnergyCurve cm = energy_curve(m, 0, 12, 1);
  for (long n = 0; n <= 3; ++n) CHECK(labels(cm, n) == "a");
  for (long n = 4; n <= 6; ++n) CHECK(labels(cm, n) != "b");
  for (long n = 7; n <= 12; ++n) CHECK(labels(cm, n) == "b");
  const std::string csv = curve_csv(cm);
  CHECK(csv.rfind("n,E,region,discrete\n", 0) == 0);

  const EnergyCurve rm = energy_curve(Params::rosen_morse(Rational(10, 3), Rational(4)), 0, 10, Rational(1, 4));
  std::set<std::string> bs;
  for (const auto& s : rm.samples) {
    if (s.region.front() == 'b') bs.insert(s.region);
  }
  CHECK(bs == std::set<std::string>{"b1", "b2", "b3"});

  const EnergyCurve kh = energy_curve(Params::kh(Rational(5, 3), Rational(9)), -4, 4, 1);
  long c1 = 0;
  for (const auto& s : kh.samples) {
    if (s.region == "c1") ++c1;
  }
  CHECK(c1 == 1);
  CHECK(labels(kh, -1) == "c1");  // v = 0
}
