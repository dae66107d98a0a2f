#include "ratext/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace ratext {

using nlohmann::json;

std::string command_name(Command c) {
  switch (c) {
    case Command::Extend: return "extend";
    case Command::Classify: return "classify";
    case Command::Spectrum: return "spectrum";
    case Command::Verify: return "verify";
    case Command::Curve: return "curve";
    case Command::Equivalence: return "equivalence";
  }
  return "?";
}

Command parse_command(std::string_view s) {
  for (Command c : {Command::Extend, Command::Classify, Command::Spectrum, Command::Verify, Command::Curve,
                    Command::Equivalence}) {
    if (command_name(c) == s) return c;
  }
  throw ConfigError("unknown command '" + std::string(s) + "'");
}

const std::vector<std::string>& JobConfig::known_checks() {
  static const std::vector<std::string> k{"nodeless", "isospectral", "norms", "shape-invariance",
                                          "ddxW", "halfint-equivalence", "classify"};
  return k;
}

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw ConfigError(where + ": " + what); }

void reject_unknown(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
  if (!j.is_object()) fail(where.empty() ? "/" : where, "expected an object");
  for (const auto& [k, v] : j.items()) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* s) { return k == s; })) {
      fail(where + "/" + k, "unknown key");
    }
  }
}

Rational rational_at(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) fail(where, "expected an exact rational string such as \"10/3\"");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const std::exception& e) {
    fail(where, e.what());
  }
}

double number_at(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

std::string rat_str(const Rational& r) { return r.to_string(); }

}  // namespace

JobConfig JobConfig::from_json(const json& j) {
  reject_unknown(j, "", {"family", "h", "mu", "g", "half_integer", "seeds", "checks", "variant", "krein_adler_n",
                         "numeric", "curve", "output"});
  JobConfig c;
  if (!j.contains("family") || !j["family"].is_string()) fail("/family", "required string");
  try {
    c.family = parse_family_tag(j["family"].get<std::string>());
  } catch (const DomainError& e) {
    fail("/family", e.what());
  }
  for (const char* k : {"h", "mu", "g"}) {
    if (!j.contains(k)) continue;
    const Rational v = rational_at(j[k], std::string("/") + k);
    if (std::string(k) == "h") c.h = v;
    if (std::string(k) == "mu") c.mu = v;
    if (std::string(k) == "g") c.g = v;
  }
  if (j.contains("half_integer")) {
    if (!j["half_integer"].is_boolean()) fail("/half_integer", "expected a boolean");
    c.half_integer = j["half_integer"].get<bool>();
  }
  if (j.contains("seeds")) {
    const json& s = j["seeds"];
    if (!s.is_array()) fail("/seeds", "expected an array");
    for (std::size_t i = 0; i < s.size(); ++i) {
      const std::string w = "/seeds/" + std::to_string(i);
      const json& e = s[i];
      if (!e.is_object() || e.size() != 1) fail(w, "expected a single-key object such as {\"overshoot\": 7}");
      const auto it = e.begin();
      SeedKind k;
      try {
        k.tag = parse_seed_kind(it.key());
      } catch (const DomainError& ex) {
        fail(w, ex.what());
      }
      if (!it.value().is_number_integer()) fail(w + "/" + it.key(), "expected an integer degree");
      k.v = it.value().get<long>();
      c.seeds.push_back(k);
    }
  }
  if (j.contains("checks")) {
    const json& s = j["checks"];
    if (!s.is_array()) fail("/checks", "expected an array");
    for (std::size_t i = 0; i < s.size(); ++i) {
      const std::string w = "/checks/" + std::to_string(i);
      if (!s[i].is_string()) fail(w, "expected a string");
      const std::string name = s[i].get<std::string>();
      const auto& kc = known_checks();
      if (std::find(kc.begin(), kc.end(), name) == kc.end()) fail(w, "unknown check '" + name + "'");
      if (std::find(c.checks.begin(), c.checks.end(), name) == c.checks.end()) c.checks.push_back(name);
    }
  }
  if (j.contains("variant")) {
    if (!j["variant"].is_string()) fail("/variant", "expected a string");
    try {
      c.variant = parse_shape_variant(j["variant"].get<std::string>());
    } catch (const DomainError& e) {
      fail("/variant", e.what());
    }
  }
  if (j.contains("krein_adler_n")) {
    if (!j["krein_adler_n"].is_number_integer()) fail("/krein_adler_n", "expected an integer");
    c.krein_adler_n = j["krein_adler_n"].get<long>();
  }
  if (j.contains("numeric")) {
    const json& n = j["numeric"];
    reject_unknown(n, "/numeric", {"grid", "truncate", "tolerance", "margin"});
    if (n.contains("grid")) c.numeric.grid = number_at(n["grid"], "/numeric/grid");
    if (n.contains("truncate")) c.numeric.truncate = number_at(n["truncate"], "/numeric/truncate");
    if (n.contains("tolerance")) c.numeric.tolerance = number_at(n["tolerance"], "/numeric/tolerance");
    if (n.contains("margin")) c.numeric.margin = number_at(n["margin"], "/numeric/margin");
    if (!(c.numeric.grid > 0.0)) fail("/numeric/grid", "must be positive");
    if (!(c.numeric.truncate > 0.0)) fail("/numeric/truncate", "must be positive");
  }
  if (j.contains("curve")) {
    const json& n = j["curve"];
    reject_unknown(n, "/curve", {"n_lo", "n_hi", "step"});
    if (n.contains("n_lo")) c.curve.n_lo = rational_at(n["n_lo"], "/curve/n_lo");
    if (n.contains("n_hi")) c.curve.n_hi = rational_at(n["n_hi"], "/curve/n_hi");
    if (n.contains("step")) c.curve.step = rational_at(n["step"], "/curve/step");
    if (c.curve.step.sign() <= 0) fail("/curve/step", "must be positive");
  }
  if (j.contains("output")) {
    const json& o = j["output"];
    reject_unknown(o, "/output", {"dir"});
    if (o.contains("dir")) {
      if (!o["dir"].is_string()) fail("/output/dir", "expected a string");
      c.out_dir = o["dir"].get<std::string>();
    }
  }
  return c;
}

JobConfig JobConfig::parse(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("/: ") + e.what());
  }
  return from_json(j);
}

JobConfig JobConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

json JobConfig::to_json() const {
  json j;
  j["family"] = family_name(family);
  j["h"] = rat_str(h);
  j["mu"] = rat_str(mu);
  j["g"] = rat_str(g);
  j["half_integer"] = half_integer;
  j["seeds"] = json::array();
  for (const auto& k : seeds) j["seeds"].push_back(json{{seed_kind_name(k.tag), k.v}});
  j["checks"] = checks;
  if (variant) j["variant"] = shape_variant_name(*variant);
  if (krein_adler_n) j["krein_adler_n"] = *krein_adler_n;
  j["numeric"] = {{"grid", numeric.grid}, {"truncate", numeric.truncate}, {"tolerance", numeric.tolerance},
                  {"margin", numeric.margin}};
  json cv{{"step", rat_str(curve.step)}};
  if (curve.n_lo) cv["n_lo"] = rat_str(*curve.n_lo);
  if (curve.n_hi) cv["n_hi"] = rat_str(*curve.n_hi);
  j["curve"] = cv;
  j["output"] = {{"dir", out_dir}};
  return j;
}

Params JobConfig::params() const {
  try {
    return Params::make(family, h, mu, g, half_integer);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("/: ") + e.what());
  }
}

ExtensionSpec JobConfig::spec() const {
  const Params p = params();
  try {
    return ExtensionSpec::make(p, seeds);
  } catch (const InvalidSeedError&) {
    throw;
  } catch (const DomainError& e) {
    throw ConfigError(std::string("/seeds: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Reports

json params_to_json(const Params& p) {
  json j{{"family", family_name(p.family)}, {"half_integer", p.half_integer_mode}};
  switch (p.family) {
    case FamilyTag::M:
    case FamilyTag::RM:
    case FamilyTag::HST:
      j["h"] = rat_str(p.h);
      j["mu"] = rat_str(p.mu);
      break;
    case FamilyTag::S: j["h"] = rat_str(p.h); break;
    case FamilyTag::KH:
      j["g"] = rat_str(p.g);
      j["mu"] = rat_str(p.mu);
      break;
    case FamilyTag::HDPT:
      j["g"] = rat_str(p.g);
      j["h"] = rat_str(p.h);
      break;
  }
  return j;
}

json system_to_json(const ExtendedSystem& sys) {
  json j;
  j["family"] = family_name(sys.spec.params.family);
  j["params"] = params_to_json(sys.spec.params);
  j["D"] = json::array();
  for (const auto& s : sys.seeds) {
    j["D"].push_back({{"kind", seed_kind_name(s.kind.tag)},
                      {"v", s.kind.v},
                      {"energy", rat_str(s.energy)},
                      {"type", boundary_type_name(s.boundary_type)}});
  }
  j["xi"] = json::array();
  for (const auto& c : sys.xi.real_coeffs()) j["xi"].push_back(rat_str(c));
  j["ell"] = sys.ell;
  j["degree"] = sys.xi.degree();
  j["degenerate"] = sys.degenerate;
  j["nodeless"] = sys.nodes.nodeless;
  j["root_count"] = sys.nodes.root_count;
  if (sys.nodes.endpoint_signs_agree) j["endpoint_signs_agree"] = *sys.nodes.endpoint_signs_agree;
  j["spectrum"] = json::array();
  for (const auto& l : sys.spectrum) {
    j["spectrum"].push_back({{"n", l.n}, {"energy", rat_str(l.energy)}, {"added", l.added}});
  }
  return j;
}

json RunReport::to_json() const {
  json j;
  j["command"] = command;
  j["pass"] = pass;
  j["checks"] = json::array();
  for (const auto& c : checks) {
    j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}, {"seconds", c.seconds}});
  }
  j["artifacts"] = artifacts;
  j["system"] = system;
  return j;
}

RunReport RunReport::from_json(const json& j) {
  RunReport r;
  r.command = j.at("command").get<std::string>();
  r.pass = j.at("pass").get<bool>();
  for (const auto& c : j.at("checks")) {
    r.checks.push_back({c.at("name").get<std::string>(), c.at("pass").get<bool>(), c.at("detail").get<std::string>(),
                        c.at("seconds").get<double>()});
  }
  r.artifacts = j.at("artifacts").get<std::map<std::string, std::string>>();
  r.system = j.at("system");
  return r;
}

bool RunReport::operator==(const RunReport& o) const {
  return command == o.command && pass == o.pass && checks == o.checks && artifacts == o.artifacts &&
         system == o.system;
}

namespace {

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string curve_csv(const EnergyCurve& c) {
  std::string out = "n,E,region,discrete\n";
  for (const auto& s : c.samples) {
    out += rat_str(s.n) + "," + g17(s.energy.to_double()) + "," + s.region + "," + (s.discrete ? "1" : "0") + "\n";
  }
  return out;
}

std::string potential_csv(const ExtensionSpec& spec, double truncate, long points) {
  const Params& p = spec.params;
  const PotentialEvaluator ext = extended_potential(spec);
  const bool half = x_domain(p.family) == XDomain::HalfLine;
  const double lo = half ? truncate / static_cast<double>(points) : -truncate;
  const double hi = truncate;
  std::string out = "x,U,U_ext\n";
  for (long i = 0; i < points; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    out += g17(x) + "," + g17(potential_value(p, x)) + "," + g17(ext(x)) + "\n";
  }
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Runner {
  const JobConfig& cfg;
  RunReport rep;
  std::optional<ExtensionSpec> spec;
  std::optional<ExtendedSystem> sys;

  const ExtendedSystem& system() {
    if (!sys) {
      sys = extend(*spec);
      rep.system = system_to_json(*sys);
    }
    return *sys;
  }

  SpectrumOptions spectrum_options() const {
    SpectrumOptions o;
    o.grid = cfg.numeric.grid;
    o.truncate = cfg.numeric.truncate;
    o.margin = cfg.numeric.margin;
    return o;
  }

  void write(const std::string& name, const std::string& text) {
    const std::filesystem::path path = std::filesystem::path(cfg.out_dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    rep.artifacts[name] = path.string();
  }

  template <class F>
  void check(const std::string& name, F&& body) {
    const auto t0 = Clock::now();
    CheckResult c;
    c.name = name;
    try {
      c.pass = body(c.detail);
    } catch (const std::exception& e) {
      c.pass = false;
      c.detail = e.what();
    }
    c.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    rep.pass = rep.pass && c.pass;
    rep.checks.push_back(std::move(c));
  }

  void run_check(const std::string& name) {
    if (name == "nodeless") {
      check(name, [&](std::string& d) {
        const auto& n = system().nodes;
        d = "roots " + std::to_string(n.root_count) + (n.degenerate ? ", root at an interval end" : "");
        return n.nodeless && n.endpoint_signs_agree.value_or(true);
      });
    } else if (name == "classify") {
      check(name, [&](std::string& d) {
        for (const auto& s : spec->make_seeds()) {
          if (!d.empty()) d += "; ";
          d += s.kind.to_string() + ": " + boundary_type_name(s.boundary_type) + ", E = " + rat_str(s.energy);
        }
        return true;
      });
    } else if (name == "isospectral") {
      check(name, [&](std::string& d) {
        const IsospectralReport r = verify_isospectral(*spec, spectrum_options(), cfg.numeric.tolerance);
        write("spectrum.csv", spectrum_csv(r));
        double worst = 0.0;
        for (const auto& l : r.levels) worst = std::max(worst, l.abs_err);
        d = std::to_string(r.levels.size()) + " levels, max abs error " + g17(worst);
        if (!r.detail.empty()) d += "; " + r.detail;
        for (const auto& w : r.numeric.warnings) d += "; warning: " + w;
        return r.pass;
      });
    } else if (name == "norms") {
      check(name, [&](std::string& d) {
        const long top = nmax(spec->params);
        std::vector<RatioFunction> fs;
        for (long n = 0; n <= top; ++n) fs.push_back(extended_eigenfunction(*spec, n));
        double worst_diag = 0.0, worst_off = 0.0;
        for (long a = 0; a <= top; ++a) {
          const double ha = extended_norm(*spec, a);
          const double ga = quadrature_inner_product(fs[a], fs[a]).value;
          worst_diag = std::max(worst_diag, std::abs(ga - ha) / std::abs(ha));
          for (long b = 0; b < a; ++b) {
            const double off = quadrature_inner_product(fs[a], fs[b]).value;
            worst_off = std::max(worst_off, std::abs(off) / std::sqrt(std::abs(ha * extended_norm(*spec, b))));
          }
        }
        d = "diagonal rel error " + g17(worst_diag) + ", off-diagonal " + g17(worst_off);
        return worst_diag <= 1e-6 && worst_off <= 1e-8;
      });
    } else if (name == "shape-invariance") {
      check(name, [&](std::string& d) {
        const ShapeVariant v = cfg.variant.value_or(default_shape_variant(*spec));
        const IdentityReport r = verify_shape_invariance(*spec, v);
        d = shape_variant_name(v) + ": " + std::to_string(r.sample_count) + " samples, max residual " +
            rat_str(r.max_residual);
        return r.pass;
      });
    } else if (name == "ddxW") {
      check(name, [&](std::string& d) {
        const long m = static_cast<long>(spec->seeds.size());
        if (m < 2) {
          d = "needs at least two seeds";
          return false;
        }
        bool ok = true;
        for (long s = 1; s < m; ++s) {
          const IdentityReport r = verify_ddx_wronskian(*spec, s);
          if (!d.empty()) d += "; ";
          d += "s=" + std::to_string(s) + " max residual " + rat_str(r.max_residual);
          ok = ok && r.pass;
        }
        return ok;
      });
    } else if (name == "halfint-equivalence") {
      check(name, [&](std::string& d) {
        const EquivalenceReport r = verify_halfint_equivalence(*spec, cfg.krein_adler_n);
        if (!r.available) {
          d = "equivalence unavailable: " + r.reason;
          if (r.bar_params) d += std::string("; direct comparison ") + (r.proportional ? "proportional" : "not proportional");
          return false;
        }
        d = std::string(r.proportional ? "proportional" : "not proportional") + ", deg Xi_barD = " +
            std::to_string(r.bar_degree) + ", l_barD = " + std::to_string(r.ell_bar);
        return r.pass;
      });
    }
  }
};

std::vector<std::string> default_checks(Command c) {
  switch (c) {
    case Command::Classify: return {"classify"};
    case Command::Spectrum: return {"isospectral"};
    case Command::Equivalence: return {"halfint-equivalence"};
    default: return {};
  }
}

}  // namespace

RunReport run(const JobConfig& cfg, Command cmd) {
  Runner r{cfg, {}, {}, {}};
  r.rep.command = command_name(cmd);
  r.spec = cfg.spec();
  std::filesystem::create_directories(cfg.out_dir);
  if (cmd == Command::Extend || cmd == Command::Verify || cmd == Command::Spectrum) r.system();
  std::vector<std::string> checks = default_checks(cmd);
  for (const auto& c : cfg.checks) {
    if (std::find(checks.begin(), checks.end(), c) == checks.end()) checks.push_back(c);
  }
  for (const auto& c : checks) r.run_check(c);
  if (cmd == Command::Spectrum) r.write("potential.csv", potential_csv(*r.spec, cfg.numeric.truncate));
  if (cmd == Command::Curve) {
    const Params& p = r.spec->params;
    const Rational lo = cfg.curve.n_lo.value_or(Rational(0));
    const Rational hi = cfg.curve.n_hi.value_or(Rational(std::max<long>(20, 3 * nmax(p) + 6)));
    r.write("curve.csv", curve_csv(energy_curve(p, lo, hi, cfg.curve.step)));
  }
  const std::filesystem::path report = std::filesystem::path(cfg.out_dir) / "report.json";
  r.rep.artifacts["report.json"] = report.string();
  std::ofstream(report, std::ios::binary) << r.rep.to_json().dump(2) << "\n";
  return r.rep;
}

int exit_code(const RunReport& r) { return r.pass ? 0 : 1; }

}  // namespace ratext
