#include "qplane_cli/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qplane/errors.hpp"
#include "qplane/ktheory.hpp"
#include "qplane/report_store.hpp"
#include "qplane_cli/config.hpp"
#include "qplane_cli/suites.hpp"

namespace qplane::cli {

namespace {

constexpr const char* kDefaultStore = "./qplane-runs.ndjson";

struct Args {
  std::string config_path;
  bool json = false;
  std::string class_spec;
  std::string hom_spec;
  std::string suite = "all";
  std::string store_path;
  bool no_store = false;
  bool non_unital = false;
  long id_a = 0;
  long id_b = 0;
};

SpectrumConfig load_with_env(const std::string& path) {
  SpectrumConfig c = load_config(path);
  if (const char* env = std::getenv("QPLANE_MAX_WINDOW"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1 || v > (1L << 24)) throw ModelError("QPLANE_MAX_WINDOW must be a positive integer");
    if (v < c.options.pairing.initial_window)
      throw ModelError("QPLANE_MAX_WINDOW is below initial_window");
    c.options.pairing.max_window = static_cast<int>(v);
  }
  return c;
}

std::string store_path(const Args& a) {
  if (!a.store_path.empty()) return a.store_path;
  if (const char* env = std::getenv("QPLANE_STORE"); env && *env) return env;
  return kDefaultStore;
}

nlohmann::json envelope(const std::string& command, const nlohmann::json& args, const nlohmann::json& config,
                        nlohmann::json result) {
  return {{"command", command}, {"args", args},       {"config", config},
          {"result", std::move(result)}, {"version", QPLANE_VERSION}};
}

std::string spectrum_line(const SpectrumConfig& c) {
  std::ostringstream os;
  os << "spectrum: " << (c.x->is_full() ? "full" : "generic") << ", q = " << to_string(c.x->q());
  if (!c.x->is_full()) {
    os << ", Y =";
    bool first = true;
    for (const auto& iv : c.x->components()) {
      os << (first ? " " : " u ") << "[" << to_string(iv.lo) << "," << to_string(iv.hi) << "]";
      first = false;
    }
  }
  return os.str();
}

nlohmann::json kgroup_json(const KGroupReport& r) {
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& g : r.generators) gens.push_back({{"name", g.name}, {"definition", g.definition}});
  return {{"k0_rank", r.k0_rank}, {"k1", "0"}, {"unital", r.unital}, {"summary", r.summary()}, {"generators", gens}};
}

int cmd_kgroups(const Args& a, std::ostream& out) {
  const auto c = load_with_env(a.config_path);
  const auto nu = kgroups(*c.x, false);
  const auto un = kgroups(*c.x, true);
  if (a.json) {
    out << envelope("kgroups", nlohmann::json::object(), c.raw,
                    {{"non_unital", kgroup_json(nu)}, {"unital", kgroup_json(un)}})
               .dump(2)
        << '\n';
    return kOk;
  }
  out << spectrum_line(c) << '\n';
  for (const auto* r : {&nu, &un}) {
    out << r->summary() << '\n';
    for (const auto& g : r->generators) out << "  [" << g.name << "]  " << g.definition << '\n';
  }
  return kOk;
}

nlohmann::json pairing_json(const PairingResult& r) {
  return {{"raw", r.raw},         {"rounded", r.rounded}, {"residual", r.residual},
          {"window_used", r.window_used}, {"exact", r.exact},     {"integral", r.integral}};
}

int cmd_pair(const Args& a, std::ostream& out) {
  const auto c = load_with_env(a.config_path);
  const auto p = parse_class_spec(a.class_spec, c);
  const auto f = parse_hom_spec(a.hom_spec, c);
  VerifyOptions vo;
  vo.grid_density = c.options.grid_density;
  const auto chk = verify_projection(p, vo);
  if (!chk.passed) throw ModelError(p.label + " fails the projection check (sup error " +
                                    std::to_string(chk.sup_error()) + ")");
  const auto r = pair(f, p.realized, c.options.pairing);

  if (a.json) {
    out << envelope("pair", {{"class", a.class_spec}, {"hom", a.hom_spec}}, c.raw,
                    {{"class", p.label}, {"hom", f.label()}, {"pairing", pairing_json(r)}})
               .dump(2)
        << '\n';
    return kOk;
  }
  out << "<" << f.label() << "," << p.label << "> = ";
  if (r.integral) out << r.rounded;
  else out << std::setprecision(12) << r.raw << "  NON-INTEGRAL";
  out << "  (residual " << std::setprecision(3) << r.residual << ", window " << r.window_used
      << (r.exact ? ", exact" : "") << ")\n";
  return kOk;
}

void print_suite(const SuiteResult& s, std::ostream& out) {
  out << "suite " << s.suite << ": " << (s.rows.size() - s.failures()) << "/" << s.rows.size() << " passed\n";
  std::size_t width = 0;
  for (const auto& r : s.rows) width = std::max(width, r.name.size());
  for (const auto& r : s.rows) {
    out << "  " << (r.pass ? "PASS " : "FAIL ") << std::left << std::setw(static_cast<int>(width)) << r.name
        << "  " << r.value.dump();
    if (!r.pass) out << "  expected " << r.expected.dump();
    if (!r.detail.empty()) out << "  [" << r.detail << "]";
    out << '\n';
  }
}

int cmd_verify(const Args& a, std::ostream& out, std::ostream& err) {
  const auto c = load_with_env(a.config_path);
  const auto names = expand_suite(a.suite, c);
  std::vector<SuiteResult> results;
  for (const auto& n : names) results.push_back(run_suite(n, c));

  bool ok = true;
  for (const auto& r : results) ok = ok && r.passed();

  if (!a.no_store) {
    RunStore store(store_path(a));
    const std::string hash = config_hash(c.raw);
    for (const auto& r : results) {
      RunRecord rec{utc_timestamp(), hash, r.suite, r.to_json(), r.passed(), QPLANE_VERSION};
      const long id = store.append(rec);
      err << "recorded " << r.suite << " as run " << id << " in " << store.path().string() << '\n';
    }
  }

  if (a.json) {
    nlohmann::json suites = nlohmann::json::array();
    for (const auto& r : results) suites.push_back(r.to_json());
    out << envelope("verify", {{"suite", a.suite}}, c.raw, {{"passed", ok}, {"suites", suites}}).dump(2) << '\n';
  } else {
    out << spectrum_line(c) << '\n';
    for (const auto& r : results) print_suite(r, out);
    out << (ok ? "all entries match\n" : "MISMATCH\n");
  }
  return ok ? kOk : kMismatch;
}

int cmd_decompose(const Args& a, std::ostream& out) {
  const auto c = load_with_env(a.config_path);
  const auto p = parse_class_spec(a.class_spec, c);
  const bool unital = !a.non_unital;
  const auto v = decompose_class(p.realized, *c.x, unital, c.options.pairing);
  const std::string identity = format_class(v, *c.x, p.label);
  if (a.json) {
    out << envelope("decompose", {{"class", a.class_spec}, {"unital", unital}}, c.raw,
                    {{"class", p.label},
                     {"basis", v.basis == SpectrumKind::Full ? "full" : "generic"},
                     {"l", v.l},
                     {"n", v.n},
                     {"m", v.m},
                     {"pairing", predicted_pairing(v)},
                     {"identity", identity}})
               .dump(2)
        << '\n';
    return kOk;
  }
  out << identity << '\n';
  out << "  l = " << v.l << ", n = (";
  for (std::size_t i = 0; i < v.n.size(); ++i) out << (i ? "," : "") << v.n[i];
  out << "), m = " << v.m << '\n';
  return kOk;
}

int cmd_selftest(const Args& a, std::ostream& out) {
  const auto configs = nlohmann::json::parse(R"([
    {"q": "1/2", "spectrum": "full", "options": {"base_point": "7/10"}},
    {"q": "3/4", "spectrum": "full", "options": {"base_point": "7/10"}},
    {"q": "1/2", "spectrum": {"intervals": [["13/25", "11/20"], ["3/5", "31/50"], ["7/10", "18/25"]]}}
  ])");
  bool ok = true;
  nlohmann::json runs = nlohmann::json::array();
  for (const auto& raw : configs) {
    const auto c = parse_config(raw);
    for (const auto& n : expand_suite("all", c)) {
      const auto r = run_suite(n, c);
      ok = ok && r.passed();
      runs.push_back({{"config", raw}, {"suite", n}, {"passed", r.passed()}, {"entries", r.rows.size()},
                      {"failures", r.failures()}});
      if (!a.json) {
        out << (r.passed() ? "PASS " : "FAIL ") << n << " on " << spectrum_line(c) << "  (" << r.rows.size()
            << " entries)\n";
        if (!r.passed()) print_suite(r, out);
      }
    }
  }
  if (a.json) out << envelope("selftest", nlohmann::json::object(), nullptr, {{"passed", ok}, {"runs", runs}}).dump(2) << '\n';
  return ok ? kOk : kMismatch;
}

int cmd_diff(const Args& a, std::ostream& out) {
  RunStore store(store_path(a));
  const auto d = store.diff(a.id_a, a.id_b);
  if (a.json) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : d.entries)
      entries.push_back({{"name", e.name}, {"a", e.value_a}, {"b", e.value_b}, {"pass_a", e.pass_a},
                         {"pass_b", e.pass_b}, {"change", to_string(e.change)}});
    out << nlohmann::json{{"command", "diff"},
                          {"a", a.id_a},
                          {"b", a.id_b},
                          {"config_mismatch", d.config_mismatch},
                          {"suite_mismatch", d.suite_mismatch},
                          {"entries", entries},
                          {"clean", d.clean()},
                          {"version", QPLANE_VERSION}}
               .dump(2)
        << '\n';
  } else {
    out << "diff run " << a.id_a << " vs run " << a.id_b << '\n';
    if (d.config_mismatch) out << "  CONFIG MISMATCH (different config hash)\n";
    if (d.suite_mismatch) out << "  SUITE MISMATCH\n";
    for (const auto& e : d.entries)
      out << "  " << to_string(e.change) << "  " << e.name << ": " << e.value_a.dump() << " -> " << e.value_b.dump()
          << '\n';
    if (d.clean()) out << "  no differences\n";
  }
  return d.clean() ? kOk : kMismatch;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"qplane: K-theory and index pairings for q-normal operator algebras"};
  app.set_version_flag("--version", std::string(QPLANE_VERSION));
  app.require_subcommand(1);
  Args a;

  const auto common = [&a](CLI::App* sub, bool config_required) {
    auto* opt = sub->add_option("--config", a.config_path, "spectrum configuration (JSON)")->check(CLI::ExistingFile);
    if (config_required) opt->required();
    sub->add_flag("--json", a.json, "emit a JSON report on stdout");
  };

  auto* kg = app.add_subcommand("kgroups", "K0/K1 ranks and generators");
  common(kg, true);

  auto* pr = app.add_subcommand("pair", "one index pairing <hom, class>");
  common(pr, true);
  pr->add_option("--class", a.class_spec, "bott:n | pr:n | unit | chi:[lo,hi)")->required();
  pr->add_option("--hom", a.hom_spec, "ev0 | evinf | F:<index> | F:y=<rational>")->required();

  auto* vf = app.add_subcommand("verify", "expected-vs-computed verification suites");
  common(vf, true);
  vf->add_option("--suite", a.suite, "tip | teo | corollaries | algebra | all")
      ->check(CLI::IsMember({"tip", "teo", "corollaries", "algebra", "all"}));
  vf->add_option("--store", a.store_path, "run store (default $QPLANE_STORE or ./qplane-runs.ndjson)");
  vf->add_flag("--no-store", a.no_store, "do not record the run");

  auto* dc = app.add_subcommand("decompose", "coordinates of a class in the generator basis");
  common(dc, true);
  dc->add_option("--class", a.class_spec, "bott:n | pr:n | unit | chi:[lo,hi)")->required();
  dc->add_flag("--non-unital", a.non_unital, "decompose in the non-unital algebra");

  auto* st = app.add_subcommand("selftest", "run every suite on the built-in configurations");
  common(st, false);

  auto* df = app.add_subcommand("diff", "compare two recorded runs");
  df->add_option("id_a", a.id_a, "first run id")->required();
  df->add_option("id_b", a.id_b, "second run id")->required();
  df->add_option("--store", a.store_path, "run store (default $QPLANE_STORE or ./qplane-runs.ndjson)");
  df->add_flag("--json", a.json, "emit a JSON report on stdout");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (kg->parsed()) return cmd_kgroups(a, out);
    if (pr->parsed()) return cmd_pair(a, out);
    if (vf->parsed()) return cmd_verify(a, out, err);
    if (dc->parsed()) return cmd_decompose(a, out);
    if (st->parsed()) return cmd_selftest(a, out);
    if (df->parsed()) return cmd_diff(a, out);
  } catch (const NonConvergence& e) {
    err << "error: " << e.what() << " (previous " << std::setprecision(15) << e.previous() << ", last " << e.last()
        << ", window " << e.window() << ")\n";
    return kNonConvergence;
  } catch (const ModelError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const StoreError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace qplane::cli
