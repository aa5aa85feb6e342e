#include "qplane_cli/suites.hpp"

#include <cfloat>
#include <cmath>
#include <functional>
#include <future>
#include <sstream>

#include "qplane/errors.hpp"
#include "qplane/ktheory.hpp"
#include "qplane/rep.hpp"

namespace qplane::cli {

namespace {

constexpr int kMaxIndex = 5;
constexpr int kShiftWindow = 64;
constexpr double kMachineTol = 8 * DBL_EPSILON;

using RowJob = std::function<std::vector<SuiteRow>()>;

// Runs the jobs concurrently and concatenates their rows in job order.
std::vector<SuiteRow> run_jobs(const std::vector<RowJob>& jobs) {
  std::vector<std::future<std::vector<SuiteRow>>> futures;
  futures.reserve(jobs.size());
  for (const auto& job : jobs) futures.push_back(std::async(std::launch::async, job));
  std::vector<SuiteRow> rows;
  for (auto& f : futures) {
    auto part = f.get();
    rows.insert(rows.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return rows;
}

std::string detail_of(const PairingResult& r) {
  std::ostringstream os;
  os << "raw=" << r.raw << " residual=" << r.residual << " window=" << r.window_used << (r.exact ? " exact" : "");
  return os.str();
}

SuiteRow pairing_row(const KHomClass& f, const ProjectionSpec& p, long expected, const SpectrumConfig& c) {
  const PairingResult r = pair(f, p.realized, c.options.pairing);
  SuiteRow row;
  row.name = "<" + f.label() + "," + p.label + ">";
  row.value = r.integral ? nlohmann::json(r.rounded) : nlohmann::json(r.raw);
  row.expected = expected;
  row.pass = r.integral && r.rounded == expected;
  row.detail = detail_of(r);
  return row;
}

std::vector<KHomClass> fredholm_classes(const SpectrumConfig& c) {
  std::vector<KHomClass> out;
  for (const auto& f : c.family())
    if (f.kind == KHomClass::Kind::Fredholm) out.push_back(f);
  return out;
}

void require_generic(const std::string& suite, const SpectrumConfig& c) {
  if (c.x->is_full()) throw ModelError("suite '" + suite + "' needs a generic spectrum");
}

SuiteResult tip_suite(const SpectrumConfig& c) {
  const auto fs = fredholm_classes(c);
  const auto evinf = KHomClass::evinf();
  std::vector<RowJob> jobs;
  for (int n = 1; n <= kMaxIndex; ++n) {
    jobs.push_back([&c, &fs, evinf, n] {
      std::vector<SuiteRow> rows;
      const auto pp = bott(n, c.x);
      const auto pm = bott(-n, c.x);
      const auto r = powers_rieffel(n, c.x);
      rows.push_back(pairing_row(evinf, pp, 1, c));
      rows.push_back(pairing_row(evinf, pm, 1, c));
      rows.push_back(pairing_row(evinf, r, 0, c));
      for (const auto& f : fs) {
        rows.push_back(pairing_row(f, pp, n, c));
        rows.push_back(pairing_row(f, pm, -n, c));
        rows.push_back(pairing_row(f, r, n, c));
      }
      return rows;
    });
  }
  jobs.push_back([&c, &fs, evinf] {
    const auto u = unit_projection(c.x);
    std::vector<SuiteRow> rows{pairing_row(evinf, u, 1, c)};
    for (const auto& f : fs) rows.push_back(pairing_row(f, u, 0, c));
    return rows;
  });
  return {"tip", run_jobs(jobs)};
}

SuiteResult teo_suite(const SpectrumConfig& c) {
  require_generic("teo", c);
  const auto g = gap_structure(*c.x);
  const auto gens = generator_projections(c.x, true);
  const auto family = c.family();

  // Expected pattern from the geometry alone: chi_[0,q) and 1 are seen by
  // the classical points, chi_(c_j,1) by F_gamma exactly when y_gamma > c_j.
  const auto expected = [&](std::size_t row, const KHomClass& f) -> long {
    const bool is_low = row == 0;
    const bool is_unit = row == gens.size() - 1;
    switch (f.kind) {
      case KHomClass::Kind::Ev0: return is_low || is_unit ? 1 : 0;
      case KHomClass::Kind::EvInf: return is_unit ? 1 : 0;
      case KHomClass::Kind::Fredholm:
        if (is_low || is_unit) return 0;
        return f.y > g.gaps[row - 1].sample ? 1 : 0;
    }
    return 0;
  };

  std::vector<RowJob> jobs;
  for (std::size_t i = 0; i < gens.size(); ++i)
    jobs.push_back([&, i] {
      std::vector<SuiteRow> rows;
      for (const auto& f : family) rows.push_back(pairing_row(f, gens[i], expected(i, f), c));
      return rows;
    });
  SuiteResult out{"teo", run_jobs(jobs)};

  std::vector<std::vector<long>> m;
  bool integral = true;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::vector<long> row;
    for (std::size_t j = 0; j < family.size(); ++j) {
      const auto& r = out.rows[i * family.size() + j];
      integral = integral && r.value.is_number_integer();
      row.push_back(r.value.is_number_integer() ? r.value.get<long>() : 0);
    }
    m.push_back(std::move(row));
  }
  SuiteRow det;
  det.name = "det(generators x family)";
  det.expected = "±1";
  if (integral) {
    const long d = integer_determinant(m);
    det.value = d;
    det.pass = d == 1 || d == -1;
  } else {
    det.value = nullptr;
    det.detail = "pairing matrix is not integral";
  }
  out.rows.push_back(std::move(det));
  return out;
}

std::string vector_text(const std::vector<long>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

SuiteRow identity_row(const std::string& name, const std::vector<SignedClass>& lhs,
                      const std::vector<SignedClass>& rhs, const SpectrumConfig& c) {
  const auto rep = verify_identity(lhs, rhs, *c.x, c.options.pairing);
  return {name, rep.lhs, rep.rhs, rep.equal, "lhs=" + vector_text(rep.lhs) + " rhs=" + vector_text(rep.rhs)};
}

SuiteRow decompose_row(const ProjectionSpec& p, const KClassVector& expected, const SpectrumConfig& c) {
  const auto v = decompose_class(p.realized, *c.x, true, c.options.pairing);
  const std::string got = format_class(v, *c.x);
  const std::string want = format_class(expected, *c.x);
  return {"decompose " + p.label, got, want, v == expected, ""};
}

SuiteResult corollaries_suite(const SpectrumConfig& c) {
  require_generic("corollaries", c);
  const auto g = gap_structure(*c.x);
  const auto x = c.x;
  const auto one = unit_projection(x);
  const auto chi_q = indicator({x->q(), false, Rational(1), false}, x);

  std::vector<RowJob> jobs;
  for (int n = 1; n <= kMaxIndex; ++n) {
    jobs.push_back([&, n] {
      const auto pp = bott(n, x);
      const auto pm = bott(-n, x);
      const auto r = powers_rieffel(n, x);
      const auto chi_n = indicator({pow(x->q(), n), false, Rational(1), false}, x);
      const std::string ns = std::to_string(n);
      std::vector<SuiteRow> rows;
      rows.push_back(identity_row("[P_" + ns + "] = [1] + [R_" + ns + "]", {{1, pp}}, {{1, one}, {1, r}}, c));
      rows.push_back(identity_row("[P_" + ns + "] = [1] + " + ns + "[χ_(q,1)]", {{1, pp}}, {{1, one}, {n, chi_q}}, c));
      rows.push_back(identity_row("[P_-" + ns + "] = [1] - [R_" + ns + "]", {{1, pm}}, {{1, one}, {-1, r}}, c));
      rows.push_back(identity_row("[P_-" + ns + "] = [1] - " + ns + "[χ_(q,1)]", {{1, pm}}, {{1, one}, {-n, chi_q}}, c));
      rows.push_back(identity_row("[χ_(q^" + ns + ",1)] = " + ns + "[χ_(q,1)]", {{1, chi_n}}, {{n, chi_q}}, c));

      KClassVector e;
      e.basis = SpectrumKind::Generic;
      e.n.assign(g.gaps.size(), 0);
      e.m = 1;
      e.n.back() = n;
      rows.push_back(decompose_row(pp, e, c));
      e.n.back() = -n;
      rows.push_back(decompose_row(pm, e, c));
      e.m = 0;
      e.n.back() = n;
      rows.push_back(decompose_row(r, e, c));
      return rows;
    });
  }
  return {"corollaries", run_jobs(jobs)};
}

SuiteRow projection_row(const ProjectionSpec& p, const SpectrumConfig& c) {
  VerifyOptions vo;
  vo.tol = c.options.pairing.tol;
  vo.grid_density = c.options.grid_density;
  const auto chk = verify_projection(p, vo);
  std::ostringstream os;
  os << "idempotency=" << chk.idempotency_error << " adjoint=" << chk.adjoint_error << (chk.exact ? " exact" : "");
  return {"projection " + p.label, chk.sup_error(), chk.exact ? 0.0 : vo.tol, chk.passed, os.str()};
}

SuiteResult algebra_suite(const SpectrumConfig& c) {
  const Rational y = c.x->is_full() ? c.full_base_point() : gap_structure(*c.x).components.back().witness;
  std::vector<RowJob> jobs;
  jobs.push_back([&c, y] {
    const auto sm = shift_model_check(c.x->q(), y, kShiftWindow);
    std::vector<SuiteRow> rows;
    rows.push_back({"zz* - q^2 z*z residual (K=64)", sm.relation_residual, 0.0, sm.relation_residual <= kMachineTol,
                    "relative, interior indices"});
    rows.push_back({"zz* = q^2 z*z exact", sm.relation_exact_zero, true, sm.relation_exact_zero, ""});
    rows.push_back({"|z| diagonal = q^n y exact", sm.abs_z_matches, true, sm.abs_z_matches,
                    "float deviation " + std::to_string(sm.abs_z_float_error)});
    return rows;
  });
  for (int n = 1; n <= kMaxIndex; ++n) {
    jobs.push_back([&c, n] {
      return std::vector<SuiteRow>{projection_row(bott(n, c.x), c), projection_row(bott(-n, c.x), c),
                                   projection_row(powers_rieffel(n, c.x), c)};
    });
  }
  if (!c.x->is_full()) {
    jobs.push_back([&c] {
      std::vector<SuiteRow> rows;
      for (const auto& p : generator_projections(c.x, true))
        if (p.kind == ProjectionKind::Indicator) rows.push_back(projection_row(p, c));
      return rows;
    });
  }
  return {"algebra", run_jobs(jobs)};
}

}  // namespace

bool SuiteResult::passed() const { return failures() == 0; }

std::size_t SuiteResult::failures() const {
  std::size_t n = 0;
  for (const auto& r : rows) n += r.pass ? 0 : 1;
  return n;
}

nlohmann::json SuiteResult::to_json() const {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& r : rows)
    entries.push_back({{"name", r.name}, {"value", r.value}, {"expected", r.expected}, {"pass", r.pass},
                       {"detail", r.detail}});
  return {{"suite", suite}, {"passed", passed()}, {"entries", entries}};
}

std::vector<std::string> expand_suite(const std::string& name, const SpectrumConfig& config) {
  if (name != "all") return {name};
  if (config.x->is_full()) return {"tip", "algebra"};
  return {"tip", "teo", "corollaries", "algebra"};
}

SuiteResult run_suite(const std::string& name, const SpectrumConfig& config) {
  if (name == "tip") return tip_suite(config);
  if (name == "teo") return teo_suite(config);
  if (name == "corollaries") return corollaries_suite(config);
  if (name == "algebra") return algebra_suite(config);
  throw ModelError("unknown suite '" + name + "' (expected tip, teo, corollaries, algebra or all)");
}

}  // namespace qplane::cli
