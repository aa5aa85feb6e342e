#include "qplane/ktheory.hpp"

#include <sstream>

#include "qplane/errors.hpp"

namespace qplane {

std::string KGroupReport::summary() const {
  std::ostringstream os;
  os << "K0 = Z^" << k0_rank << (unital ? " (unital)" : " (non-unital)") << ", K1 = 0";
  return os.str();
}

namespace {

std::string gap_generator_name(const GapStructure& g, std::size_t j) {
  if (j == g.lowest_gap()) return "χ_(q,1)";
  return "χ_(" + to_string(g.gaps[j].sample) + ",1)";
}

}  // namespace

KGroupReport kgroups(const SpectralSet& x, bool unital) {
  KGroupReport r;
  r.unital = unital;
  r.kind = x.kind();
  if (x.is_full()) {
    r.generators.push_back({"R_1", "Powers-Rieffel projection U h + f_1 + h U^-1 (equivalently [P_1] - [1])"});
  } else {
    const auto g = gap_structure(x);
    r.generators.push_back({"χ_[0,q)", "indicator of [0," + to_string(x.q()) + ")"});
    for (std::size_t j = 0; j < g.gaps.size(); ++j)
      r.generators.push_back({gap_generator_name(g, j), "indicator of (" + to_string(g.gaps[j].sample) +
                                                            ",1), gap (" + to_string(g.gaps[j].lo) + "," +
                                                            to_string(g.gaps[j].hi) + ")"});
  }
  if (unital) r.generators.push_back({"1", "unit"});
  r.k0_rank = static_cast<int>(r.generators.size());
  return r;
}

std::vector<ProjectionSpec> generator_projections(std::shared_ptr<const SpectralSet> x, bool unital) {
  std::vector<ProjectionSpec> out;
  if (x->is_full()) {
    out.push_back(powers_rieffel(1, x));
  } else {
    const auto g = gap_structure(*x);
    out.push_back(indicator({Rational(0), true, x->q(), false}, x));
    for (const auto& gap : g.gaps) out.push_back(indicator({gap.sample, false, Rational(1), false}, x));
  }
  if (unital) out.push_back(unit_projection(x));
  return out;
}

std::vector<long> rank_decompose(const RankFunction& r, const GapStructure& g) {
  if (r.ranks.size() != g.components.size())
    throw ModelError("rank function has " + std::to_string(r.ranks.size()) + " values for " +
                     std::to_string(g.components.size()) + " components");
  std::vector<long> out;
  long prev = 0;
  for (int v : r.ranks) {
    if (v < 0) throw ModelError("ranks must be non-negative");
    out.push_back(v - prev);
    prev = v;
  }
  return out;
}

RankFunction reconstruct_ranks(const std::vector<long>& ascending_coefficients) {
  RankFunction r;
  long acc = 0;
  for (long c : ascending_coefficients) {
    acc += c;
    r.ranks.push_back(static_cast<int>(acc));
  }
  return r;
}

std::vector<long> predicted_pairing(const KClassVector& v) {
  std::vector<long> out{v.l + v.m};
  if (v.basis == SpectrumKind::Full) {
    out.push_back(v.n.empty() ? 0 : v.n.front());
  } else {
    // F_i = sum of n_j over the gaps at or below component i.
    std::vector<long> f(v.n.size());
    long acc = 0;
    for (std::size_t j = v.n.size(); j-- > 0;) {
      acc += v.n[j];
      f[j] = acc;
    }
    out.insert(out.end(), f.begin(), f.end());
  }
  out.push_back(v.m);
  return out;
}

KClassVector decompose_class(const CrossedMatrix& p, const SpectralSet& x, bool unital,
                             const PairingOptions& options) {
  const auto family = homology_family(x);
  const auto pv = pairing_vector(p, family, options);
  std::vector<long> v;
  for (std::size_t i = 0; i < pv.size(); ++i) {
    if (!pv[i].integral)
      throw ModelError("pairing with " + family[i].label() + " is not integral (residual " +
                       std::to_string(pv[i].residual) + ")");
    v.push_back(pv[i].rounded);
  }

  KClassVector out;
  out.basis = x.kind();
  out.m = v.back();
  if (!unital && out.m != 0) throw ModelError("class has nonzero rank at infinity; decompose it as unital");

  if (x.is_full()) {
    out.l = 0;
    out.n = {v[1]};
  } else {
    out.l = v.front() - out.m;
    const std::size_t count = v.size() - 2;
    out.n.assign(count, 0);
    for (std::size_t j = 0; j < count; ++j) {
      const long here = v[1 + j];
      const long below = j + 1 < count ? v[2 + j] : 0;
      out.n[j] = here - below;
    }
  }
  if (predicted_pairing(out) != v) throw ModelError("class outside generator lattice");
  return out;
}

std::string format_class(const KClassVector& v, const SpectralSet& x, const std::string& lhs) {
  std::vector<std::pair<long, std::string>> terms;
  terms.emplace_back(v.m, "1");
  if (v.basis == SpectrumKind::Full) {
    terms.emplace_back(v.n.empty() ? 0 : v.n.front(), "R_1");
  } else {
    const auto g = gap_structure(x);
    terms.emplace_back(v.l, "χ_[0,q)");
    for (std::size_t j = g.gaps.size(); j-- > 0;) terms.emplace_back(v.n.at(j), gap_generator_name(g, j));
  }

  std::string s;
  for (const auto& [c, name] : terms) {
    if (c == 0) continue;
    const long a = c < 0 ? -c : c;
    if (s.empty()) s += c < 0 ? "-" : "";
    else s += c < 0 ? " - " : " + ";
    if (a != 1) s += std::to_string(a) + "·";
    s += "[" + name + "]";
  }
  if (s.empty()) s = "0";
  return lhs.empty() ? s : "[" + lhs + "] = " + s;
}

IdentityReport verify_identity(const std::vector<SignedClass>& lhs, const std::vector<SignedClass>& rhs,
                               const SpectralSet& x, const PairingOptions& options) {
  const auto family = homology_family(x);
  IdentityReport r;
  for (const auto& f : family) r.columns.push_back(f.label());

  const auto total = [&](const std::vector<SignedClass>& side) {
    std::vector<long> acc(family.size(), 0);
    for (const auto& term : side) {
      const auto pv = pairing_vector(term.spec.realized, family, options);
      for (std::size_t i = 0; i < pv.size(); ++i) {
        if (!pv[i].integral) throw ModelError("pairing of " + term.spec.label + " is not integral");
        acc[i] += term.coefficient * pv[i].rounded;
      }
    }
    return acc;
  };
  r.lhs = total(lhs);
  r.rhs = total(rhs);
  r.equal = r.lhs == r.rhs;
  return r;
}

std::vector<std::vector<long>> integer_pairing_matrix(const std::vector<ProjectionSpec>& rows,
                                                      const std::vector<KHomClass>& family,
                                                      const PairingOptions& options) {
  std::vector<CrossedMatrix> mats;
  for (const auto& r : rows) mats.push_back(r.realized);
  const auto table = pairing_table(mats, family, options);
  std::vector<std::vector<long>> out;
  for (std::size_t i = 0; i < table.size(); ++i) {
    std::vector<long> row;
    for (const auto& e : table[i]) {
      if (!e.integral) throw ModelError("pairing of " + rows[i].label + " is not integral");
      row.push_back(e.rounded);
    }
    out.push_back(std::move(row));
  }
  return out;
}

long integer_determinant(const std::vector<std::vector<long>>& m) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw ModelError("determinant needs a square matrix");
  if (n == 0) return 1;

  std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j];

  // Bareiss: every division below is exact.
  int sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(a[k], a[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  const BigInt det = a[n - 1][n - 1] * sign;
  return static_cast<long>(det);
}

}  // namespace qplane
