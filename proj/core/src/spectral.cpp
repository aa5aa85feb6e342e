#include "qplane/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "qplane/errors.hpp"

namespace qplane {

Rational ScaledRational::value(const Rational& q) const { return r * pow(q, m); }

double ScaledRational::to_double(const Rational& q) const {
  return qplane::to_double(r) * std::pow(qplane::to_double(q), m);
}

int compare(const ScaledRational& a, const ScaledRational& b, const Rational& q) {
  // a.r q^a.m  vs  b.r q^b.m  <=>  a.r q^(a.m - b.m)  vs  b.r
  const Rational lhs = a.r * pow(q, a.m - b.m);
  if (lhs < b.r) return -1;
  if (lhs > b.r) return 1;
  return 0;
}

SpectralSet SpectralSet::full(Rational q) {
  if (q <= 0 || q >= 1) throw ModelError("q must lie in (0,1), got " + to_string(q));
  return SpectralSet(std::move(q), SpectrumKind::Full, {});
}

SpectralSet SpectralSet::generic(Rational q, std::vector<ClosedInterval> intervals) {
  if (q <= 0 || q >= 1) throw ModelError("q must lie in (0,1), got " + to_string(q));
  if (intervals.empty()) throw ModelError("generic spectrum needs a non-empty interval list");

  for (const auto& iv : intervals) {
    if (iv.lo > iv.hi)
      throw ModelError("reversed interval [" + to_string(iv.lo) + ", " + to_string(iv.hi) + "]");
    if (iv.lo <= q || iv.hi >= 1)
      throw ModelError("interval [" + to_string(iv.lo) + ", " + to_string(iv.hi) +
                       "] must lie strictly inside (q, 1)");
  }

  std::sort(intervals.begin(), intervals.end(),
            [](const ClosedInterval& a, const ClosedInterval& b) {
              return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
            });

  std::vector<ClosedInterval> merged;
  for (auto& iv : intervals) {
    if (!merged.empty() && iv.lo <= merged.back().hi) {
      if (iv.hi > merged.back().hi) merged.back().hi = iv.hi;
    } else {
      merged.push_back(std::move(iv));
    }
  }
  return SpectralSet(std::move(q), SpectrumKind::Generic, std::move(merged));
}

bool SpectralSet::contains(const Rational& t) const {
  if (t < 0) throw ModelError("spectral membership queried at negative t");
  if (t == 0 || is_full()) return true;
  Rational x = t;
  while (x > 1) x *= q_;
  while (x <= q_) x /= q_;
  return std::any_of(components_.begin(), components_.end(),
                     [&](const ClosedInterval& c) { return c.contains(x); });
}

bool SpectralSet::contains(const ScaledRational& t) const {
  if (t.r < 0) throw ModelError("spectral membership queried at negative t");
  if (t.r == 0 || is_full()) return true;
  // Fold r into (q,1]; the exponent m only moves t along its q-orbit.
  return contains(t.r);
}

bool SpectralSet::admits_base_point(const Rational& y) const {
  if (y <= q_ || y > 1) return false;
  return contains(y);
}

GapStructure gap_structure(const SpectralSet& x) {
  if (x.is_full()) throw ModelError("no gap structure for full spectrum");
  const auto& comps = x.components();

  GapStructure g;
  g.q = x.q();
  g.s = comps.back().hi;

  // Walk top-down: the gap below component i runs from the previous
  // component's top (or q) to this component's bottom.
  for (std::size_t i = comps.size(); i-- > 0;) {
    const auto& c = comps[i];
    const Rational witness = c.lo == c.hi ? c.lo : Rational((c.lo + c.hi) / 2);
    g.components.push_back({c.lo, c.hi, witness});

    const Rational lo = i == 0 ? x.q() : comps[i - 1].hi;
    g.gaps.push_back({lo, c.lo, Rational((lo + c.lo) / 2)});
  }
  return g;
}

bool in_spectrum(const SpectralSet& x, const ScaledRational& t) { return x.contains(t); }

}  // namespace qplane
