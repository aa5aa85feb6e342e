#pragma once

#include <string>
#include <vector>

#include "qplane/pairing.hpp"
#include "qplane/projlib.hpp"
#include "qplane/spectral.hpp"

namespace qplane {

struct Generator {
  std::string name;        // e.g. "χ_[0,q)", "χ_(3/5,1)", "1", "R_1"
  std::string definition;  // how it is realized
};

struct KGroupReport {
  bool unital = false;
  SpectrumKind kind = SpectrumKind::Full;
  int k0_rank = 0;
  bool k1_trivial = true;
  std::vector<Generator> generators;

  /// "K0 = Z^3 (non-unital), K1 = 0"
  std::string summary() const;
};

/// Generic X with n components: rank n+1, or n+2 with [1]. Full: 1, or 2.
KGroupReport kgroups(const SpectralSet& x, bool unital);

/// Generator projections in the order of the KGroupReport:
/// Generic: chi_[0,q), chi_(c_j,1) for each gap (descending), then 1;
/// Full: R_1, then 1. [1] only when unital.
std::vector<ProjectionSpec> generator_projections(std::shared_ptr<const SpectralSet> x, bool unital);

/// Ranks of a projection-valued function on Y, one per component in
/// ascending position.
struct RankFunction {
  std::vector<int> ranks;
};

/// Coefficients on the gap generators chi_(c_j,1), listed ascending (the
/// lowest gap first): r_1, r_2 - r_1, ... Throws ModelError on a size
/// mismatch with the gap structure or a negative rank.
std::vector<long> rank_decompose(const RankFunction& r, const GapStructure& g);

/// Inverse of rank_decompose: partial sums of the ascending coefficients.
RankFunction reconstruct_ranks(const std::vector<long>& ascending_coefficients);

/// Coordinates of a K0 class in the generator basis.
///   l   : coefficient of [chi_[0,q)] (always 0 for Full)
///   n   : Generic: one per gap, descending (n[j] belongs to gaps[j]);
///         Full: a single entry, the coefficient of [R_1]
///   m   : coefficient of [1]
struct KClassVector {
  SpectrumKind basis = SpectrumKind::Generic;
  long l = 0;
  std::vector<long> n;
  long m = 0;

  friend bool operator==(const KClassVector&, const KClassVector&) = default;
};

/// Solves the triangular system against (ev0, F_gamma descending, evinf).
/// Throws ModelError on non-integral pairings, on a nonzero evinf pairing
/// when unital is false, or when the class is outside the generator lattice.
KClassVector decompose_class(const CrossedMatrix& p, const SpectralSet& x, bool unital,
                             const PairingOptions& options = {});

/// Pairing vector (ev0, F_gamma..., evinf) predicted by the coordinates.
std::vector<long> predicted_pairing(const KClassVector& v);

/// "[P_2] = [1] + 2·[χ_(q,1)]" style rendering; lhs may be empty.
std::string format_class(const KClassVector& v, const SpectralSet& x, const std::string& lhs = "");

struct SignedClass {
  long coefficient;
  ProjectionSpec spec;
};

struct IdentityReport {
  bool equal = false;
  std::vector<std::string> columns;  // family labels
  std::vector<long> lhs;
  std::vector<long> rhs;
};

/// Compares sum c_i <F, p_i> on both sides for every class F of the family.
IdentityReport verify_identity(const std::vector<SignedClass>& lhs, const std::vector<SignedClass>& rhs,
                               const SpectralSet& x, const PairingOptions& options = {});

/// Integer pairing matrix of `rows` against `family` (rounded values);
/// throws ModelError on a non-integral entry.
std::vector<std::vector<long>> integer_pairing_matrix(const std::vector<ProjectionSpec>& rows,
                                                      const std::vector<KHomClass>& family,
                                                      const PairingOptions& options = {});

/// Exact determinant of a square integer matrix (fraction-free elimination).
long integer_determinant(const std::vector<std::vector<long>>& m);

}  // namespace qplane
