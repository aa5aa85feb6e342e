#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "qplane/pairing.hpp"
#include "qplane/projlib.hpp"
#include "qplane/spectral.hpp"

namespace qplane::cli {

struct RunOptions {
  PairingOptions pairing;
  int grid_density = 1024;
  std::optional<Rational> base_point;  // Fredholm base point on a full spectrum
};

/// Parsed form of
///   {"q": "1/2",
///    "spectrum": "full" | {"intervals": [["13/25", "11/20"], ...]},
///    "options": {"tol": 1e-9, "integer_tol": 1e-6, "initial_window": 64,
///                "max_window": 8192, "grid_density": 1024, "base_point": "7/10"}}
struct SpectrumConfig {
  nlohmann::json raw;
  std::shared_ptr<const SpectralSet> x;
  RunOptions options;

  /// Base point used for "the" Fredholm class on a full spectrum.
  Rational full_base_point() const;
  /// ev0, F_gamma..., evinf with full_base_point() on a full spectrum.
  std::vector<KHomClass> family() const;
};

/// Throws ModelError on any malformed or inconsistent field.
SpectrumConfig parse_config(const nlohmann::json& j);
/// Reads and parses a JSON file; ModelError on I/O or syntax errors.
SpectrumConfig load_config(const std::filesystem::path& path);

/// Rational endpoint token: "p/q", decimal, "q", "q^k" (k may be negative).
Rational parse_endpoint(const std::string& token, const Rational& q);

/// bott:n | pr:n | unit | chi:[lo,hi) | chi:(lo,hi] | ... ; "inf" allowed as
/// an open upper end.
ProjectionSpec parse_class_spec(const std::string& spec, const SpectrumConfig& config);

/// ev0 | evinf | F:<component index> | F:y=<rational>
KHomClass parse_hom_spec(const std::string& spec, const SpectrumConfig& config);

}  // namespace qplane::cli
