#include "qplane_cli/config.hpp"

#include <charconv>
#include <fstream>

#include "qplane/errors.hpp"

namespace qplane::cli {

namespace {

Rational rational_field(const nlohmann::json& j, const std::string& what) {
  if (!j.is_string()) throw ModelError(what + " must be a rational string such as \"1/2\"");
  return parse_rational(j.get<std::string>());
}

int parse_int(std::string_view s, const std::string& what) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw ModelError("malformed integer in " + what);
  return v;
}

template <typename T>
T number_field(const nlohmann::json& j, const std::string& key) {
  if (!j.is_number()) throw ModelError("option " + key + " must be a number");
  if constexpr (std::is_integral_v<T>) {
    if (!j.is_number_integer()) throw ModelError("option " + key + " must be an integer");
  }
  return j.get<T>();
}

}  // namespace

Rational SpectrumConfig::full_base_point() const {
  if (options.base_point) return *options.base_point;
  return (x->q() + 1) / 2;
}

std::vector<KHomClass> SpectrumConfig::family() const { return homology_family(*x, full_base_point()); }

SpectrumConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object()) throw ModelError("config must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (key != "q" && key != "spectrum" && key != "options") throw ModelError("unknown config key '" + key + "'");
  if (!j.contains("q")) throw ModelError("config is missing 'q'");
  if (!j.contains("spectrum")) throw ModelError("config is missing 'spectrum'");

  SpectrumConfig c;
  c.raw = j;
  const Rational q = rational_field(j.at("q"), "q");

  const auto& s = j.at("spectrum");
  if (s.is_string()) {
    if (s.get<std::string>() != "full") throw ModelError("spectrum must be \"full\" or {\"intervals\": [...]}");
    if (q <= 0 || q >= 1) throw ModelError("q must lie in (0,1)");
    c.x = std::make_shared<const SpectralSet>(SpectralSet::full(q));
  } else if (s.is_object() && s.contains("intervals")) {
    const auto& list = s.at("intervals");
    if (!list.is_array()) throw ModelError("intervals must be an array of [lo, hi] pairs");
    std::vector<ClosedInterval> ivs;
    for (const auto& iv : list) {
      if (!iv.is_array() || iv.size() != 2) throw ModelError("each interval must be a [lo, hi] pair");
      ivs.push_back({rational_field(iv[0], "interval endpoint"), rational_field(iv[1], "interval endpoint")});
    }
    c.x = std::make_shared<const SpectralSet>(SpectralSet::generic(q, std::move(ivs)));
  } else {
    throw ModelError("spectrum must be \"full\" or {\"intervals\": [...]}");
  }

  if (j.contains("options")) {
    const auto& o = j.at("options");
    if (!o.is_object()) throw ModelError("options must be an object");
    for (const auto& [key, value] : o.items()) {
      if (key == "tol") c.options.pairing.tol = number_field<double>(value, key);
      else if (key == "integer_tol") c.options.pairing.integer_tol = number_field<double>(value, key);
      else if (key == "initial_window") c.options.pairing.initial_window = number_field<int>(value, key);
      else if (key == "max_window") c.options.pairing.max_window = number_field<int>(value, key);
      else if (key == "grid_density") c.options.grid_density = number_field<int>(value, key);
      else if (key == "base_point") c.options.base_point = rational_field(value, key);
      else throw ModelError("unknown option '" + key + "'");
    }
  }
  const auto& p = c.options.pairing;
  if (!(p.tol > 0) || !(p.integer_tol > 0)) throw ModelError("tolerances must be positive");
  if (p.initial_window < 1 || p.max_window < p.initial_window)
    throw ModelError("need 1 <= initial_window <= max_window");
  if (c.options.grid_density < 2) throw ModelError("grid_density must be >= 2");
  if (c.options.base_point && (*c.options.base_point <= 0 || !c.x->contains(*c.options.base_point)))
    throw ModelError("base_point must be a positive point of the spectrum");
  return c;
}

SpectrumConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot read config " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ModelError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

Rational parse_endpoint(const std::string& token, const Rational& q) {
  if (token == "q") return q;
  if (token.rfind("q^", 0) == 0) return pow(q, parse_int(std::string_view(token).substr(2), "'" + token + "'"));
  return parse_rational(token);
}

ProjectionSpec parse_class_spec(const std::string& spec, const SpectrumConfig& config) {
  const auto& x = config.x;
  if (spec == "unit" || spec == "1") return unit_projection(x);

  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw ModelError("unknown class spec '" + spec + "'");
  const std::string kind = spec.substr(0, colon);
  const std::string arg = spec.substr(colon + 1);

  if (kind == "bott") return bott(parse_int(arg, "class spec '" + spec + "'"), x);
  if (kind == "pr") return powers_rieffel(parse_int(arg, "class spec '" + spec + "'"), x);
  if (kind == "chi") {
    if (arg.size() < 5) throw ModelError("malformed interval in '" + spec + "'");
    const char open = arg.front();
    const char close = arg.back();
    if ((open != '[' && open != '(') || (close != ']' && close != ')'))
      throw ModelError("interval in '" + spec + "' must look like [lo,hi) or (lo,hi)");
    const std::string body = arg.substr(1, arg.size() - 2);
    const auto comma = body.find(',');
    if (comma == std::string::npos) throw ModelError("interval in '" + spec + "' needs a comma");
    IndicatorInterval iv;
    iv.lo = parse_endpoint(body.substr(0, comma), x->q());
    iv.lo_closed = open == '[';
    const std::string hi = body.substr(comma + 1);
    if (hi == "inf") {
      if (close == ']') throw ModelError("infinite end must be open");
    } else {
      iv.hi = parse_endpoint(hi, x->q());
    }
    iv.hi_closed = close == ']';
    return indicator(iv, x);
  }
  throw ModelError("unknown class spec '" + spec + "'");
}

KHomClass parse_hom_spec(const std::string& spec, const SpectrumConfig& config) {
  if (spec == "ev0") return KHomClass::ev0();
  if (spec == "evinf") return KHomClass::evinf();
  if (spec.rfind("F:", 0) != 0) throw ModelError("unknown K-homology spec '" + spec + "'");
  const std::string arg = spec.substr(2);
  if (arg.rfind("y=", 0) == 0) {
    const Rational y = parse_rational(arg.substr(2));
    if (y <= 0 || !config.x->contains(y))
      throw ModelError("base point " + to_string(y) + " is not a positive point of the spectrum");
    return KHomClass::fredholm(y);
  }
  const int idx = parse_int(arg, "K-homology spec '" + spec + "'");
  const auto fam = config.family();
  const int count = static_cast<int>(fam.size()) - 2;
  if (idx < 0 || idx >= count)
    throw ModelError("Fredholm index " + std::to_string(idx) + " out of range (have " + std::to_string(count) + ")");
  return fam[static_cast<std::size_t>(idx + 1)];
}

}  // namespace qplane::cli
