#include "rbound/config.hpp"

#include <json.hpp>
#include <string>
#include <vector>

#include "rbound/error.hpp"

namespace rbound {

namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorCode::ConfigError, msg); }

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    config_error(std::string("invalid JSON: ") + e.what());
  }
}

double num(const json& j, const char* key, std::optional<double> fallback = std::nullopt) {
  if (!j.contains(key)) {
    if (fallback) return *fallback;
    config_error(std::string("missing field '") + key + "'");
  }
  if (!j[key].is_number()) config_error(std::string("field '") + key + "' must be a number");
  return j[key].get<double>();
}

int integer(const json& j, const char* key, std::optional<int> fallback = std::nullopt) {
  if (!j.contains(key)) {
    if (fallback) return *fallback;
    config_error(std::string("missing field '") + key + "'");
  }
  if (!j[key].is_number_integer()) config_error(std::string("field '") + key + "' must be an integer");
  return j[key].get<int>();
}

std::string kind_of(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    config_error("expected an object with a string 'kind'");
  return j["kind"].get<std::string>();
}

// Library validation errors inside a config become config errors.
template <class F>
auto as_config(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigError) throw;
    config_error(e.what());
  }
}

Grid grid_from(const json& j) {
  const std::string kind = kind_of(j);
  return as_config([&] {
    if (kind == "uniform") return Grid::uniform(num(j, "half_gap"), num(j, "offset", 0.0));
    if (kind == "float") {
      bool sub = true;
      if (j.contains("subnormals")) {
        if (!j["subnormals"].is_boolean()) config_error("field 'subnormals' must be a boolean");
        sub = j["subnormals"].get<bool>();
      }
      return Grid::floating(integer(j, "m"), integer(j, "k_min"), integer(j, "k_max"), sub);
    }
    if (kind == "explicit") {
      if (!j.contains("points") || !j["points"].is_array()) config_error("explicit grid needs a 'points' array");
      std::vector<double> pts;
      for (const auto& p : j["points"]) {
        if (!p.is_number()) config_error("grid points must be numbers");
        pts.push_back(p.get<double>());
      }
      return Grid::explicit_set(std::move(pts));
    }
    config_error("unknown grid kind '" + kind + "'");
  });
}

DensityModel dist_from(const json& j) {
  const std::string kind = kind_of(j);
  return as_config([&] {
    if (kind == "semicircle") return make_semicircle(num(j, "r"), num(j, "mu", 0.0));
    if (kind == "normal") return make_normal(num(j, "mu", 0.0), num(j, "sigma2", 1.0));
    if (kind == "exponential") return make_exponential(num(j, "lambda"));
    if (kind == "uniform") return make_uniform(num(j, "lo"), num(j, "hi"));
    config_error("unknown distribution kind '" + kind + "'");
  });
}

// "kind:a=1,b=2" -> {"kind":"kind","a":1,"b":2}. Values that parse as
// numbers or booleans are typed; ';'-separated lists become arrays.
json spec_to_json(std::string_view spec) {
  json j = json::object();
  const auto colon = spec.find(':');
  j["kind"] = std::string(spec.substr(0, colon));
  if (colon == std::string_view::npos) return j;
  std::string_view rest = spec.substr(colon + 1);
  auto value_of = [](std::string_view v) -> json {
    if (v == "true") return true;
    if (v == "false") return false;
    const std::string s(v);
    try {
      std::size_t used = 0;
      if (s.find_first_of(".eE") == std::string::npos) {
        const long long i = std::stoll(s, &used);
        if (used == s.size()) return i;
      }
      const double d = std::stod(s, &used);
      if (used == s.size()) return d;
    } catch (const std::exception&) {
    }
    config_error("cannot parse value '" + s + "'");
  };
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) config_error("expected key=value in '" + std::string(item) + "'");
    const std::string key(item.substr(0, eq));
    const std::string_view val = item.substr(eq + 1);
    if (val.find(';') != std::string_view::npos) {
      json arr = json::array();
      std::string_view v = val;
      while (!v.empty()) {
        const auto semi = v.find(';');
        arr.push_back(value_of(v.substr(0, semi)));
        if (semi == std::string_view::npos) break;
        v = v.substr(semi + 1);
      }
      j[key] = arr;
    } else {
      j[key] = value_of(val);
    }
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return j;
}

json term_json(const OrderTerm& t) { return {{"coef", t.coef}, {"power", t.power}, {"base", t.base}}; }

OrderTerm term_from(const json& j, double value_hint) {
  OrderTerm t;
  t.coef = num(j, "coef");
  t.power = integer(j, "power");
  if (!j.contains("base") || !j["base"].is_string()) config_error("term needs a string 'base'");
  t.base = j["base"].get<std::string>();
  t.value = value_hint;
  return t;
}

}  // namespace

Grid parse_grid_json(std::string_view text) { return grid_from(parse(text)); }

DensityModel parse_distribution_json(std::string_view text) { return dist_from(parse(text)); }

Grid parse_grid_spec(std::string_view spec) { return grid_from(spec_to_json(spec)); }

DensityModel parse_distribution_spec(std::string_view spec) { return dist_from(spec_to_json(spec)); }

std::string report_to_json(const BoundReport& r, int indent) {
  json j;
  j["value"] = r.value;
  j["leading"] = term_json(r.leading);
  j["higher_order"] = term_json(r.higher_order);
  j["theorem"] = r.theorem;
  if (r.tier) j["tier"] = std::string(tier_name(*r.tier));
  j["mode"] = std::string(mode_name(r.mode));
  if (r.two_sided) j["two_sided"] = {{"center", r.two_sided->center}, {"radius", r.two_sided->radius}};
  if (!r.flags.empty()) j["flags"] = r.flags;
  return j.dump(indent);
}

BoundReport report_from_json(std::string_view text) {
  const json j = parse(text);
  if (!j.is_object()) config_error("a bound report must be a JSON object");
  BoundReport r;
  r.value = num(j, "value");
  if (!j.contains("leading") || !j.contains("higher_order")) config_error("report needs leading and higher_order");
  r.leading = term_from(j["leading"], 0.0);
  r.higher_order = term_from(j["higher_order"], 0.0);
  if (!j.contains("theorem") || !j["theorem"].is_string()) config_error("report needs a string 'theorem'");
  r.theorem = j["theorem"].get<std::string>();
  if (j.contains("tier")) r.tier = parse_tier(j["tier"].get<std::string>());
  const std::string mode = j.value("mode", std::string("additive"));
  if (mode == "multiplicative") r.mode = Mode::Multiplicative;
  else if (mode == "additive") r.mode = Mode::Additive;
  else config_error("unknown mode '" + mode + "'");
  if (j.contains("two_sided")) r.two_sided = TwoSided{num(j["two_sided"], "center"), num(j["two_sided"], "radius")};
  if (j.contains("flags")) r.flags = j["flags"].get<std::vector<std::string>>();
  return r;
}

}  // namespace rbound
