#include "ncpgd_cli/spec.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include <fmt/format.h>

#include "ncpgd/errors.hpp"

namespace ncpgd::cli {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  for (;;) {
    const auto at = s.find(sep, pos);
    out.push_back(trim(s.substr(pos, at == std::string_view::npos ? s.npos : at - pos)));
    if (at == std::string_view::npos) return out;
    pos = at + 1;
  }
}

double to_double(const std::string& text, const std::string& field) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError(field, fmt::format("expected a number, got '{}'", text));
  }
  return v;
}

template <class T>
T to_unsigned(const std::string& text, const std::string& field) {
  T v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError(field, fmt::format("expected a nonnegative integer, got '{}'", text));
  }
  return v;
}

// "name:key=value" with a single parameter.
std::pair<std::string, std::string> single_param(std::string_view body, const std::string& key, const std::string& field) {
  const std::string b = trim(body);
  const auto eq = b.find('=');
  if (eq == std::string::npos || trim(b.substr(0, eq)) != key) {
    throw ParseError(field, fmt::format("expected '{}=<value>', got '{}'", key, b));
  }
  return {key, trim(b.substr(eq + 1))};
}

}  // namespace

NonmonotoneRule parse_rule(std::string_view text) {
  const std::string t = trim(text);
  const auto colon = t.find(':');
  const std::string kind = t.substr(0, colon);
  if (colon == std::string::npos) throw ParseError("rule", fmt::format("expected max:l=K or avg:p=P, got '{}'", t));
  if (kind == "max") {
    const auto [k, v] = single_param(t.substr(colon + 1), "l", "rule");
    return MaxRule{to_unsigned<std::size_t>(v, "rule")};
  }
  if (kind == "avg" || kind == "average") {
    const auto [k, v] = single_param(t.substr(colon + 1), "p", "rule");
    const double p = to_double(v, "rule");
    if (!(p > 0 && p <= 1)) throw ParseError("rule", fmt::format("p must lie in (0, 1], got {}", p));
    return AverageRule{p};
  }
  throw ParseError("rule", fmt::format("unknown rule '{}'", kind));
}

InitialStep parse_step(std::string_view text) {
  const std::string t = trim(text);
  if (t == "alpha-max" || t == "alpha_max") return AlphaMaxStep{};
  if (t.rfind("fixed:", 0) == 0) return FixedStep{to_double(trim(t.substr(6)), "step")};
  throw ParseError("step", fmt::format("expected alpha-max or fixed:A, got '{}'", t));
}

void apply_setting(ExperimentSpec& spec, std::string key, const std::string& raw) {
  std::replace(key.begin(), key.end(), '-', '_');
  const std::string value = trim(raw);
  SolverConfig& c = spec.cfg;
  if (key == "set") {
    spec.set = value;
  } else if (key == "objective") {
    spec.objective = value;
  } else if (key == "x0") {
    spec.x0 = value;
  } else if (key == "alpha_min") {
    c.alpha_min = to_double(value, key);
  } else if (key == "alpha_max") {
    c.alpha_max = to_double(value, key);
  } else if (key == "alpha") {
    // Constant step: alpha_min = alpha_max = alpha, every search starts there.
    const double a = to_double(value, key);
    c.alpha_min = c.alpha_max = a;
    c.initial_step = FixedStep{a};
  } else if (key == "beta") {
    c.beta = to_double(value, key);
  } else if (key == "c") {
    c.c = to_double(value, key);
  } else if (key == "rule") {
    c.rule = parse_rule(value);
  } else if (key == "step") {
    c.initial_step = parse_step(value);
  } else if (key == "stat_tol") {
    c.stat_tol = to_double(value, key);
  } else if (key == "max_iters") {
    c.max_iters = to_unsigned<std::size_t>(value, key);
  } else if (key == "max_backtracks") {
    c.max_backtracks = to_unsigned<std::size_t>(value, key);
  } else if (key == "stationarity") {
    if (value == "regular") {
      c.stationarity = StationarityMode::Regular;
    } else if (value == "proximal") {
      c.stationarity = StationarityMode::ProximalWitness;
    } else {
      throw ParseError(key, fmt::format("expected regular or proximal, got '{}'", value));
    }
  } else if (key == "algorithm") {
    if (value != "pgd" && value != "p2gd" && value != "both") {
      throw ParseError(key, fmt::format("expected pgd, p2gd or both, got '{}'", value));
    }
    spec.algorithm = value;
  } else if (key == "seed") {
    spec.seed = to_unsigned<std::uint64_t>(value, key);
  } else if (key == "out") {
    spec.out = value;
  } else if (key == "emit_plot_data") {
    spec.plot_data = value;
  } else {
    throw ParseError(key, "unknown setting");
  }
}

void apply_config_text(ExperimentSpec& spec, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ParseError(fmt::format("line {}", lineno), fmt::format("expected key = value, got '{}'", t));
    try {
      apply_setting(spec, trim(t.substr(0, eq)), t.substr(eq + 1));
    } catch (const ParseError& e) {
      throw ParseError(fmt::format("line {}", lineno), e.what());
    }
  }
}

void apply_config_file(ExperimentSpec& spec, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("config", fmt::format("cannot open '{}'", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    apply_config_text(spec, buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path, e.what());
  }
}

Point parse_coordinates(std::string_view text, const Shape& shape, const std::string& field) {
  std::vector<double> coords;
  for (const auto& item : split(text, ',')) coords.push_back(to_double(item, field));
  if (coords.size() != shape.size()) {
    throw ParseError(field, fmt::format("expected {} coordinates for {}, got {}", shape.size(), shape.to_string(), coords.size()));
  }
  return Point(shape, coords);
}

Objective parse_objective(std::string_view text, const Shape& shape, InstanceGenerator& gen) {
  const std::string t = trim(text);
  const auto colon = t.find(':');
  const std::string kind = t.substr(0, colon);
  const std::string arg = colon == std::string::npos ? std::string() : trim(t.substr(colon + 1));
  if (kind == "lsq") {
    if (arg.empty()) throw ParseError("objective", "lsq needs a target: lsq:c1,c2,... or lsq:random");
    return least_squares(arg == "random" ? gen.ambient(shape) : parse_coordinates(arg, shape, "objective"));
  }
  if (!arg.empty() && kind != "const") throw ParseError("objective", fmt::format("'{}' takes no argument", kind));
  if (kind == "const") return constant_objective(arg.empty() ? 0.0 : to_double(arg, "objective"));
  if (kind == "quartic") return quartic_norm();
  if (kind == "cubic") return cubic_sum();
  if (kind == "cusp") {
    if (shape != Shape::vector(2)) throw ParseError("objective", "cusp is defined on R^2 only");
    return cusp_example_objective();
  }
  throw ParseError("objective", fmt::format("unknown objective '{}'", kind));
}

Point parse_point(std::string_view text, const FeasibleSet& set, InstanceGenerator& gen) {
  const std::string t = trim(text);
  if (t.empty() || t == "zero") return Point::zeros(set.ambient_shape());
  if (t == "random") return gen.feasible(set);
  return parse_coordinates(t, set.ambient_shape(), "x0");
}

std::string format_point(const Point& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) s += fmt::format("{}{:.10g}", i ? ", " : "", x[i]);
  return s + ")";
}

}  // namespace ncpgd::cli
