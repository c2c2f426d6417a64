#include <charconv>
#include <map>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

#include "ncpgd/errors.hpp"
#include "ncpgd/sets.hpp"

namespace ncpgd {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::map<std::string, std::size_t> parse_params(std::string_view body) {
  std::map<std::string, std::size_t> out;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    const auto comma = body.find(',', pos);
    const std::string item = trim(body.substr(pos, comma == std::string_view::npos ? body.npos : comma - pos));
    pos = comma == std::string_view::npos ? body.size() + 1 : comma + 1;
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("set", fmt::format("expected key=value, got '{}'", item));
    const std::string key = trim(item.substr(0, eq));
    const std::string value = trim(item.substr(eq + 1));
    std::size_t parsed = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), parsed);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
      throw ParseError("set", fmt::format("'{}' must be a nonnegative integer, got '{}'", key, value));
    }
    if (!out.emplace(key, parsed).second) throw ParseError("set", fmt::format("duplicate parameter '{}'", key));
  }
  return out;
}

std::size_t take(std::map<std::string, std::size_t>& params, const std::string& key) {
  const auto it = params.find(key);
  if (it == params.end()) throw ParseError("set", fmt::format("missing parameter '{}'", key));
  const std::size_t v = it->second;
  params.erase(it);
  return v;
}

}  // namespace

SetPtr parse_set_spec(std::string_view spec) {
  const std::string text = trim(spec);
  const auto colon = text.find(':');
  const std::string kind = trim(text.substr(0, colon));
  auto params = colon == std::string::npos ? std::map<std::string, std::size_t>{}
                                           : parse_params(std::string_view(text).substr(colon + 1));
  SetPtr set;
  try {
    if (kind == "sparse") {
      const auto n = take(params, "n");
      set = std::make_shared<SparseSet>(n, take(params, "s"));
    } else if (kind == "nonneg-sparse") {
      const auto n = take(params, "n");
      set = std::make_shared<NonnegSparseSet>(n, take(params, "s"));
    } else if (kind == "lowrank") {
      const auto m = take(params, "m");
      const auto n = take(params, "n");
      set = std::make_shared<LowRankSet>(m, n, take(params, "r"));
    } else if (kind == "psd") {
      const auto n = take(params, "n");
      set = std::make_shared<PsdLowRankSet>(n, take(params, "r"));
    } else if (kind == "curve") {
      set = std::make_shared<CurveSet>();
    } else if (kind == "epigraph") {
      set = std::make_shared<EpigraphSet>();
    } else {
      throw ParseError("set", fmt::format("unknown set kind '{}'", kind));
    }
  } catch (const std::invalid_argument& e) {
    throw ParseError("set", e.what());
  }
  if (!params.empty()) throw ParseError("set", fmt::format("unknown parameter '{}' for '{}'", params.begin()->first, kind));
  return set;
}

}  // namespace ncpgd
