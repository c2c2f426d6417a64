#include "ncpgd/trace_io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include <fmt/format.h>

#include "ncpgd/errors.hpp"

namespace ncpgd {

namespace {

constexpr std::size_t kFixedColumns = 7;

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  for (;;) {
    const auto comma = line.find(',', pos);
    out.push_back(line.substr(pos, comma == std::string_view::npos ? line.npos : comma - pos));
    if (comma == std::string_view::npos) return out;
    pos = comma + 1;
  }
}

template <class T>
T parse_number(std::string_view text, std::size_t line, const std::string& column) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError(column, fmt::format("line {}: cannot parse '{}'", line, text));
  }
  return value;
}

}  // namespace

std::string trace_csv_header(std::size_t dim) {
  std::string h = "iter,f,mu,alpha,backtracks,stat_regular,stat_proximal_witness";
  for (std::size_t j = 0; j < dim; ++j) h += fmt::format(",x_{}", j);
  return h;
}

void write_trace_csv(std::ostream& out, const Trace& trace) {
  const std::size_t dim = trace.empty() ? 0 : trace.last().size();
  out << trace_csv_header(dim) << '\n';
  std::string row;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    row = fmt::format("{},{:.17g},{:.17g},{:.17g},{},{:.17g},{}", i, trace.f_values[i], trace.mu_values[i],
                      trace.alphas[i], trace.backtrack_counts[i], trace.stat_measures[i],
                      trace.proximal_witness[i] ? 1 : 0);
    for (const double c : trace.iterates[i].vec()) row += fmt::format(",{:.17g}", c);
    out << row << '\n';
  }
}

std::string trace_to_csv(const Trace& trace) {
  std::ostringstream os;
  write_trace_csv(os, trace);
  return os.str();
}

Trace read_trace_csv(std::istream& in, const Shape& shape) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("header", "empty trace file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != trace_csv_header(shape.size())) {
    throw ParseError("header", fmt::format("expected '{}' for shape {}", trace_csv_header(shape.size()), shape.to_string()));
  }

  const std::vector<std::string> names = [&] {
    std::vector<std::string> n;
    for (auto col : split(line)) n.emplace_back(col);
    return n;
  }();

  Trace t;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cols = split(line);
    if (cols.size() != kFixedColumns + shape.size()) {
      throw ParseError("row", fmt::format("line {}: expected {} columns, got {}", lineno, names.size(), cols.size()));
    }
    if (parse_number<std::size_t>(cols[0], lineno, names[0]) != t.size()) {
      throw ParseError(names[0], fmt::format("line {}: iterations must be consecutive from 0", lineno));
    }
    t.f_values.push_back(parse_number<double>(cols[1], lineno, names[1]));
    t.mu_values.push_back(parse_number<double>(cols[2], lineno, names[2]));
    t.alphas.push_back(parse_number<double>(cols[3], lineno, names[3]));
    t.backtrack_counts.push_back(parse_number<std::size_t>(cols[4], lineno, names[4]));
    t.stat_measures.push_back(parse_number<double>(cols[5], lineno, names[5]));
    const int w = parse_number<int>(cols[6], lineno, names[6]);
    if (w != 0 && w != 1) throw ParseError(names[6], fmt::format("line {}: expected 0 or 1", lineno));
    t.proximal_witness.push_back(w == 1);
    std::vector<double> coords;
    coords.reserve(shape.size());
    for (std::size_t j = 0; j < shape.size(); ++j) {
      coords.push_back(parse_number<double>(cols[kFixedColumns + j], lineno, names[kFixedColumns + j]));
    }
    t.iterates.emplace_back(shape, coords);
  }
  return t;
}

}  // namespace ncpgd
