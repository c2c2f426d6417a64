#pragma once

#include <iosfwd>
#include <string>

#include "ncpgd/point.hpp"
#include "ncpgd/solver.hpp"

namespace ncpgd {

/// Column header of a trace CSV for points with `dim` coordinates:
/// iter,f,mu,alpha,backtracks,stat_regular,stat_proximal_witness,x_0,...
std::string trace_csv_header(std::size_t dim);

/// One row per iterate, numbers printed with 17 significant digits so that
/// reading the file back reproduces every double exactly.
void write_trace_csv(std::ostream& out, const Trace& trace);
std::string trace_to_csv(const Trace& trace);

/// Inverse of write_trace_csv. The termination reason is not part of the
/// rows, so the returned trace reports MaxIters. Throws ParseError.
Trace read_trace_csv(std::istream& in, const Shape& shape);

}  // namespace ncpgd
