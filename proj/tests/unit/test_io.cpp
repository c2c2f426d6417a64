#include <sstream>

#include <doctest.h>

#include "ncpgd/errors.hpp"
#include "ncpgd/instances.hpp"
#include "ncpgd/trace_io.hpp"

using namespace ncpgd;

TEST_CASE("trace CSV header and rows") {
  CHECK(trace_csv_header(2) == "iter,f,mu,alpha,backtracks,stat_regular,stat_proximal_witness,x_0,x_1");
  const SparseSet set(2, 1);
  SolverConfig cfg;
  cfg.alpha_min = cfg.alpha_max = 1;
  cfg.initial_step = FixedStep{1};
  cfg.c = 0.4;
  const Trace t = pgd(set, least_squares(Point::of({1, 0})), Point::of({0, 1}), cfg);
  const std::string csv = trace_to_csv(t);
  CHECK(csv == "iter,f,mu,alpha,backtracks,stat_regular,stat_proximal_witness,x_0,x_1\n"
               "0,1,1,0,0,1,0,0,1\n"
               "1,0,0,1,0,0,1,1,0\n");
}

TEST_CASE("trace CSV round trip is exact") {
  InstanceGenerator gen(50);
  const LowRankSet set(3, 2, 1);
  SolverConfig cfg;
  cfg.rule = AverageRule{0.3};
  cfg.alpha_max = 0.6;
  const Trace t = pgd(set, least_squares(gen.ambient(set.ambient_shape())), gen.feasible(set), cfg);
  std::istringstream in(trace_to_csv(t));
  const Trace back = read_trace_csv(in, set.ambient_shape());
  REQUIRE(back.size() == t.size());
  CHECK(back.f_values == t.f_values);
  CHECK(back.mu_values == t.mu_values);
  CHECK(back.alphas == t.alphas);
  CHECK(back.backtrack_counts == t.backtrack_counts);
  CHECK(back.stat_measures == t.stat_measures);
  CHECK(back.proximal_witness == t.proximal_witness);
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(back.iterates[i].vec() == t.iterates[i].vec());
  CHECK(trace_to_csv(back) == trace_to_csv(t));
}

TEST_CASE("malformed trace CSV") {
  const Shape s = Shape::vector(2);
  auto parse = [&](const std::string& text) {
    std::istringstream in(text);
    return read_trace_csv(in, s);
  };
  const std::string header = trace_csv_header(2) + "\n";
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse(trace_csv_header(3) + "\n"), ParseError);
  CHECK_THROWS_AS(parse(header + "0,1,1,0,0,1,0,0\n"), ParseError);
  CHECK_THROWS_AS(parse(header + "0,1,1,0,0,1,2,0,1\n"), ParseError);
  CHECK_THROWS_AS(parse(header + "0,x,1,0,0,1,0,0,1\n"), ParseError);
  CHECK_THROWS_AS(parse(header + "1,1,1,0,0,1,0,0,1\n"), ParseError);
  CHECK_THROWS_AS(parse(header + "0,1,1,0,0,1,0,nan,1\n"), Error);
  CHECK(parse(header).empty());
  CHECK(parse(header + "0,1,1,0,0,1,1,0,1\r\n").size() == 1);
  try {
    parse(header + "0,1,1,0,0,1,0,zz,1\n");
  } catch (const ParseError& e) {
    CHECK(e.field() == "x_0");
  }
}
