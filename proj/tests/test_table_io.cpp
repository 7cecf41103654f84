#include "doctest.h"

#include "fracq/errors.hpp"
#include "fracq/random.hpp"
#include "fracq/table_io.hpp"

#include <cmath>
#include <limits>
#include <sstream>

using namespace fracq;

TEST_SUITE("table_io") {

TEST_CASE("17 significant digits round-trip every double") {
  RandomStream rng(77, 0);
  io::Table t;
  t.comments = {"{\"kind\": \"test\"}"};
  t.columns = {"a", "b"};
  for (int i = 0; i < 2000; ++i) {
    t.rows.push_back({rng.normal() * std::pow(10.0, rng.uniform() * 600.0 - 300.0), rng.uniform()});
  }
  t.rows.push_back({std::numeric_limits<double>::denorm_min(), -0.0});
  t.rows.push_back({std::numeric_limits<double>::max(), 0.1});
  std::stringstream s;
  io::write_table(s, t);
  const auto back = io::read_table(s);
  CHECK(back.comments == t.comments);
  CHECK(back.columns == t.columns);
  REQUIRE(back.rows.size() == t.rows.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i) CHECK(back.rows[i] == t.rows[i]);
  CHECK(back.column("b")[0] == t.rows[0][1]);
  CHECK_THROWS_AS(back.column("c"), ValidationError);
}

TEST_CASE("reader errors cite the position") {
  std::istringstream bad("x,y\n1,2\n3\n");
  CHECK_THROWS_WITH_AS(io::read_table(bad), doctest::Contains("line 3"), ValidationError);
  std::istringstream nan("x,y\n1,abc\n");
  CHECK_THROWS_WITH_AS(io::read_table(nan), doctest::Contains("line 2, column 2"), ValidationError);
  std::istringstream none("# only a comment\n");
  CHECK_THROWS_AS(io::read_table(none), ValidationError);
}

TEST_CASE("csv field splitting") {
  CHECK(io::split_csv_line("a,\"b,c\",\"d\"\"e\"", 1) == std::vector<std::string>{"a", "b,c", "d\"e"});
  CHECK_THROWS_AS(io::split_csv_line("\"open", 4), ValidationError);
  CHECK(io::parse_double(" +1.5e3 ", 1, 1) == 1500.0);
}

}  // TEST_SUITE
