#include "doctest.h"

#include <set>
#include <sstream>

#include "forminv/bench.hpp"
#include "support/generators.hpp"

using namespace forminv;

TEST_CASE("dense homogeneous inputs are reproducible") {
  PolyMap a = dense_homogeneous(3, 3, 7);
  CHECK(a == dense_homogeneous(3, 3, 7));
  CHECK(homogeneous_degree(a) == 3);
  for (const auto& s : a) CHECK(s.size() == 10);
}

TEST_CASE("agreement hash is stable and discriminating") {
  PolyMap g = PolyMap::identity(2);
  CHECK(agreement_hash(g) == agreement_hash(PolyMap::identity(2)));
  CHECK(agreement_hash(g).size() == 16);
  CHECK(agreement_hash(g) != agreement_hash(PolyMap::identity(3)));
}

TEST_CASE("run_bench records every applicable method and notes the rest") {
  // (z1^2, z2^3) has no single homogeneous degree.
  PolyMap mixed = forminv::testing::monomial_map(2, {{{{2, 0}, Rat(1)}}, {{{0, 3}, Rat(1)}}});
  std::vector<BenchInput> inputs{{"cubic", MapF::from_h(dense_homogeneous(2, 3, 1))}, {"mixed", MapF::from_h(mixed)}};
  BenchOptions opt;
  opt.degrees = {3, 5};
  opt.repeats = 1;
  BenchResult r = run_bench(inputs, opt);
  CHECK(r.records.size() == 2 * 4 + 2 * 3);
  CHECK(r.notes.size() == 1);
  std::set<std::string> hashes;
  for (const auto& rec : r.records)
    if (rec.input_id == "cubic" && rec.degree == 5) hashes.insert(rec.agree_hash);
  CHECK(hashes.size() == 1);
  std::string csv = bench_csv(r.records);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "input_id,method,degree,millis,terms,agree_hash");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 5);
  }
  CHECK(rows == static_cast<int>(r.records.size()));
  CHECK_FALSE(bench_table(r.records).empty());
}
