#include "doctest.h"

#include "forminv/polymap.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace forminv;
using forminv::testing::Gen;

namespace {

MSeries poly(int n, std::vector<std::pair<Exponent, Rat>> terms, int trunc = kExact) {
  return MSeries::from_terms(n, trunc, terms);
}

MSeries z(int n, int i) { return MSeries::variable(n, i); }

}  // namespace

TEST_CASE("rationals are kept in lowest terms") {
  CHECK(to_string(parse_rat("6/4")) == "3/2");
  CHECK(to_string(parse_rat("-6/4")) == "-3/2");
  CHECK_THROWS_AS(parse_rat("4/-6"), std::invalid_argument);
  CHECK(to_string(parse_rat("0/5")) == "0");
  CHECK(to_string(parse_rat("7")) == "7");
  CHECK_THROWS_AS(parse_rat("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat(""), std::invalid_argument);
  CHECK(factorial(5) == 120);
  CHECK(binomial(6, 2) == 15);
}

TEST_CASE("monomial keys order by degree first") {
  Exponent a{2, 0}, b{0, 3}, c{1, 1};
  MonoKey ka = mono::pack(a), kb = mono::pack(b), kc = mono::pack(c);
  CHECK(ka < kb);
  CHECK(kc < ka);
  CHECK(mono::unpack(ka + kc, 2) == Exponent{3, 1});
  CHECK(mono::degree(ka + kc) == 4);
  CHECK_THROWS(mono::pack(Exponent{-1, 0}));
  CHECK_THROWS(mono::pack(Exponent(8, 0)));
}

TEST_CASE("order of a series") {
  CHECK(MSeries(1).order() == kInfiniteOrder);
  CHECK(poly(1, {{{2}, 1}, {{5}, 1}}).order() == 2);
  CHECK(poly(2, {{{1, 1}, 1}}).order() == 2);
}

TEST_CASE("coefficients given in any form are normalized") {
  Rat six_halves(6, 2);
  MSeries s = poly(1, {{{1}, six_halves}});
  CHECK(s.coeff(Exponent{1}) == 3);
  CHECK(s == poly(1, {{{1}, Rat(3)}}));
}

TEST_CASE("terms above the truncation are rejected or dropped") {
  CHECK_THROWS_AS(poly(1, {{{4}, 1}}, 3), std::invalid_argument);
  MSeries s = poly(1, {{{1}, 1}, {{2}, 0}, {{3}, 2}, {{1}, -1}}, 5);
  REQUIRE(s.size() == 1);
  CHECK(s.coeff(Exponent{3}) == 2);
  CHECK(s.truncated(2).is_zero());
  CHECK(s.truncated(2).trunc() == 2);
}

TEST_CASE("products certify only what both factors know") {
  MSeries a = poly(1, {{{1}, 1}}, 4);  // z + O(z^5)
  MSeries b = poly(1, {{{2}, 1}}, 6);  // z^2 + O(z^7)
  MSeries p = mul(a, b);
  CHECK(p.trunc() == 6);
  CHECK(p.coeff(Exponent{3}) == 1);
  MSeries e = poly(1, {{{1}, 1}});
  CHECK(mul(e, e).exact());
  CHECK(mul(e, a).trunc() == 5);
  CHECK(mul(e, e, 1).trunc() == 1);
  CHECK(mul(e, e, 1).is_zero());
}

TEST_CASE("partial derivative lowers the truncation") {
  MSeries s = poly(2, {{{2, 1}, 3}, {{0, 2}, 1}}, 4);
  MSeries d = partial_diff(s, 0);
  CHECK(d.trunc() == 3);
  CHECK(d.coeff(Exponent{1, 1}) == 6);
  CHECK(d.size() == 1);
}

TEST_CASE("series inverse and composition on small cases") {
  MSeries one_minus_z = poly(1, {{{0}, 1}, {{1}, -1}});
  MSeries geo = inverse(one_minus_z, 6);
  CHECK(geo.trunc() == 6);
  for (int k = 0; k <= 6; ++k) CHECK(geo.coeff(Exponent{k}) == 1);
  // (z + z^2) o (z - z^2) = z - z^2 + z^2 - 2z^3 + z^4.
  MSeries f = poly(1, {{{1}, 1}, {{2}, 1}});
  MSeries g = poly(1, {{{1}, 1}, {{2}, -1}});
  std::vector<MSeries> inner{g};
  MSeries c = compose(f, std::span<const MSeries>(inner));
  CHECK(c == poly(1, {{{1}, 1}, {{3}, -2}, {{4}, 1}}));
}

TEST_CASE("property: ring axioms on random series") {
  Gen g(11);
  for (int trial = 0; trial < 60; ++trial) {
    int n = g.uniform(1, 3);
    int tr = g.uniform(3, 8);
    MSeries a = g.series(n, 0, tr, 5, g.coin() ? kExact : tr);
    MSeries b = g.series(n, 0, tr, 5, g.coin() ? kExact : tr);
    MSeries c = g.series(n, 0, tr, 5, tr);
    int d = std::min({a.trunc(), b.trunc(), c.trunc()});
    CAPTURE(trial);
    CHECK(equal_through(add(a, b), add(b, a), d));
    CHECK(equal_through(mul(a, b), mul(b, a), d));
    CHECK(equal_through(add(add(a, b), c), add(a, add(b, c)), d));
    CHECK(equal_through(mul(mul(a, b, tr), c, tr), mul(a, mul(b, c, tr), tr), d));
    CHECK(equal_through(mul(a, add(b, c), tr), add(mul(a, b, tr), mul(a, c, tr)), d));
    CHECK(equal_through(sub(a, a), MSeries(n), d));
    CHECK(equal_through(mul(a, MSeries::constant(n, Rat(1))), a, d));
  }
}

TEST_CASE("property: composition is associative") {
  Gen g(12);
  for (int trial = 0; trial < 25; ++trial) {
    int n = g.uniform(1, 3);
    int d = g.uniform(3, 6);
    auto rand_map = [&] {
      PolyMap m = g.map(n, 1, 3, 3);
      return m;
    };
    PolyMap f = rand_map(), p = rand_map(), q = rand_map();
    PolyMap left = compose(compose(f, p, d), q, d);
    PolyMap right = compose(f, compose(p, q, d), d);
    CAPTURE(trial);
    CHECK(equal_through(left, right, d));
  }
}

TEST_CASE("property: mixed partials commute") {
  Gen g(13);
  for (int trial = 0; trial < 40; ++trial) {
    int n = g.uniform(2, 3);
    MSeries f = g.series(n, 0, 7, 8, g.coin() ? kExact : 7);
    int i = g.uniform(0, n - 1), j = g.uniform(0, n - 1);
    CHECK(partial_diff(partial_diff(f, i), j) == partial_diff(partial_diff(f, j), i));
  }
}

TEST_CASE("property: Euler identity for homogeneous maps") {
  Gen g(14);
  for (int trial = 0; trial < 30; ++trial) {
    int n = g.uniform(1, 3), d = g.uniform(2, 5);
    PolyMap h = g.homogeneous(n, d, 4);
    PolyMap lhs = mat_vec(jacobian(h), PolyMap::identity(n));
    CHECK(lhs == scale(h, Rat(d)));
  }
}

TEST_CASE("property: determinant matches the Leibniz expansion") {
  Gen g(15);
  for (int trial = 0; trial < 30; ++trial) {
    int n = g.uniform(1, 3), cap = g.uniform(2, 6);
    SeriesMatrix<Rat> a(n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        MSeries e = g.series(n, 0, 3, 3);
        // Odd trials have no constant terms at all, so no unit pivot exists.
        if (trial % 2) e = sub(e, e.homogeneous_part(0));
        a[r].push_back(e);
      }
    CAPTURE(trial);
    CHECK(equal_through(determinant(a, cap), oracle::leibniz_det(a, cap), cap));
  }
}

TEST_CASE("property: chain rule for the Jacobian determinant") {
  Gen g(16);
  for (int trial = 0; trial < 20; ++trial) {
    int n = g.uniform(1, 3), d = g.uniform(3, 6);
    PolyMap f = PolyMap::identity(n) + g.map(n, 2, 3, 3);
    PolyMap gm = PolyMap::identity(n) + g.map(n, 2, 3, 3);
    MSeries lhs = jacobian_det(compose(f, gm, d + 1), d);
    MSeries rhs = mul(compose(jacobian_det(f), gm, d), jacobian_det(gm), d);
    CAPTURE(trial);
    CHECK(equal_through(lhs, rhs, d));
  }
}

TEST_CASE("canonical maps reject bad input") {
  PolyMap linear(std::vector<MSeries>{poly(1, {{{1}, 1}})});
  CHECK_THROWS_AS(MapF::from_h(linear), std::invalid_argument);
  PolyMap scaled_id(std::vector<MSeries>{poly(1, {{{1}, 2}, {{2}, 1}})});
  CHECK_THROWS_AS(MapF::from_map(scaled_id), std::invalid_argument);
  PolyMap with_const(std::vector<MSeries>{poly(1, {{{0}, 1}, {{1}, 1}})});
  CHECK_THROWS_AS(MapF::from_map(with_const), std::invalid_argument);
  MapF ok = MapF::from_map(PolyMap(std::vector<MSeries>{poly(1, {{{1}, 1}, {{2}, -1}})}));
  CHECK(ok.h()[0] == poly(1, {{{2}, 1}}));
  CHECK(ok.homogeneous_degree() == 2);
}
