#include "doctest.h"

#include "forminv/flow.hpp"
#include "support/generators.hpp"

using namespace forminv;
using forminv::testing::Gen;
using forminv::testing::monomial_map;

namespace {

PolyMap square() { return monomial_map(1, {{{{2}, Rat(1)}}}); }
PolyMap upper() { return monomial_map(2, {{{{0, 2}, Rat(1)}}, {}}); }

TPoly tpoly(std::vector<Rat> c) { return TPoly(std::move(c)); }

PolyMap iterate(const MapF& f, int m, int deg) {
  PolyMap out = PolyMap::identity(f.nvars());
  for (int k = 0; k < m; ++k) out = compose(f.f(), out, deg);
  return out.truncated(deg);
}

}  // namespace

TEST_CASE("deformed inverse for H = z^2") {
  DeformedInverse di = deformation_inverse(MapF::from_h(square()), 5);
  const TSeries& nt = di.nt[0];
  CHECK(nt.coeff(Exponent{2}) == tpoly({1}));
  CHECK(nt.coeff(Exponent{3}) == tpoly({0, 2}));
  CHECK(nt.coeff(Exponent{4}) == tpoly({0, 0, 5}));
  CHECK(evaluate_t(di.nt, Rat(0)) == square().truncated(5));
  PolyMap at_one = PolyMap::identity(1) + evaluate_t(di.nt, Rat(1));
  CHECK(equal_through(at_one, invert(Method::Recurrent, MapF::from_h(square()), 5), 5));
}

TEST_CASE("nilpotent H gives a t-independent N_t") {
  DeformedInverse di = deformation_inverse(MapF::from_h(upper()), 6);
  CHECK(t_derivative(di.nt).is_zero());
  CHECK(equal_through(evaluate_t(di.nt, Rat(7)), upper(), 6));
}

TEST_CASE("PDE residual vanishes and detects a corrupted layer") {
  Gen g(51);
  for (int trial = 0; trial < 10; ++trial) {
    MapF f = MapF::from_h(g.map(g.uniform(1, 3), 2, 3, 3));
    CHECK(pde_residual(deformation_inverse(f, 6)).is_zero());
  }
  CHECK(pde_residual(deformation_inverse(MapF::from_h(PolyMap::zero(2)), 5)).is_zero());

  GradedInverse gi = invert_recurrent(MapF::from_h(square()), 6);
  gi.layers[1] = gi.layers[1] + monomial_map(1, {{{{3}, Rat(1)}}});
  TMap res = pde_residual(deform(gi));
  CHECK_FALSE(res.is_zero());
  CHECK_FALSE(res[0].coeff(Exponent{3}).is_zero());
}

TEST_CASE("N_t composed with F_t, and equal nilpotency indices") {
  Report r = check_lemma31(MapF::from_h(upper()), 6);
  CHECK(r.passed());
  CHECK(check_lemma31(MapF::from_h(square()), 6).passed());
  CHECK(check_lemma31(MapF::from_h(PolyMap::zero(2)), 4).passed());
}

TEST_CASE("JH.H = 0 criterion") {
  Report nil = check_newp(upper(), 6);
  CHECK(nil.passed());
  CHECK(nil.count(Status::Pass) >= 5);
  CHECK(check_newp(square(), 6).passed());
  CHECK(check_newp(PolyMap::zero(2), 5).passed());
  MapF f = MapF::from_h(upper());
  CHECK(equal_through(power_map(f, 3, 6), PolyMap::identity(2) - scale(upper(), Rat(3)), 6));
}

TEST_CASE("quadratic nilpotent Jacobian") {
  Report r = check_bcw_quadratic_nilpotent(upper(), 6);
  CHECK(r.passed());
  CHECK(r.count(Status::Skipped) == 0);
  Report s = check_bcw_quadratic_nilpotent(square(), 6);
  CHECK(s.passed());
  CHECK(s.count(Status::Skipped) >= 1);
  Gen g(52);
  for (int trial = 0; trial < 5; ++trial) CHECK(check_bcw_quadratic_nilpotent(g.homogeneous(2, 3, 3), 6).passed());
}

TEST_CASE("two-parameter inverse and the generalized PDE") {
  CHECK(check_prop310(MapF::from_h(square()), 5, 2, 2).passed());
  CHECK(check_prop310(MapF::from_h(upper()), 5, 2, 2).passed());
  CHECK(check_gpde(square(), square(), 5).passed());
  CHECK(check_gpde(PolyMap::identity(1), square(), 5).passed());
  CHECK(check_gpde(square(), PolyMap::zero(1), 5).passed());
  Gen g(53);
  for (int trial = 0; trial < 4; ++trial) {
    int n = g.uniform(1, 2);
    MapF f = MapF::from_h(g.map(n, 2, 3, 2));
    CHECK(check_prop310(f, 5, 2, 2).passed());
    CHECK(check_gpde(g.map(n, 1, 2, 2), f.h(), 5).passed());
  }
}

TEST_CASE("Euler identities for homogeneous H") {
  CHECK(check_euler_identities(square(), 6).passed());
  CHECK(check_euler_identities(upper(), 6).passed());
  Gen g(54);
  for (int trial = 0; trial < 4; ++trial) CHECK(check_euler_identities(g.homogeneous(2, 3, 3), 6).passed());
}

TEST_CASE("formal flow for H = z^2") {
  MapF f = MapF::from_h(square());
  TMap flow = formal_flow(f, 5);
  CHECK(flow[0].coeff(Exponent{1}) == tpoly({1}));
  CHECK(flow[0].coeff(Exponent{2}) == tpoly({0, -1}));
  CHECK(flow[0].coeff(Exponent{3}) == tpoly({0, -1, 1}));
  PolyMap two = monomial_map(1, {{{{1}, Rat(1)}, {{2}, Rat(-2)}, {{3}, Rat(2)}, {{4}, Rat(-1)}}});
  CHECK(equal_through(evaluate_t(flow, Rat(2)), two, 4));
  CHECK(equal_through(evaluate_t(flow, Rat(1)), f.f(), 5));
  CHECK(equal_through(evaluate_t(flow, Rat(0)), PolyMap::identity(1), 5));
  CHECK(equal_through(evaluate_t(flow, Rat(-1)), invert_bcw(f, 5), 5));
}

TEST_CASE("property: powers, flow values and the group law") {
  Gen g(55);
  for (int trial = 0; trial < 6; ++trial) {
    int n = g.uniform(1, 2), deg = 6;
    MapF f = MapF::from_h(g.map(n, 2, 3, 2));
    TMap flow = formal_flow(f, deg);
    CAPTURE(trial);
    for (int m = -2; m <= 3; ++m) CHECK(equal_through(power_map(f, m, deg), evaluate_t(flow, Rat(m)), deg));
    CHECK(equal_through(power_map(f, 2, deg), iterate(f, 2, deg), deg));
    for (int a = -1; a <= 2; ++a)
      for (int b = -1; b <= 2; ++b) {
        if (std::abs(a) + std::abs(b) > 3) continue;
        PolyMap lhs = compose(evaluate_t(flow, Rat(a)), evaluate_t(flow, Rat(b)), deg);
        CHECK(equal_through(lhs, evaluate_t(flow, Rat(a + b)), deg));
      }
  }
}

TEST_CASE("polynomiality probe") {
  ProbeResult cubic = polynomiality_probe(monomial_map(2, {{{{0, 3}, Rat(1)}}, {}}), 6);
  CHECK(cubic.last_nonzero == 1);
  CHECK(cubic.nilpotency_index == 2);
  ProbeResult quad = polynomiality_probe(upper(), 5);
  CHECK(quad.last_nonzero == 1);
  // (z2^2, z3^2, 0): strictly upper triangular, so G is a polynomial.
  PolyMap deeper = monomial_map(3, {{{{0, 2, 0}, Rat(1)}}, {{{0, 0, 2}, Rat(1)}}, {}});
  ProbeResult d = polynomiality_probe(deeper, 8);
  CHECK(d.nilpotency_index == 3);
  CHECK(d.last_nonzero >= 2);
  CHECK(d.last_nonzero < 8);
  ProbeResult zero = polynomiality_probe(PolyMap::zero(2), 4);
  CHECK(zero.last_nonzero == 0);
  CHECK_THROWS_AS(polynomiality_probe(square(), 4), std::domain_error);
}

TEST_CASE("symmetric Jacobians") {
  CHECK(symmetry_detector(monomial_map(2, {{{{1, 1}, Rat(2)}}, {{{2, 0}, Rat(1)}}})).symmetric);
  CHECK_FALSE(symmetry_detector(upper()).symmetric);
  CHECK(symmetry_detector(square()).symmetric);
}
