#include "forminv/flow.hpp"

#include <stdexcept>

#include "forminv/trees.hpp"

namespace forminv {

namespace {

TPoly t_power(int k) { return TPoly::monomial(k, Rat(1)); }

TMap t_lift(const PolyMap& m) { return lift<TPoly>(m); }

/// Largest degree of an exact polynomial map; used for exact comparisons.
constexpr int kWhole = kMaxKeyDegree;

void require_dimension(const PolyMap& a, const PolyMap& b) {
  if (a.nvars() != b.nvars()) throw std::invalid_argument("map dimension mismatch");
}

int require_homogeneous(const PolyMap& h, const char* what) {
  auto d = homogeneous_degree(h);
  if (!d) throw std::invalid_argument(std::string(what) + " requires a homogeneous H");
  if (*d < 2) throw std::invalid_argument(std::string(what) + " requires degree >= 2");
  return *d;
}

/// Rows of a square matrix as maps, for row-by-row comparison.
template <class R>
void expect_matrix_equal(Report& r, const std::string& name, const SeriesMatrix<R>& a, const SeriesMatrix<R>& b,
                         int d) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto diff = describe_difference(BasicMap<R>(a[i]), BasicMap<R>(b[i]), d);
    if (diff) {
      r.add(name, false, "row " + std::to_string(i + 1) + ": " + *diff);
      return;
    }
  }
  r.add(name, true);
}

std::string index_text(std::optional<int> k) { return k ? std::to_string(*k) : "none"; }

}  // namespace

TMap DeformedInverse::g_t() const {
  return TMap::identity(nt.nvars()) + scale_by(nt, t_power(1));
}

DeformedInverse deform(GradedInverse graded) {
  const int n = graded.h.nvars();
  TMap nt = TMap::zero(n, graded.trunc);
  for (int m = 1; m <= graded.count(); ++m) nt = nt + scale_by(t_lift(graded.layer(m)), t_power(m - 1));
  DeformedInverse out;
  out.t_order = std::max(graded.count() - 1, 0);
  out.nt = nt.truncated(graded.trunc);
  out.graded = std::move(graded);
  return out;
}

DeformedInverse deformation_inverse(const MapF& f, int deg) { return deform(invert_recurrent(f, deg)); }

TMap f_t(const PolyMap& h) { return TMap::identity(h.nvars()) - scale_by(t_lift(h), t_power(1)); }

TMap t_derivative(const TMap& m) {
  return map_coeffs(m, [](const TPoly& p) { return p.derivative(); });
}

PolyMap evaluate_t(const TMap& m, const Rat& t) {
  return map_coeffs(m, [&](const TPoly& p) { return p.evaluate(t); });
}

TMap pde_residual(const DeformedInverse& inv) {
  const int d = inv.trunc();
  return (t_derivative(inv.nt) - mat_vec(jacobian(inv.nt), inv.nt, d)).truncated(d);
}

Report check_pde(const MapF& f, int deg) {
  Report r("pde");
  DeformedInverse inv = deformation_inverse(f, deg);
  TMap residual = pde_residual(inv);
  r.expect_equal("dN_t/dt = JN_t N_t", residual, TMap::zero(f.nvars()), deg);
  r.expect_equal("N_t at t = 0 is H", evaluate_t(inv.nt, 0), f.h().truncated(deg), deg);
  r.note("z-degree " + std::to_string(deg) + ", t-degree " + std::to_string(inv.t_order));
  return r;
}

Report check_lemma31(const MapF& f, int deg) {
  if (deg < 2) throw std::invalid_argument("lemma31 suite needs degree >= 2");
  Report r("lemma31");
  const int n = f.nvars();
  const DeformedInverse inv = deformation_inverse(f, deg);
  const TMap ft = f_t(f.h());
  const TMap hl = t_lift(f.h());

  r.expect_equal("N_t(F_t) = H", compose(inv.nt, ft, deg), hl, deg);
  r.expect_equal("H(G_t) = N_t", compose(hl, inv.g_t(), deg), inv.nt, deg);

  const int dj = deg - 1;
  const SeriesMatrix<TPoly> jn = jacobian(inv.nt);
  SeriesMatrix<TPoly> lhs = map_entries(jn, [&](const TSeries& e) { return compose(e, ft, dj); });
  const SeriesMatrix<TPoly> jh = map_entries(jacobian(f.h().truncated(deg)),
                                             [&](const MSeries& e) { return lift<TPoly>(e.truncated(dj)); });
  SeriesMatrix<TPoly> rhs = jh;
  SeriesMatrix<TPoly> power = jh;
  for (int k = 2; k <= dj; ++k) {
    power = mat_mul(power, jh, dj);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) rhs[i][j] = rhs[i][j] + scale_by(power[i][j], t_power(k - 1));
  }
  expect_matrix_equal(r, "JN_t(F_t) = sum_k JH^k t^(k-1)", lhs, rhs, dj);

  auto idx_h = nilpotency_index(jh, n, dj);
  auto idx_n = nilpotency_index(map_entries(jn, [&](const TSeries& e) { return e.truncated(dj); }), n, dj);
  r.add("nilpotency index of JH equals that of JN_t", idx_h == idx_n,
        "JH: " + index_text(idx_h) + ", JN_t: " + index_text(idx_n) + " (through degree " + std::to_string(dj) + ")");
  return r;
}

Report check_newp(const PolyMap& h, int deg) {
  Report r("newp");
  const MapF f = MapF::from_h(h);
  const int n = h.nvars();
  const int cap = h.exact() ? kExact : deg;
  const PolyMap jhh = mat_vec(jacobian(h), h, cap);
  const PolyMap id = PolyMap::identity(n);
  if (jhh.is_zero()) {
    r.note("JH.H = 0");
    r.expect_equal("G = z + H", invert_fixed_point(f, deg), id + h, deg);
    const GradedInverse graded = invert_recurrent(f, deg);
    bool vanish = true;
    for (int m = 2; m <= graded.count(); ++m) vanish = vanish && graded.layer(m).is_zero();
    r.add("N_[m] = 0 for m >= 2", vanish);
    for (int m = 1; m <= 4; ++m)
      r.expect_equal("F^[" + std::to_string(m) + "] = z - " + std::to_string(m) + "H", power_map(f, m, deg),
                     id - scale(h, Rat(m)), deg);
  } else {
    r.note("JH.H != 0");
    const auto layers = recurrent_layers(h, 2, cap);
    r.add("N_[2] != 0", !layers[1].is_zero());
    r.add("G != z + H", describe_difference(invert_fixed_point(f, deg), (id + h).truncated(deg), deg).has_value());
  }
  return r;
}

Report check_bcw_quadratic_nilpotent(const PolyMap& h, int deg) {
  Report r("bcw");
  const int n = h.nvars();
  if (h.is_zero()) {
    r.note("H = 0");
    return r;
  }
  const int d = require_homogeneous(h, "the quadratic nilpotent check");
  const auto jh = jacobian(h);
  const auto jh2 = mat_mul(jh, jh);
  r.expect_equal("JH^2 z = d JH.H", mat_vec(jh2, PolyMap::identity(n)), scale(mat_vec(jh, h), Rat(d)), kWhole);
  if (is_zero_matrix(jh2)) {
    const MapF f = MapF::from_h(h);
    r.expect_equal("JH^2 = 0 gives G = z + H", invert_fixed_point(f, deg), PolyMap::identity(n) + h, deg);
  } else {
    r.skip("JH^2 = 0 gives G = z + H", "JH^2 != 0");
  }
  return r;
}

Report check_prop310(const MapF& f, int deg, int s_order, int t_order) {
  if (s_order < 0 || t_order < 0) throw std::invalid_argument("s and t orders must be non-negative");
  Report r("prop310");
  const int n = f.nvars();
  const DeformedInverse inv = deformation_inverse(f, deg);
  auto st = [](const TPoly& p) { return STPoly(p); };
  auto cut = [&](const STMap& m) {
    return map_coeffs(m, [&](const STPoly& p) { return truncate_st(p, s_order, t_order); });
  };
  const STPoly s = STPoly::variable();
  const STPoly t(TPoly::variable());
  const STMap id = STMap::identity(n);
  const STMap nt = map_coeffs(inv.nt, st);
  const STMap nts = map_coeffs(inv.nt, [](const TPoly& p) { return shift_by_s(p); });
  const STMap hl = lift<STPoly>(f.h());

  const STMap u = id - scale_by(nt, s);
  const STMap v = id + scale_by(nts, s);
  const STMap f_ts = id - scale_by(hl, t + s);
  const STMap g_t = id + scale_by(nt, t);
  const STMap f_t = id - scale_by(hl, t);
  const STMap g_st = id + scale_by(nts, s + t);

  r.expect_equal("U(V) = z", cut(compose(u, v, deg)), id, deg);
  r.expect_equal("V(U) = z", cut(compose(v, u, deg)), id, deg);
  r.expect_equal("U = F_(t+s) o G_t", cut(compose(f_ts, g_t, deg)), cut(u), deg);
  r.expect_equal("V = F_t o G_(s+t)", cut(compose(f_t, g_st, deg)), cut(v), deg);
  r.note("z-degree " + std::to_string(deg) + ", s-order " + std::to_string(s_order) + ", t-order " +
         std::to_string(t_order));
  return r;
}

Report check_gpde(const PolyMap& u0, const PolyMap& h, int deg) {
  require_dimension(u0, h);
  Report r("gpde");
  const MapF f = MapF::from_h(h);
  const DeformedInverse inv = deformation_inverse(f, deg);
  const TMap ut = compose(t_lift(u0), inv.g_t(), deg);
  r.expect_equal("dU_t/dt = JU_t N_t", t_derivative(ut), mat_vec(jacobian(ut), inv.nt, deg), deg);
  r.expect_equal("U_t at t = 0 is U0", evaluate_t(ut, 0), u0.truncated(deg), deg);
  return r;
}

Report check_euler_identities(const PolyMap& h, int deg) {
  Report r("euler");
  const int n = h.nvars();
  const int d = h.is_zero() ? 2 : require_homogeneous(h, "the Euler identities");
  const MapF f = MapF::from_h(h);
  const DeformedInverse inv = deformation_inverse(f, deg);
  const TMap& nt = inv.nt;
  const TMap z = TMap::identity(n);
  const auto jn = jacobian(nt);
  const TPoly t = TPoly::variable();
  const Rat dr(d);

  r.expect_equal("N_t = (1/d) JN_t (z - (d-1) t N_t)", nt,
                 scale(mat_vec(jn, z - scale_by(nt, TPoly(Rat(d - 1)) * t), deg), Rat(1) / dr), deg);
  r.expect_equal("JN_t z = d (I + ((d-1)t/d) JN_t) N_t", mat_vec(jn, z, deg),
                 scale(nt, dr) + scale_by(mat_vec(jn, nt, deg), TPoly(Rat(d - 1)) * t), deg);

  // v[k] = JN_t^k z, zero once its order exceeds deg.
  std::vector<TMap> v{z};
  for (int k = 1; k <= deg; ++k) v.push_back(mat_vec(jn, v.back(), deg));
  TMap sum23 = TMap::zero(n, deg);
  TMap sum24 = TMap::zero(n, deg);
  const TPoly ratio = TPoly(Rat(d - 1) / dr) * t;
  TPoly c(Rat(1) / dr);
  int last = 0;
  for (int k = 1; k < deg; ++k) {
    sum23 = sum23 + scale_by(v[k], c);
    sum24 = sum24 + scale_by(v[k + 1], c);
    if (!v[k].is_zero()) last = k;
    c = scaled(c * ratio, Rat(-1));
  }
  r.expect_equal("N_t = (1/d) sum_k (-1)^(k-1) ((d-1)t/d)^(k-1) JN_t^k z", nt, sum23, deg);
  r.expect_equal("dN_t/dt = (1/d) sum_k (-1)^(k-1) ((d-1)t/d)^(k-1) JN_t^(k+1) z", t_derivative(nt), sum24, deg);
  if (last < deg - 1) r.note("JN_t^k z vanishes for k > " + std::to_string(last) + " through degree " + std::to_string(deg));
  return r;
}

TMap formal_flow(const MapF& f, int deg, unsigned threads) {
  if (deg < 1) throw std::invalid_argument("truncation degree must be >= 1");
  require_precision(f, deg, "formal flow");
  TMap flow = TMap::identity(f.nvars()).truncated(deg);
  for (const auto& term : tree_expansion(f.h(), deg - 1, deg, threads)) {
    TPoly weight = order_polynomial(term.tree);
    if (term.tree.size() % 2 == 1) weight = -weight;
    flow = flow + scale_by(t_lift(term.term), weight);
  }
  return flow.truncated(deg);
}

PolyMap power_map(const MapF& f, int m, int deg) {
  if (deg < 1) throw std::invalid_argument("truncation degree must be >= 1");
  const PolyMap base = m >= 0 ? f.f().truncated(deg) : invert_fixed_point(f, deg);
  PolyMap out = PolyMap::identity(f.nvars()).truncated(deg);
  for (int k = 0; k < (m >= 0 ? m : -m); ++k) out = compose(base, out, deg);
  return out.truncated(deg);
}

ProbeResult polynomiality_probe(const PolyMap& h, int layers) {
  if (layers < 1) throw std::invalid_argument("layer bound must be >= 1");
  ProbeResult out;
  out.layers = layers;
  const int n = h.nvars();
  if (!h.exact()) throw std::invalid_argument("probe requires a polynomial H");
  if (h.is_zero()) {
    out.degree = 0;
    out.nilpotency_index = 1;
  } else {
    out.degree = require_homogeneous(h, "the polynomiality probe");
    out.nilpotency_index = nilpotency_index(jacobian(h), n);
    if (!out.nilpotency_index) throw std::domain_error("JH is not nilpotent");
  }
  out.report.add("JH nilpotent", true, "index " + index_text(out.nilpotency_index));

  const GradedInverse graded = invert_homogeneous(MapF::from_h(h), layers);
  for (int m = 1; m <= layers; ++m) {
    out.layer_terms.push_back(0);
    for (const auto& c : graded.layer(m)) out.layer_terms.back() += c.size();
    if (!graded.layer(m).is_zero()) out.last_nonzero = m;
  }
  if (out.last_nonzero < layers) {
    out.report.note("N_[m] = 0 for " + std::to_string(out.last_nonzero) + " < m <= " + std::to_string(layers) +
                    ": N_t is a polynomial in t of degree " + std::to_string(std::max(out.last_nonzero - 1, 0)) +
                    " as far as computed");
  } else {
    out.report.note("every layer up to " + std::to_string(layers) + " is nonzero; no vanishing observed");
  }
  return out;
}

SymmetryResult symmetry_detector(const PolyMap& h) {
  const auto jh = jacobian(h);
  const int n = h.nvars();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const int d = std::min(jh[i][j].trunc(), jh[j][i].trunc());
      if (!equal_through(jh[i][j], jh[j][i], std::min(d, kWhole)))
        return {false, "JH is not symmetric: entries (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                           ") and (" + std::to_string(j + 1) + "," + std::to_string(i + 1) + ") differ"};
    }
  return {true,
          "JH is symmetric, so H is a gradient map and dN_t/dt = JN_t N_t is the n-dimensional inviscid Burgers "
          "equation for this input"};
}

}  // namespace forminv
