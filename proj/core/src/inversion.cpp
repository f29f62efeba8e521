#include "forminv/inversion.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "forminv/laurent.hpp"
#include "forminv/trees.hpp"

namespace forminv {

namespace {

void require_degree(int deg) {
  if (deg < 1 || deg > kMaxKeyDegree / 2)
    throw std::invalid_argument("truncation degree must be in [1, " + std::to_string(kMaxKeyDegree / 2) + "]");
}

int total(const Exponent& e) {
  int s = 0;
  for (int x : e) s += x;
  return s;
}

/// Every exponent in n variables with total degree in [lo, hi], degree by
/// degree, lexicographically descending within a degree.
std::vector<Exponent> exponents_between(int n, int lo, int hi) {
  std::vector<Exponent> out;
  Exponent e(n, 0);
  std::function<void(int, int)> fill = [&](int var, int left) {
    if (var == n - 1) {
      e[var] = left;
      out.push_back(e);
      return;
    }
    for (int x = left; x >= 0; --x) {
      e[var] = x;
      fill(var + 1, left - x);
    }
  };
  for (int d = lo; d <= hi; ++d) {
    if (n == 0) break;
    fill(0, d);
  }
  return out;
}

PolyMap from_coefficients(int n, int deg, const std::vector<std::vector<std::pair<Exponent, Rat>>>& coeffs) {
  std::vector<MSeries> c;
  for (int i = 0; i < n; ++i) c.push_back(MSeries::from_terms(n, deg, coeffs[i]));
  return PolyMap(std::move(c));
}

Rat inverse_factorial(const Exponent& m) {
  BigInt f = 1;
  for (int x : m) f *= factorial(static_cast<unsigned>(x));
  return Rat(BigInt(1), f);
}

}  // namespace

PolyMap GradedInverse::inverse() const {
  PolyMap g = PolyMap::identity(h.nvars());
  for (const auto& n : layers) g = g + n;
  return g.truncated(trunc);
}

std::string_view method_name(Method m) {
  switch (m) {
    case Method::FixedPoint: return "fixed";
    case Method::Recurrent: return "recurrent";
    case Method::Homogeneous: return "homog";
    case Method::AbhyankarGurjar: return "ag";
    case Method::Bcw: return "bcw";
    case Method::Jacobi: return "jacobi";
    case Method::Lagrange: return "lagrange";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  for (Method m : all_methods())
    if (method_name(m) == name) return m;
  throw std::invalid_argument("unknown method '" + std::string(name) +
                              "' (expected fixed, recurrent, homog, ag, bcw, jacobi, lagrange or all)");
}

std::vector<Method> all_methods() {
  return {Method::FixedPoint, Method::Recurrent,  Method::Homogeneous, Method::AbhyankarGurjar,
          Method::Bcw,        Method::Jacobi,     Method::Lagrange};
}

std::optional<std::string> inapplicable_reason(Method m, const MapF& f) {
  if (m == Method::Homogeneous && !f.h().is_zero() && !f.homogeneous_degree())
    return "H is not homogeneous";
  if (m == Method::Lagrange && !lagrange_applicable(f)) return "some H_i is not divisible by z_i";
  return std::nullopt;
}

PolyMap invert_fixed_point(const MapF& f, int deg) {
  require_degree(deg);
  require_precision(f, deg, "fixed point inversion");
  const int n = f.nvars();
  const PolyMap id = PolyMap::identity(n);
  PolyMap g = id.truncated(1);
  for (int d = 2; d <= deg; ++d) {
    PolyMap next = id + compose(f.h(), g, d);
    if (next.trunc() < d) throw std::logic_error("fixed point step lost precision");
    g = next.truncated(d);
  }
  return g.truncated(deg);
}

std::vector<PolyMap> recurrent_layers(const PolyMap& h, int count, int cap) {
  std::vector<PolyMap> layers;
  std::vector<SeriesMatrix<Rat>> jac;
  if (count < 1) return layers;
  layers.push_back(h.truncated(cap));
  jac.push_back(jacobian(layers[0]));
  for (int m = 2; m <= count; ++m) {
    PolyMap acc = PolyMap::zero(h.nvars(), cap);
    for (int k = 1; k < m; ++k) acc = acc + mat_vec(jac[k - 1], layers[m - k - 1], cap);
    layers.push_back(scale(acc, Rat(1, m - 1)).truncated(cap));
    jac.push_back(jacobian(layers.back()));
  }
  return layers;
}

GradedInverse invert_recurrent(const MapF& f, int deg) {
  require_degree(deg);
  require_precision(f, deg, "recurrent inversion");
  return {f.h(), recurrent_layers(f.h(), deg - 1, deg), deg};
}

BForm::BForm(PolyMap h) : h_(std::move(h)) {
  auto d = homogeneous_degree(h_);
  if (!d) throw std::invalid_argument("B form requires a nonzero homogeneous H");
  d_ = *d;
}

BForm::BForm(PolyMap h, int degree) : h_(std::move(h)), d_(degree) {
  if (degree < 1) throw std::invalid_argument("B form degree must be >= 1");
  auto d = homogeneous_degree(h_);
  if (!h_.is_zero() && d != degree) throw std::invalid_argument("H is not homogeneous of degree " + std::to_string(degree));
}

PolyMap BForm::apply(const std::vector<PolyMap>& args, int cap) const {
  if (static_cast<int>(args.size()) != d_)
    throw std::invalid_argument("B form takes exactly " + std::to_string(d_) + " arguments");
  const int n = nvars();
  for (const auto& a : args)
    if (a.nvars() != n) throw std::invalid_argument("B form argument dimension mismatch");

  const unsigned full = (1u << d_) - 1;
  std::unordered_map<MonoKey, MSeries> multilinear;
  // The lambda_1...lambda_d coefficient of prod_r (sum_j lambda_j U^j_{v_r})
  // is the permanent of the d x d matrix (U^j_{v_r}), built over subsets of
  // arguments already used.
  auto polarize = [&](MonoKey key) -> const MSeries& {
    if (auto it = multilinear.find(key); it != multilinear.end()) return it->second;
    std::vector<int> vars;
    for (int v = 0; v < n; ++v)
      for (int e = mono::exponent(key, v); e > 0; --e) vars.push_back(v);
    std::vector<std::optional<MSeries>> dp(full + 1);
    dp[0] = MSeries::constant(n, Rat(1));
    for (std::size_t r = 0; r < vars.size(); ++r) {
      std::vector<std::optional<MSeries>> next(full + 1);
      for (unsigned mask = 0; mask <= full; ++mask) {
        if (!dp[mask]) continue;
        for (int j = 0; j < d_; ++j) {
          if (mask & (1u << j)) continue;
          const MSeries& u = args[j][vars[r]];
          if (u.is_zero()) continue;
          MSeries p = mul(*dp[mask], u, cap);
          auto& slot = next[mask | (1u << j)];
          slot = slot ? add(*slot, p) : std::move(p);
        }
      }
      dp = std::move(next);
    }
    MSeries value = dp[full] ? *dp[full] : MSeries(n, cap);
    return multilinear.emplace(key, std::move(value)).first->second;
  };

  const Rat norm(BigInt(1), factorial(static_cast<unsigned>(d_)));
  std::vector<MSeries> out;
  for (int i = 0; i < n; ++i) {
    MSeries acc(n, cap);
    for (const auto& t : h_[i].terms()) acc = add(acc, scale(polarize(t.key), t.coeff));
    out.push_back(scale(acc, norm));
  }
  return PolyMap(std::move(out));
}

GradedInverse invert_homogeneous(const MapF& f, int count) {
  const int n = f.nvars();
  if (f.h().is_zero()) {
    return {f.h(), std::vector<PolyMap>(std::max(count, 0), PolyMap::zero(n)), kExact};
  }
  auto d = f.homogeneous_degree();
  if (!d) throw std::invalid_argument("homogeneous inversion requires homogeneous H");
  if (!f.h().exact()) throw std::invalid_argument("homogeneous inversion requires a polynomial H");
  if (count < 0) throw std::invalid_argument("layer count must be non-negative");
  if (static_cast<long long>(*d - 1) * count + 1 > kMaxKeyDegree)
    throw std::invalid_argument("too many layers for the supported total degree");
  BForm b(f.h(), *d);

  // all[m] = N_[m], with N_[0] = z.
  std::vector<PolyMap> all{PolyMap::identity(n)};
  std::vector<int> tuple(*d);
  for (int m = 0; m < count; ++m) {
    PolyMap acc = PolyMap::zero(n);
    // Nondecreasing tuples summing to m; by symmetry of B each stands for
    // all of its distinct permutations.
    std::function<void(int, int, int)> visit = [&](int pos, int lo, int left) {
      if (pos == *d) {
        if (left != 0) return;
        BigInt perms = factorial(static_cast<unsigned>(*d));
        for (int s = 0, run = 1; s < *d; ++s) {
          run = (s > 0 && tuple[s] == tuple[s - 1]) ? run + 1 : 1;
          if (s + 1 == *d || tuple[s + 1] != tuple[s]) perms /= factorial(static_cast<unsigned>(run));
        }
        std::vector<PolyMap> args;
        for (int k : tuple) args.push_back(all[k]);
        acc = acc + scale(b.apply(args), Rat(perms));
        return;
      }
      for (int k = lo; k * (*d - pos) <= left; ++k) {
        tuple[pos] = k;
        visit(pos + 1, k, left - k);
      }
    };
    visit(0, 0, m);
    all.push_back(std::move(acc));
  }
  all.erase(all.begin());
  return {f.h(), std::move(all), (*d - 1) * (count + 1)};
}

GradedInverse invert_homogeneous_through(const MapF& f, int deg) {
  require_degree(deg);
  int d = f.homogeneous_degree().value_or(2);
  return invert_homogeneous(f, (deg - 1) / (d - 1));
}

PolyMap invert_abhyankar_gurjar(const MapF& f, int deg) {
  require_degree(deg);
  require_precision(f, deg, "Abhyankar-Gurjar inversion");
  const int n = f.nvars();
  const PolyMap& h = f.h();
  const MSeries jac = jacobian_det(f.f(), deg - 1);

  std::vector<MSeries> g;
  for (int i = 0; i < n; ++i) g.push_back(MSeries(n, deg));

  std::map<Exponent, MSeries> powers;
  powers.emplace(Exponent(n, 0), MSeries::constant(n, Rat(1)));
  for (const Exponent& m : exponents_between(n, 0, deg - 1)) {
    const int size = total(m);
    if (size > 0) {
      int last = n - 1;
      while (m[last] == 0) --last;
      Exponent prev = m;
      --prev[last];
      powers.emplace(m, mul(powers.at(prev), h[last], deg + size - 1));
    }
    const MSeries& hm = powers.at(m);
    if (hm.is_zero() && hm.trunc() >= deg + size - 1) continue;
    const MSeries q = mul(jac, hm, deg + size - 1);
    const Rat weight = inverse_factorial(m);
    for (int i = 0; i < n; ++i) {
      MSeries term = mul(MSeries::variable(n, i), q, deg + size);
      for (int v = 0; v < n; ++v)
        for (int e = 0; e < m[v]; ++e) term = partial_diff(term, v);
      g[i] = add(g[i], scale(term, weight));
    }
  }
  for (auto& gi : g)
    if (gi.trunc() < deg) throw std::logic_error("Abhyankar-Gurjar sum lost precision");
  return PolyMap(std::move(g)).truncated(deg);
}

PolyMap invert_bcw(const MapF& f, int deg, unsigned threads) {
  require_degree(deg);
  require_precision(f, deg, "tree inversion");
  PolyMap g = PolyMap::identity(f.nvars()).truncated(deg);
  for (const auto& term : tree_expansion(f.h(), deg - 1, deg, threads)) g = g + term.term;
  return g.truncated(deg);
}

Rat jacobi_coefficient(const MapF& f, int i, const Exponent& k) {
  const int n = f.nvars();
  if (i < 0 || i >= n) throw std::out_of_range("component index out of range");
  if (static_cast<int>(k.size()) != n) throw std::invalid_argument("exponent dimension mismatch");
  for (int x : k)
    if (x < 0) throw std::invalid_argument("exponent entries must be non-negative");
  const int size = total(k);
  if (size == 0) return 0;
  const LaurentExpr inv = laurent_inv_power(f, k, -n - 1);
  const MSeries weight = mul(MSeries::variable(n, i), jacobian_det(f.f(), size - 1), size);
  return residue(inv.times(weight, -n));
}

PolyMap invert_jacobi(const MapF& f, int deg) {
  require_degree(deg);
  require_precision(f, deg, "Jacobi inversion");
  const int n = f.nvars();
  const MSeries jac = jacobian_det(f.f(), deg - 1);
  std::vector<MSeries> weights;
  for (int i = 0; i < n; ++i) weights.push_back(mul(MSeries::variable(n, i), jac, deg));
  std::vector<std::vector<std::pair<Exponent, Rat>>> coeffs(n);
  for (const Exponent& k : exponents_between(n, 1, deg)) {
    const LaurentExpr inv = laurent_inv_power(f, k, -n - 1);
    for (int i = 0; i < n; ++i) {
      Rat c = residue(inv.times(weights[i].truncated(total(k)), -n));
      if (!is_zero(c)) coeffs[i].emplace_back(k, std::move(c));
    }
  }
  return from_coefficients(n, deg, coeffs);
}

bool lagrange_applicable(const MapF& f) {
  for (int i = 0; i < f.nvars(); ++i)
    for (const auto& t : f.h()[i].terms())
      if (mono::exponent(t.key, i) == 0) return false;
  return true;
}

namespace {

/// Shared pieces of the Lagrange formula, known through degree `cap`.
struct LagrangeData {
  std::vector<MSeries> f;  // f_i = 1 / (1 - h_i)
  MSeries det;

  LagrangeData(const MapF& map, int cap) {
    if (!lagrange_applicable(map)) throw std::domain_error("Lagrange inversion needs z_i | H_i for every i");
    const int n = map.nvars();
    std::vector<MSeries> h;
    for (int i = 0; i < n; ++i) {
      // h_i = H_i / z_i.
      const MSeries& hi = map.h()[i];
      std::vector<MSeries::Term> terms;
      for (const auto& t : hi.terms()) terms.push_back({t.key - mono::unit(i), t.coeff});
      int tr = hi.exact() ? kExact : hi.trunc() - 1;
      h.push_back(MSeries::from_sorted(n, tr, std::move(terms)).truncated(cap + 1));
      f.push_back(inverse(sub(MSeries::constant(n, Rat(1)), h.back()), cap + 1));
    }
    SeriesMatrix<Rat> m(n);
    for (int i = 0; i < n; ++i) {
      MSeries row_factor = mul(MSeries::variable(n, i), sub(MSeries::constant(n, Rat(1)), h[i]), cap);
      for (int j = 0; j < n; ++j) {
        MSeries e = negate(mul(row_factor, partial_diff(f[i], j), cap));
        if (i == j) e = add(MSeries::constant(n, Rat(1)), e);
        m[i].push_back(e.truncated(cap));
      }
    }
    det = determinant(m, cap);
    for (auto& fi : f) fi = fi.truncated(cap);
  }
};

}  // namespace

Rat lagrange_coefficient(const MapF& f, int i, const Exponent& k) {
  const int n = f.nvars();
  if (i < 0 || i >= n) throw std::out_of_range("component index out of range");
  if (static_cast<int>(k.size()) != n) throw std::invalid_argument("exponent dimension mismatch");
  for (int x : k)
    if (x < 0) throw std::invalid_argument("exponent entries must be non-negative");
  if (!lagrange_applicable(f)) throw std::domain_error("Lagrange inversion needs z_i | H_i for every i");
  const int size = total(k);
  if (k[i] == 0) return 0;
  require_precision(f, size, "Lagrange coefficient");
  const int cap = size - 1;
  LagrangeData data(f, cap);
  MSeries p = data.det;
  for (int j = 0; j < n; ++j)
    for (int e = 0; e < k[j]; ++e) p = mul(p, data.f[j], cap);
  Exponent target = k;
  --target[i];
  return p.coeff(target);
}

PolyMap invert_lagrange(const MapF& f, int deg) {
  require_degree(deg);
  require_precision(f, deg, "Lagrange inversion");
  const int n = f.nvars();
  const int cap = deg - 1;
  LagrangeData data(f, cap);
  // products[k] = det * f^k through degree cap.
  std::map<Exponent, MSeries> products;
  products.emplace(Exponent(n, 0), data.det);
  std::vector<std::vector<std::pair<Exponent, Rat>>> coeffs(n);
  for (const Exponent& k : exponents_between(n, 1, deg)) {
    int last = n - 1;
    while (k[last] == 0) --last;
    Exponent prev = k;
    --prev[last];
    const MSeries& p = products.emplace(k, mul(products.at(prev), data.f[last], cap)).first->second;
    for (int i = 0; i < n; ++i) {
      if (k[i] == 0) continue;
      Exponent target = k;
      --target[i];
      Rat c = p.coeff(target);
      if (!is_zero(c)) coeffs[i].emplace_back(k, std::move(c));
    }
  }
  return from_coefficients(n, deg, coeffs);
}

PolyMap invert(Method m, const MapF& f, int deg, unsigned threads) {
  if (auto why = inapplicable_reason(m, f))
    throw std::invalid_argument(std::string(method_name(m)) + " does not apply: " + *why);
  switch (m) {
    case Method::FixedPoint: return invert_fixed_point(f, deg);
    case Method::Recurrent: return invert_recurrent(f, deg).inverse().truncated(deg);
    case Method::Homogeneous: return invert_homogeneous_through(f, deg).inverse().truncated(deg);
    case Method::AbhyankarGurjar: return invert_abhyankar_gurjar(f, deg);
    case Method::Bcw: return invert_bcw(f, deg, threads);
    case Method::Jacobi: return invert_jacobi(f, deg);
    case Method::Lagrange: return invert_lagrange(f, deg);
  }
  throw std::logic_error("unhandled method");
}

CrossCheck cross_check(const MapF& f, int deg, const std::vector<Method>& methods, unsigned threads) {
  CrossCheck out;
  for (Method m : methods) {
    if (auto why = inapplicable_reason(m, f)) {
      out.skipped.emplace_back(m, *why);
      out.report.skip(std::string(method_name(m)), *why);
      continue;
    }
    auto start = std::chrono::steady_clock::now();
    PolyMap g = invert(m, f, deg, threads);
    std::chrono::duration<double, std::milli> took = std::chrono::steady_clock::now() - start;
    out.results.push_back({m, std::move(g), took.count()});
  }
  if (out.results.empty()) throw std::invalid_argument("none of the requested methods applies to this map");

  out.g = out.results.front().g;
  const std::string first(method_name(out.results.front().method));
  for (std::size_t r = 1; r < out.results.size(); ++r)
    out.report.expect_equal(std::string(method_name(out.results[r].method)) + " = " + first, out.results[r].g, out.g,
                            deg);
  const PolyMap id = PolyMap::identity(f.nvars());
  out.report.expect_equal("F(G) = z", compose(f.f(), out.g, deg), id, deg);
  out.report.expect_equal("G(F) = z", compose(out.g, f.f(), deg), id, deg);
  return out;
}

}  // namespace forminv
