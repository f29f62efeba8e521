#include "forminv/polymap.hpp"

#include <stdexcept>

namespace forminv {

std::string format_monomial(MonoKey k, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    int e = mono::exponent(k, static_cast<int>(i));
    if (e == 0) continue;
    if (!out.empty()) out += "*";
    out += names[i];
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

MSeries inverse(const MSeries& a, int cap) {
  Rat a0 = a.coeff(MonoKey{0});
  if (is_zero(a0)) throw std::domain_error("series inverse requires a nonzero constant term");
  const int n = a.nvars();
  int tr = std::min(a.trunc(), cap);
  if (tr >= kExact) {
    if (a.degree() > 0) throw std::domain_error("inverse of a non-constant polynomial needs a finite cap");
    return MSeries::constant(n, Rat(1 / a0));
  }
  std::vector<MSeries> parts;
  for (int d = 0; d <= tr; ++d) parts.push_back(a.homogeneous_part(d));
  Rat inv0 = 1 / a0;
  std::vector<MSeries> b{MSeries::constant(n, inv0)};
  for (int d = 1; d <= tr; ++d) {
    MSeries acc(n);
    for (int j = 1; j <= d; ++j)
      if (!parts[j].is_zero() && !b[d - j].is_zero()) acc = add(acc, mul(parts[j], b[d - j]));
    b.push_back(scale(acc, Rat(-inv0)));
  }
  MSeries out(n, tr);
  for (const auto& p : b) out = add(out, p);
  return out.with_trunc(tr);
}

namespace {

MSeries cofactor_det(const SeriesMatrix<Rat>& a, int cap) {
  const std::size_t n = a.size();
  if (n == 1) return a[0][0].truncated(cap);
  MSeries acc(a[0][0].nvars(), cap);
  for (std::size_t j = 0; j < n; ++j) {
    SeriesMatrix<Rat> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<MSeries> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(a[i][k]);
      minor.push_back(std::move(row));
    }
    MSeries term = mul(a[0][j], cofactor_det(minor, cap), cap);
    acc = j % 2 == 0 ? add(acc, term) : sub(acc, term);
  }
  return acc;
}

}  // namespace

MSeries determinant(const SeriesMatrix<Rat>& a, int cap) {
  const std::size_t n = a.size();
  if (n == 0) throw std::invalid_argument("determinant of an empty matrix");
  for (const auto& row : a)
    if (row.size() != n) throw std::invalid_argument("determinant requires a square matrix");
  const int nv = a[0][0].nvars();

  int t = cap;
  for (const auto& row : a)
    for (const auto& e : row) t = std::min(t, e.trunc());
  if (t >= kExact) {
    // Exact polynomial entries: cofactor expansion keeps everything exact.
    return cofactor_det(a, kExact);
  }

  SeriesMatrix<Rat> m = map_entries(a, [&](const MSeries& e) { return e.truncated(t); });
  bool negative = false;
  MSeries prev = MSeries::constant(nv, Rat(1));
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && is_zero(m[p][k].coeff(MonoKey{0}))) ++p;
    if (p == n) return cofactor_det(a, t);
    if (p != k) {
      std::swap(m[p], m[k]);
      negative = !negative;
    }
    MSeries prev_inv = inverse(prev, t);
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        MSeries num = sub(mul(m[k][k], m[i][j], t), mul(m[i][k], m[k][j], t));
        m[i][j] = mul(num, prev_inv, t);
      }
    }
    prev = m[k][k];
  }
  MSeries det = m[n - 1][n - 1].truncated(t);
  return negative ? negate(det) : det;
}

MSeries jacobian_det(const PolyMap& m, int cap) {
  if (m.nvars() == 0) throw std::invalid_argument("jacobian of an empty map");
  auto j = jacobian(m);
  if (cap < kExact) j = map_entries(j, [&](const MSeries& e) { return e.truncated(cap); });
  return determinant(j, cap);
}

MapF MapF::from_h(PolyMap h) {
  for (int i = 0; i < h.nvars(); ++i) {
    if (!h[i].is_zero() && h[i].order() < 2)
      throw std::invalid_argument("H component " + std::to_string(i + 1) + " has a term of degree < 2; need o(H) >= 2");
    if (h[i].trunc() < 1) throw std::invalid_argument("H must be known at least through degree 1");
  }
  return MapF(std::move(h));
}

MapF MapF::from_map(const PolyMap& f) {
  const int n = f.nvars();
  std::vector<MSeries> h;
  for (int i = 0; i < n; ++i) {
    const auto& fi = f[i];
    if (fi.trunc() < 1) throw std::invalid_argument("map must be known at least through degree 1");
    for (const auto& t : fi.terms()) {
      int d = mono::degree(t.key);
      if (d == 0) throw std::invalid_argument("component " + std::to_string(i + 1) + " has a nonzero constant term");
      if (d > 1) break;
      bool diag = t.key == mono::unit(i);
      if (!diag || t.coeff != 1)
        throw std::invalid_argument("component " + std::to_string(i + 1) +
                                    " linear part is not z_" + std::to_string(i + 1) + " (not in canonical form z - H)");
    }
    if (is_zero(fi.coeff(mono::unit(i))))
      throw std::invalid_argument("component " + std::to_string(i + 1) + " is missing its linear term");
    h.push_back(sub(MSeries::variable(n, i, fi.trunc()), fi));
  }
  return MapF(PolyMap(std::move(h)));
}

PolyMap MapF::f() const { return PolyMap::identity(nvars()) - h_; }

std::optional<int> MapF::homogeneous_degree() const { return forminv::homogeneous_degree(h_); }

std::optional<int> homogeneous_degree(const PolyMap& h) {
  std::optional<int> d;
  for (const auto& s : h) {
    if (s.is_zero()) continue;
    auto ds = s.homogeneous_degree();
    if (!ds || (d && *d != *ds)) return std::nullopt;
    d = ds;
  }
  return d;
}

void require_precision(const MapF& f, int needed, const char* what) {
  if (f.trunc() < needed)
    throw std::domain_error(std::string(what) + ": H is known only through degree " + std::to_string(f.trunc()) +
                            ", need " + std::to_string(needed));
}

}  // namespace forminv
