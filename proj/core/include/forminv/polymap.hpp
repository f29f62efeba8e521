#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "forminv/series.hpp"

namespace forminv {

/// An n-tuple of series in n variables: a formal map from affine n-space to itself.
template <class R>
class BasicMap {
 public:
  BasicMap() = default;
  explicit BasicMap(std::vector<BasicSeries<R>> components) : c_(std::move(components)) {
    for (const auto& s : c_)
      if (s.nvars() != nvars()) throw std::invalid_argument("map component count must equal variable count");
  }

  static BasicMap identity(int n, int trunc = kExact) {
    std::vector<BasicSeries<R>> c;
    for (int i = 0; i < n; ++i) c.push_back(BasicSeries<R>::variable(n, i, trunc));
    return BasicMap(std::move(c));
  }
  static BasicMap zero(int n, int trunc = kExact) {
    return BasicMap(std::vector<BasicSeries<R>>(n, BasicSeries<R>(n, trunc)));
  }

  int nvars() const { return static_cast<int>(c_.size()); }
  const BasicSeries<R>& operator[](int i) const { return c_.at(i); }
  const std::vector<BasicSeries<R>>& components() const { return c_; }
  auto begin() const { return c_.begin(); }
  auto end() const { return c_.end(); }

  int trunc() const {
    int t = kExact;
    for (const auto& s : c_) t = std::min(t, s.trunc());
    return t;
  }
  int order() const {
    int o = kInfiniteOrder;
    for (const auto& s : c_) o = std::min(o, s.order());
    return o;
  }
  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const auto& s) { return s.is_zero(); });
  }
  bool exact() const { return trunc() >= kExact; }

  BasicMap truncated(int d) const {
    std::vector<BasicSeries<R>> c;
    for (const auto& s : c_) c.push_back(s.truncated(d));
    return BasicMap(std::move(c));
  }

  friend bool operator==(const BasicMap&, const BasicMap&) = default;

 private:
  std::vector<BasicSeries<R>> c_;
};

using PolyMap = BasicMap<Rat>;
using TMap = BasicMap<TPoly>;
using STMap = BasicMap<STPoly>;

/// Square matrix of series, row-major.
template <class R>
using SeriesMatrix = std::vector<std::vector<BasicSeries<R>>>;

template <class R, class Fn>
BasicMap<R> map_components(const BasicMap<R>& a, Fn fn) {
  std::vector<BasicSeries<R>> c;
  for (int i = 0; i < a.nvars(); ++i) c.push_back(fn(i, a[i]));
  return BasicMap<R>(std::move(c));
}

template <class R>
BasicMap<R> operator+(const BasicMap<R>& a, const BasicMap<R>& b) {
  if (a.nvars() != b.nvars()) throw std::invalid_argument("map dimension mismatch");
  return map_components(a, [&](int i, const auto& s) { return add(s, b[i]); });
}
template <class R>
BasicMap<R> operator-(const BasicMap<R>& a, const BasicMap<R>& b) {
  if (a.nvars() != b.nvars()) throw std::invalid_argument("map dimension mismatch");
  return map_components(a, [&](int i, const auto& s) { return sub(s, b[i]); });
}
template <class R>
BasicMap<R> scale(const BasicMap<R>& a, const Rat& r) {
  return map_components(a, [&](int, const auto& s) { return scale(s, r); });
}
template <class R>
BasicMap<R> scale_by(const BasicMap<R>& a, const R& c) {
  return map_components(a, [&](int, const auto& s) { return scale_by(s, c); });
}

template <class R2>
BasicMap<R2> lift(const PolyMap& a) {
  std::vector<BasicSeries<R2>> c;
  for (const auto& s : a) c.push_back(lift<R2>(s));
  return BasicMap<R2>(std::move(c));
}

template <class R, class Fn>
auto map_coeffs(const BasicMap<R>& a, Fn fn) {
  using R2 = std::decay_t<decltype(fn(std::declval<const R&>()))>;
  std::vector<BasicSeries<R2>> c;
  for (const auto& s : a) c.push_back(map_coeffs(s, fn));
  return BasicMap<R2>(std::move(c));
}

/// f(g): componentwise substitution.
template <class R>
BasicMap<R> compose(const BasicMap<R>& f, const BasicMap<R>& g, int cap = kExact) {
  std::span<const BasicSeries<R>> inner(g.components());
  return map_components(f, [&](int, const auto& s) { return compose(s, inner, cap); });
}

template <class R>
BasicSeries<R> compose(const BasicSeries<R>& f, const BasicMap<R>& g, int cap = kExact) {
  return compose(f, std::span<const BasicSeries<R>>(g.components()), cap);
}

template <class R>
SeriesMatrix<R> jacobian(const BasicMap<R>& m) {
  SeriesMatrix<R> j(m.nvars());
  for (int i = 0; i < m.nvars(); ++i)
    for (int k = 0; k < m.nvars(); ++k) j[i].push_back(partial_diff(m[i], k));
  return j;
}

template <class R>
SeriesMatrix<R> identity_matrix(int n, int trunc = kExact) {
  SeriesMatrix<R> a(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      a[i].push_back(i == k ? BasicSeries<R>::constant(n, CoeffTraits<R>::from_rat(Rat(1)), trunc)
                            : BasicSeries<R>(n, trunc));
  return a;
}

/// Matrix-vector product A * v.
template <class R>
BasicMap<R> mat_vec(const SeriesMatrix<R>& a, const BasicMap<R>& v, int cap = kExact) {
  const int n = v.nvars();
  std::vector<BasicSeries<R>> out;
  for (int i = 0; i < n; ++i) {
    BasicSeries<R> acc = mul(a[i][0], v[0], cap);
    for (int k = 1; k < n; ++k) acc = add(acc, mul(a[i][k], v[k], cap));
    out.push_back(std::move(acc));
  }
  return BasicMap<R>(std::move(out));
}

template <class R>
SeriesMatrix<R> mat_mul(const SeriesMatrix<R>& a, const SeriesMatrix<R>& b, int cap = kExact) {
  const std::size_t n = a.size();
  SeriesMatrix<R> c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      BasicSeries<R> acc = mul(a[i][0], b[0][j], cap);
      for (std::size_t k = 1; k < n; ++k) acc = add(acc, mul(a[i][k], b[k][j], cap));
      c[i].push_back(std::move(acc));
    }
  return c;
}

template <class R, class Fn>
auto map_entries(const SeriesMatrix<R>& a, Fn fn) {
  using S = std::decay_t<decltype(fn(a[0][0]))>;
  std::vector<std::vector<S>> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (const auto& e : a[i]) c[i].push_back(fn(e));
  return c;
}

template <class R>
bool is_zero_matrix(const SeriesMatrix<R>& a) {
  for (const auto& row : a)
    for (const auto& e : row)
      if (!e.is_zero()) return false;
  return true;
}

/// Smallest k <= max_power with a^k == 0 (within the entries' truncation),
/// or nullopt if none.
template <class R>
std::optional<int> nilpotency_index(const SeriesMatrix<R>& a, int max_power, int cap = kExact) {
  if (a.empty()) return 1;
  SeriesMatrix<R> p = a;
  for (int k = 1; k <= max_power; ++k) {
    if (is_zero_matrix(p)) return k;
    if (k < max_power) p = mat_mul(p, a, cap);
  }
  return std::nullopt;
}

template <class R>
bool equal_through(const BasicMap<R>& a, const BasicMap<R>& b, int d) {
  if (a.nvars() != b.nvars()) return false;
  for (int i = 0; i < a.nvars(); ++i)
    if (!equal_through(a[i], b[i], d)) return false;
  return true;
}

/// Describes the first coefficient (component, exponent, both values) where
/// a and b differ through degree d; nullopt when they agree.
template <class R>
std::optional<std::string> describe_difference(const BasicMap<R>& a, const BasicMap<R>& b, int d) {
  if (a.nvars() != b.nvars()) return "dimension mismatch";
  for (int i = 0; i < a.nvars(); ++i) {
    if (a[i].trunc() < d || b[i].trunc() < d)
      return "component " + std::to_string(i + 1) + " not certified through degree " + std::to_string(d);
    if (auto k = first_difference(a[i], b[i], d)) {
      auto names = default_var_names(a.nvars());
      std::string mono = *k == 0 ? "1" : format_monomial(*k, names);
      return "component " + std::to_string(i + 1) + ", coefficient of " + mono + ": " +
             CoeffTraits<R>::format(a[i].coeff(*k)) + " vs " + CoeffTraits<R>::format(b[i].coeff(*k));
    }
  }
  return std::nullopt;
}

template <class R>
std::string to_string(const BasicMap<R>& m) {
  auto names = default_var_names(m.nvars());
  std::string out;
  for (int i = 0; i < m.nvars(); ++i) {
    out += "[" + std::to_string(i + 1) + "] " + to_string(m[i], names) + "\n";
  }
  return out;
}

/// Inverse of a series with nonzero constant term, computed layer by layer.
MSeries inverse(const MSeries& a, int cap);

/// Determinant via fraction-free elimination with unit pivots, truncated at
/// `cap` after every step. Falls back to cofactor expansion when no pivot
/// with nonzero constant term exists.
MSeries determinant(const SeriesMatrix<Rat>& a, int cap = kExact);

/// det(J m).
MSeries jacobian_det(const PolyMap& m, int cap = kExact);

/// A formal map in canonical form F = z - H with o(H) >= 2.
class MapF {
 public:
  /// Validates o(H) >= 2. Throws std::invalid_argument otherwise.
  static MapF from_h(PolyMap h);
  /// Validates zero constant term and identity linear part. Throws
  /// std::invalid_argument otherwise.
  static MapF from_map(const PolyMap& f);

  int nvars() const { return h_.nvars(); }
  const PolyMap& h() const { return h_; }
  /// z - H.
  PolyMap f() const;
  /// z - H truncated at d.
  PolyMap f(int d) const { return f().truncated(d); }
  std::optional<int> homogeneous_degree() const;
  /// Precision available for H; kExact for polynomial input.
  int trunc() const { return h_.trunc(); }

 private:
  explicit MapF(PolyMap h) : h_(std::move(h)) {}
  PolyMap h_;
};

/// Throws std::domain_error unless H is known through degree `needed`.
void require_precision(const MapF& f, int needed, const char* what);

/// Homogeneous degree of every component of H (zero components allowed);
/// nullopt if H is zero or not homogeneous.
std::optional<int> homogeneous_degree(const PolyMap& h);

}  // namespace forminv
