#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <utility>
#include <vector>

#include "forminv/monomial.hpp"
#include "forminv/rat.hpp"
#include "forminv/upoly.hpp"

namespace forminv {

/// Sparse multivariate power series in `nvars` variables with coefficients
/// in R, truncated in total degree.
///
/// A series with trunc() == D stores exactly the terms of total degree <= D;
/// everything above D is unknown. trunc() == kExact marks an exact
/// polynomial. Terms are kept sorted by packed key (graded order), with no
/// stored zeros. Values are immutable once built.
template <class R>
class BasicSeries {
 public:
  using coeff_type = R;

  struct Term {
    MonoKey key;
    R coeff;
    friend bool operator==(const Term&, const Term&) = default;
  };

  BasicSeries() = default;
  explicit BasicSeries(int nvars, int trunc = kExact) : n_(nvars), trunc_(mono::clamp_trunc(trunc)) {
    if (nvars < 0 || nvars > kMaxVars)
      throw std::invalid_argument("variable count must be in [0, " + std::to_string(kMaxVars) + "]");
    if (trunc < 0) throw std::invalid_argument("negative truncation degree");
  }

  static BasicSeries constant(int nvars, const R& c, int trunc = kExact) {
    BasicSeries s(nvars, trunc);
    if (!forminv::is_zero(c)) s.terms_.push_back({0, c});
    if constexpr (std::is_same_v<R, Rat>)
      if (!s.terms_.empty()) s.terms_.front().coeff.canonicalize();
    return s;
  }

  static BasicSeries variable(int nvars, int var, int trunc = kExact) {
    if (var < 0 || var >= nvars) throw std::out_of_range("variable index out of range");
    BasicSeries s(nvars, trunc);
    if (trunc >= 1) s.terms_.push_back({mono::unit(var), CoeffTraits<R>::from_rat(Rat(1))});
    return s;
  }

  /// Builds a normalized series: duplicates are summed and zeros dropped.
  /// Throws on negative exponents, dimension mismatch, or degree > trunc.
  static BasicSeries from_terms(int nvars, int trunc, std::span<const std::pair<Exponent, R>> terms) {
    BasicSeries s(nvars, trunc);
    std::unordered_map<MonoKey, R> acc;
    for (const auto& [e, c] : terms) {
      if (static_cast<int>(e.size()) != nvars) throw std::invalid_argument("exponent dimension mismatch");
      MonoKey k = mono::pack(e);
      if (mono::degree(k) > s.trunc_)
        throw std::invalid_argument("term degree " + std::to_string(mono::degree(k)) + " exceeds truncation " +
                                    std::to_string(trunc));
      auto [it, inserted] = acc.try_emplace(k, c);
      if (!inserted) it->second = R(it->second + c);
    }
    s.adopt(acc);
    return s;
  }

  /// Takes ownership of an accumulator of (key -> coefficient); drops zeros
  /// and terms above trunc, then sorts.
  static BasicSeries from_accumulator(int nvars, int trunc, std::unordered_map<MonoKey, R>& acc) {
    BasicSeries s(nvars, trunc);
    s.adopt(acc);
    return s;
  }

  /// Trusted constructor for already sorted, unique, nonzero terms within trunc.
  static BasicSeries from_sorted(int nvars, int trunc, std::vector<Term> terms) {
    BasicSeries s(nvars, trunc);
    s.terms_ = std::move(terms);
    return s;
  }

  int nvars() const { return n_; }
  int trunc() const { return trunc_; }
  bool exact() const { return trunc_ >= kExact; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Minimal total degree of a stored term; kInfiniteOrder for zero.
  int order() const { return terms_.empty() ? kInfiniteOrder : mono::degree(terms_.front().key); }

  /// Lower bound for the order of the true (untruncated) series.
  int order_bound() const {
    if (!terms_.empty()) return order();
    return exact() ? kInfiniteOrder : trunc_ + 1;
  }

  /// Maximal total degree of a stored term; -1 for zero.
  int degree() const { return terms_.empty() ? -1 : mono::degree(terms_.back().key); }

  R coeff(MonoKey k) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), k, [](const Term& t, MonoKey x) { return t.key < x; });
    return it != terms_.end() && it->key == k ? it->coeff : R{};
  }
  R coeff(const Exponent& e) const {
    if (static_cast<int>(e.size()) != n_) throw std::invalid_argument("exponent dimension mismatch");
    for (int x : e)
      if (x < 0 || x > kMaxKeyDegree) return R{};
    return coeff(mono::pack(e));
  }

  BasicSeries truncated(int d) const {
    if (d >= trunc_ && !exact()) return *this;
    BasicSeries s(n_, std::min(trunc_, d));
    for (const auto& t : terms_) {
      if (mono::degree(t.key) > s.trunc_) break;
      s.terms_.push_back(t);
    }
    return s;
  }

  /// Homogeneous component of total degree d (exact polynomial).
  BasicSeries homogeneous_part(int d) const {
    if (d > trunc_) throw std::domain_error("homogeneous part above truncation degree");
    BasicSeries s(n_, kExact);
    for (const auto& t : terms_)
      if (mono::degree(t.key) == d) s.terms_.push_back(t);
    return s;
  }

  /// Degree d if every stored term has total degree d; nullopt for zero or mixed.
  std::optional<int> homogeneous_degree() const {
    if (terms_.empty() || order() != degree()) return std::nullopt;
    return order();
  }

  /// Replaces the truncation marker; only valid when the caller knows the
  /// series is exact through the new degree.
  BasicSeries with_trunc(int trunc) const {
    BasicSeries s = truncated(trunc);
    s.trunc_ = mono::clamp_trunc(trunc);
    return s;
  }

  friend bool operator==(const BasicSeries&, const BasicSeries&) = default;

 private:
  void adopt(std::unordered_map<MonoKey, R>& acc) {
    terms_.reserve(acc.size());
    for (auto& [k, c] : acc) {
      if constexpr (std::is_same_v<R, Rat>) c.canonicalize();
      if (mono::degree(k) <= trunc_ && !forminv::is_zero(c)) terms_.push_back({k, std::move(c)});
    }
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.key < b.key; });
  }

  int n_ = 0;
  int trunc_ = kExact;
  std::vector<Term> terms_;
};

using MSeries = BasicSeries<Rat>;
using TSeries = BasicSeries<TPoly>;
using STSeries = BasicSeries<STPoly>;

namespace detail {

inline void require_same_vars(int a, int b) {
  if (a != b) throw std::invalid_argument("series dimension mismatch");
}

inline int add_trunc(long long a, long long b) { return mono::clamp_trunc(a + b); }

}  // namespace detail

template <class R>
BasicSeries<R> add(const BasicSeries<R>& a, const BasicSeries<R>& b) {
  detail::require_same_vars(a.nvars(), b.nvars());
  int tr = std::min(a.trunc(), b.trunc());
  using Term = typename BasicSeries<R>::Term;
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  auto ia = a.terms().begin(), ea = a.terms().end();
  auto ib = b.terms().begin(), eb = b.terms().end();
  while (ia != ea || ib != eb) {
    if (ib == eb || (ia != ea && ia->key < ib->key)) {
      if (mono::degree(ia->key) <= tr) out.push_back(*ia);
      ++ia;
    } else if (ia == ea || ib->key < ia->key) {
      if (mono::degree(ib->key) <= tr) out.push_back(*ib);
      ++ib;
    } else {
      R c(ia->coeff + ib->coeff);
      if (mono::degree(ia->key) <= tr && !is_zero(c)) out.push_back({ia->key, std::move(c)});
      ++ia;
      ++ib;
    }
  }
  return BasicSeries<R>::from_sorted(a.nvars(), tr, std::move(out));
}

/// Multiplies every coefficient by a rational scalar.
template <class R>
BasicSeries<R> scale(const BasicSeries<R>& a, const Rat& s) {
  using Term = typename BasicSeries<R>::Term;
  std::vector<Term> out;
  if (!is_zero(s)) {
    out.reserve(a.size());
    for (const auto& t : a.terms()) out.push_back({t.key, scaled(t.coeff, s)});
  }
  return BasicSeries<R>::from_sorted(a.nvars(), a.trunc(), std::move(out));
}

/// Multiplies every coefficient by a ring element c.
template <class R>
BasicSeries<R> scale_by(const BasicSeries<R>& a, const R& c) {
  using Term = typename BasicSeries<R>::Term;
  std::vector<Term> out;
  for (const auto& t : a.terms()) {
    R p(t.coeff * c);
    if (!is_zero(p)) out.push_back({t.key, std::move(p)});
  }
  return BasicSeries<R>::from_sorted(a.nvars(), a.trunc(), std::move(out));
}

template <class R>
BasicSeries<R> negate(const BasicSeries<R>& a) {
  return scale(a, Rat(-1));
}

template <class R>
BasicSeries<R> sub(const BasicSeries<R>& a, const BasicSeries<R>& b) {
  return add(a, negate(b));
}

/// Product, exact through the largest degree that both truncations certify
/// (taking orders into account), capped at `cap`.
template <class R>
BasicSeries<R> mul(const BasicSeries<R>& a, const BasicSeries<R>& b, int cap = kExact) {
  detail::require_same_vars(a.nvars(), b.nvars());
  int tr = std::min({cap, detail::add_trunc(a.trunc(), b.order_bound()), detail::add_trunc(b.trunc(), a.order_bound())});
  if (a.is_zero() || b.is_zero()) return BasicSeries<R>(a.nvars(), tr);
  if (tr >= kExact && a.degree() + b.degree() > kMaxKeyDegree)
    throw std::overflow_error("exact product exceeds the supported total degree");
  std::unordered_map<MonoKey, R> acc;
  const int bmin = b.order();
  for (const auto& ta : a.terms()) {
    const int da = mono::degree(ta.key);
    if (da + bmin > tr) break;
    for (const auto& tb : b.terms()) {
      if (da + mono::degree(tb.key) > tr) break;
      auto [it, inserted] = acc.try_emplace(ta.key + tb.key);
      it->second += ta.coeff * tb.coeff;
    }
  }
  return BasicSeries<R>::from_accumulator(a.nvars(), tr, acc);
}

template <class R>
BasicSeries<R> truncate(const BasicSeries<R>& a, int d) {
  return a.truncated(d);
}

/// d/dz_var; truncation drops by one.
template <class R>
BasicSeries<R> partial_diff(const BasicSeries<R>& f, int var) {
  if (var < 0 || var >= f.nvars()) throw std::out_of_range("variable index out of range");
  using Term = typename BasicSeries<R>::Term;
  std::vector<Term> out;
  const MonoKey u = mono::unit(var);
  for (const auto& t : f.terms()) {
    int e = mono::exponent(t.key, var);
    if (e == 0) continue;
    out.push_back({t.key - u, scaled(t.coeff, Rat(e))});
  }
  int tr = f.exact() ? kExact : std::max(f.trunc() - 1, 0);
  if (!f.exact() && f.trunc() == 0) out.clear();
  return BasicSeries<R>::from_sorted(f.nvars(), tr, std::move(out));
}

/// Maps coefficients through fn (R -> R2), dropping those that vanish.
template <class R, class Fn>
auto map_coeffs(const BasicSeries<R>& a, Fn fn) {
  using R2 = std::decay_t<decltype(fn(std::declval<const R&>()))>;
  std::vector<typename BasicSeries<R2>::Term> out;
  for (const auto& t : a.terms()) {
    R2 c = fn(t.coeff);
    if (!is_zero(c)) out.push_back({t.key, std::move(c)});
  }
  return BasicSeries<R2>::from_sorted(a.nvars(), a.trunc(), std::move(out));
}

/// Embeds a rational series into a series over a larger coefficient ring.
template <class R2>
BasicSeries<R2> lift(const MSeries& a) {
  return map_coeffs(a, [](const Rat& c) { return CoeffTraits<R2>::from_rat(c); });
}

/// f(g_1, ..., g_n). Every g_i must have zero constant term. Powers of each
/// g_i and shared monomial prefixes are computed once and reused, so each
/// term of f costs a single truncated product.
template <class R>
BasicSeries<R> compose(const BasicSeries<R>& f, std::span<const BasicSeries<R>> g, int cap = kExact) {
  if (static_cast<int>(g.size()) != f.nvars()) throw std::invalid_argument("composition arity mismatch");
  const int m = g.empty() ? 0 : g.front().nvars();
  int og = kInfiniteOrder;
  for (const auto& gi : g) {
    detail::require_same_vars(gi.nvars(), m);
    if (!gi.is_zero() && gi.order() == 0)
      throw std::domain_error("substitution requires inner series with zero constant term");
    og = std::min(og, gi.order_bound());
  }
  og = std::max(og, 1);

  // Certified truncation of the result.
  long long tr = cap;
  if (!f.exact()) tr = std::min<long long>(tr, (static_cast<long long>(f.trunc()) + 1) * og - 1);
  for (int i = 0; i < f.nvars(); ++i) {
    if (g[i].exact()) continue;
    int lowest = kInfiniteOrder;
    for (const auto& t : f.terms())
      if (mono::exponent(t.key, i) > 0) {
        lowest = mono::degree(t.key);
        break;
      }
    if (lowest != kInfiniteOrder) tr = std::min<long long>(tr, g[i].trunc() + static_cast<long long>(lowest - 1) * og);
  }
  const int trunc = mono::clamp_trunc(tr);

  const R one = CoeffTraits<R>::from_rat(Rat(1));
  std::vector<std::vector<BasicSeries<R>>> powers(f.nvars());
  auto power = [&](int var, int e) -> const BasicSeries<R>& {
    auto& p = powers[var];
    if (p.empty()) p.push_back(BasicSeries<R>::constant(m, one));
    while (static_cast<int>(p.size()) <= e) p.push_back(mul(p.back(), g[var], trunc));
    return p[e];
  };

  std::unordered_map<MonoKey, BasicSeries<R>> prefix;
  prefix.emplace(MonoKey{0}, BasicSeries<R>::constant(m, one));
  // Monomial products are built from the prefix with the last variable removed.
  auto product = [&](auto&& self, MonoKey k) -> const BasicSeries<R>& {
    if (auto it = prefix.find(k); it != prefix.end()) return it->second;
    int last = -1;
    for (int i = f.nvars() - 1; i >= 0; --i)
      if (mono::exponent(k, i) > 0) {
        last = i;
        break;
      }
    int e = mono::exponent(k, last);
    MonoKey rest = k - MonoKey(e) * mono::unit(last);
    BasicSeries<R> value = mul(self(self, rest), power(last, e), trunc);
    return prefix.emplace(k, std::move(value)).first->second;
  };

  std::unordered_map<MonoKey, R> acc;
  for (const auto& t : f.terms()) {
    if (static_cast<long long>(mono::degree(t.key)) * og > trunc) break;
    const auto& p = product(product, t.key);
    for (const auto& pt : p.terms()) {
      auto [it, inserted] = acc.try_emplace(pt.key);
      it->second += t.coeff * pt.coeff;
    }
  }
  return BasicSeries<R>::from_accumulator(m, trunc, acc);
}

/// True when a and b agree on every coefficient of total degree <= d.
/// Throws std::domain_error if either series is not known through d.
template <class R>
bool equal_through(const BasicSeries<R>& a, const BasicSeries<R>& b, int d) {
  if (a.trunc() < d || b.trunc() < d) throw std::domain_error("comparison beyond certified truncation");
  return a.truncated(d).terms() == b.truncated(d).terms();
}

/// Key of the first (graded order) coefficient of degree <= d where a and b differ.
template <class R>
std::optional<MonoKey> first_difference(const BasicSeries<R>& a, const BasicSeries<R>& b, int d) {
  auto ta = a.truncated(d).terms();
  auto tb = b.truncated(d).terms();
  std::size_t i = 0, j = 0;
  while (i < ta.size() || j < tb.size()) {
    if (j == tb.size() || (i < ta.size() && ta[i].key < tb[j].key)) return ta[i].key;
    if (i == ta.size() || tb[j].key < ta[i].key) return tb[j].key;
    if (!(ta[i].coeff == tb[j].coeff)) return ta[i].key;
    ++i;
    ++j;
  }
  return std::nullopt;
}

template <class R>
BasicSeries<R> operator+(const BasicSeries<R>& a, const BasicSeries<R>& b) {
  return add(a, b);
}
template <class R>
BasicSeries<R> operator-(const BasicSeries<R>& a, const BasicSeries<R>& b) {
  return sub(a, b);
}
template <class R>
BasicSeries<R> operator-(const BasicSeries<R>& a) {
  return negate(a);
}
template <class R>
BasicSeries<R> operator*(const BasicSeries<R>& a, const BasicSeries<R>& b) {
  return mul(a, b);
}

/// Renders a monomial such as "z1^2*z3".
std::string format_monomial(MonoKey k, const std::vector<std::string>& names);

/// Human-readable rendering, e.g. "z + z^2 + 2*z^3 + O(z^9)".
template <class R>
std::string to_string(const BasicSeries<R>& s, const std::vector<std::string>& names) {
  std::string out;
  for (const auto& t : s.terms()) {
    std::string cs = CoeffTraits<R>::format(t.coeff);
    bool compound = cs.find(' ') != std::string::npos;
    bool neg = !compound && cs.front() == '-';
    if (neg) cs.erase(0, 1);
    if (compound) cs = "(" + cs + ")";
    out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
    if (t.key == 0)
      out += cs;
    else
      out += (cs == "1" ? "" : cs + "*") + format_monomial(t.key, names);
  }
  if (out.empty()) out = "0";
  if (!s.exact()) out += " + O(deg " + std::to_string(s.trunc() + 1) + ")";
  return out;
}

template <class R>
std::string to_string(const BasicSeries<R>& s) {
  return to_string(s, default_var_names(s.nvars()));
}

}  // namespace forminv
