#pragma once

#include <algorithm>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "forminv/rat.hpp"

namespace forminv {

/// Conversion of a rational into an arbitrary coefficient ring.
template <class R>
struct CoeffTraits;

template <>
struct CoeffTraits<Rat> {
  static Rat from_rat(const Rat& r) { return r; }
  static std::string format(const Rat& r) { return to_string(r); }
};

template <class R>
class UPoly;
template <class R>
bool is_zero(const UPoly<R>& p);
template <class R>
UPoly<R> scaled(const UPoly<R>& p, const Rat& s);

/// Dense univariate polynomial with coefficients in R. The zero polynomial
/// has an empty coefficient vector; trailing zeros are always trimmed.
template <class R>
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(R c0) {
    if (!forminv::is_zero(c0)) c_.push_back(std::move(c0));
  }
  explicit UPoly(std::vector<R> coeffs) : c_(std::move(coeffs)) { trim(); }

  static UPoly monomial(int deg, R c) {
    std::vector<R> v(static_cast<std::size_t>(deg) + 1);
    v[deg] = std::move(c);
    return UPoly(std::move(v));
  }
  static UPoly variable() { return monomial(1, CoeffTraits<R>::from_rat(Rat(1))); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<R>& coeffs() const { return c_; }
  R coeff(int j) const { return j >= 0 && j < static_cast<int>(c_.size()) ? c_[j] : R{}; }

  /// Horner evaluation at a rational point.
  R evaluate(const Rat& x) const {
    R acc{};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = add(scaled(acc, x), *it);
    return acc;
  }

  UPoly derivative() const {
    std::vector<R> d;
    for (std::size_t j = 1; j < c_.size(); ++j) d.push_back(scaled(c_[j], Rat(static_cast<long>(j))));
    return UPoly(std::move(d));
  }

  UPoly truncated(int max_deg) const {
    if (degree() <= max_deg) return *this;
    return UPoly(std::vector<R>(c_.begin(), c_.begin() + (max_deg + 1)));
  }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<R> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t j = 0; j < r.size(); ++j) r[j] = add(a.coeff(static_cast<int>(j)), b.coeff(static_cast<int>(j)));
    return UPoly(std::move(r));
  }
  friend UPoly operator-(const UPoly& a) {
    std::vector<R> r;
    for (const auto& c : a.c_) r.push_back(scaled(c, Rat(-1)));
    return UPoly(std::move(r));
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<R> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = add(r[i + j], R(a.c_[i] * b.c_[j]));
    return UPoly(std::move(r));
  }
  UPoly& operator+=(const UPoly& o) { return *this = *this + o; }

  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

 private:
  static R add(const R& x, const R& y) { return R(x + y); }
  void trim() {
    while (!c_.empty() && forminv::is_zero(c_.back())) c_.pop_back();
  }

  std::vector<R> c_;
};

template <class R>
bool is_zero(const UPoly<R>& p) {
  return p.is_zero();
}

template <class R>
UPoly<R> scaled(const UPoly<R>& p, const Rat& s) {
  std::vector<R> r;
  r.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) r.push_back(scaled(c, s));
  return UPoly<R>(std::move(r));
}

/// Renders p in the variable `var`, e.g. "1/2*t^2 - 1/2*t".
template <class R>
std::string to_string(const UPoly<R>& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int j = p.degree(); j >= 0; --j) {
    const R& c = p.coeffs()[j];
    if (is_zero(c)) continue;
    std::string cs = CoeffTraits<R>::format(c);
    bool compound = cs.find(' ') != std::string::npos;
    bool neg = !compound && cs.front() == '-';
    if (neg) cs.erase(0, 1);
    if (compound) cs = "(" + cs + ")";
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    std::string mono = j == 0 ? "" : (j == 1 ? var : var + "^" + std::to_string(j));
    if (mono.empty())
      out += cs;
    else if (cs == "1")
      out += mono;
    else
      out += cs + "*" + mono;
  }
  return out;
}

/// Polynomials in t over Q.
using TPoly = UPoly<Rat>;
/// Polynomials in s (outer) with coefficients in Q[t] (inner).
using STPoly = UPoly<TPoly>;

template <class R>
struct CoeffTraits<UPoly<R>> {
  static UPoly<R> from_rat(const Rat& r) { return UPoly<R>(CoeffTraits<R>::from_rat(r)); }
  static std::string format(const UPoly<R>& p) {
    if constexpr (std::is_same_v<R, Rat>)
      return to_string(p, "t");
    else
      return to_string(p, "s");
  }
};

/// p(t) -> p(t + s) as a polynomial in s with Q[t] coefficients.
STPoly shift_by_s(const TPoly& p);

/// Drops s-powers above s_order and t-powers above t_order.
STPoly truncate_st(const STPoly& p, int s_order, int t_order);

/// Lagrange interpolation through (x_j, y_j) with distinct x_j.
TPoly interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys);

}  // namespace forminv
