#pragma once

#include <utility>
#include <vector>

#include "forminv/polymap.hpp"

namespace forminv {

/// A finite window of a Laurent series: z^shift * body, where body is an
/// ordinary series and every entry of shift is <= 0. Only terms whose total
/// degree is at most window() are retained; each of them is exact.
class LaurentExpr {
 public:
  LaurentExpr(Exponent shift, MSeries body, int window);

  int nvars() const { return static_cast<int>(shift_.size()); }
  /// Per-variable lower bounds on exponents.
  const Exponent& lower_bounds() const { return shift_; }
  /// Largest total degree whose terms are known.
  int window() const { return window_; }
  const MSeries& body() const { return body_; }

  /// Coefficient of z^e. Throws std::domain_error if deg(e) > window().
  Rat coeff(const Exponent& e) const;

  /// All (exponent, coefficient) pairs in graded order.
  std::vector<std::pair<Exponent, Rat>> terms() const;

  /// Product with an ordinary series, keeping total degrees <= window.
  LaurentExpr times(const MSeries& s, int window) const;

 private:
  Exponent shift_;
  MSeries body_;
  int window_;
};

/// Laurent expansion of prod_i F_i^(-k_i - 1) for canonical F = z - H, using
/// F_i^-1 = z_i^-1 * sum_m (H_i / z_i)^m, keeping total degrees <= window.
/// Throws std::domain_error when H is not known precisely enough.
LaurentExpr laurent_inv_power(const MapF& f, const Exponent& k, int window);

/// Coefficient of z_1^-1 ... z_n^-1. Throws std::domain_error if that
/// exponent lies outside the computed window.
Rat residue(const LaurentExpr& e);

}  // namespace forminv
