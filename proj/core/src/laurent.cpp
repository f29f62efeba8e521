#include "forminv/laurent.hpp"

#include <numeric>
#include <stdexcept>

namespace forminv {

namespace {

int total(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

}  // namespace

LaurentExpr::LaurentExpr(Exponent shift, MSeries body, int window)
    : shift_(std::move(shift)), body_(std::move(body)), window_(window) {
  if (static_cast<int>(shift_.size()) != body_.nvars()) throw std::invalid_argument("laurent shift dimension mismatch");
  for (int s : shift_)
    if (s > 0) throw std::invalid_argument("laurent shift entries must be <= 0");
  const int body_window = window_ - total(shift_);
  if (body_window < 0) {
    body_ = MSeries(body_.nvars(), 0);
    return;
  }
  if (body_.trunc() < body_window) throw std::domain_error("laurent body not known through the requested window");
  body_ = body_.truncated(body_window);
}

Rat LaurentExpr::coeff(const Exponent& e) const {
  if (static_cast<int>(e.size()) != nvars()) throw std::invalid_argument("exponent dimension mismatch");
  if (total(e) > window_) throw std::domain_error("exponent outside the computed laurent window");
  Exponent be(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    be[i] = e[i] - shift_[i];
    if (be[i] < 0) return Rat(0);
  }
  return body_.coeff(be);
}

std::vector<std::pair<Exponent, Rat>> LaurentExpr::terms() const {
  std::vector<std::pair<Exponent, Rat>> out;
  for (const auto& t : body_.terms()) {
    Exponent e = mono::unpack(t.key, nvars());
    for (int i = 0; i < nvars(); ++i) e[i] += shift_[i];
    if (total(e) <= window_) out.emplace_back(std::move(e), t.coeff);
  }
  return out;
}

LaurentExpr LaurentExpr::times(const MSeries& s, int window) const {
  MSeries prod = mul(body_, s, window - total(shift_));
  int certified = std::min(window, prod.trunc() + total(shift_));
  return LaurentExpr(shift_, std::move(prod), certified);
}

LaurentExpr laurent_inv_power(const MapF& f, const Exponent& k, int window) {
  const int n = f.nvars();
  if (static_cast<int>(k.size()) != n) throw std::invalid_argument("exponent dimension mismatch");
  for (int x : k)
    if (x < 0) throw std::invalid_argument("laurent_inv_power needs k >= 0");
  const int base = -total(k) - n;
  // Largest total degree any (H_i / z_i)^m factor may contribute.
  const int reach = window - base;
  Exponent shift(n);
  for (int i = 0; i < n; ++i) shift[i] = -k[i] - 1 - std::max(reach, 0);
  if (reach < 0) return LaurentExpr(shift, MSeries(n, kExact), window);
  require_precision(f, reach + 1, "laurent_inv_power");

  // Factor i in body form: sum_m C(k_i + m, m) H_i^m z_i^(reach - m), scaled by z_i^-reach.
  const int factor_cap = 2 * reach;
  const int body_cap = reach + n * reach;
  MSeries body = MSeries::constant(n, Rat(1));
  for (int i = 0; i < n; ++i) {
    const MSeries hi = f.h()[i].truncated(reach + 1);
    MSeries factor(n, factor_cap);
    MSeries power = MSeries::constant(n, Rat(1));
    for (int m = 0; m <= reach; ++m) {
      if (m > 0) power = mul(power, hi, reach + m);
      if (power.is_zero()) break;
      Exponent ze(n, 0);
      ze[i] = reach - m;
      MSeries zpow = MSeries::from_terms(n, kExact, std::vector<std::pair<Exponent, Rat>>{{ze, Rat(1)}});
      Rat c(binomial(static_cast<unsigned>(k[i] + m), static_cast<unsigned>(m)));
      factor = add(factor, scale(mul(power, zpow, factor_cap), c));
    }
    body = mul(body, factor, body_cap);
  }
  return LaurentExpr(shift, body.with_trunc(body_cap), window);
}

Rat residue(const LaurentExpr& e) {
  return e.coeff(Exponent(e.nvars(), -1));
}

}  // namespace forminv
