#include "forminv/upoly.hpp"

#include <stdexcept>

namespace forminv {

STPoly shift_by_s(const TPoly& p) {
  const int deg = p.degree();
  std::vector<TPoly> by_s;
  for (int k = 0; k <= deg; ++k) {
    std::vector<Rat> inner(static_cast<std::size_t>(deg - k) + 1);
    for (int j = k; j <= deg; ++j) inner[j - k] = p.coeff(j) * Rat(binomial(j, k));
    by_s.emplace_back(std::move(inner));
  }
  return STPoly(std::move(by_s));
}

STPoly truncate_st(const STPoly& p, int s_order, int t_order) {
  std::vector<TPoly> by_s;
  for (int k = 0; k <= std::min(p.degree(), s_order); ++k) by_s.push_back(p.coeff(k).truncated(t_order));
  return STPoly(std::move(by_s));
}

TPoly interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("interpolate: size mismatch");
  TPoly result;
  const TPoly t = TPoly::variable();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    TPoly basis(Rat(1));
    Rat denom = 1;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      if (xs[i] == xs[j]) throw std::invalid_argument("interpolate: repeated node");
      basis = basis * (t - TPoly(xs[j]));
      denom *= xs[i] - xs[j];
    }
    result += scaled(basis, Rat(ys[i] / denom));
  }
  return result;
}

}  // namespace forminv
