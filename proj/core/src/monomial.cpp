#include "forminv/monomial.hpp"

#include <stdexcept>

namespace forminv {

namespace mono {

MonoKey pack(std::span<const int> e) {
  if (static_cast<int>(e.size()) > kMaxVars)
    throw std::invalid_argument("at most " + std::to_string(kMaxVars) + " variables are supported");
  MonoKey k = 0;
  int total = 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] < 0) throw std::invalid_argument("negative exponent in ordinary series");
    if (e[i] > kMaxKeyDegree) throw std::overflow_error("exponent exceeds packed range");
    total += e[i];
    k |= MonoKey(e[i]) << shift_of(static_cast<int>(i));
  }
  if (total > kMaxKeyDegree) throw std::overflow_error("total degree exceeds packed range");
  return k | (MonoKey(total) << 56);
}

Exponent unpack(MonoKey k, int nvars) {
  Exponent e(nvars);
  for (int i = 0; i < nvars; ++i) e[i] = exponent(k, i);
  return e;
}

}  // namespace mono

std::vector<std::string> default_var_names(int nvars) {
  if (nvars == 1) return {"z"};
  std::vector<std::string> names;
  for (int i = 1; i <= nvars; ++i) names.push_back("z" + std::to_string(i));
  return names;
}

}  // namespace forminv
