#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "forminv/polymap.hpp"
#include "forminv/report.hpp"

namespace forminv {

/// The inverse G = z + sum_m N_[m] split into graded layers, where N_[m] is
/// the coefficient of t^(m-1) in N_t for the family z - tH.
struct GradedInverse {
  PolyMap h;
  /// layers[m - 1] holds N_[m].
  std::vector<PolyMap> layers;
  /// G is certified through this total degree.
  int trunc = 0;

  int count() const { return static_cast<int>(layers.size()); }
  const PolyMap& layer(int m) const { return layers.at(m - 1); }
  /// z + sum of all layers, truncated at trunc.
  PolyMap inverse() const;
};

enum class Method { FixedPoint, Recurrent, Homogeneous, AbhyankarGurjar, Bcw, Jacobi, Lagrange };

/// Short CLI name: fixed, recurrent, homog, ag, bcw, jacobi, lagrange.
std::string_view method_name(Method m);
/// Throws std::invalid_argument for unknown names.
Method parse_method(std::string_view name);
std::vector<Method> all_methods();

/// Reason why `m` cannot invert `f`, or nullopt when it can.
std::optional<std::string> inapplicable_reason(Method m, const MapF& f);

/// Oracle: iterates G <- z + H(G), gaining one certified degree per step.
PolyMap invert_fixed_point(const MapF& f, int deg);

/// First `count` layers from N_[1] = H and
/// N_[m] = 1/(m-1) * sum_{k+l=m} JN_[k] * N_[l], each truncated at cap.
std::vector<PolyMap> recurrent_layers(const PolyMap& h, int count, int cap);

/// Layers N_[1..deg-1]; later layers have order > deg.
GradedInverse invert_recurrent(const MapF& f, int deg);

/// The symmetric d-linear form of a homogeneous map H of degree d, with
/// B(z, ..., z) = H.
class BForm {
 public:
  /// Throws std::invalid_argument unless H is homogeneous of degree >= 1.
  explicit BForm(PolyMap h);
  BForm(PolyMap h, int degree);

  int degree() const { return d_; }
  int nvars() const { return h_.nvars(); }

  /// B(args[0], ..., args[d-1]), computed as 1/d! times the coefficient of
  /// lambda_1 ... lambda_d in H(lambda_1 U^1 + ... + lambda_d U^d).
  PolyMap apply(const std::vector<PolyMap>& args, int cap = kExact) const;

 private:
  PolyMap h_;
  int d_;
};

/// Layers N_[1..count] of a homogeneous H of degree d >= 2 via the
/// differential-free recurrence N_[m+1] = sum_{k_1+...+k_d=m} B(N_[k_1], ..., N_[k_d])
/// with N_[0] = z. Layer m is exact and homogeneous of degree (d-1)m + 1.
GradedInverse invert_homogeneous(const MapF& f, int count);
/// Enough layers for G to be certified through `deg`.
GradedInverse invert_homogeneous_through(const MapF& f, int deg);

/// G_i = sum_{|m| <= deg-1} D^m (z_i j(F) H^m) / m!.
PolyMap invert_abhyankar_gurjar(const MapF& f, int deg);

/// G = z + sum over rooted trees T with |T| <= deg-1 of P_T.
PolyMap invert_bcw(const MapF& f, int deg, unsigned threads = 1);

/// [z^k] G_i as the residue of j(F) F^(-k-1) z_i.
Rat jacobi_coefficient(const MapF& f, int i, const Exponent& k);
PolyMap invert_jacobi(const MapF& f, int deg);

/// True when z_i divides H_i for every i.
bool lagrange_applicable(const MapF& f);
/// [z^k] G_i = [w^k] det(delta_ij - (w_i / f_i) d f_i / d w_j) w_i f^k with
/// f_i = 1 / (1 - H_i / z_i). Throws std::domain_error if some z_i does not
/// divide H_i.
Rat lagrange_coefficient(const MapF& f, int i, const Exponent& k);
PolyMap invert_lagrange(const MapF& f, int deg);

/// Dispatches to one method; the result is truncated at deg.
PolyMap invert(Method m, const MapF& f, int deg, unsigned threads = 1);

struct MethodResult {
  Method method;
  PolyMap g;
  double millis = 0;
};

struct CrossCheck {
  std::vector<MethodResult> results;
  /// Methods that were requested but do not apply, with the reason.
  std::vector<std::pair<Method, std::string>> skipped;
  /// The common inverse (first method's result).
  PolyMap g;
  Report report{"cross-check"};
  bool agree() const { return report.passed(); }
};

/// Runs every applicable method, compares results pairwise against the
/// first one, and checks F(G) = z and G(F) = z, all through deg.
CrossCheck cross_check(const MapF& f, int deg, const std::vector<Method>& methods, unsigned threads = 1);

}  // namespace forminv
