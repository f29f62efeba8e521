#pragma once

#include <optional>
#include <string>
#include <vector>

#include "forminv/inversion.hpp"
#include "forminv/report.hpp"

namespace forminv {

/// N_t = sum_m t^(m-1) N_[m], the inverse of F_t = z - tH being z + t N_t.
struct DeformedInverse {
  GradedInverse graded;
  /// N_t with polynomial coefficients in t, exact through z-degree trunc.
  TMap nt;
  /// Largest t-degree that can occur through z-degree trunc.
  int t_order = 0;

  int trunc() const { return graded.trunc; }
  /// z + t N_t.
  TMap g_t() const;
};

/// Packages the layers of `graded` with their t-grading.
DeformedInverse deform(GradedInverse graded);
DeformedInverse deformation_inverse(const MapF& f, int deg);

/// z - tH.
TMap f_t(const PolyMap& h);

/// d/dt applied to every coefficient.
TMap t_derivative(const TMap& m);
/// Replaces t by a rational value.
PolyMap evaluate_t(const TMap& m, const Rat& t);

/// dN_t/dt - JN_t N_t through z-degree trunc; zero for a true inverse.
TMap pde_residual(const DeformedInverse& inv);

Report check_pde(const MapF& f, int deg);
/// N_t(F_t) = H, H(G_t) = N_t, JN_t(F_t) = sum_k JH^k t^(k-1), and equal
/// nilpotency indices of JH and JN_t.
Report check_lemma31(const MapF& f, int deg);
/// JH.H = 0 exactly when G = z + H; then F^[m] = z - mH for m = 1..4.
Report check_newp(const PolyMap& h, int deg);
/// For homogeneous H: JH^2 z = d JH.H, and JH^2 = 0 forces G = z + H.
Report check_bcw_quadratic_nilpotent(const PolyMap& h, int deg);
/// U = z - s N_t has inverse V = z + s N_(t+s), U = F_(t+s) o G_t and
/// V = F_t o G_(s+t), compared through z-degree deg and the given s, t orders.
Report check_prop310(const MapF& f, int deg, int s_order, int t_order);
/// U_t = U0(z + t N_t) solves dU_t/dt = JU_t N_t with U_0 = U0.
Report check_gpde(const PolyMap& u0, const PolyMap& h, int deg);
/// For homogeneous H of degree d >= 2: the two N_t / JN_t identities and
/// both alternating series in JN_t^k z.
Report check_euler_identities(const PolyMap& h, int deg);

/// F(z; t) = z + sum_{|T| <= deg-1} (-1)^|T| order_polynomial(T)(t) P_T(z).
TMap formal_flow(const MapF& f, int deg, unsigned threads = 1);

/// F^[m]: iterated composition for m >= 0, of the inverse for m < 0.
PolyMap power_map(const MapF& f, int m, int deg);

struct ProbeResult {
  int layers = 0;
  /// Degree of H (its homogeneous degree).
  int degree = 0;
  std::optional<int> nilpotency_index;
  /// Largest m <= layers with N_[m] != 0 (0 when H = 0).
  int last_nonzero = 0;
  /// Number of nonzero terms per layer.
  std::vector<std::size_t> layer_terms;
  Report report{"probe"};
};

/// Computes N_[1..layers] exactly for homogeneous H of degree d >= 2 with
/// nilpotent JH and reports where the layers stop. An experiment bounded by
/// `layers`, not a proof. Throws std::domain_error if JH is not nilpotent.
ProbeResult polynomiality_probe(const PolyMap& h, int layers);

struct SymmetryResult {
  bool symmetric = false;
  std::string note;
};

/// Whether JH equals its transpose.
SymmetryResult symmetry_detector(const PolyMap& h);

}  // namespace forminv
