#pragma once

#include <cstdint>
#include <vector>

#include "tetrainterp/blaschke.hpp"
#include "tetrainterp/tetra.hpp"

namespace tetrainterp {

inline constexpr int kDefaultOmegaGrid = 4096;
inline constexpr double kCenterResidualTol = 1e-8;
inline constexpr double kInteriorMargin = 1e-10;
inline constexpr double kNodeDenGuard = 1e-12;
inline constexpr double kGoldenThetaTol = 1e-12;
inline constexpr double kRepresentationTol = 1e-9;

// Royal interpolation data: the Blaschke data plus a second target value per
// node (unimodular at circle nodes, interior at interior nodes).
struct RoyalData {
  BlaschkeData base;
  std::vector<Complex> eta_tilde;
};

void validate_data(const RoyalData& data);

// Value of the solution map at the base point: x3c unimodular,
// x1c = conj(x2c) x3c, both proper-disc entries.
struct CenterPoint {
  Complex x1, x2, x3;
  double omega_angle = 0.0;  // arg x3 in [0, 2 pi)
  double residual = 0.0;     // max_j |x2(sigma_j) - eta_tilde_j| at acceptance
};

struct CenterSearchOptions {
  int n_omega = kDefaultOmegaGrid;
  double residual_tol = kCenterResidualTol;
  double interior_margin = kInteriorMargin;
};

// Scan omega = e^{i theta} over the grid; per angle solve the 2n x 2 real
// least-squares system for x2c, then evaluate the true per-node residual.
// Grid candidates meeting both thresholds count as ties and the smallest
// theta wins; otherwise one golden-section pass refines the best candidate.
// Throws NotSolvable (best residual quoted, statement at this resolution)
// or ExceptionalGeometry (node denominator under kNodeDenGuard everywhere).
CenterPoint solve_center(const RoyalData& data, const Parametrization& par,
                         const CenterSearchOptions& opts = {});

struct OmegaInterval {
  double theta_begin = 0.0;
  double theta_end = 0.0;
  CenterPoint best;
};

// Maximal arcs of grid angles whose candidates meet the acceptance
// thresholds; empty when no grid angle is accepted outright.
std::vector<OmegaInterval> enumerate_centers(const RoyalData& data, const Parametrization& par,
                                             const CenterSearchOptions& opts = {});

// Rational map into the tetrablock with one shared denominator x1c*c + d.
struct TetraInnerFn {
  RationalFn x1, x2, x3;
  CenterPoint center;
  Parametrization par;  // populated by assemble; empty on deserialized values
  int degree = 0;
};

// x1 = (x1c a + b)/D, x2 = (x3c c + x2c d)/D, x3 = (x2c b + x3c a)/D with
// D = x1c c + d.  Throws DenominatorVanishes when D has a root in the
// closed disc.
TetraInnerFn assemble(const Parametrization& par, const CenterPoint& center);

// R = D * tilde(D, n) - conj(gamma) * E1 * E2, where gamma is the unimodular
// factor fitted so that the x3 numerator matches tilde(D, n).  Throws
// RepresentationMismatch when no such factor exists within kRepresentationTol.
ComplexPoly royal_polynomial(const TetraInnerFn& x);

struct RoyalNode {
  Complex location;
  Complex eta;        // x1 at the node
  Complex eta_tilde;  // x2 at the node
  int multiplicity = 0;
  bool on_circle = false;
};

struct RoyalNodeSet {
  std::vector<RoyalNode> nodes;
  int type_n = 0;  // total multiplicity, circle zeros counted at half order
  int type_k = 0;  // multiplicity carried by circle nodes
};

// Zeros of the royal polynomial in the closed disc.  Circle zeros must have
// even order (NumericalDegeneracy otherwise); throws RoyalVariety when the
// royal polynomial vanishes identically.
RoyalNodeSet royal_nodes(const TetraInnerFn& x);

// Exact degree of the reduced x3.
int degree_of(const TetraInnerFn& x);

// Degree-1 construction in closed form for data sigma = (0), tau = 1:
// no linear algebra and no grid search; serves as an independent reference.
TetraInnerFn closed_form_degree1(Complex eta, Complex eta_tilde, Complex omega);

// zeta(omega) = (omega x3c - x1c)/(x2c omega - 1); unimodular for unimodular
// omega.  Throws PolePoint when the denominator is under kPoleGuard.
Complex zeta_of_omega(const CenterPoint& center, Complex omega);

struct ClauseReport {
  double deviation = 0.0;
  bool pass = true;
};

struct TetraVerifyOptions {
  int circle_grid = 2048;
  int disc_grid = 64;
  int psi_samples = 8;
  std::uint64_t seed = 0;
  double interp_tol = 1e-7;
  double phasar_tol = 1e-6;
  double boundary_tol = 1e-8;
  double membership_tol = 1e-9;
  double royal_match_tol = 1e-6;
  double phasar_transfer_tol = 1e-6;
  BlaschkeVerifyTolerances blaschke = {};
};

struct TetraReport {
  ClauseReport interpolation;        // x(sigma_j) vs (eta_j, eta~_j, eta_j eta~_j)
  ClauseReport phasar;               // |A x1(sigma_j) - rho_j| at circle nodes
  ClauseReport boundary_unimodular;  // max ||x3|-1| over the circle grid
  ClauseReport boundary_pairing;     // max |x1 - conj(x2) x3| over the circle grid
  double membership_min_slack = 0.0;
  bool membership_pass = true;
  ClauseReport royal_match;          // node locations vs sigma
  bool type_ok = true;
  int degree = 0;
  bool degree_pass = true;
  bool psi_consistency_pass = true;  // random-omega compositions solve the Blaschke problem
  std::vector<double> psi_omega_angles;
  ClauseReport phasar_transfer_psi;      // |A(psi_w o x)(sigma_j) - A x1(sigma_j)|
  ClauseReport phasar_transfer_upsilon;  // |A(ups_w o x)(sigma_j) - A x2(sigma_j)|
  bool pass = false;
};

TetraReport verify_tetra_inner(const TetraInnerFn& x, const RoyalData& data,
                               const TetraVerifyOptions& opts = {});

}  // namespace tetrainterp
