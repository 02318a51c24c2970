#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "tetrainterp/rational_fn.hpp"

namespace tetrainterp {

// Data validation tolerances.
inline constexpr double kNodeSeparationMin = 1e-10;
inline constexpr double kCircleClassTol = 1e-12;
// Base point search.
inline constexpr int kTauAttempts = 256;
inline constexpr double kTauArcMargin = 1e-6;
inline constexpr double kTauDegeneratePair = 1e-12;
// Exceptional set.
inline constexpr double kExceptionalDenFloor = 1e-14;
inline constexpr double kExceptionalUnimodTol = 1e-8;
inline constexpr double kExceptionalArcTol = 1e-8;

// Interpolation data of type (n, k): nodes sigma_1..sigma_k on the circle
// with unimodular targets eta_j and prescribed boundary derivatives rho_j > 0,
// and interior nodes sigma_{k+1}..sigma_n with targets in the open disc.
struct BlaschkeData {
  int n = 0;
  int k = 0;
  std::vector<Complex> sigma;
  std::vector<Complex> eta;
  std::vector<double> rho;
};

// Throws InvalidData naming the violated clause.
void validate_data(const BlaschkeData& data);

// m_ij = rho_i when i = j <= k, otherwise (1 - conj(eta_i) eta_j) / (1 - conj(sigma_i) sigma_j).
// Hermitian by construction (upper triangle mirrored exactly).
Eigen::MatrixXcd build_pick_matrix(const BlaschkeData& data);

struct PdReport {
  bool positive_definite = false;
  int rank_estimate = 0;
  double smallest_pivot = 0.0;
};

// Cholesky decision with pivot threshold 1e-10 * trace(M) / n; rank estimate
// from the Hermitian eigenvalues.  Throws NotHermitian.
PdReport is_positive_definite(const Eigen::MatrixXcd& m);

// Deterministic rejection sampling of a unimodular base point admissible for
// the data: away from the circle nodes and avoiding the degenerate-pair
// condition.  Throws TauSearchExhausted after kTauAttempts candidates.
Complex choose_tau(const BlaschkeData& data, const Eigen::MatrixXcd& m, std::uint64_t seed);

// The Pick matrix together with everything tied to the base point tau.
class PickSystem {
 public:
  PickSystem(BlaschkeData data, Complex tau);

  const BlaschkeData& data() const { return data_; }
  const Eigen::MatrixXcd& matrix() const { return m_; }
  Complex tau() const { return tau_; }
  const Eigen::VectorXcd& vx() const { return vx_; }  // M^{-1} x_tau
  const Eigen::VectorXcd& vy() const { return vy_; }  // M^{-1} y_tau

 private:
  BlaschkeData data_;
  Eigen::MatrixXcd m_;
  Complex tau_;
  Eigen::VectorXcd vx_;
  Eigen::VectorXcd vy_;
};

// Unimodular zeta for which the linear-fractional solution formula breaks
// down at a circle node; at most k points.
std::vector<Complex> exceptional_set(const PickSystem& ps);

// Normalized linear-fractional parametrization of all degree-n solutions:
// phi_zeta = (a zeta + b) / (c zeta + d), [a(tau) b(tau); c(tau) d(tau)] = I.
struct Parametrization {
  ComplexPoly a, b, c, d;
  Complex tau;
  std::vector<Complex> exceptional;
  int n = 0;
};

Parametrization build_parametrization(const PickSystem& ps);
Parametrization build_parametrization(const BlaschkeData& data, Complex tau);

// phi_zeta, reduced.  Throws ExceptionalParameter when zeta falls within
// kExceptionalArcTol of the exceptional set.
RationalFn blaschke_solution(const Parametrization& par, Complex zeta);

struct BlaschkeVerifyTolerances {
  double inner = 1e-8;
  double interp = 1e-8;
  double phasar = 1e-6;
  int circle_grid = 512;
};

struct BlaschkeReport {
  double inner_deviation = 0.0;                  // max ||phi| - 1| over the circle grid
  std::vector<double> interpolation_deviations;  // |phi(sigma_j) - eta_j|
  std::vector<double> phasar_deviations;         // |A phi(sigma_j) - rho_j|, j <= k
  int degree = 0;
  bool disc_regular = false;
  bool pass = false;
};

BlaschkeReport verify_blaschke_solution(const RationalFn& phi, const BlaschkeData& data,
                                        const BlaschkeVerifyTolerances& tol = {});

// Smallest of max(|a|,|b|,|c|) over the roots of d and max(|b|,|c|,|d|) over
// the roots of a; large values certify that the four polynomials share no zero.
double common_zero_margin(const Parametrization& par);

}  // namespace tetrainterp
