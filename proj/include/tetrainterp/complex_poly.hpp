#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace tetrainterp {

using Complex = std::complex<double>;

// Coefficients whose modulus falls below this fraction of the largest one are
// treated as zero when the exact degree is computed.
inline constexpr double kCoeffThresholdRel = 1e-12;
// Roots closer than this are merged into one cluster and reported with a
// multiplicity.
inline constexpr double kClusterRadius = 1e-6;
// A cluster centroid with ||rho| - 1| below this is snapped onto the circle.
inline constexpr double kCircleSnapTol = 1e-8;
// "In the closed disc" means |rho| <= 1 + kRootTolerance.
inline constexpr double kRootTolerance = 1e-8;

// Polynomial over C with coefficients stored in ascending power order.  The
// stored length fixes the nominal degree (degree-at-most contexts keep their
// padding); the exact degree ignores trailing coefficients below the relative
// threshold.  The zero polynomial reports degree -1.
class ComplexPoly {
 public:
  ComplexPoly() = default;
  explicit ComplexPoly(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {}
  ComplexPoly(std::initializer_list<Complex> coeffs) : coeffs_(coeffs) {}

  static ComplexPoly constant(Complex value) { return ComplexPoly({value}); }
  static ComplexPoly from_roots(const std::vector<Complex>& roots, Complex leading = 1.0);

  const std::vector<Complex>& coeffs() const { return coeffs_; }
  Complex coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Complex(0.0); }
  std::size_t size() const { return coeffs_.size(); }

  int degree() const;
  bool is_zero() const { return degree() < 0; }
  double max_abs_coeff() const;

  Complex eval(Complex z) const;
  ComplexPoly derivative() const;

  // p^{~n}(z) = z^n conj(p(1/conj(z))): pad to length n+1, reverse, conjugate.
  // Throws DegreeExceedsN when the exact degree is above n.
  ComplexPoly tilde(int n) const;

  // Synthetic division by (z - root); the remainder is discarded.
  ComplexPoly deflate(Complex root) const;

  // Copy shrunk to its exact degree (empty for the zero polynomial).
  ComplexPoly trimmed() const;

  ComplexPoly operator-() const;
  friend ComplexPoly operator+(const ComplexPoly& p, const ComplexPoly& q);
  friend ComplexPoly operator-(const ComplexPoly& p, const ComplexPoly& q);
  friend ComplexPoly operator*(const ComplexPoly& p, const ComplexPoly& q);
  friend ComplexPoly operator*(Complex s, const ComplexPoly& p);

 private:
  std::vector<Complex> coeffs_;
};

struct RootCluster {
  Complex location;  // centroid, snapped to the circle when within kCircleSnapTol
  int multiplicity = 0;
};

// Every root, as eigenvalues of the companion matrix.  Throws ZeroPolynomial.
std::vector<Complex> poly_roots(const ComplexPoly& p);

// Merge points closer than radius (single linkage, deterministic order).
std::vector<RootCluster> cluster_roots(std::vector<Complex> roots, double radius = kClusterRadius);

// Clustered roots with |rho| <= 1 + kRootTolerance.  Throws ZeroPolynomial.
std::vector<RootCluster> roots_in_closed_disc(const ComplexPoly& p);

}  // namespace tetrainterp
