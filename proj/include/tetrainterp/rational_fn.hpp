#pragma once

#include "tetrainterp/complex_poly.hpp"

namespace tetrainterp {

// Quotient of two polynomials.  disc_regular() reports whether the
// denominator has no root in the closed unit disc (kRootTolerance slack),
// which is what makes the function analytic there.
class RationalFn {
 public:
  RationalFn() : RationalFn(ComplexPoly{Complex(0.0)}, ComplexPoly{Complex(1.0)}) {}
  RationalFn(ComplexPoly num, ComplexPoly den);

  const ComplexPoly& num() const { return num_; }
  const ComplexPoly& den() const { return den_; }
  bool disc_regular() const { return disc_regular_; }

  Complex eval(Complex z) const { return num_.eval(z) / den_.eval(z); }

  // Degree of this representation: max of the exact degrees.
  int degree() const;

 private:
  ComplexPoly num_;
  ComplexPoly den_;
  bool disc_regular_;
};

// Cancel common roots of numerator and denominator (matched within
// kClusterRadius).  Leaves the function values unchanged away from the
// cancelled points.
RationalFn reduce(const RationalFn& f);

RationalFn operator*(const RationalFn& f, const RationalFn& g);

}  // namespace tetrainterp
