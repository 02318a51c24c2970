#pragma once

#include "tetrainterp/rational_fn.hpp"

namespace tetrainterp {

inline constexpr double kMembershipTol = 1e-9;
inline constexpr double kBoundaryTol = 1e-8;
inline constexpr double kPoleGuard = 1e-12;
inline constexpr double kRoyalGuard = 1e-10;
inline constexpr double kUnimodCheckTol = 1e-8;
inline constexpr double kPhasarInnerTol = 1e-6;

struct TetraPoint {
  Complex x1, x2, x3;
};

struct MembershipResult {
  bool in_closure = false;
  // 1 - (|x1|^2 - |x2|^2 + |x3|^2 + 2|x2 - conj(x1) x3|); negative outside.
  double slack = 0.0;
};

// Closed-tetrablock membership: the inequality above within kMembershipTol
// together with |x2| <= 1 + kMembershipTol.
MembershipResult in_tetrablock_closure(const TetraPoint& p);

struct BoundaryResult {
  bool on_boundary = false;
  double dev_pairing = 0.0;     // |x1 - conj(x2) x3|
  double dev_unimodular = 0.0;  // ||x3| - 1|
  double x2_excess = 0.0;       // max(|x2| - 1, 0)
};

// Distinguished-boundary test: x1 = conj(x2) x3, |x3| = 1, |x2| <= 1.
BoundaryResult on_distinguished_boundary(const TetraPoint& p);

// (x3 w - x1) / (x2 w - 1); throws PolePoint when the denominator is < kPoleGuard.
Complex psi(Complex omega, const TetraPoint& p);
// (x3 w - x2) / (x1 w - 1); same pole rule.
Complex upsilon(Complex omega, const TetraPoint& p);

// For p in the closure and off the royal variety: whether |psi(omega, p)| = 1,
// decided through the criterion 2 Re(omega (x2 - conj(x1) x3)) =
// 1 - |x1|^2 + |x2|^2 - |x3|^2 evaluated within kUnimodCheckTol.
// Throws NotInClosure and RoyalPoint.
bool psi_unimodularity_check(Complex omega, const TetraPoint& p);

struct PsiComposition {
  RationalFn fn;                // reduced
  int pre_reduction_degree = 0;
};

// psi(omega, x(.)) as one rational function; x1, x2, x3 must share their
// denominator.  Throws DegenerateOmega when omega x2 is identically 1.
PsiComposition psi_compose(Complex omega, const RationalFn& x1, const RationalFn& x2,
                           const RationalFn& x3);
// upsilon(omega, x(.)); same contract with the roles of x1 and x2 swapped.
PsiComposition upsilon_compose(Complex omega, const RationalFn& x1, const RationalFn& x2,
                               const RationalFn& x3);

struct PhasarValue {
  double value = 0.0;          // Re(z f'(z)/f(z)), the derivative of arg f(e^{it})
  double imag_residual = 0.0;  // |Im(z f'(z)/f(z))|, small when f is inner near z
};

// Boundary argument derivative of f at unimodular z.  Requires |f(z)| within
// kPhasarInnerTol of 1 (NotUnimodularAt) and f(z) bounded away from 0 (ZeroAt).
PhasarValue phasar(const RationalFn& f, Complex z);

}  // namespace tetrainterp
