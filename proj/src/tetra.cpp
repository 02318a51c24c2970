#include "tetrainterp/tetra.hpp"

#include <algorithm>
#include <cmath>

#include "tetrainterp/errors.hpp"

namespace tetrainterp {

MembershipResult in_tetrablock_closure(const TetraPoint& p) {
  const double lhs = std::norm(p.x1) - std::norm(p.x2) + std::norm(p.x3) +
                     2.0 * std::abs(p.x2 - std::conj(p.x1) * p.x3);
  MembershipResult r;
  r.slack = 1.0 - lhs;
  r.in_closure = lhs <= 1.0 + kMembershipTol && std::abs(p.x2) <= 1.0 + kMembershipTol;
  return r;
}

BoundaryResult on_distinguished_boundary(const TetraPoint& p) {
  BoundaryResult r;
  r.dev_pairing = std::abs(p.x1 - std::conj(p.x2) * p.x3);
  r.dev_unimodular = std::abs(std::abs(p.x3) - 1.0);
  r.x2_excess = std::max(std::abs(p.x2) - 1.0, 0.0);
  r.on_boundary = r.dev_pairing < kBoundaryTol && r.dev_unimodular < kBoundaryTol &&
                  std::abs(p.x2) <= 1.0 + kMembershipTol;
  return r;
}

Complex psi(Complex omega, const TetraPoint& p) {
  const Complex den = p.x2 * omega - 1.0;
  if (std::abs(den) <= kPoleGuard) throw PolePoint("psi: pole at this omega");
  return (p.x3 * omega - p.x1) / den;
}

Complex upsilon(Complex omega, const TetraPoint& p) {
  const Complex den = p.x1 * omega - 1.0;
  if (std::abs(den) <= kPoleGuard) throw PolePoint("upsilon: pole at this omega");
  return (p.x3 * omega - p.x2) / den;
}

bool psi_unimodularity_check(Complex omega, const TetraPoint& p) {
  if (!in_tetrablock_closure(p).in_closure)
    throw NotInClosure("psi_unimodularity_check: point is outside the closed tetrablock");
  if (std::abs(p.x1 * p.x2 - p.x3) <= kRoyalGuard)
    throw RoyalPoint("psi_unimodularity_check: royal point, psi is constant");
  const Complex lhs = 2.0 * omega * (p.x2 - std::conj(p.x1) * p.x3);
  const double rhs = 1.0 - std::norm(p.x1) + std::norm(p.x2) - std::norm(p.x3);
  return std::abs(lhs - rhs) < kUnimodCheckTol;
}

namespace {

void require_shared_den(const RationalFn& x1, const RationalFn& x2, const RationalFn& x3) {
  const double scale = std::max({x1.den().max_abs_coeff(), x2.den().max_abs_coeff(),
                                 x3.den().max_abs_coeff(), 1e-300});
  const double d12 = (x1.den() - x2.den()).max_abs_coeff();
  const double d13 = (x1.den() - x3.den()).max_abs_coeff();
  if (d12 > 1e-12 * scale || d13 > 1e-12 * scale)
    throw InvalidData("composition requires a shared denominator");
}

PsiComposition compose(Complex omega, const ComplexPoly& top_minus, const ComplexPoly& bottom_scale,
                       const ComplexPoly& n3, const ComplexPoly& den) {
  const ComplexPoly num = omega * n3 - top_minus;
  const ComplexPoly bot = omega * bottom_scale - den;
  if (bot.is_zero()) throw DegenerateOmega("composition denominator vanishes identically");
  RationalFn raw(num, bot);
  const int pre = raw.degree();
  return PsiComposition{reduce(raw), pre};
}

}  // namespace

PsiComposition psi_compose(Complex omega, const RationalFn& x1, const RationalFn& x2,
                           const RationalFn& x3) {
  require_shared_den(x1, x2, x3);
  return compose(omega, x1.num(), x2.num(), x3.num(), x1.den());
}

PsiComposition upsilon_compose(Complex omega, const RationalFn& x1, const RationalFn& x2,
                               const RationalFn& x3) {
  require_shared_den(x1, x2, x3);
  return compose(omega, x2.num(), x1.num(), x3.num(), x1.den());
}

PhasarValue phasar(const RationalFn& f, Complex z) {
  const Complex nv = f.num().eval(z);
  const Complex dv = f.den().eval(z);
  const Complex w = nv / dv;
  if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
    throw NotUnimodularAt("phasar: function value is not finite here");
  if (std::abs(w) < 1e-9) throw ZeroAt("phasar: function vanishes here");
  if (std::abs(std::abs(w) - 1.0) > kPhasarInnerTol)
    throw NotUnimodularAt("phasar: |f(z)| is not within 1e-6 of 1");
  const Complex g = z * (f.num().derivative().eval(z) / nv - f.den().derivative().eval(z) / dv);
  return PhasarValue{g.real(), std::abs(g.imag())};
}

}  // namespace tetrainterp
