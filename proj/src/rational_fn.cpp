#include "tetrainterp/rational_fn.hpp"

#include <algorithm>
#include <cmath>

#include "tetrainterp/errors.hpp"

namespace tetrainterp {

RationalFn::RationalFn(ComplexPoly num, ComplexPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw ZeroPolynomial("RationalFn: zero denominator");
  disc_regular_ = den_.degree() == 0 || roots_in_closed_disc(den_).empty();
}

int RationalFn::degree() const {
  return std::max({num_.degree(), den_.degree(), 0});
}

namespace {

// A zero and a pole that sit as mutual reflections across the unit circle
// belong to a thin but genuine Blaschke factor; cancelling them would lower
// the degree of an inner function.  True common roots agree to roughly the
// rounding level, far below this floor.
constexpr double kReflectionFloor = 1e-11;

bool straddles_circle(Complex zero, Complex pole) {
  const double sep = std::abs(zero - pole);
  if (sep <= kReflectionFloor || std::abs(pole) < 0.5) return false;
  const Complex reflected = Complex(1.0) / std::conj(pole);
  return std::abs(zero - reflected) < 0.25 * sep;
}

}  // namespace

RationalFn reduce(const RationalFn& f) {
  ComplexPoly num = f.num().trimmed();
  ComplexPoly den = f.den().trimmed();
  if (num.is_zero()) return f;
  if (num.degree() == 0 || den.degree() == 0) return RationalFn(num, den);

  std::vector<Complex> num_roots = poly_roots(num);
  std::vector<Complex> den_roots = poly_roots(den);
  std::vector<bool> used(num_roots.size(), false);
  std::vector<Complex> cancel_num, cancel_den;
  for (Complex dr : den_roots) {
    int best = -1;
    double best_dist = kClusterRadius;
    for (std::size_t i = 0; i < num_roots.size(); ++i) {
      if (used[i]) continue;
      const double dist = std::abs(num_roots[i] - dr);
      if (dist <= best_dist) {
        best_dist = dist;
        best = static_cast<int>(i);
      }
    }
    if (best >= 0 && !straddles_circle(num_roots[static_cast<std::size_t>(best)], dr)) {
      used[static_cast<std::size_t>(best)] = true;
      cancel_num.push_back(num_roots[static_cast<std::size_t>(best)]);
      cancel_den.push_back(dr);
    }
  }
  for (Complex r : cancel_num) num = num.deflate(r);
  for (Complex r : cancel_den) den = den.deflate(r);
  return RationalFn(num, den);
}

RationalFn operator*(const RationalFn& f, const RationalFn& g) {
  return RationalFn(f.num() * g.num(), f.den() * g.den());
}

}  // namespace tetrainterp
