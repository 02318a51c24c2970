#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "tetrainterp/blaschke.hpp"
#include "tetrainterp/errors.hpp"
#include "tetrainterp/royal.hpp"
#include "tetrainterp/tetra.hpp"

using namespace tetrainterp;
using testutil::kTestPi;

namespace {

RoyalData royal_interior(Complex eta, Complex eta_tilde) {
  RoyalData d;
  d.base.n = 1;
  d.base.k = 0;
  d.base.sigma = {Complex(0.0)};
  d.base.eta = {eta};
  d.eta_tilde = {eta_tilde};
  return d;
}

RoyalData royal_boundary(double rho) {
  RoyalData d;
  d.base.n = 1;
  d.base.k = 1;
  d.base.sigma = {Complex(1.0)};
  d.base.eta = {Complex(1.0)};
  d.base.rho = {rho};
  d.eta_tilde = {Complex(1.0)};
  return d;
}

// Degree-1 solution map for a single node at the origin with base point 1,
// written straight from the linear-fractional formulas.  Given the center
// constants (c1, c2, c3) and first target eta, each coordinate is a Moebius
// expression in lambda with the shared denominator below.
struct ClosedForm {
  Complex eta, c1, c2, c3;
  Complex den(Complex z) const {
    return -c1 * std::conj(eta) * (1.0 - z) + 1.0 - std::norm(eta) * z;
  }
  Complex x1(Complex z) const {
    return (c1 * (z - std::norm(eta)) + eta * (1.0 - z)) / den(z);
  }
  Complex x2(Complex z) const {
    return (-c3 * std::conj(eta) * (1.0 - z) + c2 * (1.0 - std::norm(eta) * z)) / den(z);
  }
  Complex x3(Complex z) const {
    return (c2 * eta * (1.0 - z) + c3 * (z - std::norm(eta))) / den(z);
  }
};

// The admissible center for targets (eta, eta_tilde) at omega, solved in
// closed form: c1 comes from the fixed-point equation, then c2 = w conj(c1).
ClosedForm closed_form_oracle(Complex eta, Complex eta_tilde, Complex omega) {
  const Complex xi = omega * std::conj(eta_tilde);
  const Complex c1 = ((xi + eta) - (std::conj(xi) + std::conj(eta)) * xi * eta) /
                     (1.0 - std::norm(eta_tilde * eta));
  return ClosedForm{eta, c1, omega * std::conj(c1), omega};
}

}  // namespace

TEST_CASE("royal data validation checks the second target list") {
  CHECK_NOTHROW(validate_data(royal_interior(Complex(0.5), Complex(0.5))));
  CHECK_NOTHROW(validate_data(royal_boundary(1.0)));

  auto bad = royal_interior(Complex(0.5), Complex(0.5));
  bad.eta_tilde.clear();
  CHECK_THROWS_AS(validate_data(bad), InvalidData);

  bad = royal_interior(Complex(0.5), Complex(1.0));  // interior node, unimodular target
  CHECK_THROWS_AS(validate_data(bad), InvalidData);

  auto badb = royal_boundary(1.0);
  badb.eta_tilde = {Complex(0.5)};  // circle node, interior target
  CHECK_THROWS_AS(validate_data(badb), InvalidData);

  bad = royal_interior(Complex(2.0), Complex(0.5));  // base data broken too
  CHECK_THROWS_AS(validate_data(bad), InvalidData);
}

TEST_CASE("solve_center finds the hand-computed center for the interior example") {
  auto data = royal_interior(Complex(0.5), Complex(0.5));
  PickSystem ps(data.base, Complex(1.0));
  auto par = build_parametrization(ps);
  auto center = solve_center(data, par);
  // Smallest accepted angle is theta = 0, where the center is (4/5, 4/5, 1).
  CHECK(center.omega_angle == 0.0);
  CHECK(std::abs(center.x1 - Complex(0.8)) < 1e-10);
  CHECK(std::abs(center.x2 - Complex(0.8)) < 1e-10);
  CHECK(std::abs(center.x3 - Complex(1.0)) < 1e-10);
  CHECK(center.residual < 1e-10);
}

TEST_CASE("solve_center on zero targets gives the zero center") {
  auto data = royal_interior(Complex(0.0), Complex(0.0));
  PickSystem ps(data.base, Complex(1.0));
  auto par = build_parametrization(ps);
  auto center = solve_center(data, par);
  CHECK(center.omega_angle == 0.0);
  CHECK(std::abs(center.x1) < 1e-12);
  CHECK(std::abs(center.x2) < 1e-12);
  CHECK(std::abs(center.x3 - Complex(1.0)) < 1e-12);
}

TEST_CASE("solve_center on the boundary example avoids the degenerate angle") {
  auto data = royal_boundary(1.0);
  PickSystem ps(data.base, Complex(-1.0));
  auto par = build_parametrization(ps);
  auto center = solve_center(data, par);
  // At omega = 1 the only consistent x2 value is unimodular, which the
  // interior margin rejects; the next grid angle already works.
  CHECK(center.omega_angle > 0.0);
  CHECK(center.omega_angle < 10.0 * 2.0 * kTestPi / kDefaultOmegaGrid);
  CHECK(center.residual <= 1e-8);
  CHECK(std::abs(center.x2) < 1.0);
  CHECK(std::abs(std::abs(center.x3) - 1.0) < 1e-12);
}

TEST_CASE("solve_center reports unsolvable overdetermined data") {
  // Two interior nodes put four real constraints on three real unknowns
  // (the angle plus one complex coefficient), so generic targets fail.
  RoyalData d;
  d.base.n = 2;
  d.base.k = 0;
  d.base.sigma = {Complex(0.0), Complex(0.5)};
  d.base.eta = {Complex(0.3), Complex(-0.2)};
  d.eta_tilde = {Complex(0.6), Complex(-0.5)};
  auto m = build_pick_matrix(d.base);
  REQUIRE(is_positive_definite(m).positive_definite);
  auto par = build_parametrization(d.base, choose_tau(d.base, m, 9));
  try {
    solve_center(d, par);
    FAIL("expected NotSolvable");
  } catch (const NotSolvable& e) {
    CHECK(std::string(e.what()).find("residual") != std::string::npos);
  }
}

TEST_CASE("enumerate_centers covers the whole circle for the interior example") {
  auto data = royal_interior(Complex(0.5), Complex(0.5));
  PickSystem ps(data.base, Complex(1.0));
  auto par = build_parametrization(ps);
  CenterSearchOptions opts;
  opts.n_omega = 256;
  auto intervals = enumerate_centers(data, par, opts);
  REQUIRE(intervals.size() == 1);
  CHECK(intervals[0].theta_begin == 0.0);
  CHECK(intervals[0].theta_end == doctest::Approx(2.0 * kTestPi * 255.0 / 256.0));
  CHECK(intervals[0].best.residual < 1e-10);
}

TEST_CASE("assemble hits the center at tau and the targets at the nodes") {
  auto data = royal_interior(Complex(0.5), Complex(0.5));
  PickSystem ps(data.base, Complex(1.0));
  auto par = build_parametrization(ps);
  auto center = solve_center(data, par);
  auto x = assemble(par, center);
  CHECK(x.degree == 1);

  CHECK(std::abs(x.x1.eval(par.tau) - center.x1) < 1e-10);
  CHECK(std::abs(x.x2.eval(par.tau) - center.x2) < 1e-10);
  CHECK(std::abs(x.x3.eval(par.tau) - center.x3) < 1e-10);

  Complex s = data.base.sigma[0];
  CHECK(std::abs(x.x1.eval(s) - Complex(0.5)) < 1e-8);
  CHECK(std::abs(x.x2.eval(s) - Complex(0.5)) < 1e-8);
  CHECK(std::abs(x.x3.eval(s) - Complex(0.25)) < 1e-8);
}

TEST_CASE("assembled interior example matches the closed-form coordinates") {
  auto data = royal_interior(Complex(0.5), Complex(0.5));
  PickSystem ps(data.base, Complex(1.0));
  auto par = build_parametrization(ps);
  auto center = solve_center(data, par);
  auto x = assemble(par, center);

  // Independent oracle evaluated at the same omega the search selected.
  auto oracle = closed_form_oracle(Complex(0.5), Complex(0.5), center.x3);
  CHECK(std::abs(oracle.c1 - center.x1) < 1e-10);

  std::mt19937_64 gen(41);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int s = 0; s < 200; ++s) {
    Complex z(u(gen), u(gen));
    if (std::abs(oracle.den(z)) < 1e-3) continue;
    CHECK(std::abs(x.x1.eval(z) - oracle.x1(z)) < 1e-10);
    CHECK(std::abs(x.x2.eval(z) - oracle.x2(z)) < 1e-10);
    CHECK(std::abs(x.x3.eval(z) - oracle.x3(z)) < 1e-10);
  }

  // Spot values of the reduced closed form: x1 = 2(z+1)/(z+4), x3 = (4z+1)/(z+4).
  CHECK(std::abs(x.x1.eval(Complex(1.0)) - Complex(0.8)) < 1e-10);
  CHECK(std::abs(x.x3.eval(Complex(-0.25))) < 1e-10);
}

TEST_CASE("assemble refuses centers whose denominator vanishes in the disc") {
  auto data = royal_interior(Complex(0.5), Complex(0.5));
  PickSystem ps(data.base, Complex(1.0));
  auto par = build_parametrization(ps);
  // An inadmissible center outside the disc drives a denominator root in:
  // here x1c = 2 makes the shared denominator proportional to lambda.
  CenterPoint bad;
  bad.x3 = Complex(1.0);
  bad.x2 = Complex(2.0);
  bad.x1 = std::conj(bad.x2) * bad.x3;
  CHECK_THROWS_AS(assemble(par, bad), DenominatorVanishes);
}

TEST_CASE("royal_polynomial of (0, 0, z) is z") {
  TetraInnerFn x;
  x.x1 = RationalFn(ComplexPoly{0.0}, ComplexPoly{1.0});
  x.x2 = RationalFn(ComplexPoly{0.0}, ComplexPoly{1.0});
  x.x3 = RationalFn(ComplexPoly{0.0, 1.0}, ComplexPoly{1.0});
  x.degree = degree_of(x);
  REQUIRE(x.degree == 1);
  auto r = royal_polynomial(x);
  CHECK(std::abs(r.coeff(0)) < 1e-15);
  CHECK(std::abs(r.coeff(1) - Complex(1.0)) < 1e-15);
  CHECK(std::abs(r.coeff(2)) < 1e-15);

  auto nodes = royal_nodes(x);
  REQUIRE(nodes.nodes.size() == 1);
  CHECK(std::abs(nodes.nodes[0].location) < 1e-12);
  CHECK(nodes.nodes[0].multiplicity == 1);
  CHECK_FALSE(nodes.nodes[0].on_circle);
  CHECK(nodes.type_n == 1);
  CHECK(nodes.type_k == 0);
}

TEST_CASE("maps inside the royal variety are flagged") {
  TetraInnerFn x;
  ComplexPoly den{1.0};
  x.x1 = RationalFn(ComplexPoly{0.0, 1.0}, den);
  x.x2 = RationalFn(ComplexPoly{0.0, 1.0}, den);
  x.x3 = RationalFn(ComplexPoly{0.0, 0.0, 1.0}, den);
  x.degree = degree_of(x);
  REQUIRE(x.degree == 2);
  CHECK(royal_polynomial(x).is_zero());
  CHECK_THROWS_AS(royal_nodes(x), RoyalVariety);
}

TEST_CASE("royal_polynomial rejects a third coordinate with the wrong numerator") {
  TetraInnerFn x;
  ComplexPoly den{2.0, 1.0};
  x.x1 = RationalFn(ComplexPoly{0.1}, den);
  x.x2 = RationalFn(ComplexPoly{0.2}, den);
  x.x3 = RationalFn(ComplexPoly{0.3, 0.9}, den);  // not a unimodular multiple of den~
  x.degree = 1;
  CHECK_THROWS_AS(royal_polynomial(x), RepresentationMismatch);

  // Mismatched denominators are rejected before any fitting.
  TetraInnerFn y = x;
  y.x2 = RationalFn(ComplexPoly{0.2}, ComplexPoly{3.0, 1.0});
  CHECK_THROWS_AS(royal_polynomial(y), RepresentationMismatch);
}

TEST_CASE("royal nodes of the assembled interior example sit at the node") {
  auto data = royal_interior(Complex(0.5), Complex(0.5));
  PickSystem ps(data.base, Complex(1.0));
  auto par = build_parametrization(ps);
  auto x = assemble(par, solve_center(data, par));
  auto nodes = royal_nodes(x);
  REQUIRE(nodes.nodes.size() == 1);
  CHECK(std::abs(nodes.nodes[0].location) < 1e-8);
  CHECK(std::abs(nodes.nodes[0].eta - Complex(0.5)) < 1e-8);
  CHECK(std::abs(nodes.nodes[0].eta_tilde - Complex(0.5)) < 1e-8);
  CHECK(nodes.nodes[0].multiplicity == 1);
  CHECK_FALSE(nodes.nodes[0].on_circle);
  CHECK(nodes.type_n == 1);
  CHECK(nodes.type_k == 0);
}

TEST_CASE("royal polynomial is 2n-symmetric and nodes match the data") {
  std::mt19937_64 gen(42);
  for (int trial = 0; trial < 6; ++trial) {
    int n = 1 + static_cast<int>(gen() % 3);
    int k = static_cast<int>(gen() % static_cast<std::uint64_t>(n + 1));
    auto fr = testutil::forward_royal(gen, n, k);
    auto r = royal_polynomial(fr.x);
    auto rt = r.tilde(2 * fr.x.degree);
    double scale = r.max_abs_coeff();
    for (std::size_t i = 0; i < r.size(); ++i) {
      CHECK(std::abs(r.coeff(i) - rt.coeff(i)) < 1e-8 * scale);
    }

    auto nodes = royal_nodes(fr.x);
    CHECK(nodes.type_n == n);
    CHECK(nodes.type_k == k);
    for (int j = 0; j < n; ++j) {
      Complex s = fr.data.base.sigma[std::size_t(j)];
      double best = 1e9;
      const RoyalNode* hit = nullptr;
      for (const auto& node : nodes.nodes) {
        if (std::abs(node.location - s) < best) {
          best = std::abs(node.location - s);
          hit = &node;
        }
      }
      REQUIRE(hit != nullptr);
      CHECK(best < 1e-6);
      CHECK(hit->on_circle == (j < k));
      CHECK(std::abs(hit->eta - fr.data.base.eta[std::size_t(j)]) < 1e-6);
      CHECK(std::abs(hit->eta_tilde - fr.data.eta_tilde[std::size_t(j)]) < 1e-6);
    }
  }
}

TEST_CASE("closed_form_degree1 agrees with the formula oracle and verifies") {
  struct Case {
    Complex eta, eta_tilde, omega;
  } cases[] = {
      {Complex(0.5), Complex(0.5), Complex(1.0)},
      {Complex(0.0, 0.3), Complex(-0.2), Complex(0.0, 1.0)},
      {Complex(-0.4, 0.2), Complex(0.1, 0.6), std::polar(1.0, 2.5)},
  };
  std::mt19937_64 gen(43);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const auto& c : cases) {
    auto x = closed_form_degree1(c.eta, c.eta_tilde, c.omega);
    CHECK(x.degree == 1);
    auto oracle = closed_form_oracle(c.eta, c.eta_tilde, c.omega);
    for (int s = 0; s < 100; ++s) {
      Complex z(u(gen), u(gen));
      if (std::abs(oracle.den(z)) < 1e-3) continue;
      CHECK(std::abs(x.x1.eval(z) - oracle.x1(z)) < 1e-10);
      CHECK(std::abs(x.x2.eval(z) - oracle.x2(z)) < 1e-10);
      CHECK(std::abs(x.x3.eval(z) - oracle.x3(z)) < 1e-10);
    }
    CHECK(std::abs(x.x1.eval(0.0) - c.eta) < 1e-12);
    CHECK(std::abs(x.x2.eval(0.0) - c.eta_tilde) < 1e-12);
    CHECK(std::abs(x.x3.eval(0.0) - c.eta * c.eta_tilde) < 1e-12);
  }

  auto x = closed_form_degree1(Complex(0.0, 0.3), Complex(-0.2), Complex(0.0, 1.0));
  auto data = royal_interior(Complex(0.0, 0.3), Complex(-0.2));
  auto rep = verify_tetra_inner(x, data);
  CHECK(rep.pass);
  CHECK(rep.degree == 1);

  CHECK_THROWS_AS(closed_form_degree1(Complex(1.0), Complex(0.2), Complex(1.0)), InvalidData);
  CHECK_THROWS_AS(closed_form_degree1(Complex(0.2), Complex(0.1), Complex(0.5)), InvalidData);
}

TEST_CASE("zeta_of_omega values, unimodularity, and pole") {
  CenterPoint zero;
  zero.x1 = 0.0;
  zero.x2 = 0.0;
  zero.x3 = 1.0;
  CHECK(std::abs(zeta_of_omega(zero, Complex(1.0)) - Complex(-1.0)) < 1e-15);

  CenterPoint ex;
  ex.x1 = 0.8;
  ex.x2 = 0.8;
  ex.x3 = 1.0;
  CHECK(std::abs(zeta_of_omega(ex, Complex(1.0)) - Complex(-1.0)) < 1e-12);

  std::mt19937_64 gen(44);
  CenterPoint c;
  c.x3 = testutil::random_on_circle(gen);
  c.x2 = testutil::random_in_disc(gen, 0.9);
  c.x1 = std::conj(c.x2) * c.x3;
  for (int s = 0; s < 256; ++s) {
    Complex w = std::polar(1.0, 2.0 * kTestPi * s / 256.0);
    CHECK(std::abs(std::abs(zeta_of_omega(c, w)) - 1.0) < 1e-12);
  }

  CenterPoint p;
  p.x2 = 0.5;
  p.x3 = 1.0;
  p.x1 = 0.5;
  CHECK_THROWS_AS(zeta_of_omega(p, Complex(2.0)), PolePoint);
}

TEST_CASE("slicing the solution map recovers the Blaschke family") {
  auto data = royal_interior(Complex(0.5), Complex(0.5));
  PickSystem ps(data.base, Complex(1.0));
  auto par = build_parametrization(ps);
  auto center = solve_center(data, par);
  auto x = assemble(par, center);
  for (double ang : {0.7, 1.9, 3.3, 5.1}) {
    Complex w = std::polar(1.0, ang);
    Complex zeta = zeta_of_omega(center, w);
    auto phi = blaschke_solution(par, zeta);
    auto comp = psi_compose(w, x.x1, x.x2, x.x3);
    for (Complex z : {Complex(0.2, 0.3), Complex(-0.6, 0.1), Complex(0.4, -0.5)}) {
      CHECK(std::abs(comp.fn.eval(z) - phi.eval(z)) < 1e-9);
    }
  }
}

TEST_CASE("circle-node angles cancel one degree in the psi composition") {
  std::mt19937_64 gen(45);
  auto fr = testutil::forward_royal(gen, 2, 1);
  Complex cancel = std::conj(fr.data.eta_tilde[0]);
  auto dropped = psi_compose(cancel, fr.x.x1, fr.x.x2, fr.x.x3);
  CHECK(dropped.pre_reduction_degree - dropped.fn.degree() == 1);

  for (int s = 0; s < 10; ++s) {
    Complex w = testutil::random_on_circle(gen);
    if (std::abs(w - cancel) < 1e-2) continue;
    if (std::abs(fr.center.x2 * w - Complex(1.0)) < 1e-2) continue;
    auto generic = psi_compose(w, fr.x.x1, fr.x.x2, fr.x.x3);
    CHECK(generic.pre_reduction_degree - generic.fn.degree() == 0);
  }
}

TEST_CASE("verify_tetra_inner passes the assembled example and flags tampering") {
  auto data = royal_interior(Complex(0.5), Complex(0.5));
  PickSystem ps(data.base, Complex(1.0));
  auto par = build_parametrization(ps);
  auto x = assemble(par, solve_center(data, par));
  auto rep = verify_tetra_inner(x, data);
  CHECK(rep.pass);
  CHECK(rep.interpolation.pass);
  CHECK(rep.boundary_unimodular.pass);
  CHECK(rep.boundary_pairing.pass);
  CHECK(rep.membership_pass);
  CHECK(rep.royal_match.pass);
  CHECK(rep.type_ok);
  CHECK(rep.degree == 1);
  CHECK(rep.degree_pass);
  CHECK(rep.psi_consistency_pass);
  CHECK(rep.phasar_transfer_psi.pass);
  CHECK(rep.phasar_transfer_upsilon.pass);
  CHECK(rep.psi_omega_angles.size() == 8);

  // Shrinking x3 ruins unimodularity on the circle.
  TetraInnerFn bad = x;
  bad.x3 = RationalFn(Complex(0.9) * x.x3.num(), x.x3.den());
  auto brep = verify_tetra_inner(bad, data);
  CHECK_FALSE(brep.pass);
  CHECK_FALSE(brep.boundary_unimodular.pass);

  // Wrong data: the map no longer interpolates.
  auto other = royal_interior(Complex(0.4), Complex(0.5));
  auto wrep = verify_tetra_inner(x, other);
  CHECK_FALSE(wrep.pass);
  CHECK_FALSE(wrep.interpolation.pass);
}

TEST_CASE("verify_tetra_inner accepts forward-generated instances") {
  std::mt19937_64 gen(46);
  for (int trial = 0; trial < 4; ++trial) {
    int n = 1 + static_cast<int>(gen() % 3);
    int k = static_cast<int>(gen() % static_cast<std::uint64_t>(n + 1));
    auto fr = testutil::forward_royal(gen, n, k);
    TetraVerifyOptions opts;
    opts.seed = gen();
    auto rep = verify_tetra_inner(fr.x, fr.data, opts);
    CHECK(rep.pass);
    CHECK(rep.degree == n);
    CHECK(rep.type_ok);
  }
}

TEST_CASE("degree_of reads the reduced third coordinate") {
  TetraInnerFn x;
  // Common factor between numerator and denominator hides one degree.
  ComplexPoly shared = ComplexPoly::from_roots({Complex(0.3)});
  ComplexPoly den = shared * ComplexPoly{4.0, 1.0};
  x.x1 = RationalFn(shared * ComplexPoly{0.5}, den);
  x.x2 = RationalFn(shared * ComplexPoly{0.5}, den);
  x.x3 = RationalFn(shared * ComplexPoly{1.0, 4.0}, den);
  CHECK(degree_of(x) == 1);
}
