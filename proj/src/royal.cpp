#include "tetrainterp/royal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "tetrainterp/errors.hpp"

namespace tetrainterp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double wrap_angle(double theta) {
  theta = std::fmod(theta, 2.0 * kPi);
  if (theta < 0.0) theta += 2.0 * kPi;
  return theta;
}

// Everything the per-omega solve needs, evaluated once per instance.
struct NodeCache {
  std::vector<Complex> c, d, target;
  int n = 0;
};

NodeCache make_cache(const RoyalData& data, const Parametrization& par) {
  NodeCache nc;
  nc.n = data.base.n;
  for (int j = 0; j < nc.n; ++j) {
    const Complex s = data.base.sigma[std::size_t(j)];
    nc.c.push_back(par.c.eval(s));
    nc.d.push_back(par.d.eval(s));
    nc.target.push_back(data.eta_tilde[std::size_t(j)]);
  }
  return nc;
}

struct Candidate {
  Complex x2{};
  double residual = kInf;
  bool degenerate = false;
};

// Solve x2c d_j - conj(x2c) t_j w c_j = t_j d_j - w c_j in least squares over
// x2c = u + iv, then score with the true per-node deviation.
Candidate candidate_at(const NodeCache& nc, double theta) {
  const Complex omega = std::polar(1.0, theta);
  Eigen::MatrixXd lhs(2 * nc.n, 2);
  Eigen::VectorXd rhs(2 * nc.n);
  for (int j = 0; j < nc.n; ++j) {
    const Complex a = nc.d[std::size_t(j)];
    const Complex b = -nc.target[std::size_t(j)] * omega * nc.c[std::size_t(j)];
    const Complex r = nc.target[std::size_t(j)] * nc.d[std::size_t(j)] - omega * nc.c[std::size_t(j)];
    lhs(2 * j, 0) = (a + b).real();
    lhs(2 * j, 1) = -(a - b).imag();
    lhs(2 * j + 1, 0) = (a + b).imag();
    lhs(2 * j + 1, 1) = (a - b).real();
    rhs(2 * j) = r.real();
    rhs(2 * j + 1) = r.imag();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(lhs, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(1e-13);
  const Eigen::Vector2d uv = svd.solve(rhs);

  Candidate cand;
  cand.x2 = Complex(uv(0), uv(1));
  const Complex x1 = std::conj(cand.x2) * omega;
  double resid = 0.0;
  for (int j = 0; j < nc.n; ++j) {
    const Complex den = x1 * nc.c[std::size_t(j)] + nc.d[std::size_t(j)];
    if (std::abs(den) < kNodeDenGuard) {
      cand.degenerate = true;
      cand.residual = kInf;
      return cand;
    }
    const Complex val = (omega * nc.c[std::size_t(j)] + cand.x2 * nc.d[std::size_t(j)]) / den;
    resid = std::max(resid, std::abs(val - nc.target[std::size_t(j)]));
  }
  cand.residual = resid;
  return cand;
}

bool accepted(const Candidate& cand, const CenterSearchOptions& opts) {
  return !cand.degenerate && cand.residual <= opts.residual_tol &&
         std::abs(cand.x2) <= 1.0 - opts.interior_margin;
}

CenterPoint make_center(double theta, const Candidate& cand) {
  CenterPoint cp;
  cp.omega_angle = wrap_angle(theta);
  cp.x3 = std::polar(1.0, cp.omega_angle);
  cp.x2 = cand.x2;
  cp.x1 = std::conj(cand.x2) * cp.x3;
  cp.residual = cand.residual;
  return cp;
}

void check_par(const RoyalData& data, const Parametrization& par) {
  if (par.n != data.base.n) throw InvalidData("parametrization does not match the data size");
}

// Shared-denominator guard plus the unimodular factor that aligns the x3
// numerator with tilde(den, n).
struct RoyalParts {
  ComplexPoly e1, e2, den, den_tilde;
  Complex gamma;
  int n = 0;
};

RoyalParts royal_parts(const TetraInnerFn& x) {
  const double den_scale = std::max(
      {x.x1.den().max_abs_coeff(), x.x2.den().max_abs_coeff(), x.x3.den().max_abs_coeff(), 1e-300});
  if ((x.x1.den() - x.x2.den()).max_abs_coeff() > 1e-12 * den_scale ||
      (x.x1.den() - x.x3.den()).max_abs_coeff() > 1e-12 * den_scale)
    throw RepresentationMismatch("components do not share a denominator");

  RoyalParts parts;
  parts.n = x.degree;
  parts.den = x.x1.den();
  parts.den_tilde = parts.den.tilde(parts.n);
  parts.e1 = x.x1.num();
  parts.e2 = x.x2.num();

  const ComplexPoly& n3 = x.x3.num();
  Complex dot = 0.0;
  double norm2 = 0.0;
  for (std::size_t i = 0; i <= std::size_t(parts.n); ++i) {
    dot += n3.coeff(i) * std::conj(parts.den_tilde.coeff(i));
    norm2 += std::norm(parts.den_tilde.coeff(i));
  }
  if (norm2 <= 0.0) throw RepresentationMismatch("denominator reflection vanished");
  Complex gamma = dot / norm2;
  const double scale = std::max(n3.max_abs_coeff(), parts.den_tilde.max_abs_coeff());
  const double fit_dev = (n3 - gamma * parts.den_tilde).max_abs_coeff();
  if (fit_dev > kRepresentationTol * scale)
    throw RepresentationMismatch("x3 numerator is not a unimodular multiple of tilde(den, n)");
  if (std::abs(std::abs(gamma) - 1.0) > 1e-6)
    throw RepresentationMismatch("x3 numerator factor is not unimodular");
  parts.gamma = gamma / std::abs(gamma);
  return parts;
}

}  // namespace

void validate_data(const RoyalData& data) {
  validate_data(data.base);
  if (data.eta_tilde.size() != std::size_t(data.base.n))
    throw InvalidData("eta_tilde must have n entries");
  for (int j = 0; j < data.base.n; ++j) {
    const double mod = std::abs(data.eta_tilde[std::size_t(j)]);
    if (j < data.base.k) {
      if (std::abs(mod - 1.0) > kCircleClassTol) throw InvalidData("eta_tilde must be unimodular at circle nodes");
    } else if (mod >= 1.0 - kCircleClassTol) {
      throw InvalidData("eta_tilde must lie in the open disc at interior nodes");
    }
  }
}

CenterPoint solve_center(const RoyalData& data, const Parametrization& par,
                         const CenterSearchOptions& opts) {
  validate_data(data);
  check_par(data, par);
  if (opts.n_omega < 64) throw InvalidData("omega grid must have at least 64 points");
  const NodeCache nc = make_cache(data, par);

  bool any_usable = false;
  double best_resid = kInf;
  double best_theta = 0.0;
  Candidate best_cand;
  for (int i = 0; i < opts.n_omega; ++i) {
    const double theta = 2.0 * kPi * double(i) / double(opts.n_omega);
    const Candidate cand = candidate_at(nc, theta);
    if (cand.degenerate) continue;
    any_usable = true;
    // Accepted grid candidates are ties up to solver noise; take the first,
    // which is the smallest angle.
    if (accepted(cand, opts)) return make_center(theta, cand);
    if (cand.residual < best_resid) {
      best_resid = cand.residual;
      best_theta = theta;
      best_cand = cand;
    }
  }
  if (!any_usable)
    throw ExceptionalGeometry("every omega candidate hit a vanishing node denominator");

  // Golden-section pass around the best grid angle.
  const double h = kPi / double(opts.n_omega);
  double lo = best_theta - h, hi = best_theta + h;
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double m1 = hi - invphi * (hi - lo);
  double m2 = lo + invphi * (hi - lo);
  Candidate c1 = candidate_at(nc, m1);
  Candidate c2 = candidate_at(nc, m2);
  double refined_theta = best_theta;
  Candidate refined = best_cand;
  auto consider = [&](double theta, const Candidate& cand) {
    if (!cand.degenerate && cand.residual < refined.residual) {
      refined = cand;
      refined_theta = theta;
    }
  };
  consider(m1, c1);
  consider(m2, c2);
  while (hi - lo > kGoldenThetaTol) {
    if (c1.residual <= c2.residual) {
      hi = m2;
      m2 = m1;
      c2 = c1;
      m1 = hi - invphi * (hi - lo);
      c1 = candidate_at(nc, m1);
      consider(m1, c1);
    } else {
      lo = m1;
      m1 = m2;
      c1 = c2;
      m2 = lo + invphi * (hi - lo);
      c2 = candidate_at(nc, m2);
      consider(m2, c2);
    }
  }
  if (accepted(refined, opts)) return make_center(refined_theta, refined);

  std::ostringstream msg;
  msg << "no admissible center at this omega resolution (" << opts.n_omega
      << " grid angles plus refinement); best residual " << refined.residual;
  throw NotSolvable(msg.str());
}

std::vector<OmegaInterval> enumerate_centers(const RoyalData& data, const Parametrization& par,
                                             const CenterSearchOptions& opts) {
  validate_data(data);
  check_par(data, par);
  const NodeCache nc = make_cache(data, par);
  const int n = opts.n_omega;
  std::vector<Candidate> cands(static_cast<std::size_t>(n));
  std::vector<bool> ok(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double theta = 2.0 * kPi * double(i) / double(n);
    cands[std::size_t(i)] = candidate_at(nc, theta);
    ok[std::size_t(i)] = accepted(cands[std::size_t(i)], opts);
  }
  const auto theta_of = [n](int i) { return 2.0 * kPi * double(i) / double(n); };

  std::vector<OmegaInterval> intervals;
  int i = 0;
  const bool all = std::all_of(ok.begin(), ok.end(), [](bool b) { return b; });
  while (i < n) {
    if (!ok[std::size_t(i)]) {
      ++i;
      continue;
    }
    int j = i;
    while (j + 1 < n && ok[std::size_t(j + 1)]) ++j;
    OmegaInterval iv;
    iv.theta_begin = theta_of(i);
    iv.theta_end = theta_of(j);
    int best = i;
    for (int t = i; t <= j; ++t)
      if (cands[std::size_t(t)].residual < cands[std::size_t(best)].residual) best = t;
    iv.best = make_center(theta_of(best), cands[std::size_t(best)]);
    intervals.push_back(iv);
    i = j + 1;
  }
  // Merge a run that wraps through 0 unless the whole grid was accepted.
  if (!all && intervals.size() >= 2 && ok[0] && ok[std::size_t(n - 1)]) {
    OmegaInterval tail = intervals.back();
    intervals.pop_back();
    OmegaInterval& head = intervals.front();
    head.theta_begin = tail.theta_begin;
    head.theta_end += 2.0 * kPi;
    if (tail.best.residual < head.best.residual) head.best = tail.best;
  }
  return intervals;
}

TetraInnerFn assemble(const Parametrization& par, const CenterPoint& center) {
  const ComplexPoly den = center.x1 * par.c + par.d;
  if (den.is_zero() || !roots_in_closed_disc(den).empty())
    throw DenominatorVanishes("assembled denominator has a zero in the closed disc");
  const ComplexPoly n1 = center.x1 * par.a + par.b;
  const ComplexPoly n2 = center.x3 * par.c + center.x2 * par.d;
  const ComplexPoly n3 = center.x2 * par.b + center.x3 * par.a;
  TetraInnerFn x{RationalFn(n1, den), RationalFn(n2, den), RationalFn(n3, den), center, par, 0};
  x.degree = degree_of(x);
  return x;
}

ComplexPoly royal_polynomial(const TetraInnerFn& x) {
  const RoyalParts parts = royal_parts(x);
  ComplexPoly r = parts.den * parts.den_tilde - (std::conj(parts.gamma) * (parts.e1 * parts.e2));
  std::vector<Complex> c = r.coeffs();
  c.resize(2 * std::size_t(parts.n) + 1, 0.0);
  return ComplexPoly(std::move(c));
}

namespace {

// Circle zeros of the royal polynomial have even order, and the eigensolver
// splits each double zero into a pair straddling the circle by roughly the
// square root of the coefficient noise.  Roots inside this band are treated
// as circle candidates and merged by angle; the reflected partner of every
// interior node lies well outside the band.  Interior nodes closer to the
// circle than the band width cannot be told apart from a split circle zero
// in double precision.
constexpr double kNodeCircleBand = 1e-3;

}  // namespace

RoyalNodeSet royal_nodes(const TetraInnerFn& x) {
  const RoyalParts parts = royal_parts(x);
  const ComplexPoly lead = parts.den * parts.den_tilde;
  const ComplexPoly cross = parts.e1 * parts.e2;
  const ComplexPoly r = lead - (std::conj(parts.gamma) * cross);
  const double scale = std::max(lead.max_abs_coeff(), cross.max_abs_coeff());
  if (r.max_abs_coeff() <= 1e-10 * scale)
    throw RoyalVariety("royal polynomial vanishes identically");

  std::vector<Complex> circle_candidates;
  std::vector<Complex> interior;
  for (Complex z : poly_roots(r)) {
    const double mod = std::abs(z);
    if (std::abs(mod - 1.0) < kNodeCircleBand)
      circle_candidates.push_back(z / mod);
    else if (mod < 1.0)
      interior.push_back(z);
    // Every other root is the reflection of an interior node.
  }

  RoyalNodeSet set;
  for (const RootCluster& cl : cluster_roots(std::move(circle_candidates), 16.0 * kNodeCircleBand)) {
    if (cl.multiplicity % 2 != 0)
      throw NumericalDegeneracy("circle zero of the royal polynomial has odd order");
    RoyalNode node;
    node.location = cl.location / std::abs(cl.location);
    node.on_circle = true;
    node.multiplicity = cl.multiplicity / 2;
    node.eta = x.x1.eval(node.location);
    node.eta_tilde = x.x2.eval(node.location);
    set.type_k += node.multiplicity;
    set.type_n += node.multiplicity;
    set.nodes.push_back(node);
  }
  for (const RootCluster& cl : cluster_roots(std::move(interior))) {
    RoyalNode node;
    node.location = cl.location;
    node.on_circle = false;
    node.multiplicity = cl.multiplicity;
    node.eta = x.x1.eval(node.location);
    node.eta_tilde = x.x2.eval(node.location);
    set.type_n += node.multiplicity;
    set.nodes.push_back(node);
  }
  return set;
}

int degree_of(const TetraInnerFn& x) { return reduce(x.x3).degree(); }

TetraInnerFn closed_form_degree1(Complex eta, Complex eta_tilde, Complex omega) {
  if (std::abs(eta) >= 1.0 - kCircleClassTol || std::abs(eta_tilde) >= 1.0 - kCircleClassTol)
    throw InvalidData("closed form needs interior target values");
  if (std::abs(std::abs(omega) - 1.0) > 1e-9) throw InvalidData("omega must be unimodular");

  const double d0 = 1.0 - std::norm(eta);
  Parametrization par;
  par.a = ComplexPoly{-std::norm(eta) / d0, 1.0 / d0};
  par.b = ComplexPoly{eta / d0, -eta / d0};
  par.c = ComplexPoly{-std::conj(eta) / d0, std::conj(eta) / d0};
  par.d = ComplexPoly{1.0 / d0, -std::norm(eta) / d0};
  par.tau = 1.0;
  par.n = 1;

  const Complex xi = omega * std::conj(eta_tilde);
  const Complex x1c =
      ((xi + eta) - (std::conj(xi) + std::conj(eta)) * xi * eta) / (1.0 - std::norm(eta_tilde * eta));

  CenterPoint center;
  center.x1 = x1c;
  center.x2 = omega * std::conj(x1c);
  center.x3 = omega;
  center.omega_angle = wrap_angle(std::arg(omega));
  TetraInnerFn x = assemble(par, center);
  x.center.residual = std::abs(x.x2.eval(0.0) - eta_tilde);
  return x;
}

Complex zeta_of_omega(const CenterPoint& center, Complex omega) {
  const Complex den = center.x2 * omega - 1.0;
  if (std::abs(den) <= kPoleGuard) throw PolePoint("zeta_of_omega: pole at this omega");
  return (omega * center.x3 - center.x1) / den;
}

TetraReport verify_tetra_inner(const TetraInnerFn& x, const RoyalData& data,
                               const TetraVerifyOptions& opts) {
  validate_data(data);
  const int n = data.base.n;
  const int k = data.base.k;
  TetraReport rep;

  for (int j = 0; j < n; ++j) {
    const Complex s = data.base.sigma[std::size_t(j)];
    const Complex e = data.base.eta[std::size_t(j)];
    const Complex et = data.eta_tilde[std::size_t(j)];
    const double dev = std::max({std::abs(x.x1.eval(s) - e), std::abs(x.x2.eval(s) - et),
                                 std::abs(x.x3.eval(s) - e * et)});
    rep.interpolation.deviation = std::max(rep.interpolation.deviation, dev);
  }
  rep.interpolation.pass = rep.interpolation.deviation <= opts.interp_tol;

  for (int j = 0; j < k; ++j) {
    double dev = kInf;
    try {
      dev = std::abs(phasar(x.x1, data.base.sigma[std::size_t(j)]).value - data.base.rho[std::size_t(j)]);
    } catch (const Error&) {
    }
    rep.phasar.deviation = std::max(rep.phasar.deviation, dev);
  }
  rep.phasar.pass = rep.phasar.deviation <= opts.phasar_tol;

  for (int t = 0; t < opts.circle_grid; ++t) {
    const Complex z = std::polar(1.0, 2.0 * kPi * double(t) / double(opts.circle_grid));
    const Complex v1 = x.x1.eval(z), v2 = x.x2.eval(z), v3 = x.x3.eval(z);
    rep.boundary_unimodular.deviation =
        std::max(rep.boundary_unimodular.deviation, std::abs(std::abs(v3) - 1.0));
    rep.boundary_pairing.deviation =
        std::max(rep.boundary_pairing.deviation, std::abs(v1 - std::conj(v2) * v3));
  }
  rep.boundary_unimodular.pass = rep.boundary_unimodular.deviation <= opts.boundary_tol;
  rep.boundary_pairing.pass = rep.boundary_pairing.deviation <= opts.boundary_tol;

  rep.membership_min_slack = kInf;
  rep.membership_pass = true;
  for (int i = 0; i < opts.disc_grid; ++i) {
    const double r = (double(i) + 0.5) / double(opts.disc_grid);
    for (int t = 0; t < opts.disc_grid; ++t) {
      const Complex z = std::polar(r, 2.0 * kPi * double(t) / double(opts.disc_grid));
      const TetraPoint p{x.x1.eval(z), x.x2.eval(z), x.x3.eval(z)};
      const MembershipResult m = in_tetrablock_closure(p);
      rep.membership_min_slack = std::min(rep.membership_min_slack, m.slack);
      rep.membership_pass = rep.membership_pass && m.slack >= -opts.membership_tol &&
                            std::abs(p.x2) <= 1.0 + opts.membership_tol;
    }
  }

  rep.royal_match.deviation = kInf;
  rep.type_ok = false;
  try {
    const RoyalNodeSet nodes = royal_nodes(x);
    double worst = 0.0;
    bool flags_ok = true;
    for (int j = 0; j < n; ++j) {
      const Complex s = data.base.sigma[std::size_t(j)];
      double best = kInf;
      bool circle_flag = false;
      for (const RoyalNode& node : nodes.nodes) {
        const double dist = std::abs(node.location - s);
        if (dist < best) {
          best = dist;
          circle_flag = node.on_circle;
        }
      }
      worst = std::max(worst, best);
      flags_ok = flags_ok && (circle_flag == (j < k));
    }
    rep.royal_match.deviation = worst;
    rep.type_ok = nodes.type_n == n && nodes.type_k == k;
    rep.royal_match.pass = worst <= opts.royal_match_tol && flags_ok;
  } catch (const Error&) {
    rep.royal_match.pass = false;
  }

  rep.degree = degree_of(x);
  rep.degree_pass = rep.degree == n;

  std::mt19937_64 gen(opts.seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  auto draw_omega = [&](const std::vector<Complex>& avoid) {
    for (int tries = 0; tries < 256; ++tries) {
      const Complex w = std::polar(1.0, angle(gen));
      bool ok = std::abs(x.center.x2 * w - 1.0) > 1e-3;
      for (Complex bad : avoid) ok = ok && std::abs(w - bad) > 1e-3;
      if (ok) return w;
    }
    return Complex(1.0);
  };
  std::vector<Complex> cancel_angles;
  for (int j = 0; j < k; ++j) cancel_angles.push_back(std::conj(data.eta_tilde[std::size_t(j)]));

  rep.psi_consistency_pass = true;
  for (int s = 0; s < opts.psi_samples; ++s) {
    const Complex w = draw_omega(cancel_angles);
    rep.psi_omega_angles.push_back(wrap_angle(std::arg(w)));
    try {
      const PsiComposition comp = psi_compose(w, x.x1, x.x2, x.x3);
      const BlaschkeReport br = verify_blaschke_solution(comp.fn, data.base, opts.blaschke);
      rep.psi_consistency_pass = rep.psi_consistency_pass && br.pass && br.degree == n;
    } catch (const Error&) {
      rep.psi_consistency_pass = false;
    }
  }

  for (int j = 0; j < k; ++j) {
    const Complex s = data.base.sigma[std::size_t(j)];
    for (int t = 0; t < 3; ++t) {
      double dev_psi = kInf, dev_ups = kInf;
      try {
        const Complex w = draw_omega({std::conj(data.eta_tilde[std::size_t(j)])});
        const PsiComposition comp = psi_compose(w, x.x1, x.x2, x.x3);
        dev_psi = std::abs(phasar(comp.fn, s).value - phasar(x.x1, s).value);
      } catch (const Error&) {
      }
      try {
        const Complex w = draw_omega({std::conj(data.base.eta[std::size_t(j)])});
        const PsiComposition comp = upsilon_compose(w, x.x1, x.x2, x.x3);
        dev_ups = std::abs(phasar(comp.fn, s).value - phasar(x.x2, s).value);
      } catch (const Error&) {
      }
      rep.phasar_transfer_psi.deviation = std::max(rep.phasar_transfer_psi.deviation, dev_psi);
      rep.phasar_transfer_upsilon.deviation = std::max(rep.phasar_transfer_upsilon.deviation, dev_ups);
    }
  }
  rep.phasar_transfer_psi.pass = rep.phasar_transfer_psi.deviation <= opts.phasar_transfer_tol;
  rep.phasar_transfer_upsilon.pass = rep.phasar_transfer_upsilon.deviation <= opts.phasar_transfer_tol;

  rep.pass = rep.interpolation.pass && rep.phasar.pass && rep.boundary_unimodular.pass &&
             rep.boundary_pairing.pass && rep.membership_pass && rep.royal_match.pass &&
             rep.type_ok && rep.degree_pass && rep.psi_consistency_pass &&
             rep.phasar_transfer_psi.pass && rep.phasar_transfer_upsilon.pass;
  return rep;
}

}  // namespace tetrainterp
