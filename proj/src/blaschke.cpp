#include "tetrainterp/blaschke.hpp"

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

double arc_distance(Complex a, Complex b) { return std::abs(std::arg(a * std::conj(b))); }

struct CholeskyOutcome {
  bool ok = false;
  double smallest_pivot = 0.0;
  Eigen::MatrixXcd lower;
};

// Plain Cholesky that rejects any pivot at or below 1e-10 * trace(M) / n.
CholeskyOutcome cholesky_with_threshold(const Eigen::MatrixXcd& m) {
  const Eigen::Index n = m.rows();
  const double threshold = 1e-10 * m.trace().real() / double(n);
  CholeskyOutcome out;
  out.lower = Eigen::MatrixXcd::Zero(n, n);
  out.smallest_pivot = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < n; ++j) {
    Complex diag = m(j, j);
    for (Eigen::Index p = 0; p < j; ++p) diag -= out.lower(j, p) * std::conj(out.lower(j, p));
    const double pivot = diag.real();
    out.smallest_pivot = std::min(out.smallest_pivot, pivot);
    if (pivot <= threshold) return out;
    out.lower(j, j) = std::sqrt(pivot);
    for (Eigen::Index i = j + 1; i < n; ++i) {
      Complex v = m(i, j);
      for (Eigen::Index p = 0; p < j; ++p) v -= out.lower(i, p) * std::conj(out.lower(j, p));
      out.lower(i, j) = v / out.lower(j, j);
    }
  }
  out.ok = true;
  return out;
}

void require_hermitian(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) throw NotHermitian("matrix is not square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (dev > 1e-12 * scale) throw NotHermitian("matrix deviates from its adjoint");
}

Eigen::VectorXcd x_tau_vector(const BlaschkeData& data, Complex tau) {
  Eigen::VectorXcd v(data.n);
  for (int j = 0; j < data.n; ++j) v(j) = 1.0 / (1.0 - std::conj(data.sigma[std::size_t(j)]) * tau);
  return v;
}

Eigen::VectorXcd y_tau_vector(const BlaschkeData& data, Complex tau) {
  Eigen::VectorXcd v(data.n);
  for (int j = 0; j < data.n; ++j)
    v(j) = std::conj(data.eta[std::size_t(j)]) / (1.0 - std::conj(data.sigma[std::size_t(j)]) * tau);
  return v;
}

// Guarded boundary argument derivative used by the verifier; the public
// phasar operation with its error contract lives with the tetrablock code.
double arg_derivative_or_inf(const RationalFn& f, Complex z) {
  const Complex nv = f.num().eval(z);
  const Complex dv = f.den().eval(z);
  if (!std::isfinite(std::abs(nv)) || !std::isfinite(std::abs(dv))) return std::numeric_limits<double>::infinity();
  if (std::abs(dv) < 1e-14 || std::abs(nv) < 1e-14) return std::numeric_limits<double>::infinity();
  const Complex w = nv / dv;
  if (std::abs(std::abs(w) - 1.0) > 1e-6) return std::numeric_limits<double>::infinity();
  const Complex g = z * (f.num().derivative().eval(z) / nv - f.den().derivative().eval(z) / dv);
  return g.real();
}

}  // namespace

void validate_data(const BlaschkeData& data) {
  std::ostringstream why;
  if (data.n < 1) throw InvalidData("n must be at least 1");
  if (data.k < 0 || data.k > data.n) throw InvalidData("k must satisfy 0 <= k <= n");
  if (data.sigma.size() != std::size_t(data.n)) throw InvalidData("sigma must have n entries");
  if (data.eta.size() != std::size_t(data.n)) throw InvalidData("eta must have n entries");
  if (data.rho.size() != std::size_t(data.k)) throw InvalidData("rho must have k entries");
  for (int i = 0; i < data.n; ++i)
    for (int j = i + 1; j < data.n; ++j)
      if (std::abs(data.sigma[std::size_t(i)] - data.sigma[std::size_t(j)]) <= kNodeSeparationMin) {
        why << "nodes " << i << " and " << j << " are not distinct";
        throw InvalidData(why.str());
      }
  for (int j = 0; j < data.n; ++j) {
    const double smod = std::abs(data.sigma[std::size_t(j)]);
    const double emod = std::abs(data.eta[std::size_t(j)]);
    if (j < data.k) {
      if (std::abs(smod - 1.0) > kCircleClassTol) {
        why << "sigma_" << j << " must lie on the circle";
        throw InvalidData(why.str());
      }
      if (std::abs(emod - 1.0) > kCircleClassTol) {
        why << "eta_" << j << " must be unimodular";
        throw InvalidData(why.str());
      }
    } else {
      if (smod >= 1.0 - kCircleClassTol) {
        why << "sigma_" << j << " must lie in the open disc";
        throw InvalidData(why.str());
      }
      if (emod >= 1.0 - kCircleClassTol) {
        why << "eta_" << j << " must lie in the open disc";
        throw InvalidData(why.str());
      }
    }
  }
  for (int j = 0; j < data.k; ++j)
    if (!(data.rho[std::size_t(j)] > 0.0)) {
      why << "rho_" << j << " must be positive";
      throw InvalidData(why.str());
    }
}

Eigen::MatrixXcd build_pick_matrix(const BlaschkeData& data) {
  validate_data(data);
  const int n = data.n;
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Complex v;
      if (i == j) {
        if (i < data.k) {
          v = data.rho[std::size_t(i)];
        } else {
          const Complex num = 1.0 - std::conj(data.eta[std::size_t(i)]) * data.eta[std::size_t(j)];
          const Complex den = 1.0 - std::conj(data.sigma[std::size_t(i)]) * data.sigma[std::size_t(j)];
          v = (num / den).real();  // real by construction
        }
        m(i, j) = v;
      } else {
        const Complex num = 1.0 - std::conj(data.eta[std::size_t(i)]) * data.eta[std::size_t(j)];
        const Complex den = 1.0 - std::conj(data.sigma[std::size_t(i)]) * data.sigma[std::size_t(j)];
        v = num / den;
        m(i, j) = v;
        m(j, i) = std::conj(v);
      }
    }
  }
  return m;
}

PdReport is_positive_definite(const Eigen::MatrixXcd& m) {
  require_hermitian(m);
  const Eigen::Index n = m.rows();
  const double threshold = 1e-10 * m.trace().real() / double(n);
  const CholeskyOutcome chol = cholesky_with_threshold(m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(m, Eigen::EigenvaluesOnly);
  int rank = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    if (std::abs(eig.eigenvalues()(i)) > threshold) ++rank;
  return PdReport{chol.ok, rank, chol.smallest_pivot};
}

Complex choose_tau(const BlaschkeData& data, const Eigen::MatrixXcd& m, std::uint64_t seed) {
  validate_data(data);
  require_hermitian(m);
  const CholeskyOutcome chol = cholesky_with_threshold(m);
  if (!chol.ok) throw NotPositiveDefinite("choose_tau: Pick matrix is not positive definite");
  Eigen::LLT<Eigen::MatrixXcd> llt(m);

  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  for (int attempt = 0; attempt < kTauAttempts; ++attempt) {
    const Complex tau = std::polar(1.0, angle(gen));
    bool near_node = false;
    for (int j = 0; j < data.k; ++j)
      if (arc_distance(tau, data.sigma[std::size_t(j)]) <= kTauArcMargin) near_node = true;
    if (near_node) continue;
    const Eigen::VectorXcd vx = llt.solve(x_tau_vector(data, tau));
    const Eigen::VectorXcd vy = llt.solve(y_tau_vector(data, tau));
    bool degenerate = false;
    for (int j = 0; j < data.k; ++j)
      if (std::abs(vx(j)) < kTauDegeneratePair && std::abs(vy(j)) < kTauDegeneratePair) degenerate = true;
    if (degenerate) continue;
    return tau;
  }
  throw TauSearchExhausted("choose_tau: no admissible base point in 256 attempts");
}

PickSystem::PickSystem(BlaschkeData data, Complex tau) : data_(std::move(data)), tau_(tau) {
  validate_data(data_);
  if (std::abs(std::abs(tau_) - 1.0) > 1e-9) throw InvalidData("base point must be unimodular");
  for (int j = 0; j < data_.k; ++j)
    if (arc_distance(tau_, data_.sigma[std::size_t(j)]) <= kTauArcMargin)
      throw InvalidData("base point is too close to a circle node");
  m_ = build_pick_matrix(data_);
  const CholeskyOutcome chol = cholesky_with_threshold(m_);
  if (!chol.ok) {
    std::ostringstream msg;
    msg << "Pick matrix is not positive definite (smallest pivot " << chol.smallest_pivot << ")";
    throw NotPositiveDefinite(msg.str());
  }
  Eigen::LLT<Eigen::MatrixXcd> llt(m_);
  vx_ = llt.solve(x_tau_vector(data_, tau_));
  vy_ = llt.solve(y_tau_vector(data_, tau_));
}

std::vector<Complex> exceptional_set(const PickSystem& ps) {
  std::vector<Complex> z;
  for (int j = 0; j < ps.data().k; ++j) {
    if (std::abs(ps.vy()(j)) <= kExceptionalDenFloor) continue;
    const Complex zeta = ps.vx()(j) / ps.vy()(j);
    if (std::abs(std::abs(zeta) - 1.0) < kExceptionalUnimodTol) z.push_back(zeta);
  }
  return z;
}

Parametrization build_parametrization(const PickSystem& ps) {
  const BlaschkeData& data = ps.data();
  const int n = data.n;

  ComplexPoly full{1.0};
  for (int i = 0; i < n; ++i)
    full = full * ComplexPoly{1.0, -std::conj(data.sigma[std::size_t(i)])};
  std::vector<ComplexPoly> partial(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    ComplexPoly q{1.0};
    for (int i = 0; i < n; ++i)
      if (i != j) q = q * ComplexPoly{1.0, -std::conj(data.sigma[std::size_t(i)])};
    partial[std::size_t(j)] = q;
  }

  // <x_lambda, w> * full = sum_j conj(w_j) prod_{i != j}(1 - conj(sigma_i) lambda),
  // and <y_lambda, w> picks up an extra conj(eta_j) per term.
  auto weighted = [&](const Eigen::VectorXcd& w, bool with_eta) {
    ComplexPoly s;
    for (int j = 0; j < n; ++j) {
      Complex coeff = std::conj(w(j));
      if (with_eta) coeff *= std::conj(data.eta[std::size_t(j)]);
      s = s + coeff * partial[std::size_t(j)];
    }
    return s;
  };
  const ComplexPoly sx = weighted(ps.vx(), false);
  const ComplexPoly sy = weighted(ps.vy(), false);
  const ComplexPoly tx = weighted(ps.vx(), true);
  const ComplexPoly ty = weighted(ps.vy(), true);

  const Complex inv = 1.0 / full.eval(ps.tau());
  const ComplexPoly lin{1.0, -std::conj(ps.tau())};

  auto pad = [n](ComplexPoly p) {
    std::vector<Complex> c = p.coeffs();
    c.resize(std::size_t(n) + 1, 0.0);
    return ComplexPoly(std::move(c));
  };

  Parametrization par;
  par.a = pad(inv * (full - lin * sx));
  par.b = pad(inv * (lin * sy));
  par.c = pad(-(inv) * (lin * tx));
  par.d = pad(inv * (full + lin * ty));
  par.tau = ps.tau();
  par.exceptional = exceptional_set(ps);
  par.n = n;
  return par;
}

Parametrization build_parametrization(const BlaschkeData& data, Complex tau) {
  return build_parametrization(PickSystem(data, tau));
}

RationalFn blaschke_solution(const Parametrization& par, Complex zeta) {
  if (std::abs(std::abs(zeta) - 1.0) > 1e-9) throw InvalidData("zeta must be unimodular");
  for (Complex z : par.exceptional)
    if (arc_distance(zeta, z) <= kExceptionalArcTol)
      throw ExceptionalParameter("zeta lies in the exceptional set of this base point");
  return reduce(RationalFn(zeta * par.a + par.b, zeta * par.c + par.d));
}

BlaschkeReport verify_blaschke_solution(const RationalFn& phi, const BlaschkeData& data,
                                        const BlaschkeVerifyTolerances& tol) {
  validate_data(data);
  BlaschkeReport report;
  const RationalFn reduced = reduce(phi);
  report.degree = reduced.degree();
  report.disc_regular = phi.disc_regular();

  for (int t = 0; t < tol.circle_grid; ++t) {
    const Complex z = std::polar(1.0, 2.0 * kPi * double(t) / double(tol.circle_grid));
    report.inner_deviation = std::max(report.inner_deviation, std::abs(std::abs(phi.eval(z)) - 1.0));
  }
  for (int j = 0; j < data.n; ++j)
    report.interpolation_deviations.push_back(
        std::abs(phi.eval(data.sigma[std::size_t(j)]) - data.eta[std::size_t(j)]));
  for (int j = 0; j < data.k; ++j) {
    const double av = arg_derivative_or_inf(phi, data.sigma[std::size_t(j)]);
    report.phasar_deviations.push_back(std::abs(av - data.rho[std::size_t(j)]));
  }

  bool pass = report.disc_regular && report.inner_deviation <= tol.inner;
  for (double dev : report.interpolation_deviations) pass = pass && dev <= tol.interp;
  for (double dev : report.phasar_deviations) pass = pass && dev <= tol.phasar;
  report.pass = pass;
  return report;
}

double common_zero_margin(const Parametrization& par) {
  double margin = std::numeric_limits<double>::infinity();
  if (par.d.degree() > 0) {
    for (Complex r : poly_roots(par.d)) {
      const double m = std::max({std::abs(par.a.eval(r)), std::abs(par.b.eval(r)), std::abs(par.c.eval(r))});
      margin = std::min(margin, m);
    }
  }
  if (par.a.degree() > 0) {
    for (Complex r : poly_roots(par.a)) {
      const double m = std::max({std::abs(par.b.eval(r)), std::abs(par.c.eval(r)), std::abs(par.d.eval(r))});
      margin = std::min(margin, m);
    }
  }
  return margin;
}

}  // namespace tetrainterp
