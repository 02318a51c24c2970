#include "tetrainterp/complex_poly.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "tetrainterp/errors.hpp"

namespace tetrainterp {

ComplexPoly ComplexPoly::from_roots(const std::vector<Complex>& roots, Complex leading) {
  std::vector<Complex> c{leading};
  for (Complex r : roots) {
    // multiply by (z - r)
    c.push_back(0.0);
    for (std::size_t i = c.size() - 1; i > 0; --i) c[i] = c[i - 1] - r * c[i];
    c[0] = -r * c[0];
  }
  return ComplexPoly(std::move(c));
}

double ComplexPoly::max_abs_coeff() const {
  double m = 0.0;
  for (const Complex& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

int ComplexPoly::degree() const {
  const double cutoff = kCoeffThresholdRel * max_abs_coeff();
  for (std::size_t i = coeffs_.size(); i > 0; --i) {
    if (std::abs(coeffs_[i - 1]) > cutoff && std::abs(coeffs_[i - 1]) > 0.0)
      return static_cast<int>(i - 1);
  }
  return -1;
}

Complex ComplexPoly::eval(Complex z) const {
  Complex acc = 0.0;
  for (std::size_t i = coeffs_.size(); i > 0; --i) acc = acc * z + coeffs_[i - 1];
  return acc;
}

ComplexPoly ComplexPoly::derivative() const {
  if (coeffs_.size() <= 1) return ComplexPoly{};
  std::vector<Complex> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = double(i) * coeffs_[i];
  return ComplexPoly(std::move(d));
}

ComplexPoly ComplexPoly::tilde(int n) const {
  if (degree() > n) throw DegreeExceedsN("tilde: exact degree exceeds n");
  std::vector<Complex> r(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) r[static_cast<std::size_t>(i)] = std::conj(coeff(static_cast<std::size_t>(n - i)));
  return ComplexPoly(std::move(r));
}

ComplexPoly ComplexPoly::deflate(Complex root) const {
  const ComplexPoly t = trimmed();
  const int m = t.degree();
  if (m < 1) throw ZeroPolynomial("deflate: nothing to divide");
  std::vector<Complex> q(static_cast<std::size_t>(m));
  Complex carry = t.coeffs_[static_cast<std::size_t>(m)];
  for (int i = m - 1; i >= 0; --i) {
    q[static_cast<std::size_t>(i)] = carry;
    carry = t.coeffs_[static_cast<std::size_t>(i)] + root * carry;
  }
  return ComplexPoly(std::move(q));
}

ComplexPoly ComplexPoly::trimmed() const {
  const int d = degree();
  if (d < 0) return ComplexPoly{};
  return ComplexPoly(std::vector<Complex>(coeffs_.begin(), coeffs_.begin() + d + 1));
}

ComplexPoly ComplexPoly::operator-() const {
  std::vector<Complex> c(coeffs_);
  for (Complex& v : c) v = -v;
  return ComplexPoly(std::move(c));
}

ComplexPoly operator+(const ComplexPoly& p, const ComplexPoly& q) {
  std::vector<Complex> c(std::max(p.coeffs_.size(), q.coeffs_.size()), 0.0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = p.coeff(i) + q.coeff(i);
  return ComplexPoly(std::move(c));
}

ComplexPoly operator-(const ComplexPoly& p, const ComplexPoly& q) {
  std::vector<Complex> c(std::max(p.coeffs_.size(), q.coeffs_.size()), 0.0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = p.coeff(i) - q.coeff(i);
  return ComplexPoly(std::move(c));
}

ComplexPoly operator*(const ComplexPoly& p, const ComplexPoly& q) {
  if (p.coeffs_.empty() || q.coeffs_.empty()) return ComplexPoly{};
  std::vector<Complex> c(p.coeffs_.size() + q.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < p.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < q.coeffs_.size(); ++j) c[i + j] += p.coeffs_[i] * q.coeffs_[j];
  return ComplexPoly(std::move(c));
}

ComplexPoly operator*(Complex s, const ComplexPoly& p) {
  std::vector<Complex> c(p.coeffs_);
  for (Complex& v : c) v *= s;
  return ComplexPoly(std::move(c));
}

std::vector<Complex> poly_roots(const ComplexPoly& p) {
  const ComplexPoly t = p.trimmed();
  const int d = t.degree();
  if (d < 0) throw ZeroPolynomial("poly_roots: zero polynomial");
  if (d == 0) return {};
  const auto& c = t.coeffs();
  if (d == 1) return {-c[0] / c[1]};

  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 0; i < d - 1; ++i) companion(i + 1, i) = 1.0;
  for (int i = 0; i < d; ++i) companion(i, d - 1) = -c[static_cast<std::size_t>(i)] / c[static_cast<std::size_t>(d)];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, /*computeEigenvectors=*/false);
  std::vector<Complex> roots(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) roots[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  return roots;
}

std::vector<RootCluster> cluster_roots(std::vector<Complex> roots, double radius) {
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  std::vector<RootCluster> clusters;
  std::vector<Complex> sums;
  for (Complex r : roots) {
    int hit = -1;
    double best = radius;
    for (std::size_t i = 0; i < clusters.size(); ++i) {
      const double dist = std::abs(r - clusters[i].location);
      if (dist <= best) {
        best = dist;
        hit = static_cast<int>(i);
      }
    }
    if (hit < 0) {
      clusters.push_back({r, 1});
      sums.push_back(r);
    } else {
      auto& cl = clusters[static_cast<std::size_t>(hit)];
      sums[static_cast<std::size_t>(hit)] += r;
      ++cl.multiplicity;
      cl.location = sums[static_cast<std::size_t>(hit)] / double(cl.multiplicity);
    }
  }
  for (auto& cl : clusters) {
    const double mod = std::abs(cl.location);
    if (mod > 0.0 && std::abs(mod - 1.0) < kCircleSnapTol) cl.location /= mod;
  }
  return clusters;
}

std::vector<RootCluster> roots_in_closed_disc(const ComplexPoly& p) {
  std::vector<RootCluster> all = cluster_roots(poly_roots(p));
  std::vector<RootCluster> inside;
  for (const auto& cl : all)
    if (std::abs(cl.location) <= 1.0 + kRootTolerance) inside.push_back(cl);
  return inside;
}

}  // namespace tetrainterp
