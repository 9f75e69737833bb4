#include "unitay/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "unitay/error.hpp"

namespace unitay {

PolynomialC::PolynomialC(Point center, std::vector<Complex> coefficients, double scale)
    : center_(center), scale_(scale), coefficients_(std::move(coefficients)) {
  require(scale > 0.0 && std::isfinite(scale), ErrorCode::InvalidInput, "polynomial scale must be positive");
  trim();
}

PolynomialC PolynomialC::constant(Complex c, Point center) { return PolynomialC(center, {c}); }

PolynomialC PolynomialC::monomial(std::vector<Complex> coefficients) {
  return PolynomialC(Point{}, std::move(coefficients));
}

void PolynomialC::trim() {
  while (!coefficients_.empty() && coefficients_.back() == Complex{}) coefficients_.pop_back();
}

Complex PolynomialC::operator()(Point z) const {
  const Complex u = (z - center_) / scale_;
  Complex acc{};
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * u + *it;
  return acc;
}

std::vector<Complex> taylor_shift(std::vector<Complex> c, Complex delta) {
  // Repeated synthetic division by (u - delta).
  const std::size_t n = c.size();
  for (std::size_t k = 0; k + 1 < n; ++k)
    for (std::size_t j = n - 1; j > k; --j) c[j - 1] += delta * c[j];
  return c;
}

PolynomialC PolynomialC::recentered(Point center, double scale) const {
  if (coefficients_.empty()) return PolynomialC(center, {}, scale);
  // In u = (z - c_old)/s_old: z - c_new = s_old * u + (c_old - c_new).
  // Shift first (same scale), then rescale the variable.
  std::vector<Complex> c = taylor_shift(coefficients_, (center - center_) / scale_);
  const double ratio = scale / scale_;
  double factor = 1.0;
  for (Complex& ck : c) {
    ck *= factor;
    factor *= ratio;
  }
  return PolynomialC(center, std::move(c), scale);
}

PolynomialC operator+(const PolynomialC& a, const PolynomialC& b) {
  const PolynomialC bb = (b.center_ == a.center_ && b.scale_ == a.scale_) ? b : b.recentered(a.center_, a.scale_);
  std::vector<Complex> c(std::max(a.coefficients_.size(), bb.coefficients_.size()));
  for (std::size_t k = 0; k < a.coefficients_.size(); ++k) c[k] += a.coefficients_[k];
  for (std::size_t k = 0; k < bb.coefficients_.size(); ++k) c[k] += bb.coefficients_[k];
  return PolynomialC(a.center_, std::move(c), a.scale_);
}

PolynomialC operator*(Complex s, const PolynomialC& p) {
  std::vector<Complex> c = p.coefficients_;
  for (Complex& ck : c) ck *= s;
  return PolynomialC(p.center_, std::move(c), p.scale_);
}

PolynomialC partial_sum(const PolynomialC& p, std::size_t n, Point z0) {
  PolynomialC shifted = p.center() == z0 ? p : p.recentered(z0, p.scale());
  std::vector<Complex> c = shifted.coefficients();
  if (c.size() > n + 1) c.resize(n + 1);
  return PolynomialC(z0, std::move(c), p.scale());
}

}  // namespace unitay
