#pragma once

#include <cstddef>
#include <vector>

#include "unitay/geometry.hpp"

namespace unitay {

/// p(z) = sum_k c_k ((z - center) / scale)^k.
///
/// With the default scale of 1 the coefficients are the ordinary Taylor
/// coefficients about the center. A larger scale keeps high-degree
/// coefficients representable when the polynomial lives on a large set.
class PolynomialC {
 public:
  PolynomialC() = default;
  PolynomialC(Point center, std::vector<Complex> coefficients, double scale = 1.0);

  static PolynomialC constant(Complex c, Point center = {});
  /// c0 + c1 z + c2 z^2 + ... about the origin.
  static PolynomialC monomial(std::vector<Complex> coefficients);

  Point center() const { return center_; }
  double scale() const { return scale_; }
  const std::vector<Complex>& coefficients() const { return coefficients_; }
  /// Index of the last nonzero coefficient; the zero polynomial has degree 0.
  std::size_t degree() const { return coefficients_.empty() ? 0 : coefficients_.size() - 1; }
  bool is_zero() const { return coefficients_.empty(); }

  Complex operator()(Point z) const;

  /// Same polynomial, re-expanded about `center` with the given scale.
  PolynomialC recentered(Point center, double scale = 1.0) const;

  friend PolynomialC operator+(const PolynomialC& a, const PolynomialC& b);
  friend PolynomialC operator*(Complex s, const PolynomialC& p);

 private:
  void trim();

  Point center_{};
  double scale_ = 1.0;
  std::vector<Complex> coefficients_;
};

/// S_n about z0: re-expands p about z0 (keeping p's scale) and drops every
/// term above degree n.
PolynomialC partial_sum(const PolynomialC& p, std::size_t n, Point z0);

/// Taylor shift of coefficients in the variable u to the variable u - delta,
/// i.e. returns d with sum d_k (u - delta)^k = sum c_k u^k.
std::vector<Complex> taylor_shift(std::vector<Complex> coefficients, Complex delta);

}  // namespace unitay
