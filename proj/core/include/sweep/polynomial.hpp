#pragma once

#include "sweep/types.hpp"

#include <vector>

namespace sweep {

/// One monomial c * x^alpha.
struct Monomial {
  double coefficient = 0.0;
  std::vector<int> exponents;
};

/// Value and exact gradient of a polynomial at a point.
struct ValueGradient {
  double value = 0.0;
  Vec gradient;
};

/// Sparse multivariate polynomial sum_i c_i x^{alpha_i} on R^n.
///
/// Gradients and Hessians are computed term-wise from the exponent lists,
/// never by differencing.
class Polynomial {
 public:
  /// The zero polynomial on R^dimension.
  explicit Polynomial(int dimension);
  Polynomial(int dimension, std::vector<Monomial> terms);

  /// c * x_i^k; a helper for building examples and tests.
  static Polynomial monomial(int dimension, double c, std::vector<int> exps);
  /// 0.5 * sum_i w_i x_i^2.
  static Polynomial weighted_square_norm(const std::vector<double>& weights);

  int dimension() const { return dimension_; }
  const std::vector<Monomial>& terms() const { return terms_; }
  int degree() const;

  double value(const Vec& x) const;
  Vec gradient(const Vec& x) const;
  ValueGradient value_gradient(const Vec& x) const;
  Mat hessian(const Vec& x) const;

  /// p(x - shift) as a new polynomial (binomial expansion).
  Polynomial shifted(const Vec& shift) const;

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator*(double s) const;

 private:
  void check(const Vec& x) const;

  int dimension_;
  std::vector<Monomial> terms_;
};

}  // namespace sweep
