#include "sweep/polynomial.hpp"

#include "sweep/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace sweep {
namespace {

double ipow(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

std::vector<Monomial> canonicalize(int dimension, std::vector<Monomial> terms) {
  std::map<std::vector<int>, double> merged;
  for (auto& t : terms) {
    if (static_cast<int>(t.exponents.size()) != dimension) {
      throw InputError("polynomial term has " +
                       std::to_string(t.exponents.size()) +
                       " exponents, expected " + std::to_string(dimension));
    }
    for (int e : t.exponents) {
      if (e < 0) throw InputError("polynomial exponents must be non-negative");
    }
    if (!std::isfinite(t.coefficient)) {
      throw InputError("polynomial coefficient is not finite");
    }
    merged[t.exponents] += t.coefficient;
  }
  std::vector<Monomial> out;
  for (auto& [exps, c] : merged) {
    if (c != 0.0) out.push_back({c, exps});
  }
  return out;
}

}  // namespace

Polynomial::Polynomial(int dimension) : dimension_(dimension) {
  require(dimension >= 1, "polynomial dimension must be positive");
}

Polynomial::Polynomial(int dimension, std::vector<Monomial> terms)
    : dimension_(dimension) {
  require(dimension >= 1, "polynomial dimension must be positive");
  terms_ = canonicalize(dimension, std::move(terms));
}

Polynomial Polynomial::monomial(int dimension, double c,
                                std::vector<int> exps) {
  return Polynomial(dimension, {Monomial{c, std::move(exps)}});
}

Polynomial Polynomial::weighted_square_norm(const std::vector<double>& weights) {
  const int n = static_cast<int>(weights.size());
  std::vector<Monomial> terms;
  for (int i = 0; i < n; ++i) {
    std::vector<int> e(n, 0);
    e[i] = 2;
    terms.push_back({0.5 * weights[i], e});
  }
  return Polynomial(n, std::move(terms));
}

int Polynomial::degree() const {
  int d = 0;
  for (const auto& t : terms_) {
    int s = 0;
    for (int e : t.exponents) s += e;
    d = std::max(d, s);
  }
  return d;
}

void Polynomial::check(const Vec& x) const {
  require_dimension(dimension_, x.size(), "polynomial evaluation");
}

double Polynomial::value(const Vec& x) const {
  check(x);
  double v = 0.0;
  for (const auto& t : terms_) {
    double m = t.coefficient;
    for (int i = 0; i < dimension_; ++i) m *= ipow(x[i], t.exponents[i]);
    v += m;
  }
  return v;
}

Vec Polynomial::gradient(const Vec& x) const {
  return value_gradient(x).gradient;
}

ValueGradient Polynomial::value_gradient(const Vec& x) const {
  check(x);
  ValueGradient out{0.0, Vec::Zero(dimension_)};
  for (const auto& t : terms_) {
    double m = t.coefficient;
    for (int i = 0; i < dimension_; ++i) m *= ipow(x[i], t.exponents[i]);
    out.value += m;
    for (int j = 0; j < dimension_; ++j) {
      const int ej = t.exponents[j];
      if (ej == 0) continue;
      double d = t.coefficient * ej;
      for (int i = 0; i < dimension_; ++i) {
        d *= ipow(x[i], i == j ? ej - 1 : t.exponents[i]);
      }
      out.gradient[j] += d;
    }
  }
  return out;
}

Mat Polynomial::hessian(const Vec& x) const {
  check(x);
  Mat h = Mat::Zero(dimension_, dimension_);
  std::vector<int> e(dimension_);
  for (const auto& t : terms_) {
    for (int j = 0; j < dimension_; ++j) {
      for (int k = j; k < dimension_; ++k) {
        e = t.exponents;
        double c = t.coefficient;
        c *= e[j];
        if (c == 0.0) continue;
        e[j] -= 1;
        c *= e[k];
        if (c == 0.0) continue;
        e[k] -= 1;
        for (int i = 0; i < dimension_; ++i) c *= ipow(x[i], e[i]);
        h(j, k) += c;
        if (j != k) h(k, j) += c;
      }
    }
  }
  return h;
}

Polynomial Polynomial::shifted(const Vec& shift) const {
  require_dimension(dimension_, shift.size(), "polynomial shift");
  // (x_i - s_i)^e = sum_k C(e,k) x_i^k (-s_i)^(e-k), expanded per variable.
  std::vector<Monomial> out;
  for (const auto& t : terms_) {
    std::vector<Monomial> partial{{t.coefficient, std::vector<int>(dimension_, 0)}};
    for (int i = 0; i < dimension_; ++i) {
      const int e = t.exponents[i];
      std::vector<Monomial> next;
      double binom = 1.0;
      for (int k = 0; k <= e; ++k) {
        if (k > 0) binom = binom * (e - k + 1) / k;
        const double factor = binom * ipow(-shift[i], e - k);
        if (factor == 0.0) continue;
        for (const auto& p : partial) {
          Monomial m = p;
          m.coefficient *= factor;
          m.exponents[i] = k;
          next.push_back(std::move(m));
        }
      }
      partial = std::move(next);
    }
    out.insert(out.end(), partial.begin(), partial.end());
  }
  return Polynomial(dimension_, std::move(out));
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  require_dimension(dimension_, other.dimension_, "polynomial sum");
  std::vector<Monomial> all = terms_;
  all.insert(all.end(), other.terms_.begin(), other.terms_.end());
  return Polynomial(dimension_, std::move(all));
}

Polynomial Polynomial::operator*(double s) const {
  std::vector<Monomial> all = terms_;
  for (auto& t : all) t.coefficient *= s;
  return Polynomial(dimension_, std::move(all));
}

}  // namespace sweep
