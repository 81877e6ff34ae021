#ifndef ABREU_SMALLVEC_HPP
#define ABREU_SMALLVEC_HPP

#include <array>
#include <cassert>
#include <cmath>
#include <initializer_list>
#include <vector>

namespace abreu {

inline constexpr int kMaxDim = 3;

/// Point / small vector in R^n, n <= 3.
struct Pt {
  int n = 0;
  std::array<double, kMaxDim> a{};

  Pt() = default;
  explicit Pt(int dim) : n(dim) { assert(dim >= 1 && dim <= kMaxDim); }
  Pt(std::initializer_list<double> xs) {
    n = static_cast<int>(xs.size());
    assert(n >= 1 && n <= kMaxDim);
    int i = 0;
    for (double x : xs) a[i++] = x;
  }
  static Pt from(const std::vector<double>& xs) {
    Pt p(static_cast<int>(xs.size()));
    for (int i = 0; i < p.n; ++i) p.a[i] = xs[i];
    return p;
  }
  std::vector<double> to_vector() const { return {a.begin(), a.begin() + n}; }

  double& operator[](int i) { return a[i]; }
  double operator[](int i) const { return a[i]; }

  Pt& operator+=(const Pt& o) {
    for (int i = 0; i < n; ++i) a[i] += o.a[i];
    return *this;
  }
  Pt& operator-=(const Pt& o) {
    for (int i = 0; i < n; ++i) a[i] -= o.a[i];
    return *this;
  }
  Pt& operator*=(double s) {
    for (int i = 0; i < n; ++i) a[i] *= s;
    return *this;
  }
  friend Pt operator+(Pt x, const Pt& y) { return x += y; }
  friend Pt operator-(Pt x, const Pt& y) { return x -= y; }
  friend Pt operator*(double s, Pt x) { return x *= s; }
};

inline double dot(const Pt& x, const Pt& y) {
  double s = 0;
  for (int i = 0; i < x.n; ++i) s += x.a[i] * y.a[i];
  return s;
}

inline double norm(const Pt& x) { return std::sqrt(dot(x, x)); }

/// Small dense symmetric-capable matrix, n <= 3, row major.
struct Mat {
  int n = 0;
  std::array<double, kMaxDim * kMaxDim> a{};

  Mat() = default;
  explicit Mat(int dim) : n(dim) {}

  double& operator()(int i, int j) { return a[i * kMaxDim + j]; }
  double operator()(int i, int j) const { return a[i * kMaxDim + j]; }

  static Mat identity(int dim) {
    Mat m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  double det() const {
    const Mat& m = *this;
    switch (n) {
      case 1: return m(0, 0);
      case 2: return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
      case 3:
        return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
               m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
               m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    }
    return 0.0;
  }

  /// Cofactor (adjugate transpose) matrix; inverse = cofactor / det.
  Mat cofactor() const {
    const Mat& m = *this;
    Mat c(n);
    switch (n) {
      case 1:
        c(0, 0) = 1.0;
        break;
      case 2:
        c(0, 0) = m(1, 1);
        c(1, 1) = m(0, 0);
        c(0, 1) = -m(1, 0);
        c(1, 0) = -m(0, 1);
        break;
      case 3:
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) {
            int r0 = (i + 1) % 3, r1 = (i + 2) % 3;
            int c0 = (j + 1) % 3, c1 = (j + 2) % 3;
            c(j, i) = m(r0, c0) * m(r1, c1) - m(r0, c1) * m(r1, c0);
          }
        break;
    }
    return c;
  }

  Mat inverse() const {
    double d = det();
    Mat c = cofactor();
    Mat inv(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) inv(i, j) = c(j, i) / d;
    return inv;
  }

  Pt mul(const Pt& x) const {
    Pt y(n);
    for (int i = 0; i < n; ++i) {
      double s = 0;
      for (int j = 0; j < n; ++j) s += (*this)(i, j) * x[j];
      y[i] = s;
    }
    return y;
  }

  Mat mul(const Mat& o) const {
    Mat r(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0;
        for (int k = 0; k < n; ++k) s += (*this)(i, k) * o(k, j);
        r(i, j) = s;
      }
    return r;
  }

  /// Solve A x = b by Cramer's rule (n <= 3); caller checks det != 0.
  Pt solve(const Pt& b) const {
    Mat c = cofactor();
    double d = det();
    Pt x(n);
    for (int j = 0; j < n; ++j) {
      double s = 0;
      for (int i = 0; i < n; ++i) s += c(i, j) * b[i];
      x[j] = s / d;
    }
    return x;
  }

  /// Positive definite check via leading principal minors.
  bool positive_definite() const {
    const Mat& m = *this;
    if (m(0, 0) <= 0) return false;
    if (n >= 2 && m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) <= 0) return false;
    if (n >= 3 && det() <= 0) return false;
    return true;
  }
};

/// rank-1 update helper: m += s * x x^T
inline void add_outer(Mat& m, double s, const Pt& x) {
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) m(i, j) += s * x[i] * x[j];
}

}  // namespace abreu

#endif
