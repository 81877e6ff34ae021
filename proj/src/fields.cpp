#include "abreu/fields.hpp"

#include <cmath>
#include <limits>

#include "abreu/error.hpp"

namespace abreu {

ScalarField ScalarField::constant(double c) {
  ScalarField f;
  f.kind_ = Kind::Constant;
  f.const_value_ = c;
  f.eval_ = [c](const Pt&) { return c; };
  return f;
}

ScalarField ScalarField::polynomial(int dim, std::vector<PolyTerm> terms) {
  ScalarField f;
  f.kind_ = Kind::Polynomial;
  f.eval_ = [dim, terms = std::move(terms)](const Pt& x) {
    double acc = 0.0;
    for (const PolyTerm& t : terms) {
      double v = t.c;
      for (int d = 0; d < dim; ++d)
        for (int k = 0; k < t.p[d]; ++k) v *= x[d];
      acc += v;
    }
    return acc;
  };
  return f;
}

ScalarField ScalarField::grid(std::shared_ptr<const GridFn> g) {
  ScalarField f;
  f.kind_ = Kind::Grid;
  f.eval_ = [g = std::move(g)](const Pt& x) { return interpolate(*g, x); };
  return f;
}

ScalarField ScalarField::callable(std::function<double(const Pt&)> fn) {
  ScalarField f;
  f.kind_ = Kind::Callable;
  f.eval_ = std::move(fn);
  return f;
}

std::pair<double, double> ScalarField::min_max_over(const Polytope& P,
                                                    int samples_per_axis) const {
  if (kind_ == Kind::Constant) return {const_value_, const_value_};
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  auto touch = [&](const Pt& x) {
    double v = eval_(x);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  };
  for (const Pt& v : P.vertices()) touch(v);
  BoundingBox bb = P.bounding_box();
  const int n = P.dim();
  int total = 1;
  for (int d = 0; d < n; ++d) total *= samples_per_axis;
  for (int t = 0; t < total; ++t) {
    int q = t;
    Pt x(n);
    for (int d = 0; d < n; ++d) {
      int i = q % samples_per_axis;
      q /= samples_per_axis;
      x[d] = bb.lo[d] + (i + 0.5) / samples_per_axis * (bb.hi[d] - bb.lo[d]);
    }
    if (P.contains(x, 0.0) != Containment::Outside) touch(x);
  }
  return {lo, hi};
}

double DensityPair::density(const Pt& x) const {
  double v = D(x);
  if (!(v >= d_min))
    throw Error(ErrorCode::ConfigInvalid,
                "density below d_min at an evaluated point");
  return v;
}

}  // namespace abreu
