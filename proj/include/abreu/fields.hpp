#ifndef ABREU_FIELDS_HPP
#define ABREU_FIELDS_HPP

#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "abreu/grid.hpp"
#include "abreu/polytope.hpp"
#include "abreu/smallvec.hpp"

namespace abreu {

/// Multi-index polynomial term: c * prod_i xi_i^p_i.
struct PolyTerm {
  double c;
  std::array<int, kMaxDim> p{};
};

/// Scalar field on the closed polytope: constant, polynomial, grid-backed
/// (multilinear interpolation) or an arbitrary callable.
class ScalarField {
public:
  ScalarField() : ScalarField(constant(0.0)) {}

  static ScalarField constant(double c);
  static ScalarField polynomial(int dim, std::vector<PolyTerm> terms);
  static ScalarField grid(std::shared_ptr<const GridFn> g);
  static ScalarField callable(std::function<double(const Pt&)> f);

  double operator()(const Pt& x) const { return eval_(x); }

  bool is_constant() const { return kind_ == Kind::Constant; }
  double constant_value() const { return const_value_; }

  /// Extremes over vertices plus a dense interior sample of the polytope.
  std::pair<double, double> min_max_over(const Polytope& P,
                                         int samples_per_axis = 33) const;

private:
  enum class Kind { Constant, Polynomial, Grid, Callable };
  Kind kind_ = Kind::Constant;
  double const_value_ = 0.0;
  std::function<double(const Pt&)> eval_;
};

/// The data (D, A) of the problem; D must stay >= d_min > 0 wherever used.
struct DensityPair {
  ScalarField D;
  ScalarField A;
  double d_min = 1e-12;

  double density(const Pt& x) const;  // checks positivity
  double scalar(const Pt& x) const { return A(x); }
};

}  // namespace abreu

#endif
