#ifndef ABREU_POLYTOPE_HPP
#define ABREU_POLYTOPE_HPP

#include <optional>
#include <vector>

#include "abreu/smallvec.hpp"

namespace abreu {

enum class Containment { Interior, Boundary, Outside };

struct Facet {
  Pt normal;           // a_k, stored as configured (no lattice rescaling)
  double offset;       // c_k; facet distance is <a_k, xi> - c_k
  double sigma_scale;  // weight of d(sigma) relative to Euclidean facet measure
};

struct BoundingBox {
  Pt lo, hi;
};

/// Bounded open polytope given by facet inequalities <a_k, xi> - c_k > 0.
class Polytope {
public:
  static Polytope from_facets(int dim, std::vector<Pt> normals,
                              std::vector<double> offsets,
                              std::optional<std::vector<Pt>> vertices = {},
                              std::optional<std::vector<double>> sigma_scales = {});

  static Polytope interval(double a, double b);
  static Polytope box(const Pt& lo, const Pt& hi);
  static Polytope unit_square() { return box(Pt{0.0, 0.0}, Pt{1.0, 1.0}); }
  static Polytope simplex2();   // xi1 > 0, xi2 > 0, 1 - xi1 - xi2 > 0

  int dim() const { return dim_; }
  const std::vector<Facet>& facets() const { return facets_; }
  const std::vector<Pt>& vertices() const { return vertices_; }

  std::vector<double> facet_distances(const Pt& xi) const;
  double min_facet_distance(const Pt& xi) const;

  /// min_k (h_k(xi) - c_k) / |a_k| for points in the closed polytope.
  /// Throws PointOutside if some facet distance is < -1e-12.
  double euclidean_boundary_distance(const Pt& xi) const;

  Containment contains(const Pt& xi, double tol) const;

  BoundingBox bounding_box() const;
  double diameter() const;

  /// An interior reference point (vertex centroid).
  Pt centroid() const;

private:
  int dim_ = 0;
  std::vector<Facet> facets_;
  std::vector<Pt> vertices_;

  void validate() const;
};

/// All vertices obtained by intersecting dim-subsets of facets.
std::vector<Pt> vertices_from_facets(int dim, const std::vector<Pt>& normals,
                                     const std::vector<double>& offsets);

}  // namespace abreu

#endif
