#include "abreu/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "abreu/error.hpp"

namespace abreu {

namespace {
constexpr double kVertexTol = 1e-9;
}

Polytope Polytope::from_facets(int dim, std::vector<Pt> normals,
                               std::vector<double> offsets,
                               std::optional<std::vector<Pt>> vertices,
                               std::optional<std::vector<double>> sigma_scales) {
  if (dim < 1 || dim > kMaxDim)
    throw Error(ErrorCode::ConfigInvalid, "polytope dim must be 1..3");
  if (normals.size() != offsets.size() || normals.empty())
    throw Error(ErrorCode::ConfigInvalid, "facet normals/offsets mismatch");

  Polytope P;
  P.dim_ = dim;
  P.facets_.reserve(normals.size());
  for (std::size_t k = 0; k < normals.size(); ++k) {
    double na = norm(normals[k]);
    if (na <= 0.0)
      throw Error(ErrorCode::ConfigInvalid, "zero facet normal");
    double scale = dim == 1 ? 1.0 : 1.0 / na;  // dim 1: unit point mass
    if (sigma_scales) scale = (*sigma_scales)[k];
    P.facets_.push_back(Facet{normals[k], offsets[k], scale});
  }
  P.vertices_ = vertices ? std::move(*vertices)
                         : vertices_from_facets(dim, normals, offsets);
  P.validate();
  return P;
}

Polytope Polytope::interval(double a, double b) {
  return from_facets(1, {Pt{1.0}, Pt{-1.0}}, {a, -b});
}

Polytope Polytope::box(const Pt& lo, const Pt& hi) {
  int n = lo.n;
  std::vector<Pt> normals;
  std::vector<double> offsets;
  for (int i = 0; i < n; ++i) {
    Pt e(n);
    e[i] = 1.0;
    normals.push_back(e);
    offsets.push_back(lo[i]);
    e[i] = -1.0;
    normals.push_back(e);
    offsets.push_back(-hi[i]);
  }
  return from_facets(n, normals, offsets);
}

Polytope Polytope::simplex2() {
  return from_facets(2, {Pt{1.0, 0.0}, Pt{0.0, 1.0}, Pt{-1.0, -1.0}},
                     {0.0, 0.0, -1.0});
}

std::vector<double> Polytope::facet_distances(const Pt& xi) const {
  std::vector<double> d(facets_.size());
  for (std::size_t k = 0; k < facets_.size(); ++k)
    d[k] = dot(facets_[k].normal, xi) - facets_[k].offset;
  return d;
}

double Polytope::min_facet_distance(const Pt& xi) const {
  double m = std::numeric_limits<double>::infinity();
  for (const Facet& f : facets_) m = std::min(m, dot(f.normal, xi) - f.offset);
  return m;
}

double Polytope::euclidean_boundary_distance(const Pt& xi) const {
  double m = std::numeric_limits<double>::infinity();
  for (const Facet& f : facets_) {
    double d = dot(f.normal, xi) - f.offset;
    if (d < -1e-12)
      throw Error(ErrorCode::PointOutside, "point outside polytope");
    m = std::min(m, d / norm(f.normal));
  }
  return std::max(m, 0.0);
}

Containment Polytope::contains(const Pt& xi, double tol) const {
  double m = min_facet_distance(xi);
  if (m > tol) return Containment::Interior;
  if (m >= -tol) return Containment::Boundary;
  return Containment::Outside;
}

BoundingBox Polytope::bounding_box() const {
  BoundingBox b{Pt(dim_), Pt(dim_)};
  for (int i = 0; i < dim_; ++i) {
    b.lo[i] = std::numeric_limits<double>::infinity();
    b.hi[i] = -std::numeric_limits<double>::infinity();
  }
  for (const Pt& v : vertices_)
    for (int i = 0; i < dim_; ++i) {
      b.lo[i] = std::min(b.lo[i], v[i]);
      b.hi[i] = std::max(b.hi[i], v[i]);
    }
  return b;
}

double Polytope::diameter() const {
  double d = 0;
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    for (std::size_t j = i + 1; j < vertices_.size(); ++j)
      d = std::max(d, norm(vertices_[i] - vertices_[j]));
  return d;
}

Pt Polytope::centroid() const {
  Pt c(dim_);
  for (const Pt& v : vertices_) c += v;
  c *= 1.0 / static_cast<double>(vertices_.size());
  return c;
}

void Polytope::validate() const {
  if (vertices_.empty())
    throw Error(ErrorCode::ConfigInvalid, "polytope has no vertices");

  Pt c = centroid();
  if (min_facet_distance(c) <= 0.0)
    throw Error(ErrorCode::ConfigInvalid, "polytope interior is empty");

  for (std::size_t k = 0; k < facets_.size(); ++k) {
    double m = std::numeric_limits<double>::infinity();
    for (const Pt& v : vertices_)
      m = std::min(m, dot(facets_[k].normal, v) - facets_[k].offset);
    if (std::abs(m) > 1e-9)
      throw Error(ErrorCode::ConfigInvalid,
                  "facet " + std::to_string(k) + " is not supporting");
  }

  for (const Pt& v : vertices_) {
    int on = 0;
    auto d = facet_distances(v);
    for (double dk : d) {
      if (dk < -1e-9)
        throw Error(ErrorCode::ConfigInvalid, "vertex outside polytope");
      if (std::abs(dk) <= 1e-12 * (1.0 + std::abs(dk)) + 1e-12) ++on;
    }
    if (on < dim_)
      throw Error(ErrorCode::ConfigInvalid,
                  "vertex not on >= dim facets");
  }
}

std::vector<Pt> vertices_from_facets(int dim, const std::vector<Pt>& normals,
                                     const std::vector<double>& offsets) {
  std::vector<Pt> verts;
  const int K = static_cast<int>(normals.size());
  std::vector<int> idx(dim);

  auto try_tuple = [&](const std::vector<int>& t) {
    Mat A(dim);
    Pt b(dim);
    for (int r = 0; r < dim; ++r) {
      for (int c = 0; c < dim; ++c) A(r, c) = normals[t[r]][c];
      b[r] = offsets[t[r]];
    }
    double d = A.det();
    if (std::abs(d) < 1e-12) return;
    Pt x = A.solve(b);
    for (int k = 0; k < K; ++k)
      if (dot(normals[k], x) - offsets[k] < -kVertexTol) return;
    for (const Pt& v : verts)
      if (norm(v - x) < kVertexTol) return;
    verts.push_back(x);
  };

  // enumerate dim-subsets of facets
  std::vector<int> t(dim);
  auto rec = [&](auto&& self, int start, int depth) -> void {
    if (depth == dim) {
      try_tuple(t);
      return;
    }
    for (int k = start; k < K; ++k) {
      t[depth] = k;
      self(self, k + 1, depth + 1);
    }
  };
  rec(rec, 0, 0);
  return verts;
}

}  // namespace abreu
