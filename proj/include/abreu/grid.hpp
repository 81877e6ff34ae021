#ifndef ABREU_GRID_HPP
#define ABREU_GRID_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "abreu/polytope.hpp"
#include "abreu/smallvec.hpp"

namespace abreu {

enum class NodeMask : std::uint8_t { Outside = 0, Band = 1, Interior = 2 };

/// Lattice of nodes over an axis-aligned box, spacing h per axis.
struct GridSpec {
  int dim = 0;
  Pt lo, hi;
  std::array<double, kMaxDim> h{};
  std::array<int, kMaxDim> dims{};  // node count per axis

  std::size_t size() const {
    std::size_t s = 1;
    for (int i = 0; i < dim; ++i) s *= static_cast<std::size_t>(dims[i]);
    return s;
  }

  std::size_t index(const std::array<int, kMaxDim>& ijk) const {
    std::size_t s = 0;
    for (int i = 0; i < dim; ++i) s = s * dims[i] + ijk[i];
    return s;
  }

  std::array<int, kMaxDim> unindex(std::size_t idx) const {
    std::array<int, kMaxDim> ijk{};
    for (int i = dim - 1; i >= 0; --i) {
      ijk[i] = static_cast<int>(idx % dims[i]);
      idx /= dims[i];
    }
    return ijk;
  }

  bool in_bounds(const std::array<int, kMaxDim>& ijk) const {
    for (int i = 0; i < dim; ++i)
      if (ijk[i] < 0 || ijk[i] >= dims[i]) return false;
    return true;
  }

  Pt node(const std::array<int, kMaxDim>& ijk) const {
    Pt p(dim);
    for (int i = 0; i < dim; ++i) p[i] = lo[i] + ijk[i] * h[i];
    return p;
  }

  Pt node(std::size_t idx) const { return node(unindex(idx)); }

  double max_h() const {
    double m = 0;
    for (int i = 0; i < dim; ++i) m = std::max(m, h[i]);
    return m;
  }

  std::size_t axis_stride(int axis) const {
    std::size_t s = 1;
    for (int i = dim - 1; i > axis; --i) s *= dims[i];
    return s;
  }
};

/// Scalar field on a GridSpec with an interior mask.
struct GridFn {
  GridSpec spec;
  std::vector<double> values;
  std::vector<NodeMask> mask;

  double& at(std::size_t i) { return values[i]; }
  double at(std::size_t i) const { return values[i]; }
  bool inside(std::size_t i) const { return mask[i] != NodeMask::Outside; }
};

/// Grid covering the polytope's bounding box with node spacing ~h on each
/// axis (h adjusted so nodes land on the box corners). Mask: Outside if the
/// node center is outside, Band if any lattice neighbour (within one step,
/// including diagonals) is outside or off-grid, Interior otherwise.
GridSpec make_grid_spec(const Polytope& P, double h);
std::vector<NodeMask> make_mask(const Polytope& P, const GridSpec& g,
                                double tol = 1e-12);
GridFn make_grid_fn(const Polytope& P, double h);

/// Fill a GridFn by sampling f at inside nodes (Outside nodes get 0).
GridFn sample_grid_fn(const Polytope& P, double h,
                      const std::function<double(const Pt&)>& f);

/// Multilinear interpolation of node values at an arbitrary point of the box.
/// Outside-node corner values are replaced by inward linear extrapolation.
double interpolate(const GridFn& g, const Pt& xi);

/// Values with Outside nodes adjacent to the domain filled by linear
/// extrapolation along each axis (used by interpolation near the boundary).
std::vector<double> extended_values(const GridFn& g);

// --- serialization ---------------------------------------------------------

void write_csv(const GridFn& g, const std::string& path);
/// Binary dump: one JSON header line (dims, h, box, mask run-length encoding)
/// followed by row-major doubles.
void write_binary(const GridFn& g, const std::string& path);
GridFn read_binary(const std::string& path);

}  // namespace abreu

#endif
