#ifndef ABREU_FD_HPP
#define ABREU_FD_HPP

#include <cstdint>
#include <vector>

#include "abreu/grid.hpp"
#include "abreu/smallvec.hpp"

namespace abreu {

/// Field defined on a subset of nodes.
struct PartialField {
  GridSpec spec;
  std::vector<double> v;
  std::vector<std::uint8_t> def;

  static PartialField undefined(const GridSpec& s) {
    return {s, std::vector<double>(s.size(), 0.0),
            std::vector<std::uint8_t>(s.size(), 0)};
  }
  bool defined(std::size_t i) const { return def[i] != 0; }
  std::size_t count_defined() const;

  double sup_on(const std::vector<std::uint8_t>& mask) const;  // max |v| where defined & mask
};

/// Values of a GridFn as a PartialField on Interior + Band nodes.
PartialField field_of(const GridFn& g);
/// Restriction of a GridFn to Interior nodes only.
PartialField interior_field_of(const GridFn& g);

/// First derivative along an axis: centered where both neighbours are
/// defined, shifted 3-point second-order one-sided otherwise.
PartialField d1(const PartialField& f, int axis);
/// Second derivative along an axis: centered 3-point, else one-sided 4-point.
PartialField d2(const PartialField& f, int axis);
/// Mixed second derivative: 4-point centered cross where available, else the
/// composition of one-sided first differences (applied symmetrically).
PartialField dmixed(const PartialField& f, int ax1, int ax2);

/// Packed index for symmetric matrix components, i <= j.
int sym_index(int n, int i, int j);
int sym_count(int n);

struct GradientFields {
  std::vector<PartialField> comp;  // one per axis
};

struct HessianFields {
  std::vector<PartialField> comp;   // sym_count entries, packed (i<=j)
  PartialField det;
  std::vector<PartialField> inv;    // inverse Hessian, packed; defined where det > floor
  std::vector<std::size_t> degenerate_nodes;

  Mat hess_at(std::size_t idx, int n) const;
  Mat inv_at(std::size_t idx, int n) const;
};

/// Gradient of a GridFn on Interior nodes. Throws TooCoarse if an Interior
/// node has no valid stencil on some axis.
GradientFields fd_gradient(const GridFn& g);

/// Symmetric FD Hessian on Interior nodes with determinant and inverse.
/// Throws DegenerateHessian (with the node list) if det <= det_floor at some
/// Interior node, unless allow_degenerate is set.
HessianFields fd_hessian_det(const GridFn& g, double det_floor = 1e-12,
                             bool allow_degenerate = false);

}  // namespace abreu

#endif
