#ifndef ABREU_QUADRATURE_HPP
#define ABREU_QUADRATURE_HPP

#include <functional>
#include <vector>

#include "abreu/grid.hpp"
#include "abreu/polytope.hpp"

namespace abreu {

using Sampler = std::function<double(const Pt&)>;

/// One boundary quadrature point; weight includes the facet's sigma_scale.
struct BoundaryPanel {
  Pt x;
  double w;
  int facet;
};

/// Midpoint panels of width <= target_h on every facet (dim 1: the two facet
/// points with unit weight times sigma_scale; dim 3: triangulated facets).
std::vector<BoundaryPanel> boundary_panels(const Polytope& P, double target_h);
/// Gauss-Legendre panels (order points per segment/triangle subdivision) for
/// integrands that are only C^0 at facet ends.
std::vector<BoundaryPanel> boundary_panels_gl(const Polytope& P,
                                              double target_h, int order);

/// Volume and centroid of cell ∩ polytope (exact for dim <= 2, subsampled
/// for dim 3).
struct ClippedCell {
  double volume;
  Pt centroid;
};
ClippedCell clip_cell(const Polytope& P, const Pt& lo, const Pt& hi);

/// Midpoint rule over grid cells clipped by the polytope, integrand sampled
/// at the clipped-cell centroid (exact for affine integrands).
double interior_integral(const Polytope& P, const GridSpec& g, const Sampler& f);
/// As above with f = g1 * g2 given as node fields (multilinear interpolation).
double interior_integral(const Polytope& P, const GridFn& g1, const GridFn& g2);

/// Per-cell tensor Gauss-Legendre (pts_per_axis points) on fully inside
/// cells, centroid rule on clipped cells. Used where the integrand is known
/// analytically and extra accuracy is wanted.
double interior_integral_gl(const Polytope& P, const GridSpec& g,
                            const Sampler& f, int pts_per_axis);

/// integral of f * w over the polytope where f diverges like +log(distance)
/// toward each facet (e.g. -log det of a Guillemin-type Hessian). Cells whose
/// centroid is within kappa*h of a facet are excluded and replaced by the
/// analytic collar contribution  t0 * (f(sigma + t0 nhat) - 1) * w  per unit
/// facet measure, t0 = kappa*h.
double interior_integral_log_collar(const Polytope& P, const GridSpec& g,
                                    const Sampler& f, const Sampler& w,
                                    double kappa = 1.0);

/// sum over facets of ∫ g * w dsigma by midpoint panels of width ~ h.
double boundary_integral(const Polytope& P, double h, const Sampler& g,
                         const Sampler& w);
/// Same with per-panel Gauss-Legendre points.
double boundary_integral_gl(const Polytope& P, double h, const Sampler& g,
                            const Sampler& w, int order);

double polytope_volume(const Polytope& P, const GridSpec& g);

}  // namespace abreu

#endif
