#include "abreu/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "abreu/error.hpp"

namespace abreu {

namespace {

// nodes/weights on [-1, 1]
struct GLRule {
  std::vector<double> x, w;
};

GLRule gl_rule(int order) {
  switch (order) {
    case 1: return {{0.0}, {2.0}};
    case 2: return {{-0.5773502691896257, 0.5773502691896257}, {1.0, 1.0}};
    case 4:
      return {{-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
               0.8611363115940526},
              {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
               0.3478548451374538}};
    case 8:
      return {{-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
               -0.1834346424956498, 0.1834346424956498, 0.5255324099163290,
               0.7966664774136267, 0.9602898564975363},
              {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
               0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
               0.2223810344533745, 0.1012285362903763}};
    default:
      throw Error(ErrorCode::Internal, "unsupported GL order");
  }
}

std::vector<Pt> facet_vertices(const Polytope& P, int k, double tol = 1e-9) {
  std::vector<Pt> out;
  const Facet& f = P.facets()[k];
  double na = norm(f.normal);
  for (const Pt& v : P.vertices())
    if (std::abs(dot(f.normal, v) - f.offset) <= tol * (1.0 + na)) out.push_back(v);
  return out;
}

// orthonormal basis of the plane orthogonal to nrm (dim 3)
std::array<Pt, 2> plane_basis(const Pt& nrm) {
  Pt n = nrm;
  n *= 1.0 / norm(nrm);
  Pt t(3);
  if (std::abs(n[0]) <= std::abs(n[1]) && std::abs(n[0]) <= std::abs(n[2]))
    t = Pt{1, 0, 0};
  else if (std::abs(n[1]) <= std::abs(n[2]))
    t = Pt{0, 1, 0};
  else
    t = Pt{0, 0, 1};
  Pt u = t - dot(t, n) * n;
  u *= 1.0 / norm(u);
  Pt w{n[1] * u[2] - n[2] * u[1], n[2] * u[0] - n[0] * u[2],
       n[0] * u[1] - n[1] * u[0]};
  return {u, w};
}

// subdivide a triangle and emit centroid-rule points
void emit_triangle(const Pt& a, const Pt& b, const Pt& c, int levels,
                   double scale, int facet, std::vector<BoundaryPanel>& out) {
  if (levels == 0) {
    Pt ab = b - a, ac = c - a;
    Pt cr{ab[1] * ac[2] - ab[2] * ac[1], ab[2] * ac[0] - ab[0] * ac[2],
          ab[0] * ac[1] - ab[1] * ac[0]};
    double area = 0.5 * norm(cr);
    Pt ctr = (1.0 / 3.0) * (a + b + c);
    out.push_back({ctr, area * scale, facet});
    return;
  }
  Pt ab = 0.5 * (a + b), bc = 0.5 * (b + c), ca = 0.5 * (c + a);
  emit_triangle(a, ab, ca, levels - 1, scale, facet, out);
  emit_triangle(ab, b, bc, levels - 1, scale, facet, out);
  emit_triangle(ca, bc, c, levels - 1, scale, facet, out);
  emit_triangle(ab, bc, ca, levels - 1, scale, facet, out);
}

std::vector<BoundaryPanel> panels_impl(const Polytope& P, double target_h,
                                       int order) {
  std::vector<BoundaryPanel> out;
  const int n = P.dim();
  for (int k = 0; k < static_cast<int>(P.facets().size()); ++k) {
    const Facet& f = P.facets()[k];
    if (n == 1) {
      Pt x{f.offset / f.normal[0]};
      out.push_back({x, f.sigma_scale, k});
      continue;
    }
    if (n == 2) {
      auto vs = facet_vertices(P, k);
      if (vs.size() != 2)
        throw Error(ErrorCode::Internal, "facet without two vertices");
      Pt a = vs[0], b = vs[1];
      double len = norm(b - a);
      int pieces = std::max(1, static_cast<int>(std::ceil(len / target_h)));
      GLRule rule = gl_rule(order);
      for (int p = 0; p < pieces; ++p) {
        double t0 = static_cast<double>(p) / pieces;
        double t1 = static_cast<double>(p + 1) / pieces;
        double mid = 0.5 * (t0 + t1), half = 0.5 * (t1 - t0);
        for (std::size_t q = 0; q < rule.x.size(); ++q) {
          double t = mid + half * rule.x[q];
          Pt x = a + t * (b - a);
          out.push_back({x, 0.5 * rule.w[q] * (t1 - t0) * len * f.sigma_scale, k});
        }
      }
      continue;
    }
    // dim 3: fan-triangulate the facet polygon
    auto vs = facet_vertices(P, k);
    if (vs.size() < 3)
      throw Error(ErrorCode::Internal, "degenerate 3d facet");
    Pt ctr(3);
    for (const Pt& v : vs) ctr += v;
    ctr *= 1.0 / static_cast<double>(vs.size());
    auto basis = plane_basis(f.normal);
    std::sort(vs.begin(), vs.end(), [&](const Pt& p, const Pt& q) {
      Pt dp = p - ctr, dq = q - ctr;
      return std::atan2(dot(dp, basis[1]), dot(dp, basis[0])) <
             std::atan2(dot(dq, basis[1]), dot(dq, basis[0]));
    });
    double diam = 0;
    for (std::size_t i = 0; i < vs.size(); ++i)
      diam = std::max(diam, norm(vs[i] - ctr));
    int levels = std::max(0, static_cast<int>(
                                 std::ceil(std::log2(diam / target_h))));
    levels = std::min(levels, 6);
    for (std::size_t i = 0; i < vs.size(); ++i)
      emit_triangle(ctr, vs[i], vs[(i + 1) % vs.size()], levels,
                    f.sigma_scale, k, out);
  }
  return out;
}

}  // namespace

std::vector<BoundaryPanel> boundary_panels(const Polytope& P, double target_h) {
  return panels_impl(P, target_h, 1);
}

std::vector<BoundaryPanel> boundary_panels_gl(const Polytope& P,
                                              double target_h, int order) {
  return panels_impl(P, target_h, P.dim() == 2 ? order : 1);
}

ClippedCell clip_cell(const Polytope& P, const Pt& lo, const Pt& hi) {
  const int n = P.dim();
  if (n == 1) {
    double a = lo[0], b = hi[0];
    for (const Facet& f : P.facets()) {
      // keep {x : f.normal*x >= offset}
      if (f.normal[0] > 0)
        a = std::max(a, f.offset / f.normal[0]);
      else
        b = std::min(b, f.offset / f.normal[0]);
    }
    if (b <= a) return {0.0, lo};
    return {b - a, Pt{0.5 * (a + b)}};
  }
  if (n == 2) {
    // Sutherland-Hodgman against each facet half-plane
    std::vector<Pt> poly = {Pt{lo[0], lo[1]}, Pt{hi[0], lo[1]},
                            Pt{hi[0], hi[1]}, Pt{lo[0], hi[1]}};
    for (const Facet& f : P.facets()) {
      std::vector<Pt> next;
      auto dist = [&](const Pt& p) { return dot(f.normal, p) - f.offset; };
      for (std::size_t i = 0; i < poly.size(); ++i) {
        Pt cur = poly[i], nxt = poly[(i + 1) % poly.size()];
        double dc = dist(cur), dn = dist(nxt);
        if (dc >= 0) next.push_back(cur);
        if ((dc >= 0) != (dn >= 0)) {
          double t = dc / (dc - dn);
          next.push_back(cur + t * (nxt - cur));
        }
      }
      poly = std::move(next);
      if (poly.empty()) return {0.0, lo};
    }
    double area2 = 0, cx = 0, cy = 0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Pt& p = poly[i];
      const Pt& q = poly[(i + 1) % poly.size()];
      double cr = p[0] * q[1] - q[0] * p[1];
      area2 += cr;
      cx += (p[0] + q[0]) * cr;
      cy += (p[1] + q[1]) * cr;
    }
    double area = 0.5 * area2;
    if (area <= 1e-300) return {0.0, lo};
    return {area, Pt{cx / (3 * area2), cy / (3 * area2)}};
  }
  // dim 3: subsample
  constexpr int S = 4;
  int inside = 0;
  Pt acc(3);
  Pt step = hi - lo;
  for (int i = 0; i < S; ++i)
    for (int j = 0; j < S; ++j)
      for (int k = 0; k < S; ++k) {
        Pt p{lo[0] + (i + 0.5) / S * step[0], lo[1] + (j + 0.5) / S * step[1],
             lo[2] + (k + 0.5) / S * step[2]};
        if (P.contains(p, 0.0) != Containment::Outside) {
          ++inside;
          acc += p;
        }
      }
  if (inside == 0) return {0.0, lo};
  double vol = step[0] * step[1] * step[2] * inside / (S * S * S);
  acc *= 1.0 / inside;
  return {vol, acc};
}

namespace {

template <typename CellFn>
void for_each_cell(const GridSpec& g, CellFn&& fn) {
  std::array<int, kMaxDim> c{};
  std::array<int, kMaxDim> ncells{};
  for (int d = 0; d < g.dim; ++d) ncells[d] = g.dims[d] - 1;
  std::size_t total = 1;
  for (int d = 0; d < g.dim; ++d) total *= ncells[d];
  for (std::size_t t = 0; t < total; ++t) {
    std::size_t q = t;
    for (int d = g.dim - 1; d >= 0; --d) {
      c[d] = static_cast<int>(q % ncells[d]);
      q /= ncells[d];
    }
    Pt lo(g.dim), hi(g.dim);
    for (int d = 0; d < g.dim; ++d) {
      lo[d] = g.lo[d] + c[d] * g.h[d];
      hi[d] = lo[d] + g.h[d];
    }
    fn(lo, hi);
  }
}

bool cell_fully_inside(const Polytope& P, const Pt& lo, const Pt& hi) {
  int corners = 1 << P.dim();
  for (int c = 0; c < corners; ++c) {
    Pt p(P.dim());
    for (int d = 0; d < P.dim(); ++d) p[d] = ((c >> d) & 1) ? hi[d] : lo[d];
    if (P.contains(p, 1e-12) == Containment::Outside) return false;
  }
  return true;
}

}  // namespace

double interior_integral(const Polytope& P, const GridSpec& g,
                         const Sampler& f) {
  double acc = 0.0;
  for_each_cell(g, [&](const Pt& lo, const Pt& hi) {
    if (cell_fully_inside(P, lo, hi)) {
      Pt c = 0.5 * (lo + hi);
      double vol = 1.0;
      for (int d = 0; d < g.dim; ++d) vol *= hi[d] - lo[d];
      acc += vol * f(c);
    } else {
      ClippedCell cc = clip_cell(P, lo, hi);
      if (cc.volume > 0) acc += cc.volume * f(cc.centroid);
    }
  });
  return acc;
}

double interior_integral(const Polytope& P, const GridFn& g1,
                         const GridFn& g2) {
  return interior_integral(P, g1.spec, [&](const Pt& x) {
    return interpolate(g1, x) * interpolate(g2, x);
  });
}

double interior_integral_gl(const Polytope& P, const GridSpec& g,
                            const Sampler& f, int pts_per_axis) {
  GLRule rule = gl_rule(pts_per_axis);
  double acc = 0.0;
  for_each_cell(g, [&](const Pt& lo, const Pt& hi) {
    if (!cell_fully_inside(P, lo, hi)) {
      ClippedCell cc = clip_cell(P, lo, hi);
      if (cc.volume > 0) acc += cc.volume * f(cc.centroid);
      return;
    }
    // tensor product over the cell
    int npts = 1;
    for (int d = 0; d < g.dim; ++d) npts *= pts_per_axis;
    for (int t = 0; t < npts; ++t) {
      int q = t;
      Pt x(g.dim);
      double wgt = 1.0;
      for (int d = 0; d < g.dim; ++d) {
        int i = q % pts_per_axis;
        q /= pts_per_axis;
        double mid = 0.5 * (lo[d] + hi[d]), half = 0.5 * (hi[d] - lo[d]);
        x[d] = mid + half * rule.x[i];
        wgt *= half * rule.w[i];
      }
      acc += wgt * f(x);
    }
  });
  return acc;
}

double interior_integral_log_collar(const Polytope& P, const GridSpec& g,
                                    const Sampler& f, const Sampler& w,
                                    double kappa) {
  double t0 = kappa * g.max_h();
  double acc = 0.0;
  for_each_cell(g, [&](const Pt& lo, const Pt& hi) {
    ClippedCell cc{0.0, lo};
    if (cell_fully_inside(P, lo, hi)) {
      cc.volume = 1.0;
      for (int d = 0; d < g.dim; ++d) cc.volume *= hi[d] - lo[d];
      cc.centroid = 0.5 * (lo + hi);
    } else {
      cc = clip_cell(P, lo, hi);
    }
    if (cc.volume <= 0) return;
    double dE = P.euclidean_boundary_distance(cc.centroid);
    if (dE < t0 * (1.0 - 1e-9)) return;  // collar handled analytically
    acc += cc.volume * f(cc.centroid) * w(cc.centroid);
  });

  // per-facet collar: integral over [0, t0] of (c + log t) dt with the
  // constant pinned at the sample point sigma + t0 * nhat
  for (const BoundaryPanel& p : boundary_panels(P, g.max_h())) {
    const Facet& fc = P.facets()[p.facet];
    Pt nin = fc.normal;
    nin *= 1.0 / norm(fc.normal);
    Pt x = p.x + t0 * nin;
    if (P.contains(x, 0.0) == Containment::Outside) continue;
    acc += p.w * t0 * (f(x) - 1.0) * w(x);
  }
  return acc;
}

double boundary_integral(const Polytope& P, double h, const Sampler& g,
                         const Sampler& w) {
  double acc = 0.0;
  for (const BoundaryPanel& p : boundary_panels(P, h)) acc += p.w * g(p.x) * w(p.x);
  return acc;
}

double boundary_integral_gl(const Polytope& P, double h, const Sampler& g,
                            const Sampler& w, int order) {
  double acc = 0.0;
  for (const BoundaryPanel& p : boundary_panels_gl(P, h, order))
    acc += p.w * g(p.x) * w(p.x);
  return acc;
}

double polytope_volume(const Polytope& P, const GridSpec& g) {
  return interior_integral(P, g, [](const Pt&) { return 1.0; });
}

}  // namespace abreu
