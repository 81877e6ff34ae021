#include "abreu/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "abreu/error.hpp"

namespace abreu {

GuilleminParts guillemin_eval(const Polytope& P, const Pt& xi) {
  const int n = P.dim();
  GuilleminParts out;
  out.value = 0.0;
  out.grad = Pt(n);
  out.hess = Mat(n);
  for (const Facet& f : P.facets()) {
    double d = dot(f.normal, xi) - f.offset;
    if (d <= 0.0)
      throw Error(ErrorCode::PointOutside, "point not strictly interior");
    double ld = std::log(d);
    out.value += d * ld;
    for (int i = 0; i < n; ++i) out.grad[i] += f.normal[i] * (1.0 + ld);
    add_outer(out.hess, 1.0 / d, f.normal);
  }
  out.det = out.hess.det();
  return out;
}

double guillemin_value(const Polytope& P, const Pt& xi) {
  double v = 0.0;
  for (const Facet& f : P.facets()) {
    double d = dot(f.normal, xi) - f.offset;
    if (d < -1e-12)
      throw Error(ErrorCode::PointOutside, "point outside polytope");
    if (d > 0.0) v += d * std::log(d);
  }
  return v;
}

double guillemin_det_product(const Polytope& P, const Pt& xi) {
  GuilleminParts g = guillemin_eval(P, xi);
  double prod = g.det;
  for (const Facet& f : P.facets()) prod *= dot(f.normal, xi) - f.offset;
  return prod;
}

// --- SPotential --------------------------------------------------------------

double SPotential::value(const Pt& xi) const {
  return guillemin_value(*P, xi) + interpolate(phi, xi);
}

double SPotential::value_at_node(std::size_t i) const {
  return guillemin_value(*P, phi.spec.node(i)) + phi.values[i];
}

SPotential make_guillemin_potential(std::shared_ptr<const Polytope> P, double h,
                                    const Pt& p_o) {
  SPotential u;
  u.phi = make_grid_fn(*P, h);
  u.P = std::move(P);
  u.p_o = p_o;
  return u;
}

UHessData u_hessian_fields(const SPotential& u, double det_floor,
                           bool allow_degenerate) {
  const GridSpec& s = u.phi.spec;
  const int n = s.dim;
  PartialField f = field_of(u.phi);

  UHessData out;
  out.comp.resize(sym_count(n), PartialField::undefined(s));
  out.phi_comp.resize(sym_count(n), PartialField::undefined(s));
  for (int i = 0; i < n; ++i) {
    out.phi_comp[sym_index(n, i, i)] = d2(f, i);
    for (int j = i + 1; j < n; ++j)
      out.phi_comp[sym_index(n, i, j)] = dmixed(f, i, j);
  }
  const std::vector<PartialField>& phih = out.phi_comp;
  out.det = PartialField::undefined(s);
  out.inv.resize(sym_count(n), PartialField::undefined(s));

  for (std::size_t idx = 0; idx < s.size(); ++idx) {
    if (u.phi.mask[idx] != NodeMask::Interior) continue;
    bool have = true;
    for (const auto& c : phih) have = have && c.defined(idx);
    if (!have)
      throw Error(ErrorCode::TooCoarse, "interior node lacks stencil", {idx});

    GuilleminParts g = guillemin_eval(*u.P, s.node(idx));
    Mat H = g.hess;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double val = H(i, j) + phih[sym_index(n, i, j)].v[idx];
        out.comp[sym_index(n, i, j)].v[idx] = val;
        out.comp[sym_index(n, i, j)].def[idx] = 1;
      }
    Mat Hu = out.hess_at(idx, n);
    double d = Hu.det();
    out.det.v[idx] = d;
    out.det.def[idx] = 1;
    if (d > det_floor) {
      Mat inv = Hu.inverse();
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          out.inv[sym_index(n, i, j)].v[idx] = inv(i, j);
          out.inv[sym_index(n, i, j)].def[idx] = 1;
        }
    } else {
      out.degenerate_nodes.push_back(idx);
    }
  }
  if (!out.degenerate_nodes.empty() && !allow_degenerate)
    throw Error(ErrorCode::DegenerateHessian,
                "u Hessian determinant at or below floor",
                out.degenerate_nodes);
  return out;
}

Mat UHessData::hess_at(std::size_t idx, int n) const {
  Mat m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double val = comp[sym_index(n, i, j)].v[idx];
      m(i, j) = val;
      m(j, i) = val;
    }
  return m;
}

Mat UHessData::inv_at(std::size_t idx, int n) const {
  Mat m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double val = inv[sym_index(n, i, j)].v[idx];
      m(i, j) = val;
      m(j, i) = val;
    }
  return m;
}

GradientFields u_gradient_fields(const SPotential& u) {
  const GridSpec& s = u.phi.spec;
  PartialField f = field_of(u.phi);
  GradientFields out;
  for (int d = 0; d < s.dim; ++d) {
    PartialField g = d1(f, d);
    // add the analytic Guillemin gradient on Interior nodes, drop elsewhere
    PartialField r = PartialField::undefined(s);
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (u.phi.mask[i] != NodeMask::Interior || !g.defined(i)) continue;
      GuilleminParts gp = guillemin_eval(*u.P, s.node(i));
      r.v[i] = gp.grad[d] + g.v[i];
      r.def[i] = 1;
    }
    out.comp.push_back(std::move(r));
  }
  return out;
}

namespace {

// componentwise multilinear interpolation of a partial field, nearest-defined
// fallback for missing corners
double interp_partial(const PartialField& f, const Pt& xi) {
  const GridSpec& s = f.spec;
  std::array<int, kMaxDim> base{};
  std::array<double, kMaxDim> t{};
  for (int d = 0; d < s.dim; ++d) {
    double x = (xi[d] - s.lo[d]) / s.h[d];
    int b = static_cast<int>(std::floor(x));
    b = std::max(0, std::min(b, s.dims[d] - 2));
    base[d] = b;
    t[d] = x - b;
  }
  double acc = 0.0, wsum = 0.0;
  int corners = 1 << s.dim;
  double fallback = 0.0;
  bool have_fallback = false;
  for (int c = 0; c < corners; ++c) {
    auto ijk = base;
    double wgt = 1.0;
    for (int d = 0; d < s.dim; ++d) {
      int bit = (c >> d) & 1;
      ijk[d] += bit;
      wgt *= bit ? t[d] : (1.0 - t[d]);
    }
    std::size_t idx = s.index(ijk);
    if (f.defined(idx)) {
      acc += wgt * f.v[idx];
      wsum += wgt;
      if (!have_fallback || wgt > 0.5) {
        fallback = f.v[idx];
        have_fallback = true;
      }
    }
  }
  if (wsum <= 0.0) {
    if (!have_fallback)
      throw Error(ErrorCode::TooCoarse, "no defined nodes near point");
    return fallback;
  }
  return acc / wsum;
}

}  // namespace

Mat u_hessian_at(const SPotential& u, const UHessData& data, const Pt& xi) {
  // the composite fields carry the singular v part, so interpolate only the
  // smooth phi FD Hessian and add v analytically at the point
  const int n = u.P->dim();
  GuilleminParts g = guillemin_eval(*u.P, xi);
  Mat H = g.hess;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double val = interp_partial(data.phi_comp[sym_index(n, i, j)], xi);
      H(i, j) += val;
      H(j, i) = H(i, j);
    }
  return H;
}

SPotential normalize_at(const SPotential& u) {
  const GridSpec& s = u.phi.spec;
  const int n = s.dim;

  // convexity gate
  UHessData hd = u_hessian_fields(u, 0.0, /*allow_degenerate=*/true);
  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (u.phi.mask[i] != NodeMask::Interior) continue;
    if (!hd.hess_at(i, n).positive_definite()) bad.push_back(i);
  }
  if (!bad.empty())
    throw Error(ErrorCode::NotConvex, "Hessian not positive definite", bad);

  // nearest grid node to p_o
  std::array<int, kMaxDim> ijk{};
  for (int d = 0; d < n; ++d) {
    ijk[d] = static_cast<int>(std::lround((u.p_o[d] - s.lo[d]) / s.h[d]));
    ijk[d] = std::max(0, std::min(ijk[d], s.dims[d] - 1));
  }
  std::size_t i0 = s.index(ijk);
  if (u.phi.mask[i0] != NodeMask::Interior)
    throw Error(ErrorCode::ConfigInvalid, "p_o is not an interior grid node");
  Pt x0 = s.node(i0);

  GuilleminParts g0 = guillemin_eval(*u.P, x0);
  double val = g0.value + u.phi.values[i0];
  Pt grad = g0.grad;
  PartialField f = field_of(u.phi);
  for (int d = 0; d < n; ++d) {
    PartialField gd = d1(f, d);
    if (!gd.defined(i0))
      throw Error(ErrorCode::TooCoarse, "no gradient stencil at p_o");
    grad[d] += gd.v[i0];
  }

  SPotential out = u;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (out.phi.mask[i] == NodeMask::Outside) continue;
    Pt x = s.node(i);
    out.phi.values[i] -= val + dot(grad, x - x0);
  }
  return out;
}

SectionResult section(const SPotential& u, const Pt& p, double C) {
  const GridSpec& s = u.phi.spec;
  SectionResult out;
  out.mask.assign(s.size(), 0);

  std::array<int, kMaxDim> ijk{};
  for (int d = 0; d < s.dim; ++d) {
    ijk[d] = static_cast<int>(std::lround((p[d] - s.lo[d]) / s.h[d]));
    ijk[d] = std::max(0, std::min(ijk[d], s.dims[d] - 1));
  }
  out.seed_node = s.index(ijk);
  if (u.phi.mask[out.seed_node] == NodeMask::Outside)
    throw Error(ErrorCode::PointOutside, "section seed outside domain");

  auto level = [&](std::size_t i) { return u.value_at_node(i); };
  std::deque<std::size_t> queue;
  if (level(out.seed_node) <= C) {
    out.mask[out.seed_node] = 1;
    queue.push_back(out.seed_node);
  }
  while (!queue.empty()) {
    std::size_t i = queue.front();
    queue.pop_front();
    auto c = s.unindex(i);
    for (int d = 0; d < s.dim; ++d)
      for (int dir : {-1, +1}) {
        auto nb = c;
        nb[d] += dir;
        if (!s.in_bounds(nb)) continue;
        std::size_t j = s.index(nb);
        if (out.mask[j] || u.phi.mask[j] == NodeMask::Outside) continue;
        if (level(j) <= C) {
          out.mask[j] = 1;
          queue.push_back(j);
        }
      }
  }
  out.is_compact = true;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (out.mask[i] && u.phi.mask[i] == NodeMask::Band) out.is_compact = false;
  return out;
}

// --- barriers ----------------------------------------------------------------

double BarrierSpec::default_C(int dim, const Polytope& P) {
  double peak = 0.0;
  for (const Pt& v : P.vertices()) {
    double s2 = 0.0;
    for (int j = 1; j < dim; ++j) s2 += v[j] * v[j];
    peak = std::max(peak, std::max(v[0], s2));
  }
  return 8.0 * dim * (1.0 + peak);
}

BarrierSpec BarrierSpec::edge(int dim, double alpha, double beta, double C) {
  double lo = 1.0 / (2 * dim), hi = 1.0 - 1.0 / (2 * dim);
  if (!(alpha >= lo - 1e-12 && alpha <= hi + 1e-12 && beta >= lo - 1e-12 &&
        beta <= hi + 1e-12))
    throw Error(ErrorCode::OutOfRange, "edge barrier exponents outside range");
  if (!(C > 0)) throw Error(ErrorCode::OutOfRange, "barrier C must be positive");
  return BarrierSpec{Kind::Edge, dim, alpha, beta, C, 0.0};
}

BarrierSpec BarrierSpec::edge(const Polytope& P, double alpha, double beta) {
  return edge(P.dim(), alpha, beta, default_C(P.dim(), P));
}

BarrierSpec BarrierSpec::linear_cap(int dim, double alpha, double C, double a) {
  if (!(alpha > 1.0))
    throw Error(ErrorCode::OutOfRange, "linear cap barrier needs alpha > 1");
  if (!(C > 0) || !(a > 0))
    throw Error(ErrorCode::OutOfRange, "barrier constants must be positive");
  return BarrierSpec{Kind::LinearCap, dim, alpha, 0.0, C, a};
}

BarrierSpec BarrierSpec::linear_cap(const Polytope& P, double alpha) {
  int dim = P.dim();
  double C = default_C(dim, P);
  double x1max = 0.0, s2max = 0.0;
  for (const Pt& v : P.vertices()) {
    x1max = std::max(x1max, v[0]);
    double s2 = 0.0;
    for (int j = 1; j < dim; ++j) s2 += v[j] * v[j];
    s2max = std::max(s2max, s2);
  }
  // a chosen so xi1^alpha (C + sum xi_j^2) <= a xi1 on the polytope
  double a = 1.1 * std::pow(std::max(x1max, 1e-12), alpha - 1.0) * (C + s2max);
  return linear_cap(dim, alpha, C, a);
}

bool BarrierSpec::containment_holds(const Polytope& P) const {
  double bound = C / m();
  for (const Pt& v : P.vertices()) {
    if (v[0] > bound + 1e-12) return false;
    double s2 = 0.0;
    for (int j = 1; j < dim; ++j) s2 += v[j] * v[j];
    if (s2 > bound + 1e-12) return false;
  }
  return true;
}

namespace {

// rotation taking (xi_2..xi_n) to (rho, 0, ..): rows of R are the rotated
// basis expressed in original coordinates
Mat tail_rotation(const Pt& xi, double rho) {
  const int n = xi.n;
  Mat R = Mat::identity(n);
  if (n == 1 || rho == 0.0) return R;
  if (n == 2) {
    R(1, 1) = xi[1] / rho;
    return R;
  }
  // n == 3: rows 1,2 span the tail plane
  double c = xi[1] / rho, s = xi[2] / rho;
  R(1, 1) = c;
  R(1, 2) = s;
  R(2, 1) = -s;
  R(2, 2) = c;
  return R;
}

}  // namespace

BarrierEval barrier_eval(const BarrierSpec& B, const Pt& xi) {
  const int n = B.dim;
  if (xi.n != n) throw Error(ErrorCode::OutOfRange, "dimension mismatch");
  double x1 = xi[0];
  double rho2 = 0.0;
  for (int j = 1; j < n; ++j) rho2 += xi[j] * xi[j];
  double rho = std::sqrt(rho2);

  BarrierEval out;
  Mat Hrot(n);

  if (B.kind == BarrierSpec::Kind::Edge) {
    if (!(x1 > 0.0 && x1 < B.C && rho2 < B.C))
      throw Error(ErrorCode::OutOfRange, "point outside barrier domain");
    double a = B.alpha, b = B.beta, C = B.C;
    double W = C - rho2;
    double v = -std::pow(x1, a) * std::pow(C - x1, b) * std::pow(W, b);
    double g1 = a / x1 - b / (C - x1);
    Hrot(0, 0) = -v * (-g1 * g1 + a / (x1 * x1) + b / ((C - x1) * (C - x1)));
    if (n >= 2) {
      Hrot(0, 1) = Hrot(1, 0) = -v * g1 * (2 * b * rho / W);
      Hrot(1, 1) = -v * (2 * b * (C + rho2) - 4 * b * b * rho2) / (W * W);
      for (int i = 2; i < n; ++i) Hrot(i, i) = -v * 2 * b / W;
    }
    double AB = n >= 2 ? Hrot(0, 0) * Hrot(1, 1) - Hrot(0, 1) * Hrot(0, 1)
                       : Hrot(0, 0);
    double Dprod = 1.0;
    for (int i = 2; i < n; ++i) Dprod *= Hrot(i, i);
    out.value = v;
    out.det = AB * Dprod;
  } else {
    if (!(x1 > 0.0))
      throw Error(ErrorCode::OutOfRange, "linear cap barrier needs xi1 > 0");
    double a = B.alpha, C = B.C, s = B.a;
    out.value = std::pow(x1, a) * (C + rho2) - s * x1;
    Hrot(0, 0) = a * (a - 1.0) * std::pow(x1, a - 2.0) * (C + rho2);
    if (n >= 2) {
      Hrot(0, 1) = Hrot(1, 0) = 2.0 * a * rho * std::pow(x1, a - 1.0);
      for (int i = 1; i < n; ++i) Hrot(i, i) = 2.0 * std::pow(x1, a);
    }
    double bracket = a * (a - 1.0) * (C + rho2) - 2.0 * a * a * rho2;
    out.det = std::pow(2.0, n - 1) * bracket * std::pow(x1, n * a - 2.0);
  }

  Mat R = tail_rotation(xi, rho);
  // H = R^T Hrot R
  Mat tmp(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s2 = 0;
      for (int k = 0; k < n; ++k) s2 += Hrot(i, k) * R(k, j);
      tmp(i, j) = s2;
    }
  out.hess = Mat(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s2 = 0;
      for (int k = 0; k < n; ++k) s2 += R(k, i) * tmp(k, j);
      out.hess(i, j) = s2;
    }
  return out;
}

AlphaSchedule alpha_schedule(int n) {
  if (n < 2)
    throw Error(ErrorCode::ConfigInvalid, "alpha schedule needs n >= 2");
  double target = 1.0 - 1.0 / n;
  double q = 1.0 - 1.0 / n;
  AlphaSchedule out;
  out.k_star = 0;
  double qk = 1.0;
  for (int k = 1; k <= 64; ++k) {
    qk *= q;
    double alpha = 2.0 * (1.0 - qk);
    out.alphas.push_back(alpha);
    if (alpha < target) {
      out.k_star = k;
    } else {
      break;
    }
  }
  if (out.k_star == 0)
    throw Error(ErrorCode::ScheduleDegenerate,
                "alpha_1 >= 1 - 1/n; no strict schedule exists for n = " +
                    std::to_string(n));
  return out;
}

}  // namespace abreu
