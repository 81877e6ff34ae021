#include "abreu/fd.hpp"

#include <cmath>

#include "abreu/error.hpp"

namespace abreu {

std::size_t PartialField::count_defined() const {
  std::size_t c = 0;
  for (auto d : def) c += (d != 0);
  return c;
}

double PartialField::sup_on(const std::vector<std::uint8_t>& mask) const {
  double m = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (def[i] && mask[i]) m = std::max(m, std::abs(v[i]));
  return m;
}

PartialField field_of(const GridFn& g) {
  PartialField f = PartialField::undefined(g.spec);
  for (std::size_t i = 0; i < g.values.size(); ++i)
    if (g.mask[i] != NodeMask::Outside) {
      f.v[i] = g.values[i];
      f.def[i] = 1;
    }
  return f;
}

PartialField interior_field_of(const GridFn& g) {
  PartialField f = PartialField::undefined(g.spec);
  for (std::size_t i = 0; i < g.values.size(); ++i)
    if (g.mask[i] == NodeMask::Interior) {
      f.v[i] = g.values[i];
      f.def[i] = 1;
    }
  return f;
}

namespace {

struct AxisView {
  const PartialField& f;
  std::size_t base;
  std::size_t stride;
  int pos, len;

  bool has(int off) const {
    int p = pos + off;
    if (p < 0 || p >= len) return false;
    return f.def[base + static_cast<std::size_t>(p) * stride] != 0;
  }
  double at(int off) const {
    return f.v[base + static_cast<std::size_t>(pos + off) * stride];
  }
};

AxisView axis_view(const PartialField& f, std::size_t idx, int axis) {
  auto ijk = f.spec.unindex(idx);
  std::size_t stride = f.spec.axis_stride(axis);
  std::size_t base = idx - static_cast<std::size_t>(ijk[axis]) * stride;
  return AxisView{f, base, stride, ijk[axis], f.spec.dims[axis]};
}

bool d1_at(const AxisView& a, double h, double* out) {
  if (a.has(-1) && a.has(1)) {
    *out = (a.at(1) - a.at(-1)) / (2 * h);
    return true;
  }
  if (a.has(1) && a.has(2)) {
    *out = (-3 * a.at(0) + 4 * a.at(1) - a.at(2)) / (2 * h);
    return true;
  }
  if (a.has(-1) && a.has(-2)) {
    *out = (3 * a.at(0) - 4 * a.at(-1) + a.at(-2)) / (2 * h);
    return true;
  }
  return false;
}

bool d2_at(const AxisView& a, double h, double* out) {
  if (a.has(-1) && a.has(1)) {
    *out = (a.at(1) - 2 * a.at(0) + a.at(-1)) / (h * h);
    return true;
  }
  if (a.has(1) && a.has(2) && a.has(3)) {
    *out = (2 * a.at(0) - 5 * a.at(1) + 4 * a.at(2) - a.at(3)) / (h * h);
    return true;
  }
  if (a.has(-1) && a.has(-2) && a.has(-3)) {
    *out = (2 * a.at(0) - 5 * a.at(-1) + 4 * a.at(-2) - a.at(-3)) / (h * h);
    return true;
  }
  return false;
}

}  // namespace

PartialField d1(const PartialField& f, int axis) {
  PartialField out = PartialField::undefined(f.spec);
  double h = f.spec.h[axis];
  for (std::size_t i = 0; i < f.v.size(); ++i) {
    if (!f.def[i]) continue;
    AxisView a = axis_view(f, i, axis);
    double val;
    if (d1_at(a, h, &val)) {
      out.v[i] = val;
      out.def[i] = 1;
    }
  }
  return out;
}

PartialField d2(const PartialField& f, int axis) {
  PartialField out = PartialField::undefined(f.spec);
  double h = f.spec.h[axis];
  for (std::size_t i = 0; i < f.v.size(); ++i) {
    if (!f.def[i]) continue;
    AxisView a = axis_view(f, i, axis);
    double val;
    if (d2_at(a, h, &val)) {
      out.v[i] = val;
      out.def[i] = 1;
    }
  }
  return out;
}

PartialField dmixed(const PartialField& f, int ax1, int ax2) {
  PartialField out = PartialField::undefined(f.spec);
  const GridSpec& s = f.spec;
  double h1 = s.h[ax1], h2 = s.h[ax2];
  std::size_t s1 = s.axis_stride(ax1), s2 = s.axis_stride(ax2);

  // fallback: symmetrized composition of one-sided first differences
  PartialField g12 = d1(d1(f, ax2), ax1);
  PartialField g21 = d1(d1(f, ax1), ax2);

  for (std::size_t i = 0; i < f.v.size(); ++i) {
    if (!f.def[i]) continue;
    auto ijk = s.unindex(i);
    bool ok = ijk[ax1] > 0 && ijk[ax1] + 1 < s.dims[ax1] && ijk[ax2] > 0 &&
              ijk[ax2] + 1 < s.dims[ax2];
    if (ok) {
      std::size_t pp = i + s1 + s2, pm = i + s1 - s2, mp = i - s1 + s2,
                  mm = i - s1 - s2;
      ok = f.def[pp] && f.def[pm] && f.def[mp] && f.def[mm];
      if (ok) {
        out.v[i] = (f.v[pp] - f.v[pm] - f.v[mp] + f.v[mm]) / (4 * h1 * h2);
        out.def[i] = 1;
        continue;
      }
    }
    if (g12.def[i] && g21.def[i]) {
      out.v[i] = 0.5 * (g12.v[i] + g21.v[i]);
      out.def[i] = 1;
    }
  }
  return out;
}

int sym_index(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  // packed upper triangle, row major
  return i * n - i * (i - 1) / 2 + (j - i);
}

int sym_count(int n) { return n * (n + 1) / 2; }

Mat HessianFields::hess_at(std::size_t idx, int n) const {
  Mat m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double val = comp[sym_index(n, i, j)].v[idx];
      m(i, j) = val;
      m(j, i) = val;
    }
  return m;
}

Mat HessianFields::inv_at(std::size_t idx, int n) const {
  Mat m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double val = inv[sym_index(n, i, j)].v[idx];
      m(i, j) = val;
      m(j, i) = val;
    }
  return m;
}

GradientFields fd_gradient(const GridFn& g) {
  PartialField f = field_of(g);
  GradientFields out;
  for (int d = 0; d < g.spec.dim; ++d) out.comp.push_back(d1(f, d));
  for (std::size_t i = 0; i < g.values.size(); ++i) {
    if (g.mask[i] != NodeMask::Interior) continue;
    for (int d = 0; d < g.spec.dim; ++d)
      if (!out.comp[d].defined(i))
        throw Error(ErrorCode::TooCoarse,
                    "interior node lacks a gradient stencil", {i});
  }
  return out;
}

HessianFields fd_hessian_det(const GridFn& g, double det_floor,
                             bool allow_degenerate) {
  const int n = g.spec.dim;
  PartialField f = field_of(g);
  HessianFields out;
  out.comp.resize(sym_count(n), PartialField::undefined(g.spec));
  for (int i = 0; i < n; ++i) {
    out.comp[sym_index(n, i, i)] = d2(f, i);
    for (int j = i + 1; j < n; ++j) out.comp[sym_index(n, i, j)] = dmixed(f, i, j);
  }

  out.det = PartialField::undefined(g.spec);
  out.inv.resize(sym_count(n), PartialField::undefined(g.spec));

  for (std::size_t idx = 0; idx < g.values.size(); ++idx) {
    if (g.mask[idx] != NodeMask::Interior) continue;
    bool have = true;
    for (const auto& c : out.comp) have = have && c.defined(idx);
    if (!have)
      throw Error(ErrorCode::TooCoarse,
                  "interior node lacks a Hessian stencil", {idx});
    Mat H = out.hess_at(idx, n);
    double d = H.det();
    out.det.v[idx] = d;
    out.det.def[idx] = 1;
    if (d > det_floor) {
      Mat inv = H.inverse();
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
                "Hessian determinant at or below floor", out.degenerate_nodes);
  return out;
}

}  // namespace abreu
