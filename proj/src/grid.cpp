#include "abreu/grid.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "abreu/error.hpp"

namespace abreu {

GridSpec make_grid_spec(const Polytope& P, double h) {
  if (h <= 0) throw Error(ErrorCode::ConfigInvalid, "grid h must be positive");
  BoundingBox bb = P.bounding_box();
  GridSpec g;
  g.dim = P.dim();
  g.lo = bb.lo;
  g.hi = bb.hi;
  for (int i = 0; i < g.dim; ++i) {
    double len = bb.hi[i] - bb.lo[i];
    int cells = std::max(1, static_cast<int>(std::lround(len / h)));
    g.dims[i] = cells + 1;
    g.h[i] = len / cells;
  }
  return g;
}

std::vector<NodeMask> make_mask(const Polytope& P, const GridSpec& g,
                                double tol) {
  const std::size_t N = g.size();
  std::vector<NodeMask> mask(N, NodeMask::Outside);
  std::vector<std::uint8_t> in(N, 0);
  for (std::size_t i = 0; i < N; ++i)
    in[i] = P.contains(g.node(i), tol) != Containment::Outside;

  for (std::size_t i = 0; i < N; ++i) {
    if (!in[i]) continue;
    auto ijk = g.unindex(i);
    bool interior = true;
    // scan the {-1,0,1}^dim neighbourhood
    int total = 1;
    for (int d = 0; d < g.dim; ++d) total *= 3;
    for (int t = 0; t < total && interior; ++t) {
      auto nb = ijk;
      int q = t;
      for (int d = 0; d < g.dim; ++d) {
        nb[d] += (q % 3) - 1;
        q /= 3;
      }
      if (!g.in_bounds(nb) || !in[g.index(nb)]) interior = false;
    }
    mask[i] = interior ? NodeMask::Interior : NodeMask::Band;
  }
  return mask;
}

GridFn make_grid_fn(const Polytope& P, double h) {
  GridFn f;
  f.spec = make_grid_spec(P, h);
  f.mask = make_mask(P, f.spec);
  f.values.assign(f.spec.size(), 0.0);
  return f;
}

GridFn sample_grid_fn(const Polytope& P, double h,
                      const std::function<double(const Pt&)>& fn) {
  GridFn f = make_grid_fn(P, h);
  for (std::size_t i = 0; i < f.values.size(); ++i)
    if (f.inside(i)) f.values[i] = fn(f.spec.node(i));
  return f;
}

std::vector<double> extended_values(const GridFn& g) {
  std::vector<double> v = g.values;
  const GridSpec& s = g.spec;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (g.mask[i] != NodeMask::Outside) continue;
    auto ijk = s.unindex(i);
    // linear extrapolation from two inside neighbours along some axis
    for (int d = 0; d < s.dim; ++d) {
      for (int dir : {-1, +1}) {
        auto n1 = ijk, n2 = ijk;
        n1[d] += dir;
        n2[d] += 2 * dir;
        if (!s.in_bounds(n1) || !s.in_bounds(n2)) continue;
        std::size_t i1 = s.index(n1), i2 = s.index(n2);
        if (g.mask[i1] != NodeMask::Outside && g.mask[i2] != NodeMask::Outside) {
          v[i] = 2.0 * g.values[i1] - g.values[i2];
          goto next;
        }
      }
    }
    // fall back to the nearest inside neighbour
    for (int d = 0; d < s.dim; ++d) {
      for (int dir : {-1, +1}) {
        auto n1 = ijk;
        n1[d] += dir;
        if (s.in_bounds(n1) && g.mask[s.index(n1)] != NodeMask::Outside) {
          v[i] = g.values[s.index(n1)];
          goto next;
        }
      }
    }
  next:;
  }
  return v;
}

double interpolate(const GridFn& g, const Pt& xi) {
  const GridSpec& s = g.spec;
  std::array<int, kMaxDim> base{};
  std::array<double, kMaxDim> t{};
  for (int d = 0; d < s.dim; ++d) {
    double x = (xi[d] - s.lo[d]) / s.h[d];
    int b = static_cast<int>(std::floor(x));
    b = std::max(0, std::min(b, s.dims[d] - 2));
    base[d] = b;
    t[d] = x - b;
  }
  // lazily extend only the needed corners
  double acc = 0.0;
  int corners = 1 << s.dim;
  for (int c = 0; c < corners; ++c) {
    auto ijk = base;
    double wgt = 1.0;
    for (int d = 0; d < s.dim; ++d) {
      int bit = (c >> d) & 1;
      ijk[d] += bit;
      wgt *= bit ? t[d] : (1.0 - t[d]);
    }
    std::size_t idx = s.index(ijk);
    double val = g.values[idx];
    if (g.mask[idx] == NodeMask::Outside) {
      // inward linear extrapolation along the first workable axis
      bool done = false;
      for (int d = 0; d < s.dim && !done; ++d) {
        for (int dir : {-1, +1}) {
          auto n1 = ijk, n2 = ijk;
          n1[d] += dir;
          n2[d] += 2 * dir;
          if (!s.in_bounds(n1) || !s.in_bounds(n2)) continue;
          std::size_t i1 = s.index(n1), i2 = s.index(n2);
          if (g.mask[i1] != NodeMask::Outside &&
              g.mask[i2] != NodeMask::Outside) {
            val = 2.0 * g.values[i1] - g.values[i2];
            done = true;
            break;
          }
        }
      }
    }
    acc += wgt * val;
  }
  return acc;
}

// --- serialization ----------------------------------------------------------

namespace {

nlohmann::json mask_rle(const std::vector<NodeMask>& mask) {
  nlohmann::json runs = nlohmann::json::array();
  std::size_t i = 0;
  while (i < mask.size()) {
    std::size_t j = i;
    while (j < mask.size() && mask[j] == mask[i]) ++j;
    runs.push_back({static_cast<int>(mask[i]), j - i});
    i = j;
  }
  return runs;
}

std::vector<NodeMask> mask_from_rle(const nlohmann::json& runs, std::size_t n) {
  std::vector<NodeMask> mask;
  mask.reserve(n);
  for (const auto& r : runs) {
    int v = r[0].get<int>();
    std::size_t count = r[1].get<std::size_t>();
    mask.insert(mask.end(), count, static_cast<NodeMask>(v));
  }
  if (mask.size() != n)
    throw Error(ErrorCode::IoError, "mask run-length does not match size");
  return mask;
}

nlohmann::json spec_header(const GridSpec& s) {
  nlohmann::json j;
  j["dim"] = s.dim;
  j["dims"] = std::vector<int>(s.dims.begin(), s.dims.begin() + s.dim);
  j["h"] = std::vector<double>(s.h.begin(), s.h.begin() + s.dim);
  j["lo"] = s.lo.to_vector();
  j["hi"] = s.hi.to_vector();
  return j;
}

}  // namespace

void write_csv(const GridFn& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path);
  out.precision(17);
  for (int d = 0; d < g.spec.dim; ++d) out << "x" << d + 1 << ",";
  out << "value,mask\n";
  for (std::size_t i = 0; i < g.values.size(); ++i) {
    Pt p = g.spec.node(i);
    for (int d = 0; d < g.spec.dim; ++d) out << p[d] << ",";
    out << g.values[i] << "," << static_cast<int>(g.mask[i]) << "\n";
  }
}

void write_binary(const GridFn& g, const std::string& path) {
  nlohmann::json hdr = spec_header(g.spec);
  hdr["mask_rle"] = mask_rle(g.mask);
  hdr["count"] = g.values.size();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path);
  out << hdr.dump() << "\n";
  out.write(reinterpret_cast<const char*>(g.values.data()),
            static_cast<std::streamsize>(g.values.size() * sizeof(double)));
}

GridFn read_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  std::string line;
  std::getline(in, line);
  nlohmann::json hdr = nlohmann::json::parse(line);

  GridFn g;
  g.spec.dim = hdr["dim"].get<int>();
  auto dims = hdr["dims"].get<std::vector<int>>();
  auto h = hdr["h"].get<std::vector<double>>();
  g.spec.lo = Pt::from(hdr["lo"].get<std::vector<double>>());
  g.spec.hi = Pt::from(hdr["hi"].get<std::vector<double>>());
  for (int d = 0; d < g.spec.dim; ++d) {
    g.spec.dims[d] = dims[d];
    g.spec.h[d] = h[d];
  }
  std::size_t n = hdr["count"].get<std::size_t>();
  g.mask = mask_from_rle(hdr["mask_rle"], n);
  g.values.resize(n);
  in.read(reinterpret_cast<char*>(g.values.data()),
          static_cast<std::streamsize>(n * sizeof(double)));
  if (!in) throw Error(ErrorCode::IoError, "truncated grid dump " + path);
  return g;
}

}  // namespace abreu
