#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>

#include "abreu/error.hpp"
#include "abreu/fd.hpp"
#include "abreu/grid.hpp"
#include "abreu/quadrature.hpp"

using namespace abreu;

namespace {
double interval_guillemin(double x) {
  return x * std::log(x) + (1 - x) * std::log(1 - x);
}
}

TEST_CASE("mask layout on the unit interval") {
  Polytope P = Polytope::interval(0.0, 1.0);
  GridFn g = make_grid_fn(P, 1.0 / 8);
  REQUIRE(g.spec.dims[0] == 9);
  CHECK(g.mask[0] == NodeMask::Band);
  CHECK(g.mask[8] == NodeMask::Band);
  for (int i = 1; i < 8; ++i) CHECK(g.mask[i] == NodeMask::Interior);
}

TEST_CASE("mask consistent with containment on the simplex") {
  Polytope P = Polytope::simplex2();
  GridFn g = make_grid_fn(P, 1.0 / 16);
  for (std::size_t i = 0; i < g.spec.size(); ++i) {
    bool inside = P.contains(g.spec.node(i), 1e-12) != Containment::Outside;
    CHECK(inside == (g.mask[i] != NodeMask::Outside));
  }
}

TEST_CASE("fd gradient exact on affine and quadratic fields") {
  Polytope P = Polytope::unit_square();
  GridFn g = sample_grid_fn(P, 1.0 / 16, [](const Pt& x) { return x[0]; });
  auto grad = fd_gradient(g);
  for (std::size_t i = 0; i < g.spec.size(); ++i) {
    if (g.mask[i] != NodeMask::Interior) continue;
    CHECK(grad.comp[0].v[i] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(grad.comp[1].v[i] == doctest::Approx(0.0).epsilon(1e-12));
  }

  GridFn q = sample_grid_fn(P, 1.0 / 16, [](const Pt& x) { return x[0] * x[0]; });
  auto gq = fd_gradient(q);
  // centered differences are exact on quadratics
  for (std::size_t i = 0; i < q.spec.size(); ++i) {
    if (q.mask[i] != NodeMask::Interior) continue;
    Pt x = q.spec.node(i);
    if (x[0] == 0.5) CHECK(gq.comp[0].v[i] == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("fd gradient of the interval Guillemin potential vanishes at 1/2") {
  Polytope P = Polytope::interval(0.0, 1.0);
  GridFn g = sample_grid_fn(P, 1.0 / 64, [](const Pt& x) {
    double t = x[0];
    if (t <= 0.0 || t >= 1.0) return 0.0;
    return interval_guillemin(t);
  });
  auto grad = fd_gradient(g);
  std::size_t mid = 32;
  CHECK(std::abs(grad.comp[0].v[mid]) < 1e-12);
}

TEST_CASE("fd hessian det on a quadratic") {
  Polytope P = Polytope::unit_square();
  GridFn g = sample_grid_fn(
      P, 1.0 / 16, [](const Pt& x) { return x[0] * x[0] + x[1] * x[1]; });
  auto h = fd_hessian_det(g);
  for (std::size_t i = 0; i < g.spec.size(); ++i) {
    if (g.mask[i] != NodeMask::Interior) continue;
    CHECK(h.comp[sym_index(2, 0, 0)].v[i] == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(h.comp[sym_index(2, 1, 1)].v[i] == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(h.det.v[i] == doctest::Approx(4.0).epsilon(1e-10));
  }
}

TEST_CASE("fd hessian of interval Guillemin at the midpoint") {
  // oracle: apply the same centered stencil to the closed form
  double h = 1e-3;
  Polytope P = Polytope::interval(0.0, 1.0);
  GridFn g = sample_grid_fn(P, h, [](const Pt& x) {
    double t = x[0];
    if (t <= 0.0 || t >= 1.0) return 0.0;
    return interval_guillemin(t);
  });
  auto hd = fd_hessian_det(g);
  std::size_t mid = 500;
  REQUIRE(g.spec.node(mid)[0] == doctest::Approx(0.5));
  double stencil_oracle = (interval_guillemin(0.5 + h) -
                           2 * interval_guillemin(0.5) +
                           interval_guillemin(0.5 - h)) /
                          (h * h);
  CHECK(hd.det.v[mid] == doctest::Approx(stencil_oracle).epsilon(1e-10));
  // v'' = 1/xi + 1/(1-xi) = 4 at 1/2; centered FD carries O(h^2) truncation
  CHECK(hd.det.v[mid] == doctest::Approx(4.0).epsilon(2e-6));
}

TEST_CASE("affine field raises DegenerateHessian everywhere") {
  Polytope P = Polytope::interval(0.0, 1.0);
  GridFn g = sample_grid_fn(P, 1.0 / 32, [](const Pt& x) { return 3 * x[0]; });
  CHECK_THROWS_AS(fd_hessian_det(g), Error);
  auto h = fd_hessian_det(g, 1e-12, /*allow_degenerate=*/true);
  CHECK(h.degenerate_nodes.size() == 31);
}

TEST_CASE("hessian is exactly symmetric and inverse-consistent") {
  Polytope P = Polytope::unit_square();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-0.2, 0.2);
  double c = U(rng);
  GridFn g = sample_grid_fn(P, 1.0 / 24, [c](const Pt& x) {
    return x[0] * x[0] + 0.8 * x[1] * x[1] + c * x[0] * x[1] +
           0.1 * x[0] * x[0] * x[1];
  });
  auto h = fd_hessian_det(g);
  for (std::size_t i = 0; i < g.spec.size(); ++i) {
    if (g.mask[i] != NodeMask::Interior) continue;
    Mat H = h.hess_at(i, 2);
    CHECK(H(0, 1) == H(1, 0));  // exact, same stencil
    Mat inv = h.inv_at(i, 2);
    Mat prod = H.mul(inv);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        CHECK(prod(a, b) == doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-8));
  }
}

TEST_CASE("quadrature: volume and affine exactness") {
  Polytope P = Polytope::unit_square();
  GridSpec s = make_grid_spec(P, 1.0 / 128);
  CHECK(interior_integral(P, s, [](const Pt&) { return 1.0; }) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(interior_integral(P, s, [](const Pt& x) { return x[0]; }) ==
        doctest::Approx(0.5).epsilon(1e-12));

  // affine exactness at a very coarse h too, and on a clipped polytope
  GridSpec coarse = make_grid_spec(P, 1.0 / 3);
  CHECK(interior_integral(P, coarse, [](const Pt& x) { return 1 + x[1]; }) ==
        doctest::Approx(1.5).epsilon(1e-12));
  Polytope T = Polytope::simplex2();
  GridSpec st = make_grid_spec(T, 1.0 / 7);
  CHECK(interior_integral(T, st, [](const Pt& x) { return x[0]; }) ==
        doctest::Approx(1.0 / 6).epsilon(1e-12));
}

TEST_CASE("quadrature: integrable log singularity") {
  Polytope P = Polytope::interval(0.0, 1.0);
  GridSpec s = make_grid_spec(P, 1.0 / 1024);
  double got = interior_integral(P, s, [](const Pt& x) { return std::log(x[0]); });
  CHECK(got == doctest::Approx(-1.0).epsilon(5e-3));
}

TEST_CASE("quadrature: Richardson factor for a smooth integrand") {
  Polytope P = Polytope::unit_square();
  auto f = [](const Pt& x) { return std::exp(x[0]) * x[1] * x[1]; };
  double exact = (std::exp(1.0) - 1.0) / 3.0;
  double e1 = std::abs(interior_integral(P, make_grid_spec(P, 1.0 / 32), f) - exact);
  double e2 = std::abs(interior_integral(P, make_grid_spec(P, 1.0 / 64), f) - exact);
  CHECK(e1 / e2 >= 3.5);
}

TEST_CASE("boundary integral basics") {
  Polytope P = Polytope::unit_square();
  auto one = [](const Pt&) { return 1.0; };
  CHECK(boundary_integral(P, 1.0 / 64, one, one) ==
        doctest::Approx(4.0).epsilon(1e-6));
  CHECK(boundary_integral(P, 1.0 / 64, [](const Pt& x) { return x[0]; }, one) ==
        doctest::Approx(2.0).epsilon(1e-6));

  Polytope I = Polytope::interval(0.0, 1.0);
  CHECK(boundary_integral(I, 0.1, one, one) == doctest::Approx(2.0));

  // hypotenuse measure of the simplex is |edge| / |a| = 1
  Polytope T = Polytope::simplex2();
  CHECK(boundary_integral(T, 1.0 / 64, one, one) ==
        doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("boundary integral on a cube facet") {
  Polytope B = Polytope::box(Pt{0.0, 0.0, 0.0}, Pt{1.0, 1.0, 1.0});
  auto one = [](const Pt&) { return 1.0; };
  CHECK(boundary_integral(B, 0.26, one, one) == doctest::Approx(6.0).epsilon(1e-9));
}

TEST_CASE("grid serialization round trip") {
  Polytope P = Polytope::simplex2();
  GridFn g = sample_grid_fn(P, 1.0 / 13, [](const Pt& x) {
    return std::sin(3 * x[0]) + x[1];
  });
  auto dir = std::filesystem::temp_directory_path();
  std::string path = (dir / "abreu_grid_test.bin").string();
  write_binary(g, path);
  GridFn back = read_binary(path);
  REQUIRE(back.values.size() == g.values.size());
  for (std::size_t i = 0; i < g.values.size(); ++i) {
    CHECK(back.values[i] == g.values[i]);
    CHECK(back.mask[i] == g.mask[i]);
  }
  CHECK(back.spec.h[0] == g.spec.h[0]);
  write_csv(g, (dir / "abreu_grid_test.csv").string());
  std::filesystem::remove(path);
  std::filesystem::remove(dir / "abreu_grid_test.csv");
}

TEST_CASE("log collar integral reproduces the interval benchmark") {
  // -int log det(v'') over (0,1) with v'' = 1/(xi(1-xi)):
  // exact value  int log(xi(1-xi)) dxi = -2
  Polytope P = Polytope::interval(0.0, 1.0);
  GridSpec s = make_grid_spec(P, 1.0 / 256);
  double got = interior_integral_log_collar(
      P, s,
      [](const Pt& x) { return std::log(x[0] * (1.0 - x[0])); },
      [](const Pt&) { return 1.0; });
  CHECK(got == doctest::Approx(-2.0).epsilon(2e-3));
}
