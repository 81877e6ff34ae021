#include <doctest.h>

#include <random>

#include "abreu/error.hpp"
#include "abreu/polytope.hpp"

using namespace abreu;

TEST_CASE("facet distances on the unit square") {
  Polytope P = Polytope::unit_square();
  auto d = P.facet_distances(Pt{0.3, 0.5});
  REQUIRE(d.size() == 4);
  // facet order: x1 >= 0, -x1 >= -1, x2 >= 0, -x2 >= -1
  CHECK(d[0] == doctest::Approx(0.3));
  CHECK(d[1] == doctest::Approx(0.7));
  CHECK(d[2] == doctest::Approx(0.5));
  CHECK(d[3] == doctest::Approx(0.5));
}

TEST_CASE("facet distances on the interval are symmetric at the midpoint") {
  Polytope P = Polytope::interval(0.0, 1.0);
  auto d = P.facet_distances(Pt{0.5});
  CHECK(d[0] == doctest::Approx(0.5));
  CHECK(d[1] == doctest::Approx(0.5));
}

TEST_CASE("vertex of the square sits on two facets") {
  Polytope P = Polytope::unit_square();
  auto d = P.facet_distances(Pt{0.0, 0.0});
  int zeros = 0;
  for (double x : d) zeros += std::abs(x) < 1e-14;
  CHECK(zeros == 2);
}

TEST_CASE("euclidean boundary distance") {
  Polytope P = Polytope::unit_square();
  CHECK(P.euclidean_boundary_distance(Pt{0.3, 0.5}) == doctest::Approx(0.3));
  CHECK(P.euclidean_boundary_distance(Pt{0.5, 0.5}) == doctest::Approx(0.5));
  CHECK_THROWS_AS(P.euclidean_boundary_distance(Pt{1.2, 0.5}), Error);
}

TEST_CASE("containment classification") {
  Polytope P = Polytope::unit_square();
  CHECK(P.contains(Pt{0.5, 0.5}, 0.0) == Containment::Interior);
  CHECK(P.contains(Pt{0.0, 0.5}, 1e-12) == Containment::Boundary);
  CHECK(P.contains(Pt{-1.0, 0.0}, 0.0) == Containment::Outside);
}

TEST_CASE("facet distances are affine in xi") {
  Polytope P = Polytope::simplex2();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-1.0, 2.0);
  for (int t = 0; t < 50; ++t) {
    Pt x{U(rng), U(rng)}, y{U(rng), U(rng)};
    double a = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    Pt z = a * x + (1.0 - a) * y;
    auto dx = P.facet_distances(x), dy = P.facet_distances(y),
         dz = P.facet_distances(z);
    for (std::size_t k = 0; k < dx.size(); ++k)
      CHECK(dz[k] == doctest::Approx(a * dx[k] + (1 - a) * dy[k]).epsilon(1e-12));
  }
}

TEST_CASE("boundary distance is 1-Lipschitz on interior pairs") {
  Polytope P = Polytope::simplex2();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(0.02, 0.95);
  int tried = 0;
  while (tried < 60) {
    Pt x{U(rng), U(rng)}, y{U(rng), U(rng)};
    if (P.contains(x, 0.0) != Containment::Interior ||
        P.contains(y, 0.0) != Containment::Interior)
      continue;
    ++tried;
    double dx = P.euclidean_boundary_distance(x);
    double dy = P.euclidean_boundary_distance(y);
    CHECK(std::abs(dx - dy) <= norm(x - y) + 1e-12);
  }
}

TEST_CASE("every vertex is Boundary at tol 1e-10") {
  for (const Polytope& P :
       {Polytope::unit_square(), Polytope::simplex2(),
        Polytope::box(Pt{0.0, 0.0, 0.0}, Pt{1.0, 2.0, 1.5})}) {
    for (const Pt& v : P.vertices())
      CHECK(P.contains(v, 1e-10) == Containment::Boundary);
  }
}

TEST_CASE("vertices recovered from facet intersections") {
  Polytope P = Polytope::unit_square();
  CHECK(P.vertices().size() == 4);
  Polytope S = Polytope::simplex2();
  CHECK(S.vertices().size() == 3);
  Polytope B = Polytope::box(Pt{0.0, 0.0, 0.0}, Pt{1.0, 1.0, 1.0});
  CHECK(B.vertices().size() == 8);
}

TEST_CASE("degenerate facet data is rejected") {
  // facet x1 >= 2 cuts away the whole square: no interior
  CHECK_THROWS_AS(Polytope::from_facets(
                      1, {Pt{1.0}, Pt{-1.0}, Pt{1.0}}, {0.0, -1.0, 2.0}),
                  Error);
}
