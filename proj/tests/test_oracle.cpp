#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "helpers.hpp"

using namespace catgeo;

TEST_CASE("grid distance on the square") {
  auto sq = testutil::square();
  // diagonal moves are inside every Chebyshev radius, so the diagonal
  // comes out exact at any pitch
  for (double h : {0.25, 0.1, 0.05}) {
    for (int r : {1, 2, 3}) {
      auto g = grid_distance(sq, {0, 0}, {1, 1}, h, r);
      CHECK(g.value == Catch::Approx(std::sqrt(2.0)).margin(1e-12));
    }
  }
  auto g = grid_distance(sq, {0, 0}, {1, 0}, 0.1, 2);
  CHECK(g.value == Catch::Approx(1.0).margin(1e-12));
  CHECK(grid_distance(sq, {0.5, 0.5}, {0.5, 0.5}, 0.1, 1).value == 0.0);
}

TEST_CASE("stretch bound per radius") {
  auto sq = testutil::square();
  CHECK(grid_distance(sq, {0, 0}, {1, 1}, 0.25, 1).stretch_bound ==
        Catch::Approx(std::sqrt(2.0)));
  CHECK(grid_distance(sq, {0, 0}, {1, 1}, 0.25, 2).stretch_bound ==
        Catch::Approx(1.0823922002923940));
  CHECK(grid_distance(sq, {0, 0}, {1, 1}, 0.25, 3).stretch_bound ==
        Catch::Approx(1.0352761804100830));
}

TEST_CASE("grid distance through the wedge cone point") {
  auto wg = testutil::wedge();
  auto g = grid_distance(wg, {1, 0}, {0, 1}, 0.05, 2);
  CHECK(g.value == Catch::Approx(2.0).margin(1e-12));
}

TEST_CASE("grid distance across the book spine") {
  auto bk = testutil::book();
  // both pairs have known exact lengths via unfolding
  auto flat = grid_distance(bk, {0.5, 1, 0}, {0.5, 0, 1}, 0.05, 2);
  CHECK(flat.value == Catch::Approx(2.0).margin(1e-12));

  double d = std::sqrt(5.0);
  auto diag = grid_distance(bk, {0, 1, 0}, {1, 0, 1}, 0.1, 3);
  CHECK(diag.value >= d - 1e-9);
  CHECK(diag.value <= diag.stretch_bound * d + 1e-9);

  auto coarse = grid_distance(bk, {0, 1, 0}, {1, 0, 1}, 0.1, 1);
  CHECK(coarse.value >= d - 1e-9);
  CHECK(coarse.value <= coarse.stretch_bound * d + 1e-9);
}

TEST_CASE("refining the pitch never increases the value") {
  auto bk = testutil::book();
  std::vector<std::pair<Point, Point>> pairs{
      {{0, 1, 0}, {1, 0, 1}},
      {{0.5, 1, 0}, {0.5, 0, 1}},
      {{0.25, 0.75, 0}, {1, 0, 0.5}},
  };
  for (auto& [x, y] : pairs) {
    double coarse = grid_distance(bk, x, y, 0.1, 2).value;
    double fine = grid_distance(bk, x, y, 0.05, 2).value;
    CHECK(fine <= coarse + 1e-12);
    // raising the radius never increases it either
    double wide = grid_distance(bk, x, y, 0.1, 3).value;
    CHECK(wide <= coarse + 1e-12);
  }
}

TEST_CASE("grid parameter validation") {
  auto sq = testutil::square();
  CHECK_THROWS_AS(grid_distance(sq, {0, 0}, {1, 1}, 0.3, 2), ValidationError);
  CHECK_THROWS_AS(grid_distance(sq, {0, 0}, {1, 1}, 0.0, 2), ValidationError);
  CHECK_THROWS_AS(grid_distance(sq, {0, 0}, {1, 1}, -0.1, 2), ValidationError);
  CHECK_THROWS_AS(grid_distance(sq, {0, 0}, {1, 1}, 0.03, 2), ValidationError);
  CHECK_THROWS_AS(grid_distance(sq, {0, 0}, {1, 1}, 0.1, 0), ValidationError);
  CHECK_THROWS_AS(grid_distance(sq, {0, 0}, {1, 1}, 0.1, 4), ValidationError);
  CHECK_NOTHROW(grid_distance(sq, {0, 0}, {1, 1}, 0.25, 1));

  auto wg = testutil::wedge();
  CHECK_THROWS_AS(grid_distance(wg, {0.5, 0.5}, {1, 0}, 0.1, 2), NotInComplex);
  CHECK_THROWS_AS(grid_distance(sq, {1.5, 0}, {1, 1}, 0.1, 2), NotInComplex);
}

TEST_CASE("grid refuses oversized complexes") {
  auto big = gen_pip(14, 0.0, 1);  // a 14-cube: 2^14 vertices
  CHECK_THROWS_AS(grid_distance(big, Point(14, 0.0), Point(14, 0.0), 0.25, 1),
                  TooLarge);
}

TEST_CASE("unfolding two squares of the book") {
  auto bk = testutil::book();
  CHECK(unfold_two_cells(bk, {0.5, 1, 0}, {0.5, 0, 1}) ==
        Catch::Approx(2.0).margin(1e-12));
  CHECK(unfold_two_cells(bk, {0, 1, 0}, {1, 0, 1}) ==
        Catch::Approx(std::sqrt(5.0)).margin(1e-12));
  // symmetric in its arguments
  CHECK(unfold_two_cells(bk, {1, 0, 1}, {0, 1, 0}) ==
        Catch::Approx(std::sqrt(5.0)).margin(1e-12));
  // snapping tolerance applies before the cell search
  CHECK(unfold_two_cells(bk, {1e-16, 1.0, 0.0}, {1.0, 0.0, 1.0}) ==
        Catch::Approx(std::sqrt(5.0)).margin(1e-12));
}

TEST_CASE("unfolding rejects out-of-scope configurations") {
  auto bk = testutil::book();
  auto sq = testutil::square();
  // same square
  CHECK_THROWS_AS(unfold_two_cells(sq, {0.2, 0.3}, {0.9, 0.8}), NotApplicable);
  // geodesic passes a vertex, not an edge interior
  CHECK_THROWS_AS(unfold_two_cells(bk, {0, 1, 0}, {0, 0, 1}), NotApplicable);
  CHECK_THROWS_AS(unfold_two_cells(bk, {1, 1, 0}, {1, 0, 1}), NotApplicable);
  // no squares at all
  auto wg = testutil::wedge();
  CHECK_THROWS_AS(unfold_two_cells(wg, {0.5, 0}, {0, 0.5}), NotApplicable);
  auto ch = testutil::chain2();
  CHECK_THROWS_AS(unfold_two_cells(ch, {0.5, 0}, {1, 0.5}), NotApplicable);
  // invalid input points
  CHECK_THROWS_AS(unfold_two_cells(wg, {0.5, 0.5}, {1, 0}), NotInComplex);
}

TEST_CASE("grid value brackets the true distance on the square") {
  auto sq = testutil::square();
  // h = 0.05 grid nodes, so snapping is exact and the two-sided bracket
  // d <= value <= stretch * d holds verbatim
  std::vector<std::pair<Point, Point>> pairs{
      {{0.05, 0.25}, {0.9, 0.6}},
      {{0.0, 0.5}, {1.0, 0.35}},
      {{0.15, 0.0}, {0.7, 1.0}},
  };
  for (auto& [x, y] : pairs) {
    double d = l2_dist(x, y);  // the square is flat
    for (int r : {1, 2, 3}) {
      auto g = grid_distance(sq, x, y, 0.05, r);
      CHECK(g.value >= d - 1e-9);
      CHECK(g.value <= g.stretch_bound * d + 1e-9);
    }
  }
}
