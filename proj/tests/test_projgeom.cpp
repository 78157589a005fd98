#include <doctest.h>

#include <random>
#include <set>

#include "nmds/projgeom.hpp"

using namespace nmds;

namespace {

std::uint64_t gauss(std::uint64_t q, int n, int k) {
  // number of k-dim subspaces of GF(q)^n
  std::uint64_t num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    std::uint64_t a = 1, b = 1;
    for (int j = 0; j < n - i; ++j) a *= q;
    for (int j = 0; j < i + 1; ++j) b *= q;
    num *= a - 1;
    den *= b - 1;
  }
  return num / den;
}

}  // namespace

TEST_CASE("point indexing is a bijection onto canonical vectors") {
  for (std::uint32_t q : {2u, 3u, 4u, 8u, 9u}) {
    for (int n : {2, 3, 4}) {
      Space s(Field::of_order(q), n);
      CHECK(s.size() == gauss(q, n + 1, 1));
      std::set<std::vector<Elem>> seen;
      for (std::uint32_t i = 0; i < s.size(); ++i) {
        Point p = s.point(i);
        REQUIRE(s.index(p) == i);
        Point r = p;
        REQUIRE(s.normalize(r));
        REQUIRE(r == p);
        seen.insert(std::vector<Elem>(p.c.begin(), p.c.begin() + p.len));
      }
      CHECK(seen.size() == s.size());
    }
  }
}

TEST_CASE("canonical form and scaling") {
  Space s(Field::of_order(7), 3);
  Point p = s.make({0, 3, 6, 1});
  CHECK(p[0] == 0);
  CHECK(p[1] == 1);
  CHECK(p[2] == 2);
  CHECK(p[3] == 5);
  CHECK(s.make_int({0, -8, -2, 2}) == p);
  CHECK_THROWS_AS(s.make({0, 0, 0, 0}), Error);
  CHECK(s.unit(2) == s.make({0, 0, 1, 0}));
}

TEST_CASE("line counts and incidences") {
  for (std::uint32_t q : {3u, 4u, 5u}) {
    for (int n : {2, 3}) {
      Space s(Field::of_order(q), n);
      CHECK(s.num_lines() == gauss(q, n + 1, 2));
      std::uint64_t count = 0;
      std::vector<std::uint32_t> pts;
      std::vector<std::uint64_t> through(s.size(), 0);
      s.for_each_line([&](const Line& l) {
        ++count;
        s.line_indices(l, pts);
        CHECK(pts.size() == q + 1);
        for (auto i : pts) ++through[i];
        CHECK(s.line(s.point(pts[0]), s.point(pts[1])) == l);
      });
      CHECK(count == s.num_lines());
      for (auto t : through) CHECK(t == gauss(q, n, 1));
    }
  }
}

TEST_CASE("rank, hyperplanes and orthogonal complements") {
  Space s(Field::of_order(5), 3);
  std::vector<Point> three{s.unit(0), s.unit(1), s.make({1, 1, 0, 0})};
  CHECK(s.rank(three) == 2);
  three[2] = s.unit(2);
  CHECK(s.rank(three) == 3);
  Hyperplane h = s.hyperplane_through(three);
  CHECK(h.coeffs == s.unit(3));
  CHECK(s.hyperplane_points(h).size() == s.hyperplane_size());
  CHECK(s.hyperplanes_through(s.unit(0)).size() == 31);
  CHECK_THROWS_AS(s.plane_span(s.unit(0), s.unit(1), s.make({1, 4, 0, 0})), Error);
  Hyperplane p = s.plane_span(s.unit(0), s.make({1, 1, 1, 1}), s.unit(3));
  for (const auto& x : s.hyperplane_points(p)) CHECK(s.incident(x, p));
}

TEST_CASE("collineations preserve incidence") {
  FieldPtr f = Field::of_order(9);
  Space s(f, 3);
  std::mt19937_64 rng(3);
  Matrix m = Matrix::identity(4);
  for (auto& x : m.a) x = static_cast<Elem>(rng() % 9);
  m.at(0, 0) = 1;
  std::vector<Point> rows;
  for (int r = 0; r < 4; ++r) {
    Point p;
    p.len = 4;
    for (int c = 0; c < 4; ++c) p.c[c] = m.at(r, c);
    rows.push_back(p);
  }
  if (s.rank(rows) < 4) return;
  std::set<std::uint32_t> image;
  for (std::uint32_t i = 0; i < s.size(); ++i) image.insert(s.index(apply(s, m, s.point(i))));
  CHECK(image.size() == s.size());
  Point a = s.point(5), b = s.point(77);
  for (const auto& x : s.line_points(a, b))
    CHECK(s.on_line(s.line(apply(s, m, a), apply(s, m, b)), apply(s, m, x)));
  CHECK(is_scalar(multiply(*f, Matrix::identity(4), Matrix::identity(4))));
}

TEST_CASE("point sets") {
  Space s(Field::of_order(4), 2);
  PointSet a(s), b(s);
  CHECK(a.insert(s.unit(0)));
  CHECK_FALSE(a.insert(s.unit(0)));
  a.insert(s.unit(1));
  b.insert(s.unit(1));
  b.insert(s.unit(2));
  CHECK(set_union(a, b).size() == 3);
  CHECK(set_intersection(a, b).size() == 1);
  CHECK(enumerate_points(s).size() == 21);
  PointSet c(s);
  c.insert(s.unit(1));
  c.insert(s.unit(0));
  CHECK(c.same_points(a));
  CHECK(c.sorted().indices().front() < c.sorted().indices().back());
  Bitmap bm(100);
  bm.set(3);
  bm.set(64);
  CHECK(bm.count() == 2);
  CHECK(bm.test(64));
  CHECK_FALSE(bm.test(65));
}

TEST_CASE("oversized spaces are rejected") {
  CHECK_THROWS_AS(Space(Field::of_order(128), 4), Error);
}
