#include <doctest.h>

#include <set>

#include "nmds/polarspaces.hpp"
#include "nmds/verify.hpp"

using namespace nmds;

TEST_CASE("W(3, q) generators and both ovoids") {
  for (std::uint32_t q : {4u, 8u}) {
    SymplecticSpace w(Field::of_order(q));
    auto gens = generators_W(w);
    CHECK(gens.size() == (q + 1) * (q * q + 1));
    for (const auto& l : gens) CHECK(w.form(l.a, l.b) == 0);
    Ovoid e = elliptic_ovoid_W(w);
    CHECK(e.points.size() == q * q + 1);
    CHECK(is_ovoid_of_W(w, e.points));
    if (q == 8) {
      Ovoid t = suzuki_ovoid_W(w);
      CHECK(t.points.size() == 65);
      CHECK(is_ovoid_of_W(w, t.points));
      CHECK(is_cap(t.points));
    }
  }
  CHECK_THROWS_AS(SymplecticSpace(Field::of_order(9)), Error);
}

TEST_CASE("non-ovoids are rejected") {
  SymplecticSpace w(Field::of_order(8));
  PointSet s = elliptic_ovoid_W(w).points;
  PointSet t(w.space());
  for (std::size_t i = 1; i < s.size(); ++i) t.insert(s[i]);
  CHECK_FALSE(is_ovoid_of_W(w, t));
}

TEST_CASE("random symplectic matrices preserve the form") {
  SymplecticSpace w(Field::of_order(8));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Matrix g = random_symplectic_matrix(w, seed);
    CHECK(w.preserves_form(g));
    CHECK(g == random_symplectic_matrix(w, seed));
    CHECK(is_ovoid_of_W(w, random_symplectic_image(w, suzuki_ovoid_W(w), seed).points));
  }
}

TEST_CASE("two elliptic ovoids meet in a point or a conic") {
  SymplecticSpace w(Field::of_order(8));
  Ovoid e = elliptic_ovoid_W(w);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto k = intersect_ovoids(random_symplectic_image(w, e, 2 * seed), random_symplectic_image(w, e, 2 * seed + 1)).size();
    CHECK((k == 1 || k == 9 || k == 65));
  }
}

TEST_CASE("two Suzuki-Tits ovoids meet in 1, q+1, 2q+1 or q -+ sqrt(2q) + 1 points") {
  SymplecticSpace w(Field::of_order(8));
  Ovoid t = suzuki_ovoid_W(w);
  const std::set<std::size_t> allowed{1, 9, 17, 5, 13, 65};
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto k = intersect_ovoids(random_symplectic_image(w, t, 2 * seed), random_symplectic_image(w, t, 2 * seed + 1)).size();
    CHECK(allowed.count(k) == 1);
  }
}

TEST_CASE("elliptic and Suzuki-Tits intersections and their plane sections") {
  for (std::uint32_t q : {8u, 32u}) {
    SymplecticSpace w(Field::of_order(q));
    Ovoid t = suzuki_ovoid_W(w), e = elliptic_ovoid_W(w);
    const std::uint32_t r = q == 8 ? 4 : 8;
    std::set<std::size_t> sizes;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      PointSet x = intersect_ovoids(random_symplectic_image(w, e, seed), t);
      sizes.insert(x.size());
      CHECK(plane_spectrum(x).max_size <= 4);
    }
    for (auto k : sizes) CHECK((k == q + 1 - r || k == q + 1 + r));
  }
}

TEST_CASE("Q(4, q), projection from the nucleus and lifting") {
  ParabolicQuadric q4(Field::of_order(8));
  CHECK(q4.points().size() == 585);
  CHECK(q4.nucleus() == q4.space().unit(2));
  for (const auto& p : q4.points().points()) {
    Point y = project_from_nucleus(q4, p);
    CHECK(lift_to_quadric(q4, y) == p);
  }
  CHECK_THROWS_AS(project_from_nucleus(q4, q4.nucleus()), Error);
  auto gens = generators_Q4(q4);
  CHECK(gens.size() == 585);
  for (const auto& l : gens)
    for (const auto& x : q4.space().line_points(l)) CHECK(q4.contains(x));
}

TEST_CASE("ovoids of Q(4, q)") {
  ParabolicQuadric q4(Field::of_order(8));
  Ovoid t = suzuki_ovoid_Q4(q4);
  CHECK(t.points.size() == 65);
  CHECK(is_ovoid_of_Q4(q4, t.points));
  EllipticSection es = elliptic_section_Q4(q4);
  CHECK(is_ovoid_of_Q4(q4, es.ovoid.points));
  for (const auto& p : es.ovoid.points.points()) CHECK(q4.space().incident(p, es.hyperplane));
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Matrix g = lift_symplectic(q4, random_symplectic_matrix(q4.projected(), seed));
    for (const auto& p : q4.points().points()) CHECK(q4.contains(apply(q4.space(), g, p)));
    CHECK(apply(q4.space(), g, q4.nucleus()) == q4.nucleus());
    CHECK(is_ovoid_of_Q4(q4, random_orthogonal_image(q4, es.ovoid, seed).points));
  }
}

TEST_CASE("secant profile of the Suzuki-Tits ovoid of Q(4, 8)") {
  ParabolicQuadric q4(Field::of_order(8));
  Ovoid t = suzuki_ovoid_Q4(q4);
  SecantProfile a = secant_profile(t, q4, 1), b = secant_profile(t, q4, 4);
  CHECK(a.secants == 65 * 64 / 2);
  CHECK(a.histogram == std::map<std::uint32_t, std::uint64_t>{{0, 455}, {4, 3640}});
  CHECK(a.counts == b.counts);
  CHECK(a.counts[q4.space().index(q4.nucleus())] == 0);
}

TEST_CASE("complete caps built from two ovoids") {
  ParabolicQuadric q4(Field::of_order(8));
  Ovoid t = suzuki_ovoid_Q4(q4);
  EllipticSection es = elliptic_section_Q4(q4);
  std::set<std::size_t> sizes;
  for (std::uint64_t seed = 0; seed < 20 && sizes.size() < 2; ++seed) {
    Ovoid e = random_orthogonal_image(q4, es.ovoid, seed);
    PointSet cap = build_cap(e, t, q4.nucleus());
    CHECK(cap.size() == 65 + 65 + 1 - set_intersection(e.points, t.points).size());
    CHECK(is_cap(cap));
    CHECK(addable_points(cap, Property::Cap).complete);
    sizes.insert(cap.size());
  }
  CHECK(sizes == std::set<std::size_t>{118, 126});
}
