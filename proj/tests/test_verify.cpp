#include <doctest.h>

#include <random>

#include "nmds/polarspaces.hpp"
#include "nmds/twistedcubic.hpp"
#include "nmds/verify.hpp"

using namespace nmds;

namespace {

// Oracles by direct subset enumeration.
bool cap_oracle(const PointSet& s) {
  const Space& sp = s.space();
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      for (std::size_t k = j + 1; k < s.size(); ++k) {
        std::vector<Point> t{s[i], s[j], s[k]};
        if (sp.rank(t) < 3) return false;
      }
  return true;
}

bool nmds_oracle(const PointSet& s) {
  if (s.size() < 5 || !cap_oracle(s)) return false;
  const Space& sp = s.space();
  bool four = false;
  const std::size_t n = s.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c)
        for (std::size_t d = c + 1; d < n; ++d) {
          std::vector<Point> t{s[a], s[b], s[c], s[d]};
          if (sp.rank(t) < 4) {
            four = true;
            for (std::size_t e = d + 1; e < n; ++e) {
              t.push_back(s[e]);
              if (sp.rank(t) < 4) return false;
              t.pop_back();
            }
          }
        }
  return four;
}

PointSet random_set(const Space& sp, std::size_t k, std::mt19937_64& rng) {
  PointSet s(sp);
  while (s.size() < k) s.insert_index(static_cast<std::uint32_t>(rng() % sp.size()));
  return s;
}

PointSet q8_intersection(std::size_t want) {
  SymplecticSpace w(Field::of_order(8));
  Ovoid t = suzuki_ovoid_W(w), e = elliptic_ovoid_W(w);
  for (std::uint64_t seed = 0;; ++seed) {
    PointSet x = intersect_ovoids(random_symplectic_image(w, e, seed), t);
    if (x.size() == want) return x;
  }
}

}  // namespace

TEST_CASE("cap and NMDS predicates agree with subset enumeration") {
  std::mt19937_64 rng(11);
  for (std::uint32_t q : {5u, 7u, 8u}) {
    Space sp(Field::of_order(q), 3);
    TwistedCubic c(Field::of_order(q));
    for (int t = 0; t < 60; ++t) {
      // Random subsets of C plus a few random points hit both outcomes.
      PointSet s(sp);
      for (const auto& p : c.points().points())
        if (rng() % 3) s.insert(p);
      for (int k = static_cast<int>(rng() % 3); k > 0; --k) s.insert_index(static_cast<std::uint32_t>(rng() % sp.size()));
      CHECK(is_cap(s) == cap_oracle(s));
      CHECK(is_cap(s, 3) == cap_oracle(s));
      CHECK(is_nmds(s).ok == nmds_oracle(s));
    }
    for (int t = 0; t < 20; ++t) {
      PointSet s = random_set(sp, 6, rng);
      CHECK(is_nmds(s).ok == nmds_oracle(s));
    }
  }
}

TEST_CASE("NMDS violations carry witnesses") {
  Space sp(Field::of_order(7), 3);
  TwistedCubic c(Field::of_order(7));
  auto r = is_nmds(c.points());
  CHECK(r.violation == NmdsViolation::NoFourCoplanar);
  PointSet s = c.points();
  s.insert(sp.combine(c.points()[0], 1, c.points()[1]));
  r = is_nmds(s);
  CHECK(r.violation == NmdsViolation::Collinear);
  CHECK(sp.rank(r.witness) == 2);
  PointSet tiny(sp);
  tiny.insert(sp.unit(0));
  CHECK(is_nmds(tiny).violation == NmdsViolation::TooSmall);
  PointSet five(sp);
  for (int i = 0; i < 3; ++i) five.insert(sp.unit(i));
  five.insert(sp.make({1, 1, 1, 0}));
  five.insert(sp.make({1, 2, 3, 0}));
  five.insert(sp.unit(3));
  r = is_nmds(five);
  CHECK(r.violation == NmdsViolation::FiveCoplanar);
}

TEST_CASE("spectra add up") {
  TwistedCubic c(Field::of_order(8));
  PointSet s = c.points();
  auto ps = plane_spectrum(s);
  CHECK(ps.total == 585);
  std::uint64_t incidences = 0, hyperplanes = 0;
  for (auto [k, v] : ps.histogram) incidences += k * v, hyperplanes += v;
  CHECK(hyperplanes == 585);
  CHECK(incidences == 9 * 73);
  // A plane meets C in 0, 1, 2 or 3 points.
  CHECK(ps.histogram.rbegin()->first == 3);
  auto ls = line_spectrum(s);
  CHECK(ls.histogram.at(2) == 36);
  // 73 lines through each point, 8 of them secants.
  CHECK(ls.histogram.at(1) == 9 * 65);
  std::uint64_t lines = 0;
  for (auto [k, v] : ls.histogram) lines += v;
  CHECK(lines == ls.total);
  CHECK(ls.total == Space(Field::of_order(8), 3).num_lines());
}

TEST_CASE("addable points against brute force") {
  std::mt19937_64 rng(5);
  for (std::uint32_t q : {5u, 7u, 9u}) {
    TwistedCubic c(Field::of_order(q));
    const Space& sp = c.space();
    PointSet base = c.points();
    base.insert(sp.unit(1));
    for (Property prop : {Property::Cap, Property::Nmds}) {
      if (prop == Property::Nmds && !is_nmds(base).ok) continue;
      auto r = addable_points(base, prop, 2);
      PointSet brute(sp);
      for (std::uint32_t i = 0; i < sp.size(); ++i) {
        if (base.contains_index(i)) continue;
        PointSet t = base;
        t.insert_index(i);
        if (prop == Property::Cap ? cap_oracle(t) : nmds_oracle(t)) brute.insert_index(i);
      }
      CHECK(r.addable.same_points(brute));
      CHECK(r.complete == brute.empty());
    }
  }
  Space sp(Field::of_order(5), 3);
  PointSet line(sp);
  for (const auto& p : sp.line_points(sp.unit(0), sp.unit(1))) line.insert(p);
  CHECK_THROWS_AS(addable_points(line, Property::Cap), Error);
}

TEST_CASE("extension search counts consistent sets") {
  TwistedCubic c(Field::of_order(7));
  PointSet base = c.points();
  auto r = extension_search(base, Property::Cap, 2);
  auto one = addable_points(base, Property::Cap);
  REQUIRE(r.extensions_by_size.size() == 3);
  CHECK(r.extensions_by_size[0] == 1);
  CHECK(r.extensions_by_size[1] == one.addable.size());
  // Pairs by direct enumeration.
  std::uint64_t pairs = 0;
  const auto& add = one.addable.points();
  for (std::size_t i = 0; i < add.size(); ++i)
    for (std::size_t j = i + 1; j < add.size(); ++j) {
      PointSet t = base;
      t.insert(add[i]);
      t.insert(add[j]);
      pairs += cap_oracle(t);
    }
  CHECK(r.extensions_by_size[2] == pairs);
  CHECK(extension_search(base, Property::Cap, 2, 4).extensions_by_size == r.extensions_by_size);
  CHECK_THROWS_AS(extension_search(base, Property::Cap, 3, 1, 10), Error);
  CHECK_THROWS_AS(extension_search(base, Property::Cap, 4), Error);
}

TEST_CASE("the 13-point intersection at q = 8 and its extensions") {
  PointSet x = q8_intersection(13);
  CHECK(is_nmds(x).ok);
  CHECK(nmds_oracle(x));
  auto r = extension_search(x, Property::Nmds, 2);
  CHECK(r.extensions_by_size[1] == 26);
  CHECK(r.extensions_by_size[2] == 0);
  for (const auto& t : r.witness_extensions) CHECK(t.size() == 1);
  PointSet y = q8_intersection(5);
  CHECK(plane_spectrum(y).max_size <= 4);
}

TEST_CASE("code distances") {
  // NMDS: d = n - k and dual distance k, one below the Singleton bound on both sides.
  PointSet x = q8_intersection(13);
  CodeExport g = export_code_matrices(x, CodeRole::Generator);
  CHECK(g.n == 13);
  CHECK(g.k == 4);
  REQUIRE(g.distance.has_value());
  CHECK(*g.distance == 9);
  CHECK(min_distance_generator(x) == 9);
  REQUIRE(g.dual_distance.has_value());
  CHECK(*g.dual_distance == 4);

  TwistedCubic c(Field::of_order(25));
  PointSet y = c.points();
  y.insert(c.space().unit(1));
  CHECK(min_distance_generator(y) == 23);
  CHECK(min_dependent_set(y, 10'000'000) == std::uint64_t{4});

  // A frame of PG(3, q): five points in general position, an MDS code.
  Space sp(Field::of_order(7), 3);
  PointSet frame(sp);
  for (int i = 0; i < 4; ++i) frame.insert(sp.unit(i));
  frame.insert(sp.make({1, 1, 1, 1}));
  CHECK(min_distance_generator(frame) == 2);
  CHECK(min_dependent_set(frame, 1000) == std::uint64_t{5});
  CodeExport h = export_code_matrices(frame, CodeRole::ParityCheck);
  CHECK(h.matrix.size() == 4);
  CHECK(h.matrix[0].size() == 5);
  CHECK(matrix_csv(h).find("1,0,0,0") == 0);

  PointSet plane(sp);
  plane.insert(sp.unit(0));
  plane.insert(sp.unit(1));
  plane.insert(sp.unit(2));
  CHECK_THROWS_AS(export_code_matrices(plane, CodeRole::Generator), Error);
}
