#include <doctest.h>

#include "nmds/planecubics.hpp"

using namespace nmds;

namespace {

// Oracle: evaluate from the monomial table directly and count, for every line,
// its points on the curve.
Elem eval_oracle(const Field& f, const CubicForm& d, const Point& p) {
  Elem v = 0;
  for (std::size_t k = 0; k < 10; ++k) {
    Elem term = d.coeffs[k];
    for (int i = 0; i < 3; ++i) term = f.mul(term, f.pow(p[i], kCubicMonomials[k][i]));
    v = f.add(v, term);
  }
  return v;
}

PointSet a_set_oracle(const Space& plane, const CubicForm& d) {
  const Field& f = plane.field();
  std::vector<bool> on(plane.size()), blocked(plane.size());
  for (std::uint32_t i = 0; i < plane.size(); ++i) on[i] = eval_oracle(f, d, plane.point(i)) == 0;
  std::vector<std::uint32_t> pts;
  plane.for_each_line([&](const Line& l) {
    plane.line_indices(l, pts);
    int k = 0;
    for (auto i : pts) k += on[i];
    if (k == 3)
      for (auto i : pts) blocked[i] = true;
  });
  PointSet out(plane);
  for (std::uint32_t i = 0; i < plane.size(); ++i)
    if (!blocked[i]) out.insert_index(i);
  return out;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("A_D agrees with the line-counting oracle") {
  struct Case {
    std::uint32_t q;
    CurveFamily fam;
  };
  for (auto [q, fam] : {Case{25, CurveFamily::D1}, Case{23, CurveFamily::D1}, Case{27, CurveFamily::D1},
                        Case{31, CurveFamily::D2}, Case{29, CurveFamily::D2}, Case{29, CurveFamily::D3},
                        Case{29, CurveFamily::D4}, Case{32, CurveFamily::D5}, Case{64, CurveFamily::D5},
                        Case{32, CurveFamily::D6}, Case{64, CurveFamily::D6}, Case{32, CurveFamily::D7}}) {
    CAPTURE(q);
    FieldPtr f = Field::of_order(q);
    Space plane(f, 2);
    CubicForm d = make_curve(fam, f);
    for (std::uint32_t i = 0; i < plane.size(); i += 7) CHECK(evaluate(*f, d, plane.point(i)) == eval_oracle(*f, d, plane.point(i)));
    CHECK(a_set(plane, d).same_points(a_set_oracle(plane, d)));
  }
}

TEST_CASE("trisecants meet the curve in exactly three points") {
  FieldPtr f = Field::of_order(29);
  Space plane(f, 2);
  CubicForm d = make_curve(CurveFamily::D3, f);
  PointSet pts = curve_points(plane, d);
  for (const auto& l : trisecant_lines(plane, d)) {
    int k = 0;
    for (const auto& x : plane.line_points(l)) k += pts.contains(x);
    CHECK(k == 3);
  }
}

TEST_CASE("D1 at q = 27: fifteen points off every trisecant") {
  auto r = verify_lemma_plane(Field::of_order(27), CurveFamily::D1);
  CHECK(r.match);
  CHECK(r.expected.size() == 15);
  CHECK(r.curve.variant == "q=0 mod 3");
}

TEST_CASE("D1 for q = -1 mod 3 gives U1 and U2") {
  FieldPtr f = Field::of_order(23);
  Space plane(f, 2);
  auto r = verify_lemma_plane(f, CurveFamily::D1);
  CHECK(r.match);
  PointSet want(plane);
  want.insert(plane.unit(0));
  want.insert(plane.unit(1));
  CHECK(r.computed.same_points(want));
}

TEST_CASE("side conditions and congruence classes") {
  FieldPtr f29 = Field::of_order(29), f32 = Field::of_order(32);
  CHECK(code_of([&] { make_curve(CurveFamily::D5, f29); }) == ErrorCode::WrongCongruenceClass);
  CHECK(code_of([&] { make_curve(CurveFamily::D2, f32); }) == ErrorCode::WrongCongruenceClass);
  CurveParams bad;
  bad.lambda = 1;
  CHECK(code_of([&] { make_curve(CurveFamily::D7, f32, bad); }) == ErrorCode::SideConditionViolated);
  CurveParams square;
  square.s = 4;
  CHECK(code_of([&] { make_curve(CurveFamily::D2, f29, square); }) == ErrorCode::SideConditionViolated);
  CHECK(curve_from_string("D4") == CurveFamily::D4);
  CHECK_FALSE(curve_from_string("D8").has_value());
}

TEST_CASE("resolved parameters are recorded") {
  CubicForm d = make_curve(CurveFamily::D2, Field::of_order(29));
  CHECK(d.params.at("s") == Field::of_order(29)->from_int(-3));
  CurveParams irr;
  irr.irreducible = true;
  CubicForm e = make_curve(CurveFamily::D6, Field::of_order(32), irr);
  CHECK(e.variant == "irreducible");
  CHECK(e.params.at("delta") == 1);
}
