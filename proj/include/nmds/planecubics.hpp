#pragma once

// Plane cubic curves of PG(2, q), their trisecant lines, and the set A_D of
// points lying on no trisecant, for the seven families D1, ..., D7.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nmds/projgeom.hpp"

namespace nmds {

/// Monomial order of CubicForm::coeffs (graded lexicographic on exponents):
/// X1^3, X1^2X2, X1^2X3, X1X2^2, X1X2X3, X1X3^2, X2^3, X2^2X3, X2X3^2, X3^3.
inline constexpr std::array<std::array<int, 3>, 10> kCubicMonomials{{
    {3, 0, 0}, {2, 1, 0}, {2, 0, 1}, {1, 2, 0}, {1, 1, 1},
    {1, 0, 2}, {0, 3, 0}, {0, 2, 1}, {0, 1, 2}, {0, 0, 3},
}};

enum class CurveFamily { D1, D2, D3, D4, D5, D6, D7 };
std::string to_string(CurveFamily c);
std::optional<CurveFamily> curve_from_string(const std::string& s);

/// Optional parameter overrides. Missing values are resolved to the smallest
/// encoding satisfying the family's side conditions.
struct CurveParams {
  std::optional<Elem> lambda, s, delta, xi, b;
  /// D2 and D6: require the attached cubic in lambda to be reducible
  /// (default) or irreducible when resolving lambda.
  std::optional<bool> irreducible;
};

struct CubicForm {
  CurveFamily family;
  std::array<Elem, 10> coeffs{};
  /// Resolved parameters by name ("lambda", "s", "delta", "xi", "b").
  std::map<std::string, Elem> params;
  /// Which case of the family applies ("q=1 mod 3", "irreducible", ...).
  std::string variant;
};

Elem evaluate(const Field& f, const CubicForm& d, const Point& p);

/// SideConditionViolated, WrongCongruenceClass.
CubicForm make_curve(CurveFamily which, const FieldPtr& field, const CurveParams& params = {});

PointSet curve_points(const Space& plane, const CubicForm& d);

/// Lines meeting the curve in exactly three points. CurveContainsLine if some
/// line meets it in more than three (by Bezout it is then a component).
std::vector<Line> trisecant_lines(const Space& plane, const CubicForm& d);

/// Points of the plane, on the curve or not, lying on no trisecant.
PointSet a_set(const Space& plane, const CubicForm& d);

struct LemmaPlaneResult {
  CubicForm curve;
  PointSet expected;
  PointSet computed;
  std::size_t curve_size = 0;
  std::size_t trisecants = 0;
  bool match = false;
};

/// Builds the expected A_D from the closed formulas and compares it with a_set.
LemmaPlaneResult verify_lemma_plane(const FieldPtr& field, CurveFamily which, const CurveParams& params = {});

}  // namespace nmds
