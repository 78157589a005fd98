#include "nmds/planecubics.hpp"

#include <algorithm>

namespace nmds {

namespace {

const std::pair<CurveFamily, const char*> kCurveNames[] = {
    {CurveFamily::D1, "D1"}, {CurveFamily::D2, "D2"}, {CurveFamily::D3, "D3"}, {CurveFamily::D4, "D4"},
    {CurveFamily::D5, "D5"}, {CurveFamily::D6, "D6"}, {CurveFamily::D7, "D7"},
};

int monomial(int e1, int e2, int e3) {
  for (int k = 0; k < 10; ++k)
    if (kCubicMonomials[k] == std::array<int, 3>{e1, e2, e3}) return k;
  throw Error(ErrorCode::InvalidArgument, "not a cubic monomial");
}

int residue3(const Field& f) { return static_cast<int>(f.q() % 3); }

void require(bool ok, ErrorCode code, const std::string& why) {
  if (!ok) throw Error(code, why);
}

// Smallest lambda (in encoding order) for which poly(lambda) has roots, or none.
template <typename PolyOf>
std::optional<Elem> first_lambda(const Field& f, PolyOf poly_of, bool want_roots, Elem skip_below = 0) {
  for (Elem l = skip_below; l < f.q(); ++l)
    if (roots(f, poly_of(l)).empty() != want_roots) return l;
  return std::nullopt;
}

struct Builder {
  const Field& f;
  CubicForm& d;
  void add(int e1, int e2, int e3, Elem c) {
    auto& slot = d.coeffs[monomial(e1, e2, e3)];
    slot = f.add(slot, c);
  }
};

Elem resolve_delta(const Field& f, const CurveParams& p) {
  Elem delta = p.delta.value_or(f.pick_delta());
  require(delta < f.q() && f.trace(delta) == 1, ErrorCode::SideConditionViolated, "delta must have trace 1");
  return delta;
}

}  // namespace

std::string to_string(CurveFamily c) {
  for (auto& [k, name] : kCurveNames)
    if (k == c) return name;
  return "?";
}

std::optional<CurveFamily> curve_from_string(const std::string& s) {
  for (auto& [k, name] : kCurveNames)
    if (s == name) return k;
  return std::nullopt;
}

Elem evaluate(const Field& f, const CubicForm& d, const Point& p) {
  Elem s = 0;
  for (int k = 0; k < 10; ++k) {
    if (d.coeffs[k] == 0) continue;
    Elem t = d.coeffs[k];
    for (int i = 0; i < 3; ++i)
      for (int e = 0; e < kCubicMonomials[k][i]; ++e) t = f.mul(t, p.c[i]);
    s = f.add(s, t);
  }
  return s;
}

CubicForm make_curve(CurveFamily which, const FieldPtr& field, const CurveParams& p) {
  const Field& f = *field;
  CubicForm d{which, {}, {}, {}};
  Builder b{f, d};
  auto I = [&f](std::int64_t n) { return f.from_int(n); };
  const int r3 = residue3(f);
  const bool odd = !f.even();
  const Elem one = 1;

  switch (which) {
    case CurveFamily::D1:
      b.add(1, 0, 2, one);
      b.add(0, 3, 0, f.neg(one));
      d.variant = r3 == 0 ? "q=0 mod 3" : r3 == 1 ? "q=1 mod 3" : "q=-1 mod 3";
      break;

    case CurveFamily::D2:
    case CurveFamily::D3: {
      require(odd, ErrorCode::WrongCongruenceClass, "needs q odd");
      if (which == CurveFamily::D3) require(r3 == 2, ErrorCode::WrongCongruenceClass, "needs q = -1 (mod 3)");
      Elem s = which == CurveFamily::D3 ? I(-3) : p.s.value_or(r3 == 2 ? I(-3) : f.pick_nonsquare());
      require(s < f.q() && s != 0 && !f.is_square(s), ErrorCode::SideConditionViolated, "s must be a non-square");
      Elem lambda;
      if (which == CurveFamily::D2) {
        auto poly = [&](Elem l) {
          return std::vector<Elem>{f.mul(l, s), f.mul(I(3), s), f.mul(I(3), l), one};
        };
        auto l = p.lambda ? p.lambda : first_lambda(f, poly, true);
        require(l.has_value(), ErrorCode::SideConditionViolated, "no lambda with a root xi");
        lambda = *l;
        auto rs = roots(f, poly(lambda));
        Elem xi;
        if (p.xi) {
          xi = *p.xi;
          require(std::find(rs.begin(), rs.end(), xi) != rs.end(), ErrorCode::SideConditionViolated,
                  "xi is not a root of xi^3 + 3 l xi^2 + 3 s xi + l s");
        } else {
          require(!rs.empty(), ErrorCode::SideConditionViolated, "xi^3 + 3 l xi^2 + 3 s xi + l s has no root");
          xi = rs.front();
        }
        d.params["xi"] = xi;
        d.variant = r3 == 2 ? "q=-1 mod 3" : "q!=-1 mod 3";
      } else {
        auto poly = [&](Elem l) {
          return std::vector<Elem>{f.neg(f.mul(I(3), l)), I(-9), f.mul(I(3), l), one};
        };
        auto l = p.lambda ? p.lambda : first_lambda(f, poly, false);
        require(l.has_value(), ErrorCode::SideConditionViolated, "no lambda with F irreducible");
        lambda = *l;
        require(roots(f, poly(lambda)).empty(), ErrorCode::SideConditionViolated,
                "T^3 + 3 l T^2 - 9 T - 3 l must be irreducible");
        d.variant = "irreducible";
      }
      d.params["s"] = s;
      d.params["lambda"] = lambda;
      // X2^2 (X3 - l X2) - X1 (s X1 - X3)^2, with s = -3 for D3.
      b.add(0, 2, 1, one);
      b.add(0, 3, 0, f.neg(lambda));
      b.add(3, 0, 0, f.neg(f.mul(s, s)));
      b.add(2, 0, 1, f.mul(I(2), s));
      b.add(1, 0, 2, f.neg(one));
      break;
    }

    case CurveFamily::D4: {
      require(odd && r3 == 2, ErrorCode::WrongCongruenceClass, "needs q odd, q = -1 (mod 3)");
      const Elem half = f.inv(I(2));
      Elem l = p.lambda.value_or(0);
      if (!p.lambda)
        while (l == 1 || l == half) ++l;
      require(l < f.q() && l != 1 && l != half, ErrorCode::SideConditionViolated, "lambda must avoid 1 and 1/2");
      d.params["lambda"] = l;
      const Elem lm1 = f.sub(l, one);
      const Elem lm1_3 = f.pow(lm1, 3);
      const Elem c3 = f.add(f.sub(f.mul(I(3), f.mul(l, l)), f.mul(I(3), l)), one);   // 3l^2 - 3l + 1
      const Elem c2 = f.add(f.sub(f.mul(I(2), f.mul(l, l)), f.mul(I(2), l)), one);   // 2l^2 - 2l + 1
      b.add(0, 3, 0, one);
      b.add(2, 0, 1, f.neg(f.mul(I(27), lm1_3)));
      b.add(1, 0, 2, f.neg(c3));
      b.add(1, 1, 1, f.neg(f.mul(I(9), f.mul(lm1, c2))));
      b.add(0, 2, 1, f.neg(f.mul(l, c3)));
      d.variant = "lambda not in {1, 1/2}";
      break;
    }

    case CurveFamily::D5: {
      require(f.even(), ErrorCode::WrongCongruenceClass, "needs q even");
      const Elem delta = resolve_delta(f, p);
      d.params["delta"] = delta;
      if (r3 == 2) {
        auto rs = roots(f, {f.add(delta, 1), 1, 1});
        require(!rs.empty(), ErrorCode::SideConditionViolated, "b^2 + b + delta + 1 has no root");
        Elem bb = p.b.value_or(rs.front());
        require(std::find(rs.begin(), rs.end(), bb) != rs.end(), ErrorCode::SideConditionViolated,
                "b must satisfy b^2 + b + delta + 1 = 0");
        d.params["b"] = bb;
        d.variant = "q=-1 mod 3";
      } else {
        d.variant = "q=1 mod 3";
      }
      b.add(0, 3, 0, one);
      b.add(2, 1, 0, f.mul(delta, f.add(delta, 1)));
      b.add(2, 0, 1, delta);
      b.add(1, 0, 2, one);
      b.add(1, 1, 1, one);
      break;
    }

    case CurveFamily::D6: {
      require(f.even(), ErrorCode::WrongCongruenceClass, "needs q even");
      Elem delta;
      Elem lambda;
      if (r3 == 2) {
        delta = p.delta.value_or(1);
        require(delta == 1, ErrorCode::SideConditionViolated, "q = -1 (mod 3) requires delta = 1");
        auto poly = [&](Elem l) { return std::vector<Elem>{one, f.add(l, 1), l, one}; };
        const bool irreducible = p.irreducible.value_or(false);
        auto l = p.lambda ? p.lambda : first_lambda(f, poly, !irreducible);
        require(l.has_value(), ErrorCode::SideConditionViolated, "no lambda in the requested case");
        lambda = *l;
        auto rs = roots(f, poly(lambda));
        if (p.irreducible) require(rs.empty() == irreducible, ErrorCode::SideConditionViolated,
                                   "lambda is in the other reducibility case");
        if (rs.empty()) {
          d.variant = "irreducible";
        } else {
          Elem xi = p.xi.value_or(rs.front());
          require(std::find(rs.begin(), rs.end(), xi) != rs.end(), ErrorCode::SideConditionViolated,
                  "xi must be a root of T^3 + l T^2 + (l+1) T + 1");
          d.params["xi"] = xi;
          d.variant = "reducible";
        }
      } else {
        delta = resolve_delta(f, p);
        auto poly = [&](Elem l) {
          return std::vector<Elem>{f.add(f.add(f.mul(delta, l), l), one), f.add(f.add(delta, l), one),
                                   f.add(l, one), one};
        };
        auto l = p.lambda ? p.lambda : first_lambda(f, poly, true);
        require(l.has_value(), ErrorCode::SideConditionViolated, "no lambda with a root xi");
        lambda = *l;
        auto rs = roots(f, poly(lambda));
        require(!rs.empty(), ErrorCode::SideConditionViolated, "the cubic in xi has no root for this lambda");
        Elem xi = p.xi.value_or(rs.front());
        require(std::find(rs.begin(), rs.end(), xi) != rs.end(), ErrorCode::SideConditionViolated,
                "xi is not a root of the attached cubic");
        d.params["xi"] = xi;
        d.variant = "q=1 mod 3";
      }
      d.params["delta"] = delta;
      d.params["lambda"] = lambda;
      b.add(3, 0, 0, f.add(f.add(f.mul(delta, delta), delta), lambda));
      b.add(0, 3, 0, f.add(lambda, 1));
      b.add(2, 1, 0, f.add(delta, lambda));
      b.add(1, 2, 0, lambda);
      b.add(1, 0, 2, one);
      b.add(1, 1, 1, one);
      b.add(0, 2, 1, one);
      break;
    }

    case CurveFamily::D7: {
      require(f.even() && r3 == 2, ErrorCode::WrongCongruenceClass, "needs q even, q = -1 (mod 3)");
      Elem l = p.lambda.value_or(2);
      require(l < f.q() && l != 0 && l != 1, ErrorCode::SideConditionViolated, "lambda must avoid 0 and 1");
      d.params["lambda"] = l;
      const Elem mu = f.div(f.add(l, 1), l);
      b.add(0, 3, 0, one);
      b.add(1, 0, 2, one);
      b.add(2, 0, 1, f.pow(mu, 3));
      b.add(1, 1, 1, mu);
      d.variant = "lambda not in {0, 1}";
      break;
    }
  }
  return d;
}

PointSet curve_points(const Space& plane, const CubicForm& d) {
  if (plane.n() != 2) throw Error(ErrorCode::InvalidArgument, "plane cubics live in PG(2, q)");
  PointSet out(plane);
  for (std::uint32_t i = 0; i < plane.size(); ++i) {
    Point x = plane.point(i);
    if (evaluate(plane.field(), d, x) == 0) out.insert(x);
  }
  return out;
}

std::vector<Line> trisecant_lines(const Space& plane, const CubicForm& d) {
  PointSet pts = curve_points(plane, d);
  std::vector<Line> out;
  for (std::uint32_t h = 0; h < plane.size(); ++h) {
    std::vector<Point> on;
    for (const auto& x : plane.orthogonal(plane.point(h)))
      if (pts.contains(x)) on.push_back(x);
    if (on.size() > 3)
      throw Error(ErrorCode::CurveContainsLine, "a line meets the curve in " + std::to_string(on.size()) + " points");
    if (on.size() == 3) out.push_back(plane.line(on[0], on[1]));
  }
  return out;
}

PointSet a_set(const Space& plane, const CubicForm& d) {
  Bitmap covered(plane.size());
  std::vector<std::uint32_t> buf;
  for (const auto& l : trisecant_lines(plane, d)) {
    plane.line_indices(l, buf);
    for (auto i : buf) covered.set(i);
  }
  PointSet out(plane);
  for (std::uint32_t i = 0; i < plane.size(); ++i)
    if (!covered.test(i)) out.insert_index(i);
  return out;
}

LemmaPlaneResult verify_lemma_plane(const FieldPtr& field, CurveFamily which, const CurveParams& params) {
  const Field& f = *field;
  const std::uint32_t min_q = which == CurveFamily::D1 ? 23 : f.even() ? 32 : 29;
  require(f.q() >= min_q, ErrorCode::SideConditionViolated, "q is below the range of the closed formulas");

  LemmaPlaneResult res{make_curve(which, field, params), PointSet(Space(field, 2)), PointSet(Space(field, 2))};
  const Space& pl = res.expected.space();
  const CubicForm& d = res.curve;
  auto I = [&f](std::int64_t n) { return f.from_int(n); };
  auto par = [&d](const char* k) { return d.params.at(k); };
  auto put = [&](Elem a, Elem b, Elem c) { res.expected.insert(pl.make({a, b, c})); };
  auto sq = [&f](Elem x) { return f.mul(x, x); };
  const int r3 = residue3(f);

  switch (which) {
    case CurveFamily::D1:
      put(1, 0, 0);
      if (r3 == 2) put(0, 1, 0);
      if (r3 == 0)
        for (Elem a = 0; a < f.q(); ++a)
          if (a == 0 || !f.is_square(a)) put(a, 1, 0);
      break;

    case CurveFamily::D2: {
      const Elem s = par("s"), xi = par("xi");
      put(1, 0, s);
      if (r3 != 2) {
        const Elem den = f.add(f.mul(I(3), sq(xi)), s);
        require(den != 0, ErrorCode::SideConditionViolated, "3 xi^2 + s vanishes");
        put(1, f.neg(f.div(f.mul(I(8), f.mul(s, xi)), den)),
            f.div(f.mul(f.mul(I(3), s), f.add(sq(xi), f.mul(I(3), s))), den));
      } else {
        require(s == I(-3), ErrorCode::SideConditionViolated, "q = -1 (mod 3) formulas assume s = -3");
        const Elem den = f.sub(sq(xi), 1);
        require(den != 0 && xi != 1 && xi != f.neg(1), ErrorCode::SideConditionViolated, "xi = +-1");
        put(1, f.div(f.mul(I(8), xi), den), f.div(f.mul(I(3), f.sub(I(9), sq(xi))), den));
        for (int e : {1, -1}) {
          // upper signs e = 1: ((xi - 3)(1 + xi)/(1 - xi), 3 xi (xi + 3)/(1 - xi))
          const Elem em = I(e), three_e = I(3 * e);
          const Elem den2 = f.sub(1, f.mul(em, xi));
          put(1, f.div(f.mul(f.sub(xi, three_e), f.add(1, f.mul(em, xi))), den2),
              f.div(f.mul(f.mul(I(3), xi), f.add(xi, three_e)), den2));
        }
      }
      break;
    }

    case CurveFamily::D3:
      put(1, 0, I(-3));
      break;

    case CurveFamily::D4: {
      const Elem l = par("lambda"), lm1 = f.sub(l, 1);
      const Elem c3 = f.add(f.sub(f.mul(I(3), sq(l)), f.mul(I(3), l)), 1);
      put(sq(c3), f.neg(f.mul(I(9), f.mul(sq(lm1), c3))), f.mul(I(27), f.pow(lm1, 3)));
      put(1, I(-3), 0);
      put(sq(l), f.neg(f.mul(I(3), f.add(f.sub(sq(l), l), 1))), f.mul(I(27), lm1));
      put(sq(l), f.neg(f.mul(I(3), sq(lm1))), 0);
      break;
    }

    case CurveFamily::D5: {
      const Elem delta = par("delta");
      put(1, delta, f.add(delta, 1));
      put(1, delta, delta);
      if (r3 == 2) {
        const Elem bb = par("b");
        put(0, 1, bb);
        put(0, 1, f.add(bb, 1));
      }
      break;
    }

    case CurveFamily::D6: {
      const Elem delta = par("delta"), l = par("lambda");
      if (r3 == 2) {
        put(1, 1, 0);
        if (d.variant == "reducible") {
          const Elem xi = par("xi"), x2 = sq(xi);
          const Elem n = f.add(f.add(x2, xi), 1);  // xi^2 + xi + 1
          put(1, f.div(n, f.mul(xi, f.add(xi, 1))),
              f.div(f.add(f.add(f.mul(x2, l), f.mul(xi, l)), 1), f.mul(x2, f.add(x2, 1))));
          put(1, f.div(n, xi), f.div(f.mul(f.add(x2, 1), f.add(f.add(x2, f.mul(xi, l)), 1)), x2));
          put(1, f.div(n, f.add(xi, 1)), f.div(f.mul(x2, f.add(f.add(x2, f.mul(xi, l)), l)), f.add(x2, 1)));
        }
      } else {
        const Elem xi = par("xi"), x2 = sq(xi);
        put(f.add(f.add(f.add(x2, xi), delta), 1), f.add(f.add(x2, xi), delta),
            f.add(f.add(f.mul(f.add(delta, 1), x2), f.mul(delta, xi)), f.add(delta, 1)));
        put(1, 1, f.add(delta, 1));
      }
      break;
    }

    case CurveFamily::D7: {
      const Elem l = par("lambda"), mu = f.div(f.add(l, 1), l);
      put(0, 1, 0);
      put(1, sq(mu), 0);
      put(0, 1, mu);
      put(1, sq(mu), f.pow(mu, 3));
      break;
    }
  }

  res.computed = a_set(pl, d);
  res.curve_size = curve_points(pl, d).size();
  res.trisecants = trisecant_lines(pl, d).size();
  res.match = res.expected.same_points(res.computed);
  res.expected = res.expected.sorted();
  return res;
}

}  // namespace nmds
