#include "nmds/polarspaces.hpp"

#include <random>

#include "nmds/parallel.hpp"

namespace nmds {

std::string to_string(OvoidKind k) { return k == OvoidKind::Elliptic ? "elliptic" : "suzuki_tits"; }

SymplecticSpace::SymplecticSpace(FieldPtr field) : space_(std::move(field), 3) {
  if (!space_.field().even()) throw Error(ErrorCode::WrongCharacteristic, "W(3, q) ovoids need q even");
}

Elem SymplecticSpace::form(const Point& x, const Point& y) const {
  const Field& f = field();
  Elem s = f.mul(x[0], y[3]);
  s = f.add(s, f.mul(x[3], y[0]));
  s = f.add(s, f.mul(x[1], y[2]));
  return f.add(s, f.mul(x[2], y[1]));
}

bool SymplecticSpace::preserves_form(const Matrix& g) const {
  auto column = [&](int j) {
    Point c;
    c.len = 4;
    for (int i = 0; i < 4; ++i) c[i] = g.at(i, j);
    return c;
  };
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (form(column(i), column(j)) != form(space_.unit(i), space_.unit(j))) return false;
  return true;
}

Hyperplane polar_plane(const SymplecticSpace& w, const Point& p) {
  Point h;
  h.len = 4;
  h[0] = p[3];
  h[1] = p[2];
  h[2] = p[1];
  h[3] = p[0];
  return Hyperplane{w.space().normalized(h)};
}

std::vector<Line> generators_W(const SymplecticSpace& w) {
  if (w.space().q() > 32) throw Error(ErrorCode::TooLarge, "generator enumeration limited to q <= 32");
  std::vector<Line> out;
  w.space().for_each_line([&](const Line& l) {
    if (w.form(l.a, l.b) == 0) out.push_back(l);
  });
  return out;
}

namespace {

bool meets_each_once(const Space& s, const std::vector<Line>& lines, const PointSet& set) {
  Bitmap member(s.size());
  for (auto i : set.indices()) member.set(i);
  std::vector<std::uint32_t> idx;
  for (auto& l : lines) {
    s.line_indices(l, idx);
    int hits = 0;
    for (auto i : idx) hits += member.test(i);
    if (hits != 1) return false;
  }
  return true;
}

}  // namespace

bool is_ovoid_of_W(const SymplecticSpace& w, const PointSet& set) {
  const std::uint64_t q = w.space().q();
  if (set.size() != q * q + 1) return false;
  return meets_each_once(w.space(), generators_W(w), set);
}

Ovoid suzuki_ovoid_W(const SymplecticSpace& w) {
  const Field& f = w.field();
  if (!f.is_suzuki()) throw Error(ErrorCode::NotSuzukiField, f.describe() + " has no Suzuki automorphism");
  const Space& s = w.space();
  PointSet pts(s);
  for (Elem x2 = 0; x2 < f.q(); ++x2) {
    const Elem x2s = f.sigma(x2);
    const Elem x2s2 = f.mul(x2s, f.mul(x2, x2));
    for (Elem x3 = 0; x3 < f.q(); ++x3) {
      Elem x4 = f.add(f.add(f.mul(x2, x3), x2s2), f.sigma(x3));
      pts.insert(s.make({1, x2, x3, x4}));
    }
  }
  pts.insert(s.unit(3));
  return Ovoid{OvoidKind::SuzukiTits, Ambient::W3, std::move(pts)};
}

Ovoid elliptic_ovoid_W(const SymplecticSpace& w) {
  const Field& f = w.field();
  const Space& s = w.space();
  const Elem delta = f.pick_delta();
  PointSet pts(s);
  for (std::uint32_t i = 0; i < s.size(); ++i) {
    Point x = s.point(i);
    Elem v = f.add(f.mul(x[0], x[3]), f.mul(x[1], x[1]));
    v = f.add(v, f.mul(x[1], x[2]));
    v = f.add(v, f.mul(delta, f.mul(x[2], x[2])));
    if (v == 0) pts.insert(x);
  }
  return Ovoid{OvoidKind::Elliptic, Ambient::W3, std::move(pts)};
}

PointSet intersect_ovoids(const Ovoid& a, const Ovoid& b) {
  if (a.ambient != b.ambient || !a.points.space().same_ambient(b.points.space()))
    throw Error(ErrorCode::AmbientMismatch, "ovoids live in different spaces");
  return set_intersection(a.points, b.points);
}

Matrix random_symplectic_matrix(const SymplecticSpace& w, std::uint64_t seed) {
  const Field& f = w.field();
  const std::uint32_t q = f.q();
  constexpr int kTransvections = 32;
  std::mt19937_64 rng(seed);
  Matrix g = Matrix::identity(4);
  for (int t = 0; t < kTransvections; ++t) {
    Point v;
    v.len = 4;
    do {
      for (int i = 0; i < 4; ++i) v[i] = static_cast<Elem>(rng() % q);
    } while (v.is_zero());
    const Elem lambda = static_cast<Elem>(1 + rng() % (q - 1));
    // x -> x + lambda B(x, v) v, where B(x, v) = sum_i x_i (Jv)_i and Jv reverses v.
    Matrix tr = Matrix::identity(4);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) tr.at(r, c) = f.add(tr.at(r, c), f.mul(lambda, f.mul(v[r], v[3 - c])));
    g = multiply(f, tr, g);
  }
  if (!w.preserves_form(g)) throw Error(ErrorCode::NotFound, "transvection product lost the form");
  return g;
}

Ovoid transform(const Space& s, const Matrix& g, const Ovoid& ovoid) {
  PointSet pts(s);
  for (auto& p : ovoid.points.points()) pts.insert(apply(s, g, p));
  return Ovoid{ovoid.kind, ovoid.ambient, std::move(pts)};
}

Ovoid random_symplectic_image(const SymplecticSpace& w, const Ovoid& ovoid, std::uint64_t seed) {
  return transform(w.space(), random_symplectic_matrix(w, seed), ovoid);
}

ParabolicQuadric::ParabolicQuadric(FieldPtr field)
    : space_(field, 4), points_(space_), w_(field) {
  for (std::uint32_t i = 0; i < space_.size(); ++i) {
    Point x = space_.point(i);
    if (value(x) == 0) points_.insert(x);
  }
}

Elem ParabolicQuadric::value(const Point& x) const {
  const Field& f = field();
  Elem v = f.mul(x[0], x[4]);
  v = f.add(v, f.mul(x[1], x[3]));
  return f.add(v, f.mul(x[2], x[2]));
}

ParabolicQuadric parabolic_quadric(const FieldPtr& field) { return ParabolicQuadric(field); }

Point project_from_nucleus(const ParabolicQuadric& q4, const Point& p) {
  if (p == q4.nucleus()) throw Error(ErrorCode::ProjectingNucleus, "cannot project the nucleus");
  Point y;
  y.len = 4;
  y[0] = p[0];
  y[1] = p[1];
  y[2] = p[3];
  y[3] = p[4];
  return q4.projected().space().normalized(y);
}

Point lift_to_quadric(const ParabolicQuadric& q4, const Point& y) {
  const Field& f = q4.field();
  Point x;
  x.len = 5;
  x[0] = y[0];
  x[1] = y[1];
  x[2] = f.sqrt_even(f.add(f.mul(y[0], y[3]), f.mul(y[1], y[2])));
  x[3] = y[2];
  x[4] = y[3];
  return q4.space().normalized(x);
}

std::vector<Line> generators_Q4(const ParabolicQuadric& q4) {
  const Space& s = q4.space();
  std::vector<Line> out;
  for (auto& l : generators_W(q4.projected())) {
    Line lifted = s.line(lift_to_quadric(q4, l.a), lift_to_quadric(q4, l.b));
    for (auto& p : s.line_points(lifted))
      if (!q4.contains(p)) throw Error(ErrorCode::NotFound, "lifted generator leaves the quadric");
    out.push_back(lifted);
  }
  return out;
}

bool is_ovoid_of_Q4(const ParabolicQuadric& q4, const PointSet& set) {
  const std::uint64_t q = q4.space().q();
  if (set.size() != q * q + 1) return false;
  for (auto& p : set.points())
    if (!q4.contains(p)) return false;
  return meets_each_once(q4.space(), generators_Q4(q4), set);
}

Ovoid suzuki_ovoid_Q4(const ParabolicQuadric& q4) {
  const Field& f = q4.field();
  if (!f.is_suzuki()) throw Error(ErrorCode::NotSuzukiField, f.describe() + " has no Suzuki automorphism");
  const Space& s = q4.space();
  PointSet pts(s);
  for (Elem x2 = 0; x2 < f.q(); ++x2) {
    const Elem x2s = f.sigma(x2);
    for (Elem x3 = 0; x3 < f.q(); ++x3) {
      const Elem x3s = f.sigma(x3);
      Elem x4 = f.add(f.mul(x2s, x2), x3s);
      Elem x5 = f.add(f.add(f.mul(x2, x3s), f.mul(x2s, f.mul(x2, x2))), f.mul(x3, x3));
      pts.insert(s.make({1, x2, x3, x4, x5}));
    }
  }
  pts.insert(s.unit(4));
  return Ovoid{OvoidKind::SuzukiTits, Ambient::Q4, std::move(pts)};
}

EllipticSection elliptic_section_Q4(const ParabolicQuadric& q4) {
  const Space& s = q4.space();
  const std::uint64_t q = s.q();
  if (q > 32) throw Error(ErrorCode::TooLarge, "elliptic section scan limited to q <= 32");
  for (std::uint32_t h = 0; h < s.size(); ++h) {
    const Point coeffs = s.point(h);
    std::uint64_t count = 0;
    for (auto& p : q4.points().points()) count += s.dot(p, coeffs) == 0;
    if (count != q * q + 1) continue;
    PointSet pts(s);
    for (auto& p : q4.points().points())
      if (s.dot(p, coeffs) == 0) pts.insert(p);
    return EllipticSection{Ovoid{OvoidKind::Elliptic, Ambient::Q4, std::move(pts)}, Hyperplane{coeffs}, h};
  }
  throw Error(ErrorCode::NotFound, "no elliptic hyperplane section");
}

Matrix lift_symplectic(const ParabolicQuadric& q4, const Matrix& g) {
  const Field& f = q4.field();
  static constexpr int kSlot[4] = {0, 1, 3, 4};  // projected coordinate -> quadric coordinate
  Matrix m{5, std::vector<Elem>(25, 0)};
  m.at(2, 2) = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m.at(kSlot[i], kSlot[j]) = g.at(i, j);
  // New X3 = X3 + sum_j c_j y_j with c_j^2 = y1y4 + y2y3 evaluated at column j of g.
  for (int j = 0; j < 4; ++j) {
    Elem v = f.add(f.mul(g.at(0, j), g.at(3, j)), f.mul(g.at(1, j), g.at(2, j)));
    m.at(2, kSlot[j]) = f.sqrt_even(v);
  }
  return m;
}

Ovoid random_orthogonal_image(const ParabolicQuadric& q4, const Ovoid& ovoid, std::uint64_t seed) {
  const Matrix g = lift_symplectic(q4, random_symplectic_matrix(q4.projected(), seed));
  return transform(q4.space(), g, ovoid);
}

SecantProfile secant_profile(const Ovoid& ovoid, const ParabolicQuadric& q4, int jobs) {
  const Space& s = q4.space();
  if (s.q() > 32) throw Error(ErrorCode::TooLarge, "secant profile limited to q <= 32");
  const auto& pts = ovoid.points.points();
  const std::size_t n = pts.size();
  Bitmap on_ovoid(s.size());
  for (auto i : ovoid.points.indices()) on_ovoid.set(i);

  const std::size_t workers = static_cast<std::size_t>(std::max(1, jobs));
  std::vector<std::vector<std::uint32_t>> partial(workers, std::vector<std::uint32_t>(s.size(), 0));
  parallel_chunks(jobs, n, [&](std::size_t w, std::size_t begin, std::size_t end) {
    std::vector<std::uint32_t> idx;
    auto& counts = partial[w];
    for (std::size_t i = begin; i < end; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        s.line_indices(s.line(pts[i], pts[j]), idx);
        for (auto k : idx)
          if (!on_ovoid.test(k)) ++counts[k];
      }
  });

  SecantProfile out;
  out.counts.assign(s.size(), 0);
  for (auto& part : partial)
    for (std::size_t i = 0; i < part.size(); ++i) out.counts[i] += part[i];
  out.secants = n * (n - 1) / 2;
  const std::uint32_t nucleus = s.index(q4.nucleus());
  for (std::uint32_t i = 0; i < s.size(); ++i) {
    if (i == nucleus || q4.points().contains_index(i)) continue;
    ++out.histogram[out.counts[i]];
  }
  return out;
}

PointSet build_cap(const Ovoid& elliptic, const Ovoid& suzuki, const Point& nucleus) {
  if (elliptic.ambient != Ambient::Q4 || suzuki.ambient != Ambient::Q4 ||
      !elliptic.points.space().same_ambient(suzuki.points.space()))
    throw Error(ErrorCode::AmbientMismatch, "cap needs two ovoids of the same Q(4, q)");
  PointSet cap = set_union(elliptic.points, suzuki.points);
  cap.insert(nucleus);
  return cap;
}

}  // namespace nmds
