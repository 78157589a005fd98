#pragma once

// W(3, q) with the form x1y4 + x4y1 + x2y3 + x3y2, its elliptic and
// Suzuki-Tits ovoids, the parabolic quadric Q(4, q): X1X5 + X2X4 + X3^2 = 0
// with nucleus U3, and the caps built from two ovoids of Q(4, q).
// Everything here assumes q even.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nmds/projgeom.hpp"

namespace nmds {

enum class OvoidKind { Elliptic, SuzukiTits };
enum class Ambient { W3, Q4 };

std::string to_string(OvoidKind k);

struct Ovoid {
  OvoidKind kind;
  Ambient ambient;
  PointSet points;
};

class SymplecticSpace {
 public:
  /// q must be even; WrongCharacteristic otherwise.
  explicit SymplecticSpace(FieldPtr field);

  const Space& space() const { return space_; }
  const Field& field() const { return space_.field(); }
  Elem form(const Point& x, const Point& y) const;
  /// True iff the 4x4 matrix preserves the form on column vectors.
  bool preserves_form(const Matrix& g) const;

 private:
  Space space_;
};

Hyperplane polar_plane(const SymplecticSpace& w, const Point& p);
/// All totally isotropic lines, (q+1)(q^2+1) of them. TooLarge for q > 32.
std::vector<Line> generators_W(const SymplecticSpace& w);
/// Every generator meets the set in exactly one point (and |set| = q^2 + 1).
bool is_ovoid_of_W(const SymplecticSpace& w, const PointSet& set);

/// {(1,x2,x3,x4) : x2x3 + x2^(s+2) + x3^s + x4 = 0} u {U4}, s the Suzuki automorphism.
Ovoid suzuki_ovoid_W(const SymplecticSpace& w);
/// Zero set of X1X4 + X2^2 + X2X3 + delta X3^2, Tr(delta) = 1. Its polar form is
/// the symplectic form, so it is an ovoid of W(3, q).
Ovoid elliptic_ovoid_W(const SymplecticSpace& w);

PointSet intersect_ovoids(const Ovoid& a, const Ovoid& b);

/// Product of pseudorandom symplectic transvections x -> x + l B(x, v) v.
Matrix random_symplectic_matrix(const SymplecticSpace& w, std::uint64_t seed);
Ovoid random_symplectic_image(const SymplecticSpace& w, const Ovoid& ovoid, std::uint64_t seed);
Ovoid transform(const Space& s, const Matrix& g, const Ovoid& ovoid);

class ParabolicQuadric {
 public:
  explicit ParabolicQuadric(FieldPtr field);

  const Space& space() const { return space_; }
  const Field& field() const { return space_.field(); }
  const PointSet& points() const { return points_; }
  Point nucleus() const { return space_.unit(2); }
  Elem value(const Point& x) const;
  bool contains(const Point& x) const { return value(x) == 0; }
  /// The symplectic space of the projection target X3 = 0.
  const SymplecticSpace& projected() const { return w_; }

 private:
  Space space_;
  PointSet points_;
  SymplecticSpace w_;
};

ParabolicQuadric parabolic_quadric(const FieldPtr& field);
/// Projection from U3 onto X3 = 0, read as (x1, x2, x4, x5). ProjectingNucleus for U3.
Point project_from_nucleus(const ParabolicQuadric& q4, const Point& p);
/// Unique point of Q(4, q) projecting to y.
Point lift_to_quadric(const ParabolicQuadric& q4, const Point& y);
/// The generators of Q(4, q), obtained by lifting the generators of W(3, q) and
/// checked to lie on the quadric.
std::vector<Line> generators_Q4(const ParabolicQuadric& q4);
bool is_ovoid_of_Q4(const ParabolicQuadric& q4, const PointSet& set);

/// {(1,x2,x3,x4,x5) : x4 = x2^(s+1) + x3^s, x5 = x2x3^s + x2^(s+2) + x3^2} u {U5}.
Ovoid suzuki_ovoid_Q4(const ParabolicQuadric& q4);

struct EllipticSection {
  Ovoid ovoid;
  Hyperplane hyperplane;
  std::uint32_t hyperplane_index;
};
/// First hyperplane (in index order) meeting Q(4, q) in q^2 + 1 points.
EllipticSection elliptic_section_Q4(const ParabolicQuadric& q4);

/// 5x5 matrix preserving Q(4, q) and fixing U3 that induces g on the projection.
Matrix lift_symplectic(const ParabolicQuadric& q4, const Matrix& g);
Ovoid random_orthogonal_image(const ParabolicQuadric& q4, const Ovoid& ovoid, std::uint64_t seed);

struct SecantProfile {
  /// counts[i]: number of secants of the ovoid through point i (all points).
  std::vector<std::uint32_t> counts;
  /// count -> number of points off Q(4, q) u {U3} with that count.
  std::map<std::uint32_t, std::uint64_t> histogram;
  std::uint64_t secants = 0;
};
/// TooLarge for q > 32.
SecantProfile secant_profile(const Ovoid& ovoid, const ParabolicQuadric& q4, int jobs = 1);

PointSet build_cap(const Ovoid& elliptic, const Ovoid& suzuki, const Point& nucleus);

}  // namespace nmds
