#pragma once

// Points, lines and hyperplanes of PG(n, q), 2 <= n <= 4.
//
// Points are stored canonically (first nonzero coordinate equal to 1) and are
// in bijection with [0, |PG(n,q)|) through lexicographic order of their
// coordinate encodings. Hyperplanes reuse the same representation in the dual
// space, so they are indexed the same way.

#include <array>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "nmds/gf.hpp"

namespace nmds {

inline constexpr int kMaxCoords = 5;

struct Point {
  std::array<Elem, kMaxCoords> c{};
  std::uint8_t len = 0;

  Elem operator[](std::size_t i) const { return c[i]; }
  Elem& operator[](std::size_t i) { return c[i]; }
  std::size_t size() const { return len; }
  bool is_zero() const;
  bool operator==(const Point& o) const { return len == o.len && c == o.c; }
};

/// Dual coordinates of a hyperplane; incident points x satisfy sum coeffs_i x_i = 0.
struct Hyperplane {
  Point coeffs;
  bool operator==(const Hyperplane& o) const { return coeffs == o.coeffs; }
};

/// A line given by its reduced row echelon basis (a, b); a's pivot precedes b's.
struct Line {
  Point a, b;
  bool operator==(const Line& o) const { return a == o.a && b == o.b; }
};

class Space {
 public:
  static constexpr std::uint64_t kMaxPoints = 1u << 22;

  /// Throws TooLarge if PG(n, q) has more than kMaxPoints points.
  Space(FieldPtr field, int n);

  const Field& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  int n() const { return n_; }
  int coords() const { return n_ + 1; }
  std::uint32_t q() const { return field_->q(); }
  std::uint32_t size() const { return size_; }
  /// Number of points on a hyperplane, (q^n - 1)/(q - 1).
  std::uint32_t hyperplane_size() const { return block_[n_]; }
  bool same_ambient(const Space& o) const { return n_ == o.n_ && field_ == o.field_; }

  /// Builds and canonicalizes; throws DegenerateSpan for the zero vector.
  Point make(std::initializer_list<Elem> coords) const;
  Point make(std::span<const Elem> coords) const;
  /// Built from signed integers mapped into the prime field.
  Point make_int(std::initializer_list<std::int64_t> coords) const;
  /// U_{i+1}: 1 in position i, 0 elsewhere.
  Point unit(int i) const;

  /// Scales so the first nonzero coordinate is 1. Returns false on zero.
  bool normalize(Point& p) const;
  Point normalized(Point p) const;

  std::uint32_t index(const Point& p) const;
  Point point(std::uint32_t idx) const;

  Elem dot(const Point& x, const Point& y) const;
  bool incident(const Point& p, const Hyperplane& h) const { return dot(p, h.coeffs) == 0; }
  /// a + lambda * b, canonicalized; DegenerateSpan on zero.
  Point combine(const Point& a, Elem lambda, const Point& b) const;

  Line line(const Point& p, const Point& r) const;
  std::uint64_t key(const Line& l) const { return std::uint64_t(index(l.a)) * size_ + index(l.b); }
  std::vector<Point> line_points(const Line& l) const;
  std::vector<Point> line_points(const Point& p, const Point& r) const { return line_points(line(p, r)); }
  /// Point indices of a line, in the order b, a, a+b, ...; fast path used by marking loops.
  void line_indices(const Line& l, std::vector<std::uint32_t>& out) const;
  bool on_line(const Line& l, const Point& p) const;

  /// Rank of the coordinate vectors.
  int rank(std::span<const Point> pts) const;
  /// Hyperplane spanned by n points of general position; DegenerateSpan otherwise.
  Hyperplane hyperplane_through(std::span<const Point> pts) const;
  /// In PG(3, q): plane through three non-collinear points.
  Hyperplane plane_span(const Point& a, const Point& b, const Point& c) const;
  Hyperplane hyperplane(std::initializer_list<Elem> coeffs) const { return Hyperplane{make(coeffs)}; }

  /// All canonical vectors orthogonal to v: points of the hyperplane v, or the
  /// hyperplanes through the point v.
  std::vector<Point> orthogonal(const Point& v) const;
  std::vector<Point> hyperplane_points(const Hyperplane& h) const { return orthogonal(h.coeffs); }
  std::vector<Hyperplane> hyperplanes_through(const Point& p) const;

  /// Number of lines of PG(n, q).
  std::uint64_t num_lines() const;
  /// Visits every line once, as its reduced row echelon basis.
  void for_each_line(const std::function<void(const Line&)>& visit) const;

  std::string format(const Point& p) const;

 private:
  FieldPtr field_;
  int n_;
  std::uint32_t size_;
  // block_[k] = (q^k - 1)/(q - 1); qpow_[k] = q^k.
  std::array<std::uint32_t, kMaxCoords + 1> block_{};
  std::array<std::uint32_t, kMaxCoords + 1> qpow_{};
};

/// Square matrix acting on column vectors of homogeneous coordinates.
struct Matrix {
  int n = 0;
  std::vector<Elem> a;  // row-major n x n

  static Matrix identity(int n);
  Elem at(int r, int c) const { return a[r * n + c]; }
  Elem& at(int r, int c) { return a[r * n + c]; }
  bool operator==(const Matrix& o) const { return n == o.n && a == o.a; }
};

Matrix multiply(const Field& f, const Matrix& x, const Matrix& y);
/// M x, canonicalized. Throws DegenerateSpan if M x = 0.
Point apply(const Space& s, const Matrix& m, const Point& x);
/// True iff M = c I for some nonzero c.
bool is_scalar(const Matrix& m);

/// Ordered set of distinct points of one ambient space.
class PointSet {
 public:
  explicit PointSet(Space space) : space_(std::move(space)) {}
  PointSet(Space space, std::span<const Point> pts);

  const Space& space() const { return space_; }
  /// Returns false if already present. The point must be canonical.
  bool insert(const Point& p);
  bool insert_index(std::uint32_t idx) { return insert(space_.point(idx)); }
  bool contains(const Point& p) const { return members_.count(space_.index(p)) != 0; }
  bool contains_index(std::uint32_t idx) const { return members_.count(idx) != 0; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const std::vector<Point>& points() const { return points_; }
  const std::vector<std::uint32_t>& indices() const { return indices_; }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  /// Same points, re-ordered by index.
  PointSet sorted() const;
  /// Set equality irrespective of order.
  bool same_points(const PointSet& o) const;

 private:
  Space space_;
  std::vector<Point> points_;
  std::vector<std::uint32_t> indices_;
  std::unordered_set<std::uint32_t> members_;
};

/// All points of PG(n, q) in index order.
PointSet enumerate_points(const Space& space);

PointSet set_union(const PointSet& a, const PointSet& b);
PointSet set_intersection(const PointSet& a, const PointSet& b);

/// One bit per point of an ambient space.
class Bitmap {
 public:
  explicit Bitmap(std::size_t bits = 0) : bits_(bits), words_((bits + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t(1) << (i & 63); }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  std::size_t size() const { return bits_; }
  std::size_t count() const;
  Bitmap& operator|=(const Bitmap& o);

 private:
  std::size_t bits_;
  std::vector<std::uint64_t> words_;
};

}  // namespace nmds
