#include "nmds/projgeom.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace nmds {

namespace {

// Canonical vector of the given length with lexicographic index idx.
void decode(std::uint32_t idx, int len, std::uint32_t q, Elem* out) {
  // Blocks by leading position, from the all-but-last-zero vector upward.
  std::uint32_t block = 1;  // size of the block whose leading entry is at position lead
  int lead = len - 1;
  while (idx >= block) {
    idx -= block;
    block *= q;
    --lead;
  }
  for (int j = 0; j < lead; ++j) out[j] = 0;
  out[lead] = 1;
  for (int j = len - 1; j > lead; --j) {
    out[j] = idx % q;
    idx /= q;
  }
}

}  // namespace

bool Point::is_zero() const {
  for (std::size_t i = 0; i < len; ++i)
    if (c[i] != 0) return false;
  return true;
}

Space::Space(FieldPtr field, int n) : field_(std::move(field)), n_(n) {
  if (n < 1 || n > kMaxCoords - 1) throw Error(ErrorCode::InvalidArgument, "projective dimension out of range");
  const std::uint64_t q = field_->q();
  std::uint64_t pw = 1, blk = 0;
  for (int k = 0; k <= kMaxCoords; ++k) {
    qpow_[k] = static_cast<std::uint32_t>(std::min<std::uint64_t>(pw, 0xffffffffu));
    block_[k] = static_cast<std::uint32_t>(std::min<std::uint64_t>(blk, 0xffffffffu));
    if (k == n + 1 && blk > kMaxPoints)
      throw Error(ErrorCode::TooLarge, "PG(" + std::to_string(n) + "," + std::to_string(q) + ") is too large");
    blk += pw;
    pw *= q;
  }
  size_ = block_[n + 1];
}

bool Space::normalize(Point& p) const {
  const Field& f = *field_;
  for (int i = 0; i <= n_; ++i) {
    if (p.c[i] != 0) {
      if (p.c[i] != 1) {
        Elem s = f.inv(p.c[i]);
        for (int j = i; j <= n_; ++j) p.c[j] = f.mul(p.c[j], s);
      }
      return true;
    }
  }
  return false;
}

Point Space::normalized(Point p) const {
  if (!normalize(p)) throw Error(ErrorCode::DegenerateSpan, "zero vector");
  return p;
}

Point Space::make(std::span<const Elem> coords) const {
  if (static_cast<int>(coords.size()) != n_ + 1) throw Error(ErrorCode::InvalidArgument, "wrong number of coordinates");
  Point p;
  p.len = static_cast<std::uint8_t>(n_ + 1);
  for (int i = 0; i <= n_; ++i) {
    if (coords[i] >= q()) throw Error(ErrorCode::InvalidArgument, "coordinate out of range");
    p.c[i] = coords[i];
  }
  return normalized(p);
}

Point Space::make(std::initializer_list<Elem> coords) const {
  return make(std::span<const Elem>(coords.begin(), coords.size()));
}

Point Space::make_int(std::initializer_list<std::int64_t> coords) const {
  std::vector<Elem> v;
  for (auto x : coords) v.push_back(field_->from_int(x));
  return make(v);
}

Point Space::unit(int i) const {
  Point p;
  p.len = static_cast<std::uint8_t>(n_ + 1);
  p.c[i] = 1;
  return p;
}

std::uint32_t Space::index(const Point& p) const {
  int lead = 0;
  while (p.c[lead] == 0) ++lead;
  std::uint32_t tail = 0;
  for (int j = lead + 1; j <= n_; ++j) tail = tail * q() + p.c[j];
  return block_[n_ - lead] + tail;
}

Point Space::point(std::uint32_t idx) const {
  Point p;
  p.len = static_cast<std::uint8_t>(n_ + 1);
  decode(idx, n_ + 1, q(), p.c.data());
  return p;
}

Elem Space::dot(const Point& x, const Point& y) const {
  const Field& f = *field_;
  Elem s = 0;
  for (int i = 0; i <= n_; ++i) s = f.add(s, f.mul(x.c[i], y.c[i]));
  return s;
}

Point Space::combine(const Point& a, Elem lambda, const Point& b) const {
  const Field& f = *field_;
  Point r = a;
  for (int i = 0; i <= n_; ++i) r.c[i] = f.add(a.c[i], f.mul(lambda, b.c[i]));
  return normalized(r);
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<int> rref(const Field& f, std::vector<Point>& rows, int cols) {
  std::vector<int> pivots;
  std::size_t r = 0;
  for (int col = 0; col < cols && r < rows.size(); ++col) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel].c[col] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    Elem s = f.inv(rows[r].c[col]);
    for (int j = 0; j < cols; ++j) rows[r].c[j] = f.mul(rows[r].c[j], s);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (k == r || rows[k].c[col] == 0) continue;
      Elem factor = rows[k].c[col];
      for (int j = 0; j < cols; ++j) rows[k].c[j] = f.sub(rows[k].c[j], f.mul(factor, rows[r].c[j]));
    }
    pivots.push_back(col);
    ++r;
  }
  return pivots;
}

}  // namespace

Line Space::line(const Point& p, const Point& r) const {
  std::vector<Point> rows{p, r};
  auto piv = rref(*field_, rows, n_ + 1);
  if (piv.size() != 2) throw Error(ErrorCode::DegenerateSpan, "points coincide");
  return Line{rows[0], rows[1]};
}

std::vector<Point> Space::line_points(const Line& l) const {
  std::vector<Point> out;
  out.reserve(q() + 1);
  out.push_back(l.b);
  const Field& f = *field_;
  for (Elem mu = 0; mu < q(); ++mu) {
    Point x = l.a;
    for (int i = 0; i <= n_; ++i) x.c[i] = f.add(l.a.c[i], f.mul(mu, l.b.c[i]));
    out.push_back(x);  // already canonical: b vanishes up to a's pivot
  }
  return out;
}

void Space::line_indices(const Line& l, std::vector<std::uint32_t>& out) const {
  out.clear();
  out.push_back(index(l.b));
  const Field& f = *field_;
  int lead = 0;
  while (l.a.c[lead] == 0) ++lead;
  const std::uint32_t base = block_[n_ - lead];
  for (Elem mu = 0; mu < q(); ++mu) {
    std::uint32_t tail = 0;
    for (int j = lead + 1; j <= n_; ++j) tail = tail * q() + f.add(l.a.c[j], f.mul(mu, l.b.c[j]));
    out.push_back(base + tail);
  }
}

bool Space::on_line(const Line& l, const Point& p) const {
  std::array<Point, 3> pts{l.a, l.b, p};
  return rank(pts) == 2;
}

int Space::rank(std::span<const Point> pts) const {
  std::vector<Point> rows(pts.begin(), pts.end());
  return static_cast<int>(rref(*field_, rows, n_ + 1).size());
}

Hyperplane Space::hyperplane_through(std::span<const Point> pts) const {
  std::vector<Point> rows(pts.begin(), pts.end());
  auto piv = rref(*field_, rows, n_ + 1);
  if (static_cast<int>(piv.size()) != n_) throw Error(ErrorCode::DegenerateSpan, "points do not span a hyperplane");
  int free_col = 0;
  for (int c = 0; c <= n_; ++c) {
    if (std::find(piv.begin(), piv.end(), c) == piv.end()) {
      free_col = c;
      break;
    }
  }
  Point h;
  h.len = static_cast<std::uint8_t>(n_ + 1);
  h.c[free_col] = 1;
  for (std::size_t r = 0; r < piv.size(); ++r) h.c[piv[r]] = field_->neg(rows[r].c[free_col]);
  return Hyperplane{normalized(h)};
}

Hyperplane Space::plane_span(const Point& a, const Point& b, const Point& c) const {
  if (n_ != 3) throw Error(ErrorCode::InvalidArgument, "plane_span needs PG(3, q)");
  std::array<Point, 3> pts{a, b, c};
  return hyperplane_through(pts);
}

std::vector<Point> Space::orthogonal(const Point& v) const {
  const Field& f = *field_;
  int lead = 0;
  while (lead <= n_ && v.c[lead] == 0) ++lead;
  if (lead > n_) throw Error(ErrorCode::DegenerateSpan, "zero vector");
  const Elem lead_inv = f.inv(v.c[lead]);
  const std::uint32_t count = block_[n_];
  std::vector<Point> out;
  out.reserve(count);
  std::array<Elem, kMaxCoords> w{};
  for (std::uint32_t k = 0; k < count; ++k) {
    decode(k, n_, q(), w.data());
    Point x;
    x.len = static_cast<std::uint8_t>(n_ + 1);
    Elem s = 0;
    for (int j = 0, t = 0; j <= n_; ++j) {
      if (j == lead) continue;
      x.c[j] = w[t++];
      s = f.add(s, f.mul(x.c[j], v.c[j]));
    }
    x.c[lead] = f.neg(f.mul(s, lead_inv));
    normalize(x);
    out.push_back(x);
  }
  return out;
}

std::vector<Hyperplane> Space::hyperplanes_through(const Point& p) const {
  std::vector<Hyperplane> out;
  for (auto& x : orthogonal(p)) out.push_back(Hyperplane{x});
  return out;
}

std::uint64_t Space::num_lines() const {
  const std::uint64_t q = this->q();
  std::uint64_t a = 1, b = 1;
  for (int i = 0; i <= n_; ++i) a *= q;
  for (int i = 0; i < n_; ++i) b *= q;
  return (a - 1) * (b - 1) / ((q * q - 1) * (q - 1));
}

void Space::for_each_line(const std::function<void(const Line&)>& visit) const {
  const int len = n_ + 1;
  const std::uint32_t qq = q();
  for (int i = 0; i < len; ++i) {
    for (int j = i + 1; j < len; ++j) {
      // a: pivot i, zero at j, free after i. b: pivot j, free after j.
      const int free_a = len - 1 - i - 1;
      const int free_b = len - 1 - j;
      std::uint64_t count_a = 1, count_b = 1;
      for (int k = 0; k < free_a; ++k) count_a *= qq;
      for (int k = 0; k < free_b; ++k) count_b *= qq;
      Line l;
      l.a.len = l.b.len = static_cast<std::uint8_t>(len);
      for (std::uint64_t ca = 0; ca < count_a; ++ca) {
        l.a.c.fill(0);
        l.a.c[i] = 1;
        std::uint64_t r = ca;
        for (int k = len - 1; k > i; --k) {
          if (k == j) continue;
          l.a.c[k] = static_cast<Elem>(r % qq);
          r /= qq;
        }
        for (std::uint64_t cb = 0; cb < count_b; ++cb) {
          l.b.c.fill(0);
          l.b.c[j] = 1;
          std::uint64_t t = cb;
          for (int k = len - 1; k > j; --k) {
            l.b.c[k] = static_cast<Elem>(t % qq);
            t /= qq;
          }
          visit(l);
        }
      }
    }
  }
}

std::string Space::format(const Point& p) const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i <= n_; ++i) os << (i ? "," : "") << p.c[i];
  os << "]";
  return os.str();
}

Matrix Matrix::identity(int n) {
  Matrix m{n, std::vector<Elem>(static_cast<std::size_t>(n * n), 0)};
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix multiply(const Field& f, const Matrix& x, const Matrix& y) {
  Matrix r{x.n, std::vector<Elem>(x.a.size(), 0)};
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j) {
      Elem s = 0;
      for (int k = 0; k < x.n; ++k) s = f.add(s, f.mul(x.at(i, k), y.at(k, j)));
      r.at(i, j) = s;
    }
  return r;
}

Point apply(const Space& s, const Matrix& m, const Point& x) {
  const Field& f = s.field();
  Point r;
  r.len = x.len;
  for (int i = 0; i < m.n; ++i) {
    Elem v = 0;
    for (int k = 0; k < m.n; ++k) v = f.add(v, f.mul(m.at(i, k), x.c[k]));
    r.c[i] = v;
  }
  return s.normalized(r);
}

bool is_scalar(const Matrix& m) {
  const Elem d = m.at(0, 0);
  if (d == 0) return false;
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j)
      if (m.at(i, j) != (i == j ? d : 0)) return false;
  return true;
}

PointSet::PointSet(Space space, std::span<const Point> pts) : space_(std::move(space)) {
  for (auto& p : pts) insert(p);
}

bool PointSet::insert(const Point& p) {
  std::uint32_t idx = space_.index(p);
  if (!members_.insert(idx).second) return false;
  points_.push_back(p);
  indices_.push_back(idx);
  return true;
}

PointSet PointSet::sorted() const {
  std::vector<std::uint32_t> idx = indices_;
  std::sort(idx.begin(), idx.end());
  PointSet out(space_);
  for (auto i : idx) out.insert_index(i);
  return out;
}

bool PointSet::same_points(const PointSet& o) const {
  if (size() != o.size()) return false;
  for (auto i : indices_)
    if (!o.contains_index(i)) return false;
  return true;
}

PointSet enumerate_points(const Space& space) {
  PointSet out(space);
  for (std::uint32_t i = 0; i < space.size(); ++i) out.insert_index(i);
  return out;
}

PointSet set_union(const PointSet& a, const PointSet& b) {
  if (!a.space().same_ambient(b.space())) throw Error(ErrorCode::AmbientMismatch, "union across spaces");
  PointSet out = a;
  for (auto& p : b.points()) out.insert(p);
  return out;
}

PointSet set_intersection(const PointSet& a, const PointSet& b) {
  if (!a.space().same_ambient(b.space())) throw Error(ErrorCode::AmbientMismatch, "intersection across spaces");
  PointSet out(a.space());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (b.contains_index(a.indices()[i])) out.insert(a[i]);
  return out;
}

std::size_t Bitmap::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

Bitmap& Bitmap::operator|=(const Bitmap& o) {
  for (std::size_t i = 0; i < words_.size() && i < o.words_.size(); ++i) words_[i] |= o.words_[i];
  return *this;
}

}  // namespace nmds
