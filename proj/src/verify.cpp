#include "nmds/verify.hpp"

#include <algorithm>
#include <atomic>
#include <unordered_map>

#include "nmds/parallel.hpp"

namespace nmds {

namespace {

Bitmap membership(const Space& sp, const std::vector<std::uint32_t>& idx) {
  Bitmap b(sp.size());
  for (auto i : idx) b.set(i);
  return b;
}

// Number of members on each plane spanned by three members of pts. A plane
// holding k members is reached C(k, 3) times; the count is converted back.
std::unordered_map<std::uint32_t, std::uint32_t> plane_members(const Space& sp, const std::vector<Point>& pts) {
  std::unordered_map<std::uint32_t, std::uint32_t> hits;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        std::array<Point, 3> tri{pts[i], pts[j], pts[k]};
        if (sp.rank(tri) < 3) continue;  // collinear triples span no plane
        ++hits[sp.index(sp.plane_span(pts[i], pts[j], pts[k]).coeffs)];
      }
  std::unordered_map<std::uint32_t, std::uint32_t> out;
  for (auto [plane, c] : hits) {
    std::uint32_t k = 3;
    while (std::uint64_t(k) * (k - 1) * (k - 2) / 6 < c) ++k;
    out[plane] = k;
  }
  return out;
}

std::vector<Point> members_on(const Space& sp, const std::vector<Point>& pts, const Hyperplane& h) {
  std::vector<Point> out;
  for (const auto& p : pts)
    if (sp.incident(p, h)) out.push_back(p);
  return out;
}

// First collinear triple, if any.
std::optional<std::array<Point, 3>> collinear_triple(const Space& sp, const std::vector<Point>& pts,
                                                     const std::vector<std::uint32_t>& idx) {
  Bitmap in = membership(sp, idx);
  std::vector<std::uint32_t> buf;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      sp.line_indices(sp.line(pts[i], pts[j]), buf);
      for (auto x : buf)
        if (x != idx[i] && x != idx[j] && in.test(x)) return std::array<Point, 3>{pts[i], pts[j], sp.point(x)};
    }
  return std::nullopt;
}

// Points covered by secants of pts, plus (for NMDS) by planes with four members.
Bitmap covered_points(const Space& sp, const std::vector<Point>& pts, const std::vector<std::uint32_t>& idx,
                      Property prop, int jobs) {
  const std::size_t n = pts.size();
  std::vector<Bitmap> local(std::max(1, jobs), Bitmap(sp.size()));
  parallel_chunks(jobs, n, [&](std::size_t w, std::size_t begin, std::size_t end) {
    Bitmap& b = local[w];
    std::vector<std::uint32_t> buf;
    for (std::size_t i = begin; i < end; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        sp.line_indices(sp.line(pts[i], pts[j]), buf);
        for (auto x : buf) b.set(x);
      }
  });
  Bitmap out(sp.size());
  for (const auto& b : local) out |= b;
  for (auto i : idx) out.set(i);
  if (prop == Property::Nmds) {
    std::vector<std::uint32_t> four;
    for (auto [plane, k] : plane_members(sp, pts))
      if (k == 4) four.push_back(plane);
    std::sort(four.begin(), four.end());
    for (auto h : four)
      for (const auto& x : sp.orthogonal(sp.point(h))) out.set(sp.index(x));
  }
  return out;
}

bool holds(const PointSet& s, Property prop) {
  return prop == Property::Cap ? is_cap(s) : is_nmds(s).ok;
}

}  // namespace

SpectrumReport plane_spectrum(const PointSet& s) {
  const Space& sp = s.space();
  std::vector<std::uint32_t> counts(sp.size(), 0);
  for (const auto& p : s.points())
    for (const auto& h : sp.orthogonal(p)) ++counts[sp.index(h)];
  SpectrumReport r;
  r.total = sp.size();
  for (auto c : counts) ++r.histogram[c];
  for (auto& [k, v] : r.histogram)
    if (v > 0) r.max_size = std::max<std::uint64_t>(r.max_size, k);
  return r;
}

SpectrumReport line_spectrum(const PointSet& s) {
  const Space& sp = s.space();
  const auto& pts = s.points();
  std::unordered_map<std::uint64_t, std::uint32_t> pairs;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) ++pairs[sp.key(sp.line(pts[i], pts[j]))];
  SpectrumReport r;
  r.total = sp.num_lines();
  std::uint64_t incidences = std::uint64_t(pts.size()) * sp.hyperplane_size(), multi = 0, counted = 0;
  for (auto [key, c] : pairs) {
    std::uint64_t k = 2;
    while (k * (k - 1) / 2 < c) ++k;
    ++r.histogram[k];
    multi += k;
    ++counted;
  }
  const std::uint64_t ones = incidences - multi;
  if (ones) r.histogram[1] = ones;
  counted += ones;
  if (r.total > counted) r.histogram[0] = r.total - counted;
  for (auto& [k, v] : r.histogram) r.max_size = std::max(r.max_size, k);
  return r;
}

bool is_cap(const PointSet& s, int jobs) {
  const Space& sp = s.space();
  const auto& pts = s.points();
  const auto& idx = s.indices();
  Bitmap in = membership(sp, idx);
  std::atomic<bool> ok{true};
  parallel_chunks(jobs, pts.size(), [&](std::size_t, std::size_t begin, std::size_t end) {
    std::vector<std::uint32_t> buf;
    for (std::size_t i = begin; i < end && ok.load(std::memory_order_relaxed); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        sp.line_indices(sp.line(pts[i], pts[j]), buf);
        int hits = 0;
        for (auto x : buf) hits += in.test(x);
        if (hits > 2) {
          ok = false;
          return;
        }
      }
  });
  return ok;
}

std::string to_string(NmdsViolation v) {
  switch (v) {
    case NmdsViolation::None: return "none";
    case NmdsViolation::TooSmall: return "too_small";
    case NmdsViolation::Collinear: return "three_collinear";
    case NmdsViolation::NoFourCoplanar: return "no_four_coplanar";
    case NmdsViolation::FiveCoplanar: return "five_coplanar";
  }
  return "?";
}

NmdsResult is_nmds(const PointSet& s) {
  const Space& sp = s.space();
  if (sp.n() != 3) throw Error(ErrorCode::InvalidArgument, "NMDS-sets are checked in PG(3, q)");
  NmdsResult r;
  const auto& pts = s.points();
  if (pts.size() < 5) {
    r.violation = NmdsViolation::TooSmall;
    r.witness = pts;
    return r;
  }
  if (auto t = collinear_triple(sp, pts, s.indices())) {
    r.violation = NmdsViolation::Collinear;
    r.witness.assign(t->begin(), t->end());
    return r;
  }
  bool four = false;
  std::optional<std::uint32_t> five;
  for (auto [plane, k] : plane_members(sp, pts)) {
    if (k == 4) four = true;
    if (k >= 5 && (!five || plane < *five)) five = plane;
  }
  if (five) {
    r.violation = NmdsViolation::FiveCoplanar;
    r.witness = members_on(sp, pts, Hyperplane{sp.point(*five)});
    return r;
  }
  if (!four) {
    r.violation = NmdsViolation::NoFourCoplanar;
    return r;
  }
  r.ok = true;
  return r;
}

std::string to_string(Property p) { return p == Property::Cap ? "cap" : "nmds"; }

ExtensionReport addable_points(const PointSet& s, Property prop, int jobs) {
  if (!holds(s, prop)) throw Error(ErrorCode::PropertyViolatedByInput, "input is not a " + to_string(prop));
  const Space& sp = s.space();
  Bitmap cov = covered_points(sp, s.points(), s.indices(), prop, jobs);
  ExtensionReport r{PointSet(sp), false, {}, {}, 0};
  for (std::uint32_t i = 0; i < sp.size(); ++i)
    if (!cov.test(i)) r.addable.insert_index(i);
  r.complete = r.addable.empty();
  r.extensions_by_size = {1};
  r.nodes = 1;
  return r;
}

ExtensionReport extension_search(const PointSet& s, Property prop, int depth, int jobs,
                                 std::optional<std::uint64_t> node_budget) {
  if (depth < 0 || depth > 3) throw Error(ErrorCode::InvalidArgument, "depth must be in [0, 3]");
  ExtensionReport root = addable_points(s, prop, jobs);
  root.extensions_by_size.assign(depth + 1, 0);
  root.extensions_by_size[0] = 1;
  const Space& sp = s.space();

  std::vector<Point> pts = s.points();
  std::vector<std::uint32_t> idx = s.indices(), tuple;
  std::uint64_t nodes = 1;

  // Children of a node are drawn from its addable list; indices only increase.
  auto dfs = [&](auto&& self, const std::vector<std::uint32_t>& cand, int left) -> void {
    for (auto a : cand) {
      if (!tuple.empty() && a <= tuple.back()) continue;
      if (node_budget && nodes >= *node_budget) throw Error(ErrorCode::Timeout, "extension search node budget exhausted");
      ++nodes;
      tuple.push_back(a);
      pts.push_back(sp.point(a));
      idx.push_back(a);
      ++root.extensions_by_size[tuple.size()];
      Bitmap cov = covered_points(sp, pts, idx, prop, 1);
      std::vector<std::uint32_t> next;
      for (auto c : cand)
        if (!cov.test(c)) next.push_back(c);
      if (next.empty()) {
        auto t = tuple;
        std::sort(t.begin(), t.end());
        root.witness_extensions.push_back(t);
      } else if (left > 1) {
        self(self, next, left - 1);
      }
      tuple.pop_back();
      pts.pop_back();
      idx.pop_back();
    }
  };
  if (depth > 0) dfs(dfs, root.addable.indices(), depth);
  root.nodes = nodes;
  return root;
}

std::uint64_t min_distance_generator(const PointSet& s) {
  const Space& sp = s.space();
  std::uint64_t best = s.size();
  for (std::uint32_t u = 0; u < sp.size(); ++u) {
    const Point msg = sp.point(u);
    std::uint64_t zeros = 0;
    for (const auto& p : s.points()) zeros += sp.dot(msg, p) == 0;
    best = std::min<std::uint64_t>(best, s.size() - zeros);
  }
  return best;
}

std::optional<std::uint64_t> min_dependent_set(const PointSet& s, std::uint64_t subset_budget) {
  const Space& sp = s.space();
  const std::size_t n = s.size(), k = sp.coords();
  const auto& pts = s.points();
  std::uint64_t visited = 0;
  for (std::size_t t = 1; t <= std::min(n, k + 1); ++t) {
    std::vector<std::size_t> c(t);
    for (std::size_t i = 0; i < t; ++i) c[i] = i;
    std::vector<Point> sub(t);
    while (true) {
      if (++visited > subset_budget) return std::nullopt;
      for (std::size_t i = 0; i < t; ++i) sub[i] = pts[c[i]];
      if (sp.rank(sub) < static_cast<int>(t)) return t;
      std::size_t i = t;
      while (i > 0 && c[i - 1] == n - t + i - 1) --i;
      if (i == 0) break;
      ++c[i - 1];
      for (std::size_t j = i; j < t; ++j) c[j] = c[j - 1] + 1;
    }
  }
  return std::nullopt;
}

CodeExport export_code_matrices(const PointSet& s, CodeRole role, std::uint64_t codeword_budget) {
  const Space& sp = s.space();
  if (role == CodeRole::Generator && sp.rank(s.points()) < sp.coords())
    throw Error(ErrorCode::DoesNotSpan, "columns do not span the ambient space");
  CodeExport c{role, s.size(), static_cast<std::size_t>(sp.coords()), {}, {}, {}, {}};
  c.matrix.assign(c.k, std::vector<Elem>(c.n));
  for (std::size_t j = 0; j < c.n; ++j)
    for (std::size_t i = 0; i < c.k; ++i) c.matrix[i][j] = s[j][i];

  std::uint64_t words = 1;
  bool small = true;
  for (std::size_t i = 0; i < c.k && small; ++i) {
    words *= sp.q();
    small = words <= codeword_budget;
  }
  std::optional<std::uint64_t> gen, dep = min_dependent_set(s, 10'000'000);
  if (small) gen = min_distance_generator(s);
  c.distance = role == CodeRole::Generator ? gen : dep;
  c.dual_distance = role == CodeRole::Generator ? dep : gen;
  c.distance_status = small ? "exhaustive" : "not computed: q^k exceeds the codeword budget";
  return c;
}

std::string matrix_csv(const CodeExport& c) {
  std::string out;
  for (std::size_t j = 0; j < c.n; ++j) {
    for (std::size_t i = 0; i < c.k; ++i) {
      if (i) out += ',';
      out += std::to_string(c.matrix[i][j]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace nmds
