#include "nmds/twistedcubic.hpp"

#include <algorithm>
#include <unordered_set>

namespace nmds {

TwistedCubic::TwistedCubic(FieldPtr field) : space_(field, 3), points_(space_) {
  const Field& f = *field;
  if (f.q() < 5) throw Error(ErrorCode::FieldTooSmall, "the twisted cubic needs q >= 5");
  const Elem two = f.from_int(2), three = f.from_int(3);
  for (Elem t = 0; t < f.q(); ++t) {
    Point p = at(t);
    points_.insert(p);
    Point dir = space_.make({0, 1, f.mul(two, t), f.mul(three, f.mul(t, t))});
    tangents_.push_back(space_.line(p, dir));
    const Elem t2 = f.mul(t, t), t3 = f.mul(t2, t);
    osculating_.push_back(space_.hyperplane({t3, f.neg(f.mul(three, t2)), f.mul(three, t), f.neg(1)}));
  }
  points_.insert(at_infinity());
  tangents_.push_back(space_.line(at_infinity(), space_.unit(2)));
  osculating_.push_back(space_.hyperplane({1, 0, 0, 0}));
}

Point TwistedCubic::at(Elem t) const {
  const Field& f = field();
  const Elem t2 = f.mul(t, t);
  return space_.make({1, t, t2, f.mul(t2, t)});
}

Chords chords(const TwistedCubic& c, const Embedding& ext) {
  const Space& sp = c.space();
  const Field& big = *ext.big;
  if (ext.small.get() != &c.field()) throw Error(ErrorCode::IncompatibleFields, "embedding does not start at the curve's field");
  Chords out;
  const auto& pts = c.points().points();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      out.real.push_back(sp.line(pts[i], pts[j]));
      out.real_contacts.emplace_back(i, j);
    }

  const std::uint32_t q = c.field().q();
  std::unordered_set<std::uint64_t> seen;
  for (Elem t = 0; t < big.q(); ++t) {
    if (ext.in_subfield(t)) continue;
    const Elem tq = big.pow(t, q);
    if (tq < t) continue;  // the conjugate pair is handled once, from its smaller member
    // v = P_t and w = P_{t^q} over GF(q^2); v + w and t v + t^q w are rational.
    std::array<Elem, 4> v{1, t, big.mul(t, t), 0}, w{1, tq, big.mul(tq, tq), 0};
    v[3] = big.mul(v[2], t);
    w[3] = big.mul(w[2], tq);
    std::array<Elem, 4> u1{}, u2{};
    for (int k = 0; k < 4; ++k) {
      auto a = ext.lower(big.add(v[k], w[k]));
      auto b = ext.lower(big.add(big.mul(t, v[k]), big.mul(tq, w[k])));
      if (!a || !b) throw Error(ErrorCode::IncompatibleFields, "conjugate chord basis is not rational");
      u1[k] = *a;
      u2[k] = *b;
    }
    Line l = sp.line(sp.make(u1), sp.make(u2));
    if (!seen.insert(sp.key(l)).second) continue;
    out.imaginary.push_back(l);
    out.imaginary_parameter.push_back(t);
  }
  return out;
}

Chords chords(const TwistedCubic& c) {
  const Field& f = c.field();
  FieldPtr small = c.space().field_ptr();
  FieldPtr big = Field::make(f.p(), 2 * f.m());
  return chords(c, extension_embed(small, big));
}

std::string to_string(ChordKind k) {
  switch (k) {
    case ChordKind::OnCurve: return "on_curve";
    case ChordKind::RealChord: return "real_chord";
    case ChordKind::Tangent: return "tangent";
    case ChordKind::ImaginaryChord: return "imaginary_chord";
  }
  return "?";
}

ChordClassification classify_point(const TwistedCubic& c, const Chords& ch, const Point& p) {
  ChordClassification out;
  const auto& pts = c.points();
  if (pts.contains(p)) return out;
  const Space& sp = c.space();
  int found = 0;
  for (std::size_t i = 0; i < c.tangents().size(); ++i)
    if (sp.on_line(c.tangent(i), p)) {
      ++found;
      out = {ChordKind::Tangent, c.tangent(i), {i}};
    }
  for (std::size_t k = 0; k < ch.real.size(); ++k)
    if (sp.on_line(ch.real[k], p)) {
      ++found;
      out = {ChordKind::RealChord, ch.real[k], {ch.real_contacts[k].first, ch.real_contacts[k].second}};
    }
  for (const auto& l : ch.imaginary)
    if (sp.on_line(l, p)) {
      ++found;
      out = {ChordKind::ImaginaryChord, l, {}};
    }
  if (found == 0) throw Error(ErrorCode::NoWitness, "point " + sp.format(p) + " lies on no chord or tangent");
  if (found > 1) throw Error(ErrorCode::MultipleWitnesses, "point " + sp.format(p) + " has " + std::to_string(found) + " witnesses");
  return out;
}

ChordPartition classify_all(const TwistedCubic& c, const Chords& ch) {
  const Space& sp = c.space();
  ChordPartition out;
  out.kind.assign(sp.size(), ChordKind::OnCurve);
  out.multiplicity.assign(sp.size(), 0);
  std::vector<std::uint8_t> on_curve(sp.size(), 0);
  for (auto idx : c.points().indices()) on_curve[idx] = 1;

  std::vector<std::uint32_t> buf;
  auto mark = [&](const Line& l, ChordKind k) {
    sp.line_indices(l, buf);
    for (auto idx : buf) {
      if (on_curve[idx]) continue;
      out.kind[idx] = k;
      if (out.multiplicity[idx] < 255) ++out.multiplicity[idx];
    }
  };
  for (const auto& l : c.tangents()) mark(l, ChordKind::Tangent);
  for (const auto& l : ch.real) mark(l, ChordKind::RealChord);
  for (const auto& l : ch.imaginary) mark(l, ChordKind::ImaginaryChord);

  out.exact = true;
  for (std::uint32_t i = 0; i < sp.size(); ++i) {
    if (!on_curve[i] && out.multiplicity[i] != 1) out.exact = false;
    ++out.counts[out.kind[i]];
  }
  return out;
}

Matrix stabilizer_element(const Field& f, Elem a, Elem b, Elem c, Elem d) {
  if (f.sub(f.mul(a, d), f.mul(b, c)) == 0) throw Error(ErrorCode::SingularParameters, "ad - bc = 0");
  auto m = [&f](std::initializer_list<Elem> xs) {
    Elem r = 1;
    for (Elem x : xs) r = f.mul(r, x);
    return r;
  };
  const Elem two = f.from_int(2), three = f.from_int(3);
  Matrix g{4, {}};
  g.a = {
      m({a, a, a}),    m({three, a, a, b}),                  m({three, a, b, b}),                  m({b, b, b}),
      m({a, a, c}),    f.add(m({a, a, d}), m({two, a, b, c})), f.add(m({b, b, c}), m({two, a, b, d})), m({b, b, d}),
      m({a, c, c}),    f.add(m({b, c, c}), m({two, a, c, d})), f.add(m({a, d, d}), m({two, b, c, d})), m({b, d, d}),
      m({c, c, c}),    m({three, c, c, d}),                  m({three, c, d, d}),                  m({d, d, d}),
  };
  return g;
}

int osculating_count(const TwistedCubic& c, const Point& p) {
  int n = 0;
  for (const auto& h : c.osculating_planes())
    if (c.space().incident(p, h)) ++n;
  return n;
}

namespace {

const std::pair<Candidate, const char*> kCandidateNames[] = {
    {Candidate::U2, "U2"}, {Candidate::U1MinusU2, "U1-U2"}, {Candidate::Q, "Q"},   {Candidate::Q1, "Q1"},
    {Candidate::Q2, "Q2"}, {Candidate::Q5, "Q5"},           {Candidate::Q6, "Q6"}, {Candidate::S, "S"},
    {Candidate::S1, "S1"}, {Candidate::S2, "S2"},           {Candidate::S4, "S4"}, {Candidate::S5, "S5"},
    {Candidate::RIrreducible, "R"},
};

bool minus_one_mod_3(std::uint32_t q) { return q % 3 == 2; }

}  // namespace

std::string to_string(Candidate k) {
  for (auto& [c, name] : kCandidateNames)
    if (c == k) return name;
  return "?";
}

std::optional<Candidate> candidate_from_string(const std::string& s) {
  for (auto& [c, name] : kCandidateNames)
    if (s == name) return c;
  return std::nullopt;
}

Elem chord_parameter(const Field& f) {
  if (f.even()) return minus_one_mod_3(f.q()) ? 1 : f.pick_delta();
  return minus_one_mod_3(f.q()) ? f.from_int(-3) : f.pick_nonsquare();
}

std::optional<Elem> smallest_irreducible_lambda(const Field& f) {
  const Elem three = f.from_int(3), nine = f.from_int(9);
  for (Elem l = 0; l < f.q(); ++l) {
    std::vector<Elem> poly;
    if (f.even())
      poly = {1, f.add(l, 1), l, 1};
    else
      poly = {f.mul(three, l), f.neg(nine), f.neg(f.mul(three, l)), 1};
    if (roots(f, poly).empty()) return l;
  }
  return std::nullopt;
}

CandidatePoint extension_candidate(const TwistedCubic& c, Candidate kind) {
  const Field& f = c.field();
  const Space& sp = c.space();
  CandidatePoint out;
  auto need = [](bool ok, const char* why) {
    if (!ok) throw Error(ErrorCode::ConditionUnsatisfied, why);
  };
  switch (kind) {
    case Candidate::U2:
      out.point = sp.unit(1);
      return out;
    case Candidate::U1MinusU2:
      out.point = sp.make({1, f.neg(1), 0, 0});
      return out;
    case Candidate::RIrreducible: {
      need(minus_one_mod_3(f.q()), "needs q = -1 (mod 3)");
      auto l = smallest_irreducible_lambda(f);
      need(l.has_value(), "no lambda with an irreducible cubic");
      out.params["lambda"] = *l;
      if (f.even()) {
        out.params["delta"] = 1;
        out.point = sp.make({1, *l, f.add(*l, 1), 1});
      } else {
        const Elem s = chord_parameter(f);
        out.params["s"] = s;
        out.point = sp.make({1, *l, s, f.mul(*l, s)});
      }
      return out;
    }
    default:
      break;
  }

  const bool odd_kind = kind == Candidate::Q || kind == Candidate::Q1 || kind == Candidate::Q2 ||
                        kind == Candidate::Q5 || kind == Candidate::Q6;
  need(odd_kind != f.even(), odd_kind ? "needs q odd" : "needs q even");
  const Elem s = chord_parameter(f);
  out.params[odd_kind ? "s" : "delta"] = s;
  switch (kind) {
    case Candidate::Q: out.point = sp.make({1, 0, s, 0}); break;
    case Candidate::Q1: out.point = sp.make({0, 1, 0, s}); break;
    case Candidate::Q2: out.point = sp.make({0, 1, 0, f.mul(f.from_int(9), s)}); break;
    case Candidate::Q5:
    case Candidate::Q6:
      need(minus_one_mod_3(f.q()), "needs q = -1 (mod 3)");
      out.point = sp.make({0, 1, f.from_int(kind == Candidate::Q5 ? 3 : -3), 0});
      break;
    case Candidate::S: out.point = sp.make({1, 0, s, s}); break;
    case Candidate::S1: out.point = sp.make({0, 1, 1, f.add(s, 1)}); break;
    case Candidate::S2: out.point = sp.make({1, 0, s, f.add(s, 1)}); break;
    case Candidate::S4:
    case Candidate::S5:
      need(minus_one_mod_3(f.q()), "needs q = -1 (mod 3)");
      out.point = kind == Candidate::S4 ? sp.make({0, 0, 1, 1}) : sp.unit(2);
      break;
    default: break;
  }
  return out;
}

}  // namespace nmds
