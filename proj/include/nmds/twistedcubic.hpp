#pragma once

// The twisted cubic C = {P_t = (1, t, t^2, t^3)} u {U4} of PG(3, q) with its
// tangents, osculating planes, real and imaginary chords, and the matrices of
// its PGL(2, q) stabilizer.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nmds/projgeom.hpp"

namespace nmds {

class TwistedCubic {
 public:
  /// FieldTooSmall for q < 5.
  explicit TwistedCubic(FieldPtr field);

  const Space& space() const { return space_; }
  const Field& field() const { return space_.field(); }
  /// q + 1 points: P_0, ..., P_{q-1} in parameter order, then U4.
  const PointSet& points() const { return points_; }
  Point at(Elem t) const;
  Point at_infinity() const { return space_.unit(3); }
  /// Tangent at the i-th point of points().
  const Line& tangent(std::size_t i) const { return tangents_[i]; }
  const Hyperplane& osculating(std::size_t i) const { return osculating_[i]; }
  const std::vector<Line>& tangents() const { return tangents_; }
  const std::vector<Hyperplane>& osculating_planes() const { return osculating_; }

 private:
  Space space_;
  PointSet points_;
  std::vector<Line> tangents_;
  std::vector<Hyperplane> osculating_;
};

struct Chords {
  std::vector<Line> real;
  /// For real[k]: indices into C.points() of its two contact points.
  std::vector<std::pair<std::size_t, std::size_t>> real_contacts;
  std::vector<Line> imaginary;
  /// For imaginary[k]: the parameter t in GF(q^2) \ GF(q) of one contact point.
  std::vector<Elem> imaginary_parameter;
};

/// Real chords from point pairs; imaginary chords as the GF(q)-rational lines
/// P_t P_{t^q}, t in GF(q^2) \ GF(q), computed in an explicit extension.
Chords chords(const TwistedCubic& c, const Embedding& ext);
Chords chords(const TwistedCubic& c);

enum class ChordKind { OnCurve, RealChord, Tangent, ImaginaryChord };
std::string to_string(ChordKind k);

struct ChordClassification {
  ChordKind kind = ChordKind::OnCurve;
  Line witness{};
  /// Indices into C.points() of the contact points (real chord: two, tangent: one).
  std::vector<std::size_t> contacts;
};

/// Exhaustive witness search over tangents and chords. MultipleWitnesses or
/// NoWitness if the point does not lie on exactly one of them.
ChordClassification classify_point(const TwistedCubic& c, const Chords& ch, const Point& p);

struct ChordPartition {
  std::vector<ChordKind> kind;             // per point index of PG(3, q)
  std::vector<std::uint8_t> multiplicity;  // number of witnesses (on-curve points: 0)
  std::map<ChordKind, std::uint64_t> counts;
  bool exact = false;                      // every off-curve point has exactly one witness
};

/// Coverage marking of all tangents and chords over the whole space.
ChordPartition classify_all(const TwistedCubic& c, const Chords& ch);

/// The stabilizer matrix for (a, b, c, d), acting on column vectors:
/// P_t maps to P_{(c + dt)/(a + bt)}. SingularParameters if ad - bc = 0.
Matrix stabilizer_element(const Field& f, Elem a, Elem b, Elem c, Elem d);

/// Number of osculating planes of C through p.
int osculating_count(const TwistedCubic& c, const Point& p);

enum class Candidate { U2, U1MinusU2, Q, Q1, Q2, Q5, Q6, S, S1, S2, S4, S5, RIrreducible };
std::string to_string(Candidate k);
std::optional<Candidate> candidate_from_string(const std::string& s);

struct CandidatePoint {
  Point point;
  /// Resolved parameters (s, delta, lambda) as encodings.
  std::map<std::string, Elem> params;
};

/// The non-square s used for the odd-q points: -3 when q = -1 (mod 3), else the
/// smallest non-square. The even analog delta: 1 when q = -1 (mod 3), else the
/// smallest trace-one element.
Elem chord_parameter(const Field& f);

/// The distinguished points added to C. ConditionUnsatisfied when the
/// parity or congruence class of q rules the point out.
CandidatePoint extension_candidate(const TwistedCubic& c, Candidate kind);

/// Smallest lambda for which the cubic attached to the irreducible-case point
/// has no root in GF(q): T^3 - 3 l T^2 - 9T + 3l (q odd), T^3 + l T^2 + (l+1) T + 1 (q even).
std::optional<Elem> smallest_irreducible_lambda(const Field& f);

}  // namespace nmds
