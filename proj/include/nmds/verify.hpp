#pragma once

// Predicates and searches on point sets: caps, NMDS-sets of PG(3, q),
// intersection spectra, addable points, bounded extension search and the
// associated linear codes.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nmds/projgeom.hpp"

namespace nmds {

struct SpectrumReport {
  /// intersection size -> number of hyperplanes (lines) with that size
  std::map<std::uint64_t, std::uint64_t> histogram;
  std::uint64_t max_size = 0;
  std::uint64_t total = 0;
};

/// Histogram over all hyperplanes. TooLarge if the dual space is not enumerable.
SpectrumReport plane_spectrum(const PointSet& s);
/// Histogram over all lines.
SpectrumReport line_spectrum(const PointSet& s);

bool is_cap(const PointSet& s, int jobs = 1);

enum class NmdsViolation { None, TooSmall, Collinear, NoFourCoplanar, FiveCoplanar };
std::string to_string(NmdsViolation v);

struct NmdsResult {
  bool ok = false;
  NmdsViolation violation = NmdsViolation::None;
  std::vector<Point> witness;
  explicit operator bool() const { return ok; }
};

/// In PG(3, q): no three collinear, some plane with exactly four points and no
/// plane with five or more.
NmdsResult is_nmds(const PointSet& s);

enum class Property { Cap, Nmds };
std::string to_string(Property p);

struct ExtensionReport {
  PointSet addable;
  bool complete = false;
  /// Maximal extensions (no further point addable) found within the depth, as
  /// sorted index tuples, in discovery order.
  std::vector<std::vector<std::uint32_t>> witness_extensions;
  /// extensions_by_size[k]: number of k-point sets T with S u T keeping the property.
  std::vector<std::uint64_t> extensions_by_size;
  std::uint64_t nodes = 0;
};

/// Points P outside S such that S u {P} keeps the property. PropertyViolatedByInput
/// if S itself fails it.
ExtensionReport addable_points(const PointSet& s, Property prop, int jobs = 1);

/// Depth-bounded exhaustive extension: each tuple is grown in increasing index
/// order, so every extension set is visited once. depth <= 3. Timeout if the
/// node budget is exhausted.
ExtensionReport extension_search(const PointSet& s, Property prop, int depth, int jobs = 1,
                                 std::optional<std::uint64_t> node_budget = std::nullopt);

enum class CodeRole { Generator, ParityCheck };

struct CodeExport {
  CodeRole role;
  std::size_t n = 0, k = 0;
  /// k x n, column j = canonical coordinates of the j-th point.
  std::vector<std::vector<Elem>> matrix;
  /// Minimum distance of the code with this generator (role Generator) or of the
  /// code with this parity-check matrix (role ParityCheck), when computed.
  std::optional<std::uint64_t> distance;
  /// Minimum distance of the dual code, when computed.
  std::optional<std::uint64_t> dual_distance;
  std::string distance_status;
};

/// DoesNotSpan if the points do not span the ambient space.
CodeExport export_code_matrices(const PointSet& s, CodeRole role,
                                std::uint64_t codeword_budget = std::uint64_t(1) << 24);

/// Minimum weight of the code generated by the columns' coordinate rows, by
/// exhaustive enumeration of projective messages.
std::uint64_t min_distance_generator(const PointSet& s);
/// Smallest number of linearly dependent points (the distance of the code with
/// these columns as parity-check matrix). Exhaustive over subsets up to size k+1.
std::optional<std::uint64_t> min_dependent_set(const PointSet& s, std::uint64_t subset_budget);

std::string matrix_csv(const CodeExport& c);

}  // namespace nmds
