#pragma once

// Table-driven arithmetic in GF(p^m), q = p^m <= 2^16.
//
// An element is an integer in [0, q) whose base-p digits are the coefficients
// of its polynomial-basis representation, lowest degree first. Multiplication
// goes through exp/log tables with respect to a fixed primitive element;
// addition is XOR (p = 2), integer addition mod p (m = 1) or Zech logarithms.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nmds/error.hpp"

namespace nmds {

using Elem = std::uint32_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field {
 public:
  static constexpr std::uint32_t kMaxOrder = 1u << 16;

  /// Builds GF(p^m). Without a modulus the smallest monic irreducible (ranked
  /// by the integer value of its coefficient vector at p) is selected.
  static FieldPtr make(std::uint32_t p, std::uint32_t m,
                       std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);

  /// Convenience: GF(q) for a prime power q.
  static FieldPtr of_order(std::uint32_t q);

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t m() const noexcept { return m_; }
  std::uint32_t q() const noexcept { return q_; }
  bool even() const noexcept { return p_ == 2; }
  /// Monic modulus, coefficients low to high (size m + 1).
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
  Elem primitive() const noexcept { return primitive_; }

  Elem add(Elem a, Elem b) const noexcept {
    if (p_ == 2) return a ^ b;
    if (m_ == 1) {
      Elem s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    if (a == 0) return b;
    if (b == 0) return a;
    std::uint32_t la = log_[a], lb = log_[b];
    std::uint32_t d = lb >= la ? lb - la : lb + (q_ - 1) - la;
    std::int32_t z = zech_[d];
    if (z < 0) return 0;
    return exp_[la + static_cast<std::uint32_t>(z)];
  }
  Elem neg(Elem a) const noexcept { return neg_[a]; }
  Elem sub(Elem a, Elem b) const noexcept { return add(a, neg_[b]); }
  Elem mul(Elem a, Elem b) const noexcept {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  /// Throws DivisionByZero for a == 0.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const noexcept;
  /// Image of the integer n under Z -> GF(p).
  Elem from_int(std::int64_t n) const noexcept;

  std::uint32_t log(Elem a) const noexcept { return log_[a]; }
  Elem exp(std::uint32_t k) const noexcept { return exp_[k % (q_ - 1)]; }

  /// Absolute trace to GF(p); the result is an element of the prime subfield.
  Elem trace(Elem a) const noexcept;
  /// For odd q: a is a nonzero square. For even q every element is a square;
  /// returns true for a != 0.
  bool is_square(Elem a) const noexcept;
  /// Unique square root in characteristic 2.
  Elem sqrt_even(Elem a) const;

  bool is_suzuki() const noexcept { return p_ == 2 && m_ % 2 == 1 && m_ >= 3; }
  /// x -> x^(2^(r+1)) with m = 2r + 1. Throws NotSuzukiField.
  Elem sigma(Elem a) const;
  /// 2^(r+1) = sqrt(2q). Throws NotSuzukiField.
  std::uint32_t sqrt_2q() const;

  /// Smallest encoding with absolute trace 1 (q even; WrongCharacteristic).
  Elem pick_delta() const;
  /// Smallest non-square encoding (q odd; WrongCharacteristic).
  Elem pick_nonsquare() const;

  std::string describe() const;

 private:
  Field() = default;
  void build_tables();

  std::uint32_t p_ = 0, m_ = 0, q_ = 0;
  std::vector<std::uint32_t> modulus_;
  Elem primitive_ = 0;
  std::vector<Elem> exp_;           // length 2(q-1), so mul needs no reduction
  std::vector<std::uint32_t> log_;  // log_[0] unused
  std::vector<std::int32_t> zech_;  // zech_[k] = log(1 + g^k), -1 if 1 + g^k = 0
  std::vector<Elem> neg_;
};

/// Embedding GF(q) -> GF(q^2) together with a designated element i of
/// GF(q^2) \ GF(q): i^2 = s for odd q (s a non-square) or i^2 + i = delta for
/// even q (Tr(delta) = 1).
struct Embedding {
  FieldPtr small;
  FieldPtr big;
  std::vector<Elem> up;    // size q
  std::vector<Elem> down;  // size q^2, kNone outside the subfield
  Elem i = 0;
  Elem i_parameter = 0;  // s or delta, in the small field

  static constexpr Elem kNone = 0xffffffffu;

  Elem embed(Elem a) const { return up[a]; }
  bool in_subfield(Elem b) const { return down[b] != kNone; }
  std::optional<Elem> lower(Elem b) const {
    if (down[b] == kNone) return std::nullopt;
    return down[b];
  }
};

/// Requires big = GF(p^(2m)) for small = GF(p^m); IncompatibleFields otherwise.
Embedding extension_embed(const FieldPtr& small, const FieldPtr& big);

/// Irreducibility of a monic polynomial over GF(p) (coefficients low to high).
bool is_irreducible_mod_p(const std::vector<std::uint32_t>& poly, std::uint32_t p);

bool is_prime(std::uint64_t n);

/// Roots in GF(q), ascending by encoding, of a polynomial given low to high.
std::vector<Elem> roots(const Field& f, const std::vector<Elem>& poly);

}  // namespace nmds
