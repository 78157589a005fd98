#include "nmds/gf.hpp"

#include <algorithm>
#include <sstream>

namespace nmds {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::ReducibleModulus: return "ReducibleModulus";
    case ErrorCode::InvalidModulus: return "InvalidModulus";
    case ErrorCode::FieldTooLarge: return "FieldTooLarge";
    case ErrorCode::FieldTooSmall: return "FieldTooSmall";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NotSuzukiField: return "NotSuzukiField";
    case ErrorCode::WrongCharacteristic: return "WrongCharacteristic";
    case ErrorCode::IncompatibleFields: return "IncompatibleFields";
    case ErrorCode::NoSuchRoot: return "NoSuchRoot";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::DegenerateSpan: return "DegenerateSpan";
    case ErrorCode::AmbientMismatch: return "AmbientMismatch";
    case ErrorCode::ProjectingNucleus: return "ProjectingNucleus";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::SingularParameters: return "SingularParameters";
    case ErrorCode::ConditionUnsatisfied: return "ConditionUnsatisfied";
    case ErrorCode::SideConditionViolated: return "SideConditionViolated";
    case ErrorCode::WrongCongruenceClass: return "WrongCongruenceClass";
    case ErrorCode::CurveContainsLine: return "CurveContainsLine";
    case ErrorCode::PropertyViolatedByInput: return "PropertyViolatedByInput";
    case ErrorCode::DoesNotSpan: return "DoesNotSpan";
    case ErrorCode::MultipleWitnesses: return "MultipleWitnesses";
    case ErrorCode::NoWitness: return "NoWitness";
    case ErrorCode::Timeout: return "Timeout";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

using Poly = std::vector<std::uint32_t>;  // coefficients mod p, low to high

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo monic b over GF(p).
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    std::uint32_t lead = a.back();
    std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      std::uint32_t sub = static_cast<std::uint32_t>((std::uint64_t(lead) * b[i]) % p);
      a[shift + i] = (a[shift + i] + p - sub) % p;
    }
    trim(a);
  }
  return a;
}

std::vector<std::uint32_t> digits(Elem a, std::uint32_t p, std::uint32_t m) {
  std::vector<std::uint32_t> d(m, 0);
  for (std::uint32_t i = 0; i < m; ++i) {
    d[i] = a % p;
    a /= p;
  }
  return d;
}

Elem from_digits(const std::vector<std::uint32_t>& d, std::uint32_t p) {
  Elem v = 0;
  for (std::size_t i = d.size(); i-- > 0;) v = v * p + d[i];
  return v;
}

// Multiplication through polynomial arithmetic; used only while tables are built.
struct SlowArith {
  std::uint32_t p, m;
  Poly modulus;

  Elem mul(Elem a, Elem b) const {
    auto da = digits(a, p, m), db = digits(b, p, m);
    Poly prod(2 * m, 0);
    for (std::uint32_t i = 0; i < m; ++i)
      for (std::uint32_t j = 0; j < m; ++j)
        prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t(da[i]) * db[j]) % p);
    Poly r = poly_mod(prod, modulus, p);
    r.resize(m, 0);
    return from_digits(r, p);
  }
  Elem add(Elem a, Elem b) const {
    auto da = digits(a, p, m), db = digits(b, p, m);
    for (std::uint32_t i = 0; i < m; ++i) da[i] = (da[i] + db[i]) % p;
    return from_digits(da, p);
  }
  Elem pow(Elem a, std::uint64_t e) const {
    Elem r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
};

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> f;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      f.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) f.push_back(n);
  return f;
}

}  // namespace

bool is_irreducible_mod_p(const std::vector<std::uint32_t>& poly, std::uint32_t p) {
  Poly f = poly;
  trim(f);
  if (f.size() < 2) return false;
  const std::size_t deg = f.size() - 1;
  if (deg == 1) return true;
  // Try every monic divisor of degree 1..deg/2.
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      Poly g(d + 1, 0);
      std::uint64_t c = code;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

FieldPtr Field::make(std::uint32_t p, std::uint32_t m, std::optional<std::vector<std::uint32_t>> modulus) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "extension degree must be positive");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < m; ++i) {
    q *= p;
    if (q > kMaxOrder) throw Error(ErrorCode::FieldTooLarge, "q exceeds 2^16");
  }

  Poly mod;
  if (modulus) {
    mod = *modulus;
    if (mod.size() != m + 1 || mod.back() != 1)
      throw Error(ErrorCode::InvalidModulus, "modulus must be monic of degree m");
    for (auto c : mod)
      if (c >= p) throw Error(ErrorCode::InvalidModulus, "modulus coefficient out of range");
    if (!is_irreducible_mod_p(mod, p)) throw Error(ErrorCode::ReducibleModulus, "modulus is reducible");
  } else {
    // Lower coefficients, read as a base-p integer, ascend from 0.
    for (std::uint64_t code = 0;; ++code) {
      Poly cand(m + 1, 0);
      std::uint64_t c = code;
      for (std::uint32_t i = 0; i < m; ++i) {
        cand[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      cand[m] = 1;
      if (is_irreducible_mod_p(cand, p)) {
        mod = cand;
        break;
      }
    }
  }

  std::shared_ptr<Field> f(new Field());
  f->p_ = p;
  f->m_ = m;
  f->q_ = static_cast<std::uint32_t>(q);
  f->modulus_ = mod;
  f->build_tables();
  return f;
}

FieldPtr Field::of_order(std::uint32_t q) {
  if (q < 2) throw Error(ErrorCode::InvalidArgument, "field order must be at least 2");
  std::uint32_t p = 0;
  for (std::uint32_t d = 2; d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  std::uint32_t m = 0, r = q;
  while (r % p == 0) {
    r /= p;
    ++m;
  }
  if (r != 1) throw Error(ErrorCode::NotPrime, std::to_string(q) + " is not a prime power");
  return make(p, m);
}

void Field::build_tables() {
  SlowArith slow{p_, m_, modulus_};
  const std::uint32_t n = q_ - 1;

  if (q_ == 2) {
    primitive_ = 1;
  } else {
    auto factors = prime_factors(n);
    for (Elem g = 2; g < q_; ++g) {
      bool ok = slow.pow(g, n) == 1;
      for (auto r : factors) {
        if (!ok) break;
        if (slow.pow(g, n / r) == 1) ok = false;
      }
      if (ok) {
        primitive_ = g;
        break;
      }
    }
  }

  exp_.assign(2 * n, 0);
  log_.assign(q_, 0);
  Elem x = 1;
  for (std::uint32_t k = 0; k < n; ++k) {
    exp_[k] = x;
    exp_[k + n] = x;
    log_[x] = k;
    x = slow.mul(x, primitive_);
  }

  neg_.assign(q_, 0);
  for (Elem a = 0; a < q_; ++a) {
    auto d = digits(a, p_, m_);
    for (auto& c : d) c = (p_ - c) % p_;
    neg_[a] = from_digits(d, p_);
  }

  if (p_ != 2 && m_ > 1) {
    zech_.assign(n, -1);
    for (std::uint32_t k = 0; k < n; ++k) {
      Elem s = slow.add(1, exp_[k]);
      zech_[k] = s == 0 ? -1 : static_cast<std::int32_t>(log_[s]);
    }
  }
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  std::uint32_t l = log_[a];
  return exp_[l == 0 ? 0 : (q_ - 1) - l];
}

Elem Field::pow(Elem a, std::uint64_t e) const noexcept {
  if (e == 0) return 1;
  if (a == 0) return 0;
  std::uint64_t l = (std::uint64_t(log_[a]) * (e % (q_ - 1))) % (q_ - 1);
  return exp_[l];
}

Elem Field::from_int(std::int64_t n) const noexcept {
  std::int64_t r = n % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

Elem Field::trace(Elem a) const noexcept {
  Elem t = 0, x = a;
  for (std::uint32_t i = 0; i < m_; ++i) {
    t = add(t, x);
    x = pow(x, p_);
  }
  return t;
}

bool Field::is_square(Elem a) const noexcept {
  if (a == 0) return false;
  if (p_ == 2) return true;
  return log_[a] % 2 == 0;
}

Elem Field::sqrt_even(Elem a) const {
  if (p_ != 2) throw Error(ErrorCode::WrongCharacteristic, "sqrt_even needs characteristic 2");
  return pow(a, q_ / 2);
}

Elem Field::sigma(Elem a) const {
  if (!is_suzuki()) throw Error(ErrorCode::NotSuzukiField, describe() + " is not GF(2^(2r+1)), r >= 1");
  return pow(a, std::uint64_t(1) << ((m_ - 1) / 2 + 1));
}

std::uint32_t Field::sqrt_2q() const {
  if (!is_suzuki()) throw Error(ErrorCode::NotSuzukiField, describe() + " is not GF(2^(2r+1)), r >= 1");
  return 1u << ((m_ - 1) / 2 + 1);
}

Elem Field::pick_delta() const {
  if (p_ != 2) throw Error(ErrorCode::WrongCharacteristic, "delta needs q even");
  for (Elem a = 0; a < q_; ++a)
    if (trace(a) == 1) return a;
  throw Error(ErrorCode::NotFound, "no trace-one element");
}

Elem Field::pick_nonsquare() const {
  if (p_ == 2) throw Error(ErrorCode::WrongCharacteristic, "non-squares need q odd");
  for (Elem a = 1; a < q_; ++a)
    if (!is_square(a)) return a;
  throw Error(ErrorCode::NotFound, "no non-square");
}

std::string Field::describe() const {
  std::ostringstream os;
  os << "GF(" << q_ << ")";
  if (m_ > 1) {
    os << " mod ";
    bool first = true;
    for (std::size_t i = modulus_.size(); i-- > 0;) {
      if (modulus_[i] == 0) continue;
      if (!first) os << "+";
      first = false;
      if (modulus_[i] != 1 || i == 0) os << modulus_[i];
      if (i >= 1) os << "x";
      if (i >= 2) os << "^" << i;
    }
  }
  return os.str();
}

std::vector<Elem> roots(const Field& f, const std::vector<Elem>& poly) {
  std::vector<Elem> out;
  for (Elem x = 0; x < f.q(); ++x) {
    Elem v = 0;
    for (std::size_t i = poly.size(); i-- > 0;) v = f.add(f.mul(v, x), poly[i]);
    if (v == 0) out.push_back(x);
  }
  return out;
}

Embedding extension_embed(const FieldPtr& small, const FieldPtr& big) {
  if (small->p() != big->p() || big->m() != 2 * small->m())
    throw Error(ErrorCode::IncompatibleFields, small->describe() + " does not sit in " + big->describe());
  const Field& F = *small;
  const Field& K = *big;
  const std::uint32_t p = F.p(), m = F.m();

  // Image of the polynomial generator x: a root of F's modulus in K.
  std::vector<Elem> mod_in_k;
  for (auto c : F.modulus()) mod_in_k.push_back(K.from_int(c));
  auto rs = roots(K, mod_in_k);
  if (rs.empty()) throw Error(ErrorCode::NoSuchRoot, "modulus has no root in the extension");
  const Elem root = rs.front();

  Embedding e;
  e.small = small;
  e.big = big;
  e.up.assign(F.q(), 0);
  e.down.assign(K.q(), Embedding::kNone);
  for (Elem a = 0; a < F.q(); ++a) {
    auto d = digits(a, p, m);
    Elem v = 0, pw = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
      v = K.add(v, K.mul(K.from_int(d[i]), pw));
      pw = K.mul(pw, root);
    }
    if (e.down[v] != Embedding::kNone) throw Error(ErrorCode::IncompatibleFields, "embedding not injective");
    e.up[a] = v;
    e.down[v] = a;
  }

  if (F.even()) {
    e.i_parameter = F.pick_delta();
    const Elem target = e.up[e.i_parameter];
    for (Elem b = 0; b < K.q(); ++b) {
      if (K.add(K.mul(b, b), b) == target) {
        e.i = b;
        return e;
      }
    }
  } else {
    e.i_parameter = F.pick_nonsquare();
    const Elem target = e.up[e.i_parameter];
    for (Elem b = 0; b < K.q(); ++b) {
      if (K.mul(b, b) == target) {
        e.i = b;
        return e;
      }
    }
  }
  throw Error(ErrorCode::NoSuchRoot, "no designated element i in the extension");
}

}  // namespace nmds
