#include <doctest.h>

#include <set>
#include <vector>

#include "nmds/gf.hpp"

using namespace nmds;

namespace {

// Independent oracle: elements as coefficient vectors, schoolbook products
// reduced by the field's monic modulus.
struct PolyField {
  std::uint32_t p, m;
  std::vector<std::uint32_t> mod;

  std::vector<std::uint32_t> digits(Elem a) const {
    std::vector<std::uint32_t> d(m);
    for (auto& x : d) x = a % p, a /= p;
    return d;
  }
  Elem encode(const std::vector<std::uint32_t>& d) const {
    Elem a = 0;
    for (std::size_t i = d.size(); i-- > 0;) a = a * p + d[i];
    return a;
  }
  Elem add(Elem a, Elem b) const {
    auto x = digits(a), y = digits(b);
    for (std::uint32_t i = 0; i < m; ++i) x[i] = (x[i] + y[i]) % p;
    return encode(x);
  }
  Elem mul(Elem a, Elem b) const {
    auto x = digits(a), y = digits(b);
    std::vector<std::uint64_t> prod(2 * m, 0);
    for (std::uint32_t i = 0; i < m; ++i)
      for (std::uint32_t j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + std::uint64_t(x[i]) * y[j]) % p;
    for (std::size_t k = prod.size(); k-- > m;) {
      const std::uint64_t c = prod[k];
      if (!c) continue;
      for (std::uint32_t i = 0; i <= m; ++i) prod[k - m + i] = (prod[k - m + i] + (p - c) * mod[i]) % p;
    }
    std::vector<std::uint32_t> r(m);
    for (std::uint32_t i = 0; i < m; ++i) r[i] = static_cast<std::uint32_t>(prod[i]);
    return encode(r);
  }
};

}  // namespace

TEST_CASE("arithmetic agrees with polynomial arithmetic modulo the chosen modulus") {
  for (std::uint32_t q : {2u, 4u, 8u, 9u, 16u, 25u, 27u, 32u, 49u, 64u, 81u, 125u}) {
    FieldPtr f = Field::of_order(q);
    PolyField o{f->p(), f->m(), f->modulus()};
    REQUIRE(f->modulus().size() == f->m() + 1);
    CHECK(is_irreducible_mod_p(f->modulus(), f->p()));
    for (Elem a = 0; a < q; ++a)
      for (Elem b = 0; b < q; ++b) {
        REQUIRE(f->add(a, b) == o.add(a, b));
        REQUIRE(f->mul(a, b) == o.mul(a, b));
      }
  }
}

TEST_CASE("GF(8) uses x^3 + x + 1") {
  FieldPtr f = Field::of_order(8);
  CHECK(f->modulus() == std::vector<std::uint32_t>{1, 1, 0, 1});
  // x * x^2 = x^3 = x + 1
  CHECK(f->mul(2, 4) == 3);
}

TEST_CASE("primitive element generates the multiplicative group") {
  for (std::uint32_t q : {7u, 8u, 25u, 64u, 81u}) {
    FieldPtr f = Field::of_order(q);
    std::set<Elem> seen;
    Elem x = 1;
    for (std::uint32_t k = 0; k + 1 < q; ++k) {
      seen.insert(x);
      x = f->mul(x, f->primitive());
    }
    CHECK(seen.size() == q - 1);
    CHECK(x == 1);
  }
}

TEST_CASE("inverse, division and the zero divisor error") {
  FieldPtr f = Field::of_order(27);
  for (Elem a = 1; a < 27; ++a) CHECK(f->mul(a, f->inv(a)) == 1);
  CHECK_THROWS_AS(f->inv(0), Error);
  try {
    f->div(3, 0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DivisionByZero);
  }
}

TEST_CASE("trace, squares and distinguished elements") {
  FieldPtr f = Field::of_order(32);
  // Tr(a) = a + a^2 + ... + a^16
  for (Elem a = 0; a < 32; ++a) {
    Elem t = 0, x = a;
    for (int i = 0; i < 5; ++i, x = f->mul(x, x)) t = f->add(t, x);
    CHECK(f->trace(a) == t);
    CHECK(f->mul(f->sqrt_even(a), f->sqrt_even(a)) == a);
  }
  CHECK(f->trace(f->pick_delta()) == 1);
  for (Elem d = 0; d < f->pick_delta(); ++d) CHECK(f->trace(d) == 0);

  FieldPtr g = Field::of_order(29);
  std::set<Elem> sq;
  for (Elem a = 1; a < 29; ++a) sq.insert(g->mul(a, a));
  for (Elem a = 1; a < 29; ++a) CHECK(g->is_square(a) == (sq.count(a) == 1));
  CHECK(g->pick_nonsquare() == 2);
  CHECK_THROWS_AS(g->pick_delta(), Error);
  CHECK_THROWS_AS(f->pick_nonsquare(), Error);
}

TEST_CASE("Suzuki automorphism squares to the Frobenius") {
  for (std::uint32_t q : {8u, 32u, 128u}) {
    FieldPtr f = Field::of_order(q);
    CHECK(f->sqrt_2q() * f->sqrt_2q() == 2 * q);
    for (Elem a = 0; a < q; ++a) {
      CHECK(f->sigma(f->sigma(a)) == f->mul(a, a));
      CHECK(f->sigma(a) == f->pow(a, f->sqrt_2q()));
    }
  }
  CHECK_THROWS_AS(Field::of_order(16)->sigma(1), Error);
  CHECK_THROWS_AS(Field::of_order(2)->sqrt_2q(), Error);
}

TEST_CASE("construction errors") {
  auto code = [](auto fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  CHECK(code([] { Field::make(6, 1); }) == ErrorCode::NotPrime);
  CHECK(code([] { Field::make(2, 2, std::vector<std::uint32_t>{1, 0, 1}); }) == ErrorCode::ReducibleModulus);
  CHECK(code([] { Field::make(2, 17); }) == ErrorCode::FieldTooLarge);
  CHECK(code([] { Field::of_order(12); }) == ErrorCode::NotPrime);
}

TEST_CASE("roots of polynomials") {
  FieldPtr f = Field::of_order(29);
  // (T - 2)(T - 5) = T^2 - 7T + 10
  CHECK(roots(*f, {10, f->from_int(-7), 1}) == std::vector<Elem>{2, 5});
  CHECK(roots(*f, {f->neg(f->pick_nonsquare()), 0, 1}).empty());
}

TEST_CASE("quadratic extension embedding is a ring homomorphism") {
  for (std::uint32_t q : {5u, 8u, 9u, 29u, 32u}) {
    FieldPtr small = Field::of_order(q);
    FieldPtr big = Field::of_order(q * q);
    Embedding e = extension_embed(small, big);
    std::set<Elem> image;
    for (Elem a = 0; a < q; ++a) {
      image.insert(e.embed(a));
      CHECK(e.lower(e.embed(a)) == a);
      for (Elem b = 0; b < q; ++b) {
        CHECK(e.embed(small->add(a, b)) == big->add(e.embed(a), e.embed(b)));
        CHECK(e.embed(small->mul(a, b)) == big->mul(e.embed(a), e.embed(b)));
      }
    }
    CHECK(image.size() == q);
    CHECK_FALSE(e.in_subfield(e.i));
    const Elem i2 = big->mul(e.i, e.i);
    if (small->even())
      CHECK(big->add(i2, e.i) == e.embed(e.i_parameter));
    else
      CHECK(i2 == e.embed(e.i_parameter));
  }
  CHECK_THROWS_AS(extension_embed(Field::of_order(8), Field::of_order(16)), Error);
}
