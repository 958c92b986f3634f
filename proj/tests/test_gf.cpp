#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>

#include "fogstore/gf.hpp"
#include "fogstore/rng.hpp"

using namespace fogstore;

namespace {

// Bit-level oracle: carry-less multiply, then long division by the
// reduction polynomial. Independent of the log/antilog tables.
std::uint8_t slow_mul(std::uint8_t a, std::uint8_t b, unsigned poly, unsigned q) {
  unsigned product = 0;
  for (unsigned bit = 0; bit < q; ++bit)
    if (b & (1u << bit)) product ^= static_cast<unsigned>(a) << bit;
  for (int bit = 2 * static_cast<int>(q) - 2; bit >= static_cast<int>(q); --bit)
    if (product & (1u << bit)) product ^= poly << (bit - q);
  return static_cast<std::uint8_t>(product);
}

}  // namespace

TEST_CASE("field construction is checked and cached") {
  CHECK(&GaloisField::of(8) == &GaloisField::of(8));
  CHECK(GaloisField::of(8).order() == 256);
  CHECK(GaloisField::of(4).order() == 16);
  CHECK(GaloisField::of(1).order() == 2);
  CHECK(GaloisField::of(8).poly() == 0x11B);
  CHECK_THROWS_AS(GaloisField::of(3), std::domain_error);
}

TEST_CASE("multiplicative identity and absorbing zero") {
  for (unsigned q : {1u, 4u, 8u}) {
    const GaloisField& field = GaloisField::of(q);
    for (unsigned x = 0; x < field.order(); ++x) {
      CHECK(field.mul(static_cast<std::uint8_t>(x), 1) == x);
      CHECK(field.mul(1, static_cast<std::uint8_t>(x)) == x);
      CHECK(field.mul(static_cast<std::uint8_t>(x), 0) == 0);
      CHECK(field.mul(0, static_cast<std::uint8_t>(x)) == 0);
    }
  }
}

TEST_CASE("the classic GF(256) inverse pair holds") {
  const GaloisField& field = GaloisField::of(8);
  CHECK(field.mul(0x53, 0xCA) == 0x01);
  CHECK(slow_mul(0x53, 0xCA, 0x11B, 8) == 0x01);
  CHECK(field.inv(0x53) == 0xCA);
  CHECK(field.inv(0xCA) == 0x53);
}

TEST_CASE("inverse found by exhaustive search matches") {
  const GaloisField& field = GaloisField::of(8);
  std::uint8_t found = 0;
  for (unsigned candidate = 1; candidate < 256; ++candidate) {
    if (field.mul(0x53, static_cast<std::uint8_t>(candidate)) == 1) {
      found = static_cast<std::uint8_t>(candidate);
      break;
    }
  }
  CHECK(found == 0xCA);
}

TEST_CASE("every nonzero element has a working inverse") {
  for (unsigned q : {1u, 4u, 8u}) {
    const GaloisField& field = GaloisField::of(q);
    for (unsigned x = 1; x < field.order(); ++x)
      CHECK(field.mul(static_cast<std::uint8_t>(x), field.inv(static_cast<std::uint8_t>(x))) == 1);
    CHECK_THROWS_AS(field.inv(0), std::domain_error);
  }
}

TEST_CASE("table multiplication matches the bit-level oracle exhaustively") {
  for (unsigned q : {1u, 4u, 8u}) {
    const GaloisField& field = GaloisField::of(q);
    for (unsigned a = 0; a < field.order(); ++a)
      for (unsigned b = 0; b < field.order(); ++b)
        CHECK(field.mul(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)) ==
              slow_mul(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b),
                       field.poly(), q));
  }
}

TEST_CASE("field axioms hold exhaustively on GF(16)") {
  const GaloisField& field = GaloisField::of(4);
  for (unsigned a = 0; a < 16; ++a) {
    for (unsigned b = 0; b < 16; ++b) {
      const auto ua = static_cast<std::uint8_t>(a), ub = static_cast<std::uint8_t>(b);
      CHECK(field.mul(ua, ub) == field.mul(ub, ua));
      for (unsigned c = 0; c < 16; ++c) {
        const auto uc = static_cast<std::uint8_t>(c);
        CHECK(field.mul(field.mul(ua, ub), uc) == field.mul(ua, field.mul(ub, uc)));
        CHECK(field.mul(ua, field.add(ub, uc)) ==
              field.add(field.mul(ua, ub), field.mul(ua, uc)));
      }
    }
  }
}

TEST_CASE("field axioms hold on random GF(256) triples") {
  const GaloisField& field = GaloisField::of(8);
  SplitMix64 rng(99);
  for (int trial = 0; trial < 100000; ++trial) {
    const auto a = static_cast<std::uint8_t>(rng.next_u64());
    const auto b = static_cast<std::uint8_t>(rng.next_u64());
    const auto c = static_cast<std::uint8_t>(rng.next_u64());
    CHECK(field.mul(a, b) == field.mul(b, a));
    CHECK(field.mul(field.mul(a, b), c) == field.mul(a, field.mul(b, c)));
    CHECK(field.mul(a, field.add(b, c)) == field.add(field.mul(a, b), field.mul(a, c)));
  }
}

TEST_CASE("division inverts multiplication") {
  const GaloisField& field = GaloisField::of(8);
  SplitMix64 rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto a = static_cast<std::uint8_t>(rng.next_u64());
    const auto b = static_cast<std::uint8_t>(1 + rng.next_u64() % 255);
    CHECK(field.div(field.mul(a, b), b) == a);
  }
}

TEST_CASE("mul_byte applies the coefficient symbol-wise") {
  const GaloisField& gf256 = GaloisField::of(8);
  CHECK(gf256.mul_byte(0x53, 0xCA) == 0x01);

  const GaloisField& gf16 = GaloisField::of(4);
  for (unsigned c = 0; c < 16; ++c)
    for (unsigned hi = 0; hi < 16; ++hi)
      for (unsigned lo = 0; lo < 16; ++lo) {
        const auto byte = static_cast<std::uint8_t>((hi << 4) | lo);
        const auto expected = static_cast<std::uint8_t>(
            (gf16.mul(static_cast<std::uint8_t>(c), static_cast<std::uint8_t>(hi)) << 4) |
            gf16.mul(static_cast<std::uint8_t>(c), static_cast<std::uint8_t>(lo)));
        CHECK(gf16.mul_byte(static_cast<std::uint8_t>(c), byte) == expected);
      }

  const GaloisField& gf2 = GaloisField::of(1);
  CHECK(gf2.mul_byte(1, 0xA7) == 0xA7);
  CHECK(gf2.mul_byte(0, 0xA7) == 0x00);
}
