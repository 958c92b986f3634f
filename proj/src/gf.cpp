#include "fogstore/gf.hpp"

#include <stdexcept>

namespace fogstore {

namespace {

// Shift-and-xor product used only while building the tables.
unsigned slow_mul(unsigned a, unsigned b, unsigned poly, unsigned order) {
  unsigned product = 0;
  while (b != 0) {
    if (b & 1u) product ^= a;
    b >>= 1;
    a <<= 1;
    if (a & order) a ^= poly;
  }
  return product;
}

}  // namespace

GaloisField::GaloisField(unsigned q) : q_(q), order_(1u << q) {
  switch (q) {
    case 1: poly_ = 0x3; generator_ = 0x1; break;
    case 4: poly_ = 0x13; generator_ = 0x2; break;
    case 8: poly_ = 0x11B; generator_ = 0x3; break;
    default: throw std::domain_error("field exponent must be 1, 4 or 8");
  }
  exp_.assign(std::size_t{2} * order_, 0);
  log_.assign(order_, 0);
  std::vector<bool> seen(order_, false);
  unsigned value = 1;
  for (unsigned i = 0; i + 1 < order_; ++i) {
    if (seen[value])
      throw std::logic_error("generator does not span the multiplicative group");
    seen[value] = true;
    exp_[i] = static_cast<std::uint8_t>(value);
    log_[value] = static_cast<std::uint8_t>(i);
    value = slow_mul(value, generator_, poly_, order_);
  }
  if (value != 1) throw std::logic_error("generator order mismatch");
  for (unsigned i = 0; i + 1 < order_; ++i) exp_[i + order_ - 1] = exp_[i];
}

const GaloisField& GaloisField::of(unsigned q) {
  static const GaloisField gf2(1);
  static const GaloisField gf16(4);
  static const GaloisField gf256(8);
  switch (q) {
    case 1: return gf2;
    case 4: return gf16;
    case 8: return gf256;
    default: throw std::domain_error("field exponent must be 1, 4 or 8");
  }
}

std::uint8_t GaloisField::inv(std::uint8_t a) const {
  if (a == 0) throw std::domain_error("zero has no inverse");
  if (a == 1) return 1;
  return exp_[(order_ - 1) - log_[a]];
}

std::uint8_t GaloisField::mul_byte(std::uint8_t coefficient, std::uint8_t byte) const {
  switch (q_) {
    case 8:
      return mul(coefficient, byte);
    case 4: {
      const std::uint8_t hi = mul(coefficient, static_cast<std::uint8_t>(byte >> 4));
      const std::uint8_t lo = mul(coefficient, static_cast<std::uint8_t>(byte & 0x0F));
      return static_cast<std::uint8_t>((hi << 4) | lo);
    }
    default:
      return coefficient ? byte : 0;
  }
}

}  // namespace fogstore
