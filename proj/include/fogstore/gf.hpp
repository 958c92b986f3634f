#ifndef FOGSTORE_GF_HPP
#define FOGSTORE_GF_HPP

#include <cstdint>
#include <vector>

namespace fogstore {

// Arithmetic in GF(2^q) for q in {1, 4, 8}, via log/antilog tables.
// Reduction polynomials are fixed per field so coded packets are
// portable: 0x3 for GF(2), 0x13 (x^4+x+1) for GF(16), and
// 0x11B (x^8+x^4+x^3+x+1) for GF(256). x is not primitive modulo 0x11B,
// so the GF(256) tables are generated from 0x03; table construction
// verifies the generator walks the whole multiplicative group.
class GaloisField {
 public:
  static const GaloisField& of(unsigned q);  // cached instances

  unsigned q() const { return q_; }
  unsigned order() const { return order_; }
  unsigned poly() const { return poly_; }

  std::uint8_t add(std::uint8_t a, std::uint8_t b) const { return a ^ b; }

  std::uint8_t mul(std::uint8_t a, std::uint8_t b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }

  // Multiplicative inverse; zero has none.
  std::uint8_t inv(std::uint8_t a) const;

  std::uint8_t div(std::uint8_t a, std::uint8_t b) const { return mul(a, inv(b)); }

  // Scales one payload byte by a coefficient. Payload bytes hold one
  // symbol for q=8, two nibbles for q=4, and eight bits for q=1; the
  // coefficient applies to every symbol in the byte.
  std::uint8_t mul_byte(std::uint8_t coefficient, std::uint8_t byte) const;

 private:
  explicit GaloisField(unsigned q);

  unsigned q_ = 0;
  unsigned order_ = 0;
  unsigned poly_ = 0;
  unsigned generator_ = 0;
  std::vector<std::uint8_t> exp_;  // doubled so mul needs no modulo
  std::vector<std::uint8_t> log_;
};

}  // namespace fogstore

#endif
