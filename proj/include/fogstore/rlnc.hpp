#ifndef FOGSTORE_RLNC_HPP
#define FOGSTORE_RLNC_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fogstore/gf.hpp"
#include "fogstore/rng.hpp"

namespace fogstore {

// The M source packets combined by one round of coding. All packets share
// one size; the field decides the symbol width inside each byte.
struct Generation {
  std::vector<std::vector<std::uint8_t>> packets;
  std::size_t packet_size_bytes = 0;
  unsigned field_q = 8;

  std::size_t size() const { return packets.size(); }
};

Generation make_generation(std::vector<std::vector<std::uint8_t>> packets, unsigned field_q);

// Uniformly random packet contents; deterministic in the rng state.
Generation random_generation(std::size_t packet_count, std::size_t packet_size_bytes,
                             unsigned field_q, SplitMix64& rng);

// One coded packet: the coding vector and the matching combination of the
// source payloads.
struct CodedPacket {
  std::vector<std::uint8_t> coefficients;
  std::vector<std::uint8_t> payload;
};

enum class EncodeMode { Random, Systematic };

// Draws `count` coding vectors uniformly from GF(2^q)^M and combines the
// generation under each. Systematic mode emits unit vectors instead,
// cycling through the sources, so packet i carries source i%M verbatim.
std::vector<CodedPacket> encode(const Generation& generation, std::size_t count,
                                SplitMix64& rng, EncodeMode mode = EncodeMode::Random);

// Online Gaussian elimination over GF(2^q). Packets may arrive from any
// node in any order; rows are kept fully reduced so rank and recovery are
// always current. Single writer; moving between threads is fine.
class DecoderState {
 public:
  DecoderState(std::size_t packet_count, std::size_t packet_size_bytes, unsigned field_q);

  // Absorbs one coded packet; returns true when it was innovative
  // (rank grew by one).
  bool add(const CodedPacket& packet);

  std::size_t rank() const { return rank_; }
  bool complete() const { return rank_ == packet_count_; }

  // The reconstructed generation; only valid once complete.
  Generation recover() const;

 private:
  std::size_t packet_count_;
  std::size_t packet_size_bytes_;
  const GaloisField& field_;
  std::size_t rank_ = 0;
  // pivot_rows_[c] holds the row whose leading coefficient is column c.
  std::vector<std::optional<CodedPacket>> pivot_rows_;
};

struct DecodeResult {
  std::size_t rank = 0;
  std::optional<Generation> generation;
};

// One-shot decode: feeds everything into a DecoderState and recovers the
// sources when the coding vectors span all of them.
DecodeResult decode(const std::vector<CodedPacket>& packets, std::size_t packet_count,
                    unsigned field_q);

// Row rank of a coefficient matrix over GF(2^q).
std::size_t matrix_rank(std::vector<std::vector<std::uint8_t>> rows, unsigned field_q);

// Probability that M uniformly drawn length-M coding vectors over GF(2^q)
// are linearly independent: prod_{i=1..M} (1 - 2^(-q*i)).
double full_rank_probability(std::size_t packet_count, unsigned field_q);

// Wire format: 2-byte big-endian M, 1-byte q, the M coefficients packed
// MSB-first into ceil(M*q/8) bytes, then the payload.
std::vector<std::uint8_t> serialize_packet(const CodedPacket& packet, unsigned field_q);
std::pair<CodedPacket, unsigned> parse_packet(std::span<const std::uint8_t> bytes);

}  // namespace fogstore

#endif
