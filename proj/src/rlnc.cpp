#include "fogstore/rlnc.hpp"

#include <cmath>
#include <stdexcept>

namespace fogstore {

namespace {

void check_field(unsigned field_q) {
  if (field_q != 1 && field_q != 4 && field_q != 8)
    throw std::domain_error("field exponent must be 1, 4 or 8");
}

// payload += coefficient * source, byte-wise in the field.
void add_scaled(std::vector<std::uint8_t>& payload, std::uint8_t coefficient,
                std::span<const std::uint8_t> source, const GaloisField& field) {
  if (coefficient == 0) return;
  for (std::size_t i = 0; i < payload.size(); ++i)
    payload[i] ^= field.mul_byte(coefficient, source[i]);
}

void scale_row(CodedPacket& row, std::uint8_t factor, const GaloisField& field) {
  if (factor == 1) return;
  for (std::uint8_t& c : row.coefficients) c = field.mul(factor, c);
  for (std::uint8_t& b : row.payload) b = field.mul_byte(factor, b);
}

// row -= factor * pivot (subtraction and addition coincide).
void eliminate(CodedPacket& row, std::uint8_t factor, const CodedPacket& pivot,
               const GaloisField& field) {
  if (factor == 0) return;
  for (std::size_t i = 0; i < row.coefficients.size(); ++i)
    row.coefficients[i] ^= field.mul(factor, pivot.coefficients[i]);
  add_scaled(row.payload, factor, pivot.payload, field);
}

}  // namespace

Generation make_generation(std::vector<std::vector<std::uint8_t>> packets, unsigned field_q) {
  check_field(field_q);
  if (packets.empty()) throw std::domain_error("generation needs at least one packet");
  const std::size_t size = packets.front().size();
  if (size == 0) throw std::domain_error("packets must not be empty");
  for (const auto& p : packets)
    if (p.size() != size) throw std::domain_error("packets must share one size");
  Generation generation;
  generation.packet_size_bytes = size;
  generation.field_q = field_q;
  generation.packets = std::move(packets);
  return generation;
}

Generation random_generation(std::size_t packet_count, std::size_t packet_size_bytes,
                             unsigned field_q, SplitMix64& rng) {
  if (packet_count == 0) throw std::domain_error("generation needs at least one packet");
  if (packet_size_bytes == 0) throw std::domain_error("packets must not be empty");
  std::vector<std::vector<std::uint8_t>> packets(packet_count);
  for (auto& packet : packets) {
    packet.resize(packet_size_bytes);
    for (auto& byte : packet) byte = static_cast<std::uint8_t>(rng.next_u64() & 0xFF);
  }
  return make_generation(std::move(packets), field_q);
}

std::vector<CodedPacket> encode(const Generation& generation, std::size_t count,
                                SplitMix64& rng, EncodeMode mode) {
  if (generation.packets.empty()) throw std::domain_error("cannot encode an empty generation");
  if (count == 0) throw std::domain_error("count must be at least 1");
  const GaloisField& field = GaloisField::of(generation.field_q);
  const std::size_t m = generation.size();
  const std::uint8_t mask = static_cast<std::uint8_t>(field.order() - 1);

  std::vector<CodedPacket> coded;
  coded.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    CodedPacket packet;
    packet.coefficients.resize(m);
    if (mode == EncodeMode::Systematic) {
      packet.coefficients[i % m] = 1;
    } else {
      for (auto& c : packet.coefficients)
        c = static_cast<std::uint8_t>(rng.next_u64()) & mask;
    }
    packet.payload.assign(generation.packet_size_bytes, 0);
    for (std::size_t j = 0; j < m; ++j)
      add_scaled(packet.payload, packet.coefficients[j], generation.packets[j], field);
    coded.push_back(std::move(packet));
  }
  return coded;
}

DecoderState::DecoderState(std::size_t packet_count, std::size_t packet_size_bytes,
                           unsigned field_q)
    : packet_count_(packet_count),
      packet_size_bytes_(packet_size_bytes),
      field_(GaloisField::of(field_q)),
      pivot_rows_(packet_count) {
  if (packet_count == 0) throw std::domain_error("generation needs at least one packet");
  if (packet_size_bytes == 0) throw std::domain_error("packets must not be empty");
}

bool DecoderState::add(const CodedPacket& packet) {
  if (packet.coefficients.size() != packet_count_)
    throw std::domain_error("coding vector length does not match the generation");
  if (packet.payload.size() != packet_size_bytes_)
    throw std::domain_error("payload size does not match the generation");

  // Reduce against every settled pivot first. Settled rows carry zeros at
  // each other's pivot columns, so one ascending pass clears them all.
  CodedPacket row = packet;
  for (std::size_t c = 0; c < packet_count_; ++c) {
    if (row.coefficients[c] != 0 && pivot_rows_[c])
      eliminate(row, row.coefficients[c], *pivot_rows_[c], field_);
  }
  for (std::size_t c = 0; c < packet_count_; ++c) {
    if (row.coefficients[c] == 0) continue;
    scale_row(row, field_.inv(row.coefficients[c]), field_);
    // Clear this column from the settled rows to keep them reduced.
    for (auto& settled : pivot_rows_) {
      if (!settled) continue;
      eliminate(*settled, settled->coefficients[c], row, field_);
    }
    pivot_rows_[c] = std::move(row);
    ++rank_;
    return true;
  }
  return false;
}

Generation DecoderState::recover() const {
  if (!complete()) throw std::logic_error("decoder is not complete");
  std::vector<std::vector<std::uint8_t>> packets;
  packets.reserve(packet_count_);
  for (const auto& row : pivot_rows_) packets.push_back(row->payload);
  return make_generation(std::move(packets), field_.q());
}

DecodeResult decode(const std::vector<CodedPacket>& packets, std::size_t packet_count,
                    unsigned field_q) {
  check_field(field_q);
  if (packet_count == 0) throw std::domain_error("generation needs at least one packet");
  if (packets.empty()) throw std::domain_error("nothing to decode");
  const std::size_t payload_size = packets.front().payload.size();
  if (payload_size == 0) throw std::domain_error("packets must not be empty");
  for (const auto& p : packets) {
    if (p.coefficients.size() != packet_count)
      throw std::domain_error("coding vector length does not match the generation");
    if (p.payload.size() != payload_size)
      throw std::domain_error("payloads must share one size");
  }
  DecoderState state(packet_count, payload_size, field_q);
  for (const auto& p : packets) state.add(p);
  DecodeResult result;
  result.rank = state.rank();
  if (state.complete()) result.generation = state.recover();
  return result;
}

std::size_t matrix_rank(std::vector<std::vector<std::uint8_t>> rows, unsigned field_q) {
  check_field(field_q);
  if (rows.empty()) return 0;
  const GaloisField& field = GaloisField::of(field_q);
  const std::size_t cols = rows.front().size();
  for (const auto& row : rows)
    if (row.size() != cols) throw std::domain_error("matrix rows must share one length");

  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    const std::uint8_t inv = field.inv(rows[rank][c]);
    for (std::size_t j = c; j < cols; ++j) rows[rank][j] = field.mul(inv, rows[rank][j]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      const std::uint8_t factor = rows[r][c];
      for (std::size_t j = c; j < cols; ++j)
        rows[r][j] ^= field.mul(factor, rows[rank][j]);
    }
    ++rank;
  }
  return rank;
}

double full_rank_probability(std::size_t packet_count, unsigned field_q) {
  check_field(field_q);
  long double probability = 1.0L;
  for (std::size_t i = 1; i <= packet_count; ++i)
    probability *= 1.0L - std::pow(2.0L, -static_cast<long double>(field_q) *
                                             static_cast<long double>(i));
  return static_cast<double>(probability);
}

std::vector<std::uint8_t> serialize_packet(const CodedPacket& packet, unsigned field_q) {
  check_field(field_q);
  const std::size_t m = packet.coefficients.size();
  if (m == 0 || m > 0xFFFF) throw std::domain_error("coding vector length out of range");
  const std::size_t coeff_bytes = (m * field_q + 7) / 8;

  std::vector<std::uint8_t> bytes;
  bytes.reserve(3 + coeff_bytes + packet.payload.size());
  bytes.push_back(static_cast<std::uint8_t>(m >> 8));
  bytes.push_back(static_cast<std::uint8_t>(m & 0xFF));
  bytes.push_back(static_cast<std::uint8_t>(field_q));

  const std::uint8_t symbol_mask = static_cast<std::uint8_t>((1u << field_q) - 1);
  std::size_t bit = 0;
  bytes.resize(3 + coeff_bytes, 0);
  for (std::uint8_t c : packet.coefficients) {
    if (c & ~symbol_mask) throw std::domain_error("coefficient outside the field");
    const std::size_t byte_index = 3 + bit / 8;
    const unsigned shift = 8 - field_q - (bit % 8);
    bytes[byte_index] |= static_cast<std::uint8_t>(c << shift);
    bit += field_q;
  }
  bytes.insert(bytes.end(), packet.payload.begin(), packet.payload.end());
  return bytes;
}

std::pair<CodedPacket, unsigned> parse_packet(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 3) throw std::domain_error("packet too short");
  const std::size_t m = (static_cast<std::size_t>(bytes[0]) << 8) | bytes[1];
  const unsigned field_q = bytes[2];
  check_field(field_q);
  if (m == 0) throw std::domain_error("coding vector length out of range");
  const std::size_t coeff_bytes = (m * field_q + 7) / 8;
  if (bytes.size() < 3 + coeff_bytes + 1) throw std::domain_error("packet too short");

  CodedPacket packet;
  packet.coefficients.resize(m);
  const std::uint8_t symbol_mask = static_cast<std::uint8_t>((1u << field_q) - 1);
  std::size_t bit = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t byte_index = 3 + bit / 8;
    const unsigned shift = 8 - field_q - (bit % 8);
    packet.coefficients[i] = static_cast<std::uint8_t>(bytes[byte_index] >> shift) & symbol_mask;
    bit += field_q;
  }
  packet.payload.assign(bytes.begin() + 3 + coeff_bytes, bytes.end());
  return {std::move(packet), field_q};
}

}  // namespace fogstore
