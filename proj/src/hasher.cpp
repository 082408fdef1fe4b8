#include "cayley/hasher.hpp"

#include <array>

namespace cayley {

namespace {

std::size_t width_for(const mpz_class& p) { return (mpz_sizeinbase(p.get_mpz_t(), 2) + 7) / 8; }

void put_entry(std::vector<std::uint8_t>& out, const mpz_class& x, std::size_t width) {
  // x < p, so it fits in `width` bytes; mpz_export writes nothing for zero.
  std::vector<std::uint8_t> raw(width, 0);
  std::size_t count = 0;
  mpz_export(raw.data(), &count, 1, 1, 1, 0, x.get_mpz_t());
  out.insert(out.end(), width - count, 0);
  out.insert(out.end(), raw.begin(), raw.begin() + static_cast<std::ptrdiff_t>(count));
}

int hex_value(char ch) {
  if (ch >= '0' && ch <= '9') return ch - '0';
  if (ch >= 'a' && ch <= 'f') return ch - 'a' + 10;
  if (ch >= 'A' && ch <= 'F') return ch - 'A' + 10;
  return -1;
}

bool bit_of(char ch, std::size_t pos) {
  if (ch == '0') return false;
  if (ch == '1') return true;
  throw InvalidArgument("bit string contains '" + std::string(1, ch) + "' at position " +
                        std::to_string(pos));
}

}  // namespace

HashParams::HashParams(const mpz_class& p, GenParam k, BitOrder order)
    : field_(p), k_(k), order_(order), width_(width_for(p)) {
  if (k < 1) throw InvalidArgument("generator parameter k must be >= 1");
  if (p <= mpz_class(k) * k + 2) {
    throw InvalidArgument("p must exceed k^2 + 2 (p = " + p.get_str() + ", k = " + std::to_string(k) + ")");
  }
}

Digest::Digest(const HashParams& params, FpMat value) : value_(std::move(value)) {
  if (!(value_.ring() == params.field())) throw RingMismatch("digest value is not over the parameter field");
  encoding_.reserve(4 * params.entry_width());
  for (const auto& x : value_.entries()) put_entry(encoding_, x, params.entry_width());
}

Digest Digest::decode(const HashParams& params, std::span<const std::uint8_t> bytes) {
  const std::size_t w = params.entry_width();
  if (bytes.size() != 4 * w) {
    throw DecodeError("digest must be " + std::to_string(4 * w) + " bytes, got " + std::to_string(bytes.size()));
  }
  std::array<mpz_class, 4> e;
  for (std::size_t i = 0; i < 4; ++i) {
    mpz_import(e[i].get_mpz_t(), w, 1, 1, 1, 0, bytes.data() + i * w);
    if (e[i] >= params.p()) throw DecodeError("digest entry " + std::to_string(i) + " is not below p");
  }
  FpMat m(e[0], e[1], e[2], e[3], params.field());
  if (m.det() != 1) throw DecodeError("digest matrix does not have determinant 1 mod p");
  return Digest(params, std::move(m));
}

Digest Digest::from_hex(const HashParams& params, std::string_view hex) {
  if (hex.size() % 2 != 0) throw DecodeError("hex digest has odd length");
  std::vector<std::uint8_t> bytes;
  bytes.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    const int hi = hex_value(hex[i]), lo = hex_value(hex[i + 1]);
    if (hi < 0 || lo < 0) throw DecodeError("hex digest has a non-hex character");
    bytes.push_back(static_cast<std::uint8_t>(hi * 16 + lo));
  }
  return decode(params, bytes);
}

std::string Digest::hex() const {
  static constexpr char digits[] = "0123456789abcdef";
  std::string s;
  s.reserve(encoding_.size() * 2);
  for (auto byte : encoding_) {
    s += digits[byte >> 4];
    s += digits[byte & 0xf];
  }
  return s;
}

HashState::HashState(HashParams params) : params_(std::move(params)), acc_(params_.field()) {}

void HashState::check_open() const {
  if (finalized_) throw StateError("hash state already finalized");
}

void HashState::flush() {
  if (pending_count_ == 0) return;
  right_multiply_power(acc_, pending_bit_ ? Letter::B : Letter::A, mpz_class(pending_count_), params_.k());
  pending_count_ = 0;
}

void HashState::update_run(bool bit, std::uint64_t count) {
  check_open();
  if (count == 0) return;
  if (pending_count_ > 0 && bit != pending_bit_) flush();
  if (pending_count_ > UINT64_MAX - count) flush();
  pending_bit_ = bit;
  pending_count_ += count;
}

void HashState::update_bit(bool bit) { update_run(bit, 1); }

void HashState::update_bits(std::string_view bits) {
  check_open();
  std::size_t i = 0;
  while (i < bits.size()) {
    const bool bit = bit_of(bits[i], i);
    std::size_t j = i + 1;
    while (j < bits.size() && bit_of(bits[j], j) == bit) ++j;
    update_run(bit, j - i);
    i = j;
  }
}

void HashState::update_bytes(std::span<const std::uint8_t> bytes) {
  check_open();
  const bool msb = params_.bit_order() == BitOrder::msb_first;
  for (auto byte : bytes) {
    // Whole-byte fast paths for the common constant bytes.
    if (byte == 0x00 || byte == 0xff) {
      update_run(byte == 0xff, 8);
      continue;
    }
    for (int i = 0; i < 8; ++i) {
      const int shift = msb ? 7 - i : i;
      update_run(((byte >> shift) & 1) != 0, 1);
    }
  }
}

Digest HashState::finalize() {
  check_open();
  flush();
  finalized_ = true;
  return Digest(params_, acc_);
}

Digest hash_bits(const HashParams& params, std::string_view bits) {
  HashState s(params);
  s.update_bits(bits);
  return s.finalize();
}

Digest hash_bytes(const HashParams& params, std::span<const std::uint8_t> bytes) {
  HashState s(params);
  s.update_bytes(bytes);
  return s.finalize();
}

Digest hash_bits_naive(const HashParams& params, std::string_view bits) {
  const FpMat a = generator(Letter::A, params.k(), params.field());
  const FpMat b = generator(Letter::B, params.k(), params.field());
  FpMat acc(params.field());
  for (std::size_t i = 0; i < bits.size(); ++i) acc = acc * (bit_of(bits[i], i) ? b : a);
  return Digest(params, std::move(acc));
}

std::string bytes_to_bits(std::span<const std::uint8_t> bytes, BitOrder order) {
  std::string bits;
  bits.reserve(bytes.size() * 8);
  for (auto byte : bytes) {
    for (int i = 0; i < 8; ++i) {
      const int shift = order == BitOrder::msb_first ? 7 - i : i;
      bits += ((byte >> shift) & 1) ? '1' : '0';
    }
  }
  return bits;
}

Digest hash_bytes_naive(const HashParams& params, std::span<const std::uint8_t> bytes) {
  return hash_bits_naive(params, bytes_to_bits(bytes, params.bit_order()));
}

}  // namespace cayley
