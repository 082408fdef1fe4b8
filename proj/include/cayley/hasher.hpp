#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cayley/algebra.hpp"

namespace cayley {

/// How a byte is expanded into eight bits before hashing.
enum class BitOrder { msb_first, lsb_first };

/// Parameters fully determining a Cayley hash function: bit 0 maps to A(k),
/// bit 1 to B(k), and the product is taken in SL2(F_p).
class HashParams {
 public:
  /// Throws InvalidArgument unless p is prime, k >= 1 and p > k^2 + 2.
  HashParams(const mpz_class& p, GenParam k, BitOrder order = BitOrder::msb_first);

  const mpz_class& p() const noexcept { return field_.modulus(); }
  GenParam k() const noexcept { return k_; }
  BitOrder bit_order() const noexcept { return order_; }
  const PrimeField& field() const noexcept { return field_; }

  /// Bytes per serialized matrix entry: ceil(bits(p) / 8).
  std::size_t entry_width() const noexcept { return width_; }

 private:
  PrimeField field_;
  GenParam k_;
  BitOrder order_;
  std::size_t width_;
};

/// A hash value in SL2(F_p) together with its canonical encoding: the entries
/// a, b, c, d as fixed-width big-endian unsigned integers.
class Digest {
 public:
  Digest(const HashParams& params, FpMat value);

  /// Validates length, entry range and determinant. Throws DecodeError.
  static Digest decode(const HashParams& params, std::span<const std::uint8_t> bytes);
  static Digest from_hex(const HashParams& params, std::string_view hex);

  const FpMat& value() const noexcept { return value_; }
  const std::vector<std::uint8_t>& encoding() const noexcept { return encoding_; }
  std::string hex() const;

  bool operator==(const Digest& o) const { return value_ == o.value_; }

 private:
  FpMat value_;
  std::vector<std::uint8_t> encoding_;
};

/// Streaming hash. Consecutive equal bits are batched into a pending run and
/// folded into the accumulator with one closed-form unipotent power, so a
/// message costs one column operation per run rather than per bit.
///
/// Single owner: a state must not be updated from two threads at once.
class HashState {
 public:
  explicit HashState(HashParams params);

  void update_bit(bool bit);
  void update_run(bool bit, std::uint64_t count);
  /// ASCII bit string over {'0','1'}; other characters throw InvalidArgument.
  void update_bits(std::string_view bits);
  void update_bytes(std::span<const std::uint8_t> bytes);

  /// Throws StateError when called twice.
  Digest finalize();

  bool finalized() const noexcept { return finalized_; }
  const HashParams& params() const noexcept { return params_; }

 private:
  void flush();
  void check_open() const;

  HashParams params_;
  FpMat acc_;
  bool pending_bit_ = false;
  std::uint64_t pending_count_ = 0;
  bool finalized_ = false;
};

Digest hash_bits(const HashParams& params, std::string_view bits);
Digest hash_bytes(const HashParams& params, std::span<const std::uint8_t> bytes);

/// Reference path: one general matrix multiplication per bit. Used to
/// cross-check and benchmark the run-length path.
Digest hash_bits_naive(const HashParams& params, std::string_view bits);
Digest hash_bytes_naive(const HashParams& params, std::span<const std::uint8_t> bytes);

/// Expands bytes to an ASCII bit string according to `order`.
std::string bytes_to_bits(std::span<const std::uint8_t> bytes, BitOrder order);

}  // namespace cayley
