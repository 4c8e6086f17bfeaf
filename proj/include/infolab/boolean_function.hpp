#pragma once

// Truth tables over {+-1}^n.
//
// Index encoding: a table index j carries bits b_1 ... b_n with b_1 the most
// significant, and x_i = +1 iff b_i = 0. Coordinate i therefore lives at bit
// position n - i of the index, and lexicographic order is ascending index.
// Storage is a packed 0/1 bitset; the +-1 reading of a stored bit is 1 - 2 bit.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace infolab {

inline constexpr int kMaxTransformVars = 24;

enum class ValueConvention { zero_one, plus_minus };

std::string to_string(ValueConvention conv);
ValueConvention parse_convention(std::string_view text);

/// Bit position of coordinate i (1-based) inside a table index.
constexpr int coordinate_bit(int n, int i) noexcept { return n - i; }

/// x_i of the point with index `x`.
constexpr int coordinate_sign(std::size_t x, int n, int i) noexcept {
  return ((x >> coordinate_bit(n, i)) & 1u) ? -1 : 1;
}

/// Subset mask of a set of coordinates (same bit layout as table indices).
std::size_t subset_mask(int n, std::initializer_list<int> coordinates);

class BooleanFunction {
 public:
  explicit BooleanFunction(int n, ValueConvention conv = ValueConvention::zero_one);

  /// bits[j] is the stored 0/1 value at index j.
  static BooleanFunction from_bits(int n, std::span<const std::uint8_t> bits,
                                   ValueConvention conv = ValueConvention::zero_one);
  /// Table packed in an integer, bit j = stored value at index j (n <= 6).
  static BooleanFunction from_word(int n, std::uint64_t word,
                                   ValueConvention conv = ValueConvention::zero_one);

  int num_vars() const noexcept { return n_; }
  std::size_t size() const noexcept { return std::size_t{1} << n_; }
  ValueConvention convention() const noexcept { return conv_; }

  bool bit(std::size_t x) const noexcept { return (words_[x >> 6] >> (x & 63)) & 1u; }
  void set_bit(std::size_t x, bool value) noexcept;

  /// Stored bit read under the declared convention.
  double value(std::size_t x) const noexcept {
    const double b = bit(x) ? 1.0 : 0.0;
    return conv_ == ValueConvention::zero_one ? b : 1.0 - 2.0 * b;
  }
  std::vector<double> values() const;

  BooleanFunction with_convention(ValueConvention conv) const;
  BooleanFunction complement() const;

  std::size_t count_ones() const noexcept;
  /// Mean of the stored bits (Pr[bit = 1]).
  double density() const noexcept;
  /// Mean under the declared convention.
  double mean() const noexcept;

  /// Packed table (n <= 6).
  std::uint64_t word() const;

  bool operator==(const BooleanFunction& other) const noexcept {
    return n_ == other.n_ && conv_ == other.conv_ && words_ == other.words_;
  }
  /// Equality of stored tables regardless of convention.
  bool same_table(const BooleanFunction& other) const noexcept {
    return n_ == other.n_ && words_ == other.words_;
  }

 private:
  int n_;
  ValueConvention conv_;
  std::vector<std::uint64_t> words_;
};

/// f : {+-1}^n -> {0,1}^k, one output code per index.
class MultiOutputFunction {
 public:
  MultiOutputFunction(int n, int k, std::vector<std::uint32_t> table);

  int num_vars() const noexcept { return n_; }
  int num_outputs() const noexcept { return k_; }
  std::size_t size() const noexcept { return table_.size(); }
  std::uint32_t operator[](std::size_t x) const noexcept { return table_[x]; }
  std::span<const std::uint32_t> table() const noexcept { return table_; }

  static MultiOutputFunction from_boolean(const BooleanFunction& f);

 private:
  int n_;
  int k_;
  std::vector<std::uint32_t> table_;
};

/// Fourier coefficients fhat(S), S a subset mask in the index bit layout.
class FourierSpectrum {
 public:
  FourierSpectrum(int n, std::vector<double> coeffs);

  int num_vars() const noexcept { return n_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  double operator[](std::size_t mask) const noexcept { return coeffs_[mask]; }
  std::span<const double> coeffs() const noexcept { return coeffs_; }

  /// sum_S fhat(S)^2.
  double total_weight() const;

 private:
  int n_;
  std::vector<double> coeffs_;
};

// Text format:
//   n=<n> conv=<zero_one|plus_minus>
//   <2^n characters 0/1, index ascending>   or   0x<hex, LSB-first nibbles>
// In the hex form the k-th digit after 0x holds indices 4k..4k+3, index 4k in
// the digit's least significant bit.
BooleanFunction parse_truth_table(std::string_view text);
std::string format_truth_table(const BooleanFunction& f);
std::string format_hex(const BooleanFunction& f);
BooleanFunction read_truth_table_file(const std::string& path);

// Multi-output text format:
//   n=<n> k=<k>
//   <2^n whitespace-separated decimal output codes, index ascending>
MultiOutputFunction parse_multi_output(std::string_view text);
MultiOutputFunction read_multi_output_file(const std::string& path);

}  // namespace infolab
