#pragma once

// Hamming(15, 11) syndrome decoding as an 11-output Boolean function.
//
// Code position j in 1..15 is bit j - 1 of the table index. The parity-check
// column of position j is the binary representation of j, so the syndrome of
// a word is the XOR of its set positions and a nonzero syndrome s names the
// position to flip. The message is the 11 bits at positions that are not
// powers of two, packed in increasing position order (lowest position first).

#include <cstdint>

#include "infolab/boolean_function.hpp"
#include "infolab/kernels.hpp"

namespace infolab {

struct HammingCode15 {
  static constexpr int length = 15;
  static constexpr int message_bits = 11;

  static std::uint32_t syndrome(std::uint32_t word) noexcept;
  /// Nearest codeword (unique within distance 1).
  static std::uint32_t decode(std::uint32_t word) noexcept;
  /// Message bits of a codeword.
  static std::uint32_t message(std::uint32_t codeword) noexcept;
  /// Inverse of message on codewords: data bits placed, parity bits solved.
  static std::uint32_t encode(std::uint32_t message) noexcept;
};

/// f(x) = message of decode(x), as a 15-input, 11-output function.
MultiOutputFunction perfect_code_function();

/// H(f(leader XOR e)) over channel noise e, for the coset leader with the
/// given syndrome (0 for the zero leader, s in 1..15 for e_s).
double perfect_code_coset_entropy(int syndrome, double alpha,
                                  Execution exec = Execution::serial);

struct PerfectCodeResult {
  double mi = 0.0;
  double per_bit = 0.0;
  double entropy_zero_coset = 0.0;
  double entropy_unit_coset = 0.0;
};

/// I(f(x); y) = 11 - (H_0 + 15 H_1) / 16 by coset symmetry.
PerfectCodeResult perfect_code_mi(double alpha, Execution exec = Execution::serial);

}  // namespace infolab
