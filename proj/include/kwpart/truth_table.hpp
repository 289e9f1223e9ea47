#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>

#include "kwpart/error.hpp"

namespace kwpart {

/// Boolean function on n <= 5 variables. Bit j of the packed table is f(j),
/// where the binary expansion of j is read as x_1 ... x_n (x_1 most significant).
class TruthTable {
 public:
  static constexpr int kMaxArity = 5;

  TruthTable(int arity, std::uint32_t packed) : arity_(arity), bits_(packed) {
    if (arity < 1 || arity > kMaxArity) {
      throw ParseError("truth table arity must be in [1, 5], got " + std::to_string(arity));
    }
    bits_ &= full_mask(arity);
  }

  /// Parses a 0/1 string of length 2^n; character j is f(j).
  static TruthTable from_bits(std::string_view text) {
    int arity = 0;
    while ((std::size_t{1} << arity) < text.size()) ++arity;
    if (text.empty() || (std::size_t{1} << arity) != text.size() || arity < 1 ||
        arity > kMaxArity) {
      throw ParseError("truth table string must have length 2^n with 1 <= n <= 5, got length " +
                       std::to_string(text.size()));
    }
    std::uint32_t packed = 0;
    for (std::size_t j = 0; j < text.size(); ++j) {
      if (text[j] == '1') {
        packed |= std::uint32_t{1} << j;
      } else if (text[j] != '0') {
        throw ParseError(std::string("truth table contains non-binary character '") + text[j] +
                         "'");
      }
    }
    return TruthTable(arity, packed);
  }

  /// Reads the text format: a line `n=<k>` followed by the 2^k character table.
  static TruthTable parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string header;
    std::string bits;
    if (!(in >> header) || header.rfind("n=", 0) != 0) {
      throw ParseError("truth table file must start with `n=<k>`");
    }
    int arity = 0;
    try {
      arity = std::stoi(header.substr(2));
    } catch (const std::exception&) {
      throw ParseError("malformed arity in `" + header + "`");
    }
    if (!(in >> bits)) throw ParseError("truth table file is missing the bit string");
    TruthTable table = from_bits(bits);
    if (table.arity() != arity) {
      throw ParseError("declared n=" + std::to_string(arity) + " but bit string has length " +
                       std::to_string(bits.size()));
    }
    return table;
  }

  int arity() const noexcept { return arity_; }
  std::uint32_t size() const noexcept { return std::uint32_t{1} << arity_; }
  std::uint32_t packed() const noexcept { return bits_; }

  bool operator()(std::uint32_t input) const noexcept { return (bits_ >> input) & 1U; }

  /// Value of x_i (1-based) in the given input.
  bool variable(std::uint32_t input, int i) const noexcept {
    return (input >> (arity_ - i)) & 1U;
  }

  bool is_constant() const noexcept { return bits_ == 0 || bits_ == full_mask(arity_); }

  std::string to_string() const {
    std::string out(size(), '0');
    for (std::uint32_t j = 0; j < size(); ++j) {
      if ((*this)(j)) out[j] = '1';
    }
    return out;
  }

  /// Input j rendered as the n-character string x_1 ... x_n.
  std::string input_label(std::uint32_t input) const {
    std::string out(static_cast<std::size_t>(arity_), '0');
    for (int i = 1; i <= arity_; ++i) {
      if (variable(input, i)) out[static_cast<std::size_t>(i - 1)] = '1';
    }
    return out;
  }

  friend bool operator==(const TruthTable&, const TruthTable&) = default;

  static constexpr std::uint32_t full_mask(int arity) noexcept {
    return arity >= kMaxArity ? 0xFFFFFFFFU : ((std::uint32_t{1} << (std::uint32_t{1} << arity)) - 1);
  }

 private:
  int arity_;
  std::uint32_t bits_;
};

}  // namespace kwpart
