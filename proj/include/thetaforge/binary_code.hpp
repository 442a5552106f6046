#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "thetaforge/permgrp.hpp"

namespace thetaforge {

// A codeword is the subset B of {0..N-1} whose bits are set; addition is XOR.
using Codeword = Mask;

inline int weight(Codeword c) { return __builtin_popcountll(c); }

struct WeightEnumerator {
  std::vector<std::uint64_t> counts;  // counts[k] = codewords of weight k
  auto operator<=>(const WeightEnumerator&) const = default;
};

struct CodeChecks {
  bool doubly_even = false;
  bool self_dual = false;
  int min_weight = 0;  // 0 for the zero code
};

class BinaryCode {
 public:
  BinaryCode() = default;
  BinaryCode(int length, std::vector<Codeword> rows);  // row-reduces, drops dependent rows
  static BinaryCode from_generator_rows(const std::vector<std::string>& rows);

  int length() const { return n_; }
  int dimension() const { return static_cast<int>(basis_.size()); }
  const std::vector<Codeword>& basis() const { return basis_; }
  Codeword all_ones() const { return n_ == 64 ? ~Mask{0} : (Mask{1} << n_) - 1; }

  bool contains(Codeword c) const;
  std::vector<Codeword> enumerate() const;
  WeightEnumerator weight_enumerator() const;
  CodeChecks checks() const;
  bool is_automorphism(const Perm& p) const;

  BinaryCode fixed_subcode(const PermGroup& group) const;
  BinaryCode direct_sum(const BinaryCode& other) const;

  std::vector<std::string> rows_as_strings() const;

 private:
  int n_ = 0;
  std::vector<Codeword> basis_;  // reduced echelon form, pivots_[i] is the pivot bit of row i
  std::vector<int> pivots_;
};

std::string codeword_to_string(Codeword c, int n);  // "{1,3,5,7}"

BinaryCode parse_code_text(std::string_view text);
BinaryCode load_code_file(const std::string& path);
BinaryCode catalog_code(std::string_view name);
// Catalog name or path to a code file.
BinaryCode resolve_code(const std::string& source);

}  // namespace thetaforge
