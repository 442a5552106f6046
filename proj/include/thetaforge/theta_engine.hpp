#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "thetaforge/binary_code.hpp"
#include "thetaforge/permgrp.hpp"
#include "thetaforge/qseries.hpp"

namespace thetaforge {

enum class Flavor { Plain, Super0, Super1 };

std::string flavor_name(Flavor f);
Flavor parse_flavor(std::string_view s);

struct FixedLatticeSpec {
  BinaryCode code;
  PermGroup group;
  Flavor flavor = Flavor::Plain;
  std::optional<Perm> twist;  // weights (-1)^{<a, h a>}
  Exponent truncation = Exponent::integer(16);
};

// Sum over the fixed lattice of sign * q^{<a,a>/2}; dispatches on flavor and twist.
QSeries fixed_theta(const FixedLatticeSpec& spec);
QSeries fixed_theta_plain(const FixedLatticeSpec& spec);
QSeries fixed_theta_supercode(const FixedLatticeSpec& spec);
QSeries twisted_theta(const FixedLatticeSpec& spec);

QSeries full_lattice_theta(const BinaryCode& code, Exponent truncation);

// Names: "A1^n", "A2^n", "D_n"/"Dn", "D_n^*"/"Dn*", "E8", "D8", "K".  Scale s means q -> q^s.
QSeries catalog_theta(std::string_view name, int scale, Exponent truncation);

struct ThetaComparison {
  bool equal = false;
  Exponent window;                         // common truncation
  std::optional<Exponent> first_difference;
};
// Theorem B hypotheses: cycle type r^{N/r} and a fixed subcode with a basis of N/2r pairwise
// disjoint codewords covering all points.  Returns r when they hold.
std::optional<int> theorem_b_order(const BinaryCode& code, const Perm& g);
// D*_{N/2}(2) hypotheses: cycle type 2^{N/2}, fixed subcode of dimension N/4+1 spanned by a
// partition into weight-4 codewords plus a weight-N/2 word meeting each part in 2 points.
bool dn_star_hypotheses(const BinaryCode& code, const Perm& g);

ThetaComparison compare_theta(const QSeries& a, const QSeries& b);
bool theta_matches(const QSeries& a, const QSeries& b);

}  // namespace thetaforge
