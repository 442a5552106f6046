#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "thetaforge/binary_code.hpp"
#include "thetaforge/permgrp.hpp"
#include "thetaforge/qseries.hpp"
#include "thetaforge/theta_engine.hpp"

namespace thetaforge {

struct LiftInfo {
  Perm g;
  int lattice_order = 1;
  int lift_order = 1;
  bool doubling = false;
  std::optional<bool> code_criterion;     // Construction A only
  std::optional<bool> lattice_criterion;  // twisted theta of the full lattice
  std::optional<QSeries> kernel_theta;    // theta of the kernel when doubling
};

// |B cap g^{m/2}(B)| != 0 mod 4 for some B; false for odd order.
bool order_doubling_code(const BinaryCode& code, const Perm& g);
// Compares the full-lattice theta with its g^{m/2}-twisted version on a window
// long enough to contain a generating set of the lattice.
bool order_doubling_lattice(const BinaryCode& code, const Perm& g, Flavor flavor);
LiftInfo lift_info(const BinaryCode& code, const Perm& g, Flavor flavor, Exponent truncation);

// theta_{L^{g^j}, w_j} / eta_{g^j}; twisted when the lattice order and j are even.
QSeries trace_series(const BinaryCode& code, const Perm& g, int j, Flavor flavor, Exponent truncation);

struct CharacterReport {
  std::string group;
  int central_charge = 0;
  bool doubling = false;
  int lift_order = 1;
  std::vector<std::pair<std::string, QSeries>> per_j;  // label -> trace series
  std::vector<std::string> annotations;
  QSeries character;
};

CharacterReport character_cyclic(const BinaryCode& code, const Perm& g, Flavor flavor, Exponent truncation);
CharacterReport character_group(const BinaryCode& code, const PermGroup& group, Flavor flavor,
                                Exponent truncation);

QSeries lattice_character(const QSeries& theta, int rank);  // theta / eta^N
QSeries character_plus(const QSeries& theta, int rank);     // V_L^+
QSeries d_lattice_character_q2(int half_rank, Exponent truncation);  // Ch V_{D_{N/2}}(q^2)

enum class CheckStatus { Pass, Fail, NotApplicable };
std::string to_string(CheckStatus s);

struct IdentityResult {
  std::string name;
  CheckStatus status = CheckStatus::NotApplicable;
  std::optional<Exponent> first_difference;
  Exponent window;
  std::string detail;
};

IdentityResult compare_series(const std::string& name, const QSeries& lhs, const QSeries& rhs);
// Compares coefficients of q^{lead + k} for k of the given parity.
IdentityResult compare_parity(const std::string& name, const QSeries& a, const QSeries& b, int parity);

IdentityResult verify_theorem_c1(const BinaryCode& code, const Perm& g1, Exponent truncation);
IdentityResult verify_theorem_c2(const BinaryCode& code, const Perm& g1, const Perm& g2, Exponent truncation);
IdentityResult verify_charpq(const BinaryCode& code, const PermGroup& h, Exponent truncation);
IdentityResult verify_charp2q(const BinaryCode& code, const PermGroup& h, Exponent truncation);
std::vector<IdentityResult> verify_parity_props(const BinaryCode& code, const Perm& g_rep, const Perm& g_nr,
                                                Exponent truncation);

nlohmann::json to_json(const CharacterReport& r);
nlohmann::json to_json(const LiftInfo& l);
nlohmann::json to_json(const IdentityResult& r);

}  // namespace thetaforge
