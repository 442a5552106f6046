#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "thetaforge/permgrp.hpp"
#include "thetaforge/qseries.hpp"

namespace thetaforge {

// prod_t eta(q^t)^{r_t}; r_t may be negative for explicit quotients.
struct EtaProduct {
  std::map<int, int> factors;

  static EtaProduct from_orbit_type(const OrbitType& ot);
  Exponent lead() const;
  // Truncation given relative to the leading exponent.
  QSeries as_series_relative(Exponent relative) const;
  QSeries as_series(Exponent truncation) const { return as_series_relative(truncation - lead()); }
};

QSeries eta_product(const OrbitType& ot, Exponent truncation);
QSeries theta_quotient(const QSeries& theta, const OrbitType& ot, int n);

inline constexpr int kDefaultKRep = 12;

enum class Verdict { Replicable, NotReplicable, InsufficientPrecision };

struct ReplicabilityReport {
  int k_rep = kDefaultKRep;
  std::vector<std::vector<Rational>> table;  // table[n-1][k-1] = a_{n,k}
  std::vector<std::array<int, 4>> violations;
  Verdict verdict = Verdict::InsufficientPrecision;
  std::optional<std::string> identified_as;
  Rational constant_delta = 0;

  std::string verdict_string() const;
};

// f must be q^{-1} + sum_{n>=1} a_n q^n with truncation at least 2*k_rep.
ReplicabilityReport faber_table(const QSeries& f, int k_rep);
// Removes the constant term first; reports insufficient precision instead of throwing.
ReplicabilityReport is_replicable(const QSeries& f, int k_rep);
// F_k(f) for k = 0..kmax via the Faber recurrence.
std::vector<QSeries> faber_polynomials_at(const QSeries& f, int kmax);

std::vector<std::string> mckay_thompson_names();
QSeries mckay_thompson(std::string_view name, Exponent truncation);

struct Identification {
  std::string name;
  Rational constant_delta;  // constant(f) - constant(catalog entry)
};
std::optional<Identification> identify(const QSeries& f);

nlohmann::json to_json(const ReplicabilityReport& r);

}  // namespace thetaforge
