#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "thetaforge/modfunc.hpp"
#include "thetaforge/theta_engine.hpp"

using namespace thetaforge;

namespace {

Exponent I(std::int64_t k) { return Exponent::integer(k); }

QSeries without_constant(const QSeries& f) { return f - QSeries::constant(f.coeff(0)); }

bool same_mod_constant(const QSeries& a, const QSeries& b, int t) {
  return without_constant(a).truncated(I(t)) == without_constant(b).truncated(I(t));
}

QSeries eta_series(std::map<int, int> factors, Exponent t) {
  EtaProduct e;
  e.factors = std::move(factors);
  return e.as_series(t);
}

}  // namespace

TEST_CASE("eta product leading exponents") {
  CHECK(EtaProduct::from_orbit_type(parse_orbit_type("1^8")).lead() == Exponent::from_rational(Rational(1, 3)));
  CHECK(EtaProduct::from_orbit_type(parse_orbit_type("2^4")).lead() == Exponent::from_rational(Rational(1, 3)));
  CHECK(EtaProduct::from_orbit_type(parse_orbit_type("1^24")).lead() == I(1));
  CHECK(EtaProduct::from_orbit_type(parse_orbit_type("1^2 3^2")).lead() == Exponent::from_rational(Rational(1, 3)));
  const QSeries d = eta_product(parse_orbit_type("1^24"), I(6));
  CHECK(oracle::coeffs(d, 1, 5) == oracle::ints({1, -24, 252, -1472, 4830}));
  CHECK(power(eta_product(parse_orbit_type("2^12"), I(12)), 2).truncated(I(12)) == substitute(d, 2));
}

TEST_CASE("theta quotients") {
  const QSeries j = theta_quotient(catalog_theta("E8", 1, I(4)), parse_orbit_type("1^8"), 8);
  CHECK(j.valuation() == I(-1));
  CHECK(oracle::coeffs(j, -1, 4) == oracle::ints({1, 744, 196884, 21493760}));
  CHECK_THROWS_AS(theta_quotient(catalog_theta("E8", 1, I(4)), parse_orbit_type("1^7"), 8), PreconditionError);
  CHECK_THROWS_AS(theta_quotient(catalog_theta("E8", 1, I(4)), parse_orbit_type("1^12"), 12), PreconditionError);
  CHECK_THROWS_AS(theta_quotient(catalog_theta("E8", 1, I(4)).scaled(2), parse_orbit_type("1^8"), 8),
                  PreconditionError);
}

TEST_CASE("Faber polynomials") {
  const QSeries f = without_constant(mckay_thompson("T_1A", I(20)));
  const auto F = faber_polynomials_at(f, 4);
  const Rational a1 = f.coeff(1), a2 = f.coeff(2);
  CHECK(F[2] == f * f - QSeries::constant(2 * a1));
  CHECK(F[3] == f * f * f - f.scaled(3 * a1) - QSeries::constant(3 * a2));
  for (int k = 1; k <= 4; ++k) {
    CAPTURE(k);
    CHECK(F[k].valuation() == I(-k));
    for (int m = -k + 1; m <= 0; ++m) CHECK(F[k].coeff(I(m)) == 0);
  }
  const auto rep = faber_table(f, 8);
  for (int n = 1; n <= 8; ++n)
    for (int k = 1; k <= 8; ++k) CHECK(rep.table[n - 1][k - 1] == rep.table[k - 1][n - 1]);
  CHECK_THROWS_AS(faber_table(mckay_thompson("T_4A", I(20)), 8), PreconditionError);
  CHECK_THROWS_AS(faber_table(f, 12), PreconditionError);
}

TEST_CASE("replicability") {
  for (long c : {0L, 1L, -3L, 17L}) {
    CAPTURE(c);
    const QSeries f = QSeries::from_terms({{I(-1), 1}, {I(1), Rational(c)}}, I(24));
    CHECK(is_replicable(f, 12).verdict == Verdict::Replicable);
  }
  QSeries j = mckay_thompson("T_1A", I(24));
  CHECK(is_replicable(j, 12).verdict == Verdict::Replicable);
  const QSeries bent = j + QSeries::monomial(1, I(5), I(24));
  const auto r = is_replicable(bent, 12);
  CHECK(r.verdict == Verdict::NotReplicable);
  CHECK_FALSE(r.violations.empty());
  CHECK(is_replicable(j.truncated(I(10)), 12).verdict == Verdict::InsufficientPrecision);
  CHECK(is_replicable(j.truncated(I(10)), 5).verdict == Verdict::Replicable);
  for (const auto& name : mckay_thompson_names()) {
    CAPTURE(name);
    const auto rep = is_replicable(mckay_thompson(name, I(24)), 12);
    CHECK(rep.verdict == Verdict::Replicable);
    CHECK(rep.identified_as == name);
  }
}

TEST_CASE("McKay-Thompson catalog values") {
  CHECK(oracle::coeffs(mckay_thompson("T_4A", I(4)), -1, 5) == oracle::ints({1, 24, 276, 2048, 11202}));
  CHECK(oracle::coeffs(mckay_thompson("T_3A", I(3)), -1, 4) == oracle::ints({1, 42, 783, 8672}));
  CHECK(oracle::coeffs(mckay_thompson("T_1A", I(2)), -1, 3) == oracle::ints({1, 0, 196884}));
  const QSeries t16 = mckay_thompson("T_16a", I(12)), t8 = mckay_thompson("T_8B", I(24));
  CHECK(power(t16, 2).truncated(I(11)) == substitute(t8, 2).truncated(I(11)));
  CHECK_THROWS_AS(mckay_thompson("T_99Z", I(4)), PreconditionError);
}

TEST_CASE("identification") {
  const QSeries t6 = mckay_thompson("T_6b", I(16)) + QSeries::constant(5);
  const auto id = identify(t6);
  REQUIRE(id.has_value());
  CHECK(id->name == "T_6b");
  CHECK(id->constant_delta == 5);
  // T_9b = (eta(q)/eta(q^9))^3 + 3 is replicable but not in the catalog
  const QSeries t9 = eta_series({{1, 3}, {9, -3}}, I(24));
  CHECK(t9.valuation() == I(-1));
  const auto rep = is_replicable(t9, 12);
  CHECK(rep.verdict == Verdict::Replicable);
  CHECK_FALSE(rep.identified_as.has_value());
  CHECK_FALSE(identify(t9).has_value());
  CHECK_THROWS_AS(identify(t9.truncated(I(5))), PreconditionError);
}

TEST_CASE("lattice and cycle type pairings give McKay-Thompson series") {
  struct Pair {
    QSeries theta;
    const char* orbit;
    const char* name;
  };
  const Exponent t = I(14);
  const std::vector<Pair> pairs = {
      {catalog_theta("A1^4", 2, t), "2^4", "T_4A"},
      {catalog_theta("A1^2", 4, t), "4^2", "T_8B"},
      {catalog_theta("A1", 8, t), "8^1", "T_16a"},
      {catalog_theta("A2^2", 1, t), "1^2 3^2", "T_3A"},
      {catalog_theta("A2", 2, t), "2^1 6^1", "T_6b"},
      {catalog_theta("A1", 2, t) * catalog_theta("A1", 6, t), "2^1 6^1", "T_12A"},
      {catalog_theta("K", 1, t), "1^1 7^1", "T_7A"},
  };
  for (const auto& p : pairs) {
    CAPTURE(p.name);
    const QSeries f = theta_quotient(p.theta, parse_orbit_type(p.orbit), 8);
    CHECK(same_mod_constant(f, mckay_thompson(p.name, I(12)), 12));
  }
}
