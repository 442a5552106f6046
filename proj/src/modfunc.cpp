#include "thetaforge/modfunc.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>

#include "thetaforge/theta_engine.hpp"

namespace thetaforge {

EtaProduct EtaProduct::from_orbit_type(const OrbitType& ot) {
  EtaProduct e;
  for (auto [t, r] : ot.counts) e.factors[t] += r;
  return e;
}

Exponent EtaProduct::lead() const {
  std::int64_t n = 0;
  for (auto [t, r] : factors) n += 2 * static_cast<std::int64_t>(t) * r;
  return Exponent::from_num48(n);
}

QSeries EtaProduct::as_series_relative(Exponent relative) const {
  QSeries p = QSeries::constant(1);
  for (auto [t, r] : factors) {
    if (r == 0) continue;
    const QSeries e = eta(t, Exponent::from_num48(2 * t) + relative);
    p = p * pow_rational(e, Rational(r));
  }
  return p.truncated(lead() + relative);
}

QSeries eta_product(const OrbitType& ot, Exponent truncation) {
  return EtaProduct::from_orbit_type(ot).as_series(truncation);
}

QSeries theta_quotient(const QSeries& theta, const OrbitType& ot, int n) {
  if (n <= 0 || n % 8 != 0) throw PreconditionError("theta quotient needs N divisible by 8");
  if (ot.degree() != n) throw PreconditionError("orbit type " + ot.to_string() + " is not on N points");
  if (theta.truncation().is_infinite() || theta.coeff(0) != 1)
    throw PreconditionError("theta must be truncated with constant term 1");
  const QSeries g = EtaProduct::from_orbit_type(ot).as_series_relative(theta.truncation());
  return pow_rational(theta * pow_rational(g, Rational(-1)), Rational(24, n));
}

std::string ReplicabilityReport::verdict_string() const {
  switch (verdict) {
    case Verdict::Replicable: return "replicable-up-to-" + std::to_string(k_rep);
    case Verdict::NotReplicable: return "not-replicable";
    case Verdict::InsufficientPrecision: return "insufficient-precision";
  }
  return "insufficient-precision";
}

namespace {

void check_normalized(const QSeries& f, int k_rep) {
  if (k_rep < 1) throw PreconditionError("K_rep must be positive");
  if (f.is_zero() || f.valuation() != Exponent::integer(-1) || f.leading_coeff() != 1)
    throw PreconditionError("replicability needs f = q^-1 + ...");
  if (!f.integral_exponents()) throw PreconditionError("replicability needs integral exponents");
  if (f.truncation() < Exponent::integer(2 * k_rep))
    throw PreconditionError("truncation " + f.truncation().to_string() + " is insufficient for K_rep = " +
                            std::to_string(k_rep) + " (need " + std::to_string(2 * k_rep) + ")");
}

}  // namespace

std::vector<QSeries> faber_polynomials_at(const QSeries& f, int kmax) {
  std::vector<Rational> a(kmax + 1);
  for (int n = 1; n <= kmax; ++n) a[n] = f.coeff(n);
  std::vector<QSeries> F{QSeries::constant(1), f};
  for (int k = 1; k < kmax; ++k) {
    QSeries next = f * F[k];
    for (int n = 1; n <= k - 1; ++n) next = next - F[n].scaled(a[k - n]);
    next = next - QSeries::constant(a[k] * (k + 1));
    F.push_back(std::move(next));
  }
  F.resize(kmax + 1);
  return F;
}

ReplicabilityReport faber_table(const QSeries& f, int k_rep) {
  if (f.coeff(0) != 0) throw PreconditionError("faber_table needs the constant term removed");
  check_normalized(f, k_rep);
  const auto F = faber_polynomials_at(f, k_rep);
  ReplicabilityReport rep;
  rep.k_rep = k_rep;
  rep.table.assign(k_rep, std::vector<Rational>(k_rep));
  for (int k = 1; k <= k_rep; ++k)
    for (int n = 1; n <= k_rep; ++n) rep.table[n - 1][k - 1] = F[k].coeff(n) / k;
  for (int n = 1; n <= k_rep; ++n)
    for (int k = 1; k <= k_rep; ++k)
      if (rep.table[n - 1][k - 1] != rep.table[k - 1][n - 1])
        throw std::logic_error("Faber table is not symmetric at (" + std::to_string(n) + "," +
                               std::to_string(k) + ")");
  return rep;
}

ReplicabilityReport is_replicable(const QSeries& f, int k_rep) {
  QSeries g = f;
  if (f.truncation() > Exponent()) g = f - QSeries::constant(f.coeff(0));
  if (g.truncation() < Exponent::integer(2 * k_rep)) {
    ReplicabilityReport rep;
    rep.k_rep = k_rep;
    rep.verdict = Verdict::InsufficientPrecision;
    return rep;
  }
  ReplicabilityReport rep = faber_table(g, k_rep);
  std::map<std::pair<int, int>, std::pair<int, int>> first;
  for (int n = 1; n <= k_rep; ++n)
    for (int k = n; k <= k_rep; ++k) {
      const auto key = std::make_pair(std::gcd(n, k), std::lcm(n, k));
      auto [it, inserted] = first.emplace(key, std::make_pair(n, k));
      if (inserted) continue;
      const auto [r, s] = it->second;
      if (rep.table[n - 1][k - 1] != rep.table[r - 1][s - 1]) rep.violations.push_back({n, k, r, s});
    }
  rep.verdict = rep.violations.empty() ? Verdict::Replicable : Verdict::NotReplicable;
  if (f.truncation() >= Exponent::integer(9))
    if (auto id = identify(f)) {
      rep.identified_as = id->name;
      rep.constant_delta = id->constant_delta;
    }
  return rep;
}

namespace {

QSeries eta_quotient(std::map<int, int> factors, Exponent relative) {
  EtaProduct e;
  e.factors = std::move(factors);
  return e.as_series_relative(relative);
}

QSeries build(std::string_view name, Exponent t);

QSeries root_of_substituted(std::string_view base, int m, Exponent t) {
  return pow_rational(substitute(build(base, t), m), Rational(1, m));
}

QSeries build(std::string_view name, Exponent t) {
  const Exponent rel = t + Exponent::integer(1);
  if (name == "T_1A") {
    const QSeries th = catalog_theta("E8", 1, rel);
    const QSeries q = th * pow_rational(eta(1, Exponent::from_num48(2) + rel), Rational(-8));
    return pow_rational(q, 3) - QSeries::constant(744);
  }
  if (name == "T_4A") return pow_rational(eta_quotient({{2, 2}, {1, -1}, {4, -1}}, rel), 24);
  if (name == "T_8B") return root_of_substituted("T_4A", 2, t);
  if (name == "T_16a") return root_of_substituted("T_4A", 4, t);
  if (name == "T_3A") {
    const QSeries x = eta_quotient({{1, 6}, {3, -6}}, rel);
    return pow_rational(x + pow_rational(x, -1).scaled(27), 2);
  }
  if (name == "T_6b") return root_of_substituted("T_3A", 2, t);
  if (name == "T_12A")
    return pow_rational(eta_quotient({{2, 2}, {6, 2}, {1, -1}, {4, -1}, {3, -1}, {12, -1}}, rel), 6);
  if (name == "T_7A") {
    const QSeries u = eta_quotient({{1, 1}, {7, 1}, {2, -1}, {14, -1}}, rel);
    return pow_rational(u + pow_rational(u, -2).scaled(4), 3);
  }
  throw PreconditionError("unknown McKay-Thompson series '" + std::string(name) + "'");
}

struct McKayCache {
  std::shared_mutex mu;
  std::map<std::string, QSeries, std::less<>> entries;
};

McKayCache& cache() {
  static McKayCache c;
  return c;
}

}  // namespace

std::vector<std::string> mckay_thompson_names() {
  return {"T_1A", "T_3A", "T_4A", "T_7A", "T_8B", "T_6b", "T_12A", "T_16a"};
}

QSeries mckay_thompson(std::string_view name, Exponent truncation) {
  auto& c = cache();
  {
    std::shared_lock lock(c.mu);
    auto it = c.entries.find(name);
    if (it != c.entries.end() && it->second.truncation() >= truncation)
      return it->second.truncated(truncation);
  }
  QSeries s = build(name, truncation).truncated(truncation);
  std::unique_lock lock(c.mu);
  auto& slot = c.entries[std::string(name)];
  if (slot.truncation().is_infinite() || slot.truncation() < s.truncation()) slot = s;
  return s;
}

std::optional<Identification> identify(const QSeries& f) {
  if (f.truncation() < Exponent::integer(9))
    throw PreconditionError("identify needs at least 8 positive q-powers");
  if (f.is_zero() || f.valuation() != Exponent::integer(-1) || !f.integral_exponents()) return std::nullopt;
  const Rational c0 = f.coeff(0);
  const QSeries g = f - QSeries::constant(c0);
  for (const auto& name : mckay_thompson_names()) {
    const QSeries m = mckay_thompson(name, f.truncation());
    const Rational m0 = m.coeff(0);
    if ((m - QSeries::constant(m0)) == g) return Identification{name, c0 - m0};
  }
  return std::nullopt;
}

nlohmann::json to_json(const ReplicabilityReport& r) {
  nlohmann::json j;
  j["verdict"] = r.verdict_string();
  j["K_rep"] = r.k_rep;
  auto v = nlohmann::json::array();
  for (const auto& q : r.violations) v.push_back({q[0], q[1], q[2], q[3]});
  j["violations"] = std::move(v);
  j["identified_as"] = r.identified_as ? nlohmann::json(*r.identified_as) : nlohmann::json();
  j["constant_delta"] = to_string(r.constant_delta);
  return j;
}

}  // namespace thetaforge
