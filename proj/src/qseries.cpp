#include "thetaforge/qseries.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace thetaforge {

std::string to_string(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational parse_rational(const std::string& s) {
  Rational r;
  if (s.empty() || r.set_str(s, 10) != 0 || r.get_den() == 0)
    throw ParseError("bad rational '" + s + "'");
  r.canonicalize();
  return r;
}

Exponent Exponent::from_rational(const Rational& r) {
  Rational scaled = r * kDen;
  if (scaled.get_den() != 1 || !scaled.get_num().fits_slong_p())
    throw PreconditionError("exponent " + thetaforge::to_string(r) + " is off the 1/48 lattice");
  return Exponent(scaled.get_num().get_si());
}

Rational Exponent::to_rational() const {
  if (is_infinite()) throw PreconditionError("infinite exponent has no value");
  Rational r(n_, kDen);
  r.canonicalize();
  return r;
}

std::string Exponent::to_string() const {
  if (is_infinite()) return "inf";
  Rational r = to_rational();
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_str();
}

QSeries QSeries::zero(Exponent truncation) {
  QSeries s;
  s.trunc_ = truncation;
  return s;
}

QSeries QSeries::constant(const Rational& c, Exponent truncation) {
  return monomial(c, Exponent(), truncation);
}

QSeries QSeries::monomial(const Rational& c, Exponent e, Exponent truncation) {
  QSeries s;
  s.trunc_ = truncation;
  if (c != 0 && e < truncation) s.terms_.push_back({e, c});
  if (!s.terms_.empty()) s.terms_.back().coeff.canonicalize();
  return s;
}

QSeries QSeries::from_terms(std::vector<Term> terms, Exponent truncation) {
  std::stable_sort(terms.begin(), terms.end(),
                   [](const Term& a, const Term& b) { return a.exp < b.exp; });
  QSeries s;
  s.trunc_ = truncation;
  for (auto& t : terms) {
    if (t.exp >= truncation) break;
    if (!s.terms_.empty() && s.terms_.back().exp == t.exp) {
      s.terms_.back().coeff += t.coeff;
    } else {
      s.terms_.push_back(std::move(t));
    }
  }
  std::erase_if(s.terms_, [](const Term& t) { return t.coeff == 0; });
  return s;
}

Rational QSeries::coeff(Exponent e) const {
  if (e >= trunc_)
    throw PreconditionError("coefficient of q^" + e.to_string() + " lies at or beyond truncation " +
                            trunc_.to_string());
  auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                             [](const Term& t, Exponent x) { return t.exp < x; });
  if (it != terms_.end() && it->exp == e) return it->coeff;
  return 0;
}

Rational QSeries::leading_coeff() const {
  if (terms_.empty()) throw PreconditionError("series has no known nonzero term");
  return terms_.front().coeff;
}

QSeries QSeries::truncated(Exponent t) const {
  if (t >= trunc_) return *this;
  QSeries s;
  s.trunc_ = t;
  for (const auto& term : terms_) {
    if (term.exp >= t) break;
    s.terms_.push_back(term);
  }
  return s;
}

QSeries QSeries::shifted(Exponent e) const {
  QSeries s = *this;
  for (auto& t : s.terms_) t.exp = t.exp + e;
  s.trunc_ = trunc_ + e;
  return s;
}

QSeries QSeries::scaled(const Rational& c_in) const {
  Rational c = c_in;
  c.canonicalize();
  if (c == 0) return zero(trunc_);
  QSeries s = *this;
  for (auto& t : s.terms_) t.coeff *= c;
  return s;
}

bool QSeries::integral_exponents() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.exp.is_integral(); });
}

bool QSeries::integral_coeffs() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return t.coeff.get_den() == 1; });
}

bool QSeries::nonnegative_coeffs() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.coeff > 0; });
}

QSeries operator+(const QSeries& a, const QSeries& b) {
  QSeries s;
  s.trunc_ = std::min(a.trunc_, b.trunc_);
  auto i = a.terms_.begin(), j = b.terms_.begin();
  while (i != a.terms_.end() || j != b.terms_.end()) {
    Term t;
    if (j == b.terms_.end() || (i != a.terms_.end() && i->exp < j->exp)) {
      t = *i++;
    } else if (i == a.terms_.end() || j->exp < i->exp) {
      t = *j++;
    } else {
      t = {i->exp, i->coeff + j->coeff};
      ++i;
      ++j;
    }
    if (t.exp >= s.trunc_) break;
    if (t.coeff != 0) s.terms_.push_back(std::move(t));
  }
  return s;
}

QSeries operator-(const QSeries& a, const QSeries& b) { return a + (-b); }

namespace {

std::int64_t offset_gcd(const std::vector<Term>& terms) {
  std::int64_t g = 0;
  for (const auto& t : terms) g = std::gcd(g, t.exp.num48() - terms.front().exp.num48());
  return g;
}

Integer denominator_lcm(const std::vector<Term>& terms) {
  Integer d = 1;
  for (const auto& t : terms) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), t.coeff.get_den_mpz_t());
  return d;
}

std::vector<Integer> scaled_numerators(const std::vector<Term>& terms, const Integer& d) {
  std::vector<Integer> out;
  out.reserve(terms.size());
  for (const auto& t : terms) out.push_back(t.coeff.get_num() * (d / t.coeff.get_den()));
  return out;
}

}  // namespace

QSeries operator*(const QSeries& a, const QSeries& b) {
  Exponent trunc = std::min(a.trunc_ + b.valuation(), b.trunc_ + a.valuation());
  QSeries s;
  s.trunc_ = trunc;
  if (a.terms_.empty() || b.terms_.empty()) return s;

  const Exponent lo = a.terms_.front().exp + b.terms_.front().exp;
  Exponent hi = a.terms_.back().exp + b.terms_.back().exp + Exponent::from_num48(1);
  hi = std::min(hi, trunc);
  if (hi <= lo) return s;
  std::int64_t step = std::gcd(offset_gcd(a.terms_), offset_gcd(b.terms_));
  if (step == 0) step = 1;

  // Clear denominators so the inner loop is pure integer multiply-add.
  const Integer da = denominator_lcm(a.terms_), db = denominator_lcm(b.terms_);
  const auto na = scaled_numerators(a.terms_, da);
  const auto nb = scaled_numerators(b.terms_, db);

  const std::int64_t base = lo.num48();
  std::vector<Integer> acc((hi.num48() - base + step - 1) / step);
  const std::int64_t b0 = b.terms_.front().exp.num48();
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    const std::int64_t ea = a.terms_[i].exp.num48();
    if (ea + b0 >= hi.num48()) break;
    for (std::size_t j = 0; j < b.terms_.size(); ++j) {
      const std::int64_t e = ea + b.terms_[j].exp.num48();
      if (e >= hi.num48()) break;
      mpz_addmul(acc[(e - base) / step].get_mpz_t(), na[i].get_mpz_t(), nb[j].get_mpz_t());
    }
  }
  const Integer den = da * db;
  for (std::size_t k = 0; k < acc.size(); ++k) {
    if (acc[k] == 0) continue;
    Rational c(acc[k], den);
    c.canonicalize();
    s.terms_.push_back({Exponent::from_num48(base + static_cast<std::int64_t>(k) * step), c});
  }
  return s;
}

bool operator==(const QSeries& a, const QSeries& b) {
  if (a.trunc_ != b.trunc_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].exp != b.terms_[i].exp || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  return true;
}

std::string QSeries::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    if (!first) {
      os << (c < 0 ? " - " : " + ");
      c = abs(c);
    }
    const bool unit_exp = t.exp == Exponent();
    if (unit_exp || c != 1) os << (c == -1 && !unit_exp ? "-" : c.get_str());
    if (!unit_exp) {
      os << "q";
      if (t.exp != Exponent::integer(1)) os << "^" << t.exp.to_string();
    }
    first = false;
  }
  if (first) os << "0";
  if (!trunc_.is_infinite()) os << " + O(q^" << trunc_.to_string() << ")";
  return os.str();
}

QSeries power(const QSeries& f, unsigned k) {
  QSeries result = QSeries::constant(1);
  QSeries base = f;
  while (k > 0) {
    if (k & 1u) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

namespace {

Integer exact_root(const Integer& x, unsigned long b) {
  Integer r;
  if (mpz_root(r.get_mpz_t(), x.get_mpz_t(), b) == 0)
    throw PreconditionError("coefficient " + x.get_str() + " has no rational root of degree " +
                            std::to_string(b));
  return r;
}

Rational rational_power(const Rational& c, const Rational& r) {
  if (!r.get_den().fits_ulong_p() || !r.get_num().fits_slong_p())
    throw PreconditionError("exponent too large");
  const unsigned long b = r.get_den().get_ui();
  const long a = r.get_num().get_si();
  if (c < 0 && b % 2 == 0)
    throw PreconditionError("negative leading coefficient has no real root of even degree");
  Rational base(exact_root(abs(c.get_num()), b), exact_root(c.get_den(), b));
  if (c < 0) base = -base;
  Rational out = 1;
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(std::labs(a)));
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(std::labs(a)));
  out = a >= 0 ? Rational(num, den) : Rational(den, num);
  out.canonicalize();
  return out;
}

}  // namespace

QSeries pow_rational(const QSeries& f, const Rational& r_in) {
  Rational r = r_in;
  r.canonicalize();
  if (f.is_zero()) throw PreconditionError("pow_rational of a series with no known term");
  if (r == 0) return QSeries::constant(1, f.truncation() - f.valuation());
  if (r.get_den() == 1 && r > 0 && r.get_num().fits_ulong_p())
    return power(f, static_cast<unsigned>(r.get_num().get_ui()));

  const Exponent v = f.valuation();
  const Rational c = f.leading_coeff();
  const Exponent vr = Exponent::from_rational(v.to_rational() * r);
  const Rational cr = rational_power(c, r);
  const Exponent rel = f.truncation() - v;

  const QSeries unit = f.shifted(Exponent() - v).scaled(1 / c);
  const QSeries h = unit - QSeries::constant(1);
  if (rel.is_infinite() && !h.is_zero())
    throw PreconditionError("pow_rational needs a truncated series for a non-polynomial power");

  QSeries sum = QSeries::constant(1, rel);
  QSeries hk = QSeries::constant(1, rel);
  Rational binom = 1;
  for (long k = 1; !h.is_zero(); ++k) {
    hk = (hk * h).truncated(rel);
    if (hk.is_zero()) break;
    binom = binom * (r - (k - 1)) / k;
    if (binom == 0) break;
    sum = sum + hk.scaled(binom);
  }
  return sum.scaled(cr).shifted(vr);
}

QSeries substitute(const QSeries& f, std::int64_t m) {
  if (m < 1) throw PreconditionError("substitute needs m >= 1");
  std::vector<Term> terms = f.terms();
  for (auto& t : terms) t.exp = t.exp.times(m);
  return QSeries::from_terms(std::move(terms), f.truncation().times(m));
}

QSeries eta(std::int64_t m, Exponent truncation) {
  if (m < 1) throw PreconditionError("eta needs m >= 1");
  if (truncation.is_infinite() || truncation <= Exponent())
    throw PreconditionError("eta needs a positive finite truncation");
  std::vector<Term> terms;
  const std::int64_t t = truncation.num48();
  for (std::int64_t k = 0;; ++k) {
    const std::int64_t e1 = 2 * m + 24 * m * k * (3 * k - 1);
    if (e1 >= t) break;
    const Rational sign = (k % 2 == 0) ? 1 : -1;
    terms.push_back({Exponent::from_num48(e1), sign});
    if (k > 0) {
      const std::int64_t e2 = 2 * m + 24 * m * k * (3 * k + 1);
      if (e2 < t) terms.push_back({Exponent::from_num48(e2), sign});
    }
  }
  return QSeries::from_terms(std::move(terms), truncation);
}

QSeries jacobi_sum(const Rational& weight_in, const Rational& shift_in, bool alternating,
                   Exponent truncation) {
  Rational weight = weight_in, shift = shift_in;
  weight.canonicalize();
  shift.canonicalize();
  if (weight <= 0) throw PreconditionError("theta weight must be positive");
  if (truncation.is_infinite() || truncation <= Exponent())
    throw PreconditionError("theta needs a positive finite truncation");
  const Rational scale = weight * Exponent::kDen;
  const Rational limit(truncation.num48());
  std::vector<Term> terms;
  auto visit = [&](const Integer& n) {
    const Rational x = n + shift;
    const Rational e = scale * x * x;
    if (e >= limit) return false;
    if (e.get_den() != 1)
      throw PreconditionError("theta exponent off the 1/48 lattice");
    const bool odd = mpz_odd_p(n.get_mpz_t()) != 0;
    terms.push_back({Exponent::from_num48(e.get_num().get_si()), Rational(alternating && odd ? -1 : 1)});
    return true;
  };
  Integer start;
  mpz_fdiv_q(start.get_mpz_t(), Rational(-shift).get_num_mpz_t(), shift.get_den_mpz_t());
  for (Integer n = start + 1; visit(n); ++n) {
  }
  for (Integer n = start; visit(n); --n) {
  }
  return QSeries::from_terms(std::move(terms), truncation);
}

QSeries shifted_theta(std::int64_t weight, const Rational& shift, bool alternating,
                      Exponent truncation) {
  return jacobi_sum(Rational(weight), shift, alternating, truncation);
}

nlohmann::json to_json(const QSeries& f) {
  nlohmann::json j;
  const Exponent lead = f.valuation();
  j["lead_num48"] = lead.is_infinite() ? nlohmann::json() : nlohmann::json(lead.num48());
  j["trunc_num48"] = f.truncation().is_infinite() ? nlohmann::json()
                                                  : nlohmann::json(f.truncation().num48());
  auto coeffs = nlohmann::json::array();
  for (const auto& t : f.terms()) coeffs.push_back({t.exp.num48(), to_string(t.coeff)});
  j["coeffs"] = std::move(coeffs);
  return j;
}

QSeries qseries_from_json(const nlohmann::json& j) {
  try {
    const auto& tr = j.at("trunc_num48");
    const Exponent trunc = tr.is_null() ? Exponent::infinity()
                                        : Exponent::from_num48(tr.get<std::int64_t>());
    std::vector<Term> terms;
    for (const auto& c : j.at("coeffs"))
      terms.push_back({Exponent::from_num48(c.at(0).get<std::int64_t>()),
                       parse_rational(c.at(1).get<std::string>())});
    return QSeries::from_terms(std::move(terms), trunc);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed series JSON: ") + e.what());
  }
}

std::vector<Rational> coeff_run(const QSeries& f, Exponent start, std::int64_t count) {
  std::vector<Rational> out;
  for (std::int64_t k = 0; k < count; ++k) {
    const Exponent e = start + Exponent::integer(k);
    if (e >= f.truncation()) break;
    out.push_back(f.coeff(e));
  }
  return out;
}

}  // namespace thetaforge
