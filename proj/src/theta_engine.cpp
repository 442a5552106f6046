#include "thetaforge/theta_engine.hpp"

#include <algorithm>
#include <map>
#include <regex>
#include <tuple>

namespace thetaforge {

std::string flavor_name(Flavor f) {
  switch (f) {
    case Flavor::Plain: return "plain";
    case Flavor::Super0: return "super0";
    case Flavor::Super1: return "super1";
  }
  return "plain";
}

Flavor parse_flavor(std::string_view s) {
  if (s == "plain") return Flavor::Plain;
  if (s == "super0") return Flavor::Super0;
  if (s == "super1") return Flavor::Super1;
  throw ParseError("unknown flavor '" + std::string(s) + "'");
}

namespace {

// One factor sum_n s(n) q^{t (n + s4/4)^2}.
struct Factor {
  int t;
  int s4;
  bool alternating;
  auto operator<=>(const Factor&) const = default;
};

using Signature = std::vector<Factor>;  // sorted

struct OrbitLayout {
  std::vector<int> size;     // per orbit
  std::vector<Mask> mask;    // per orbit
  std::vector<int> partner;  // -1: untwisted; i: twisted self block; j != i: paired orbit
};

OrbitLayout layout_for(const FixedLatticeSpec& spec) {
  const auto& orbits = spec.group.orbits();
  const auto& orbit_of = spec.group.orbit_of();
  OrbitLayout lay;
  for (const auto& o : orbits) {
    Mask m = 0;
    for (int i : o) m |= Mask{1} << i;
    lay.size.push_back(static_cast<int>(o.size()));
    lay.mask.push_back(m);
  }
  lay.partner.assign(orbits.size(), -1);
  if (!spec.twist) return lay;
  const Perm& h = *spec.twist;
  if (h.degree() != spec.code.length()) throw PreconditionError("twist degree differs from code length");
  for (std::size_t k = 0; k < orbits.size(); ++k) {
    const int target = orbit_of[h(orbits[k].front())];
    for (int i : orbits[k])
      if (orbit_of[h(i)] != target)
        throw UnsupportedError("twist " + h.to_string() + " does not map orbits onto orbits");
    if (orbits[target].size() != orbits[k].size())
      throw UnsupportedError("twist " + h.to_string() + " does not normalize the block partition");
    lay.partner[k] = target;
  }
  for (std::size_t k = 0; k < orbits.size(); ++k)
    if (lay.partner[lay.partner[k]] != static_cast<int>(k))
      throw UnsupportedError("twist " + h.to_string() + " has order > 2 on the orbit partition");
  return lay;
}

class Accumulator {
 public:
  explicit Accumulator(Exponent trunc) : trunc_(trunc) {}

  void add(Signature sig, const Rational& weight) {
    std::sort(sig.begin(), sig.end());
    weights_[std::move(sig)] += weight;
  }

  QSeries total() {
    QSeries sum = QSeries::zero(trunc_);
    for (const auto& [sig, w] : weights_) {
      if (w == 0) continue;
      sum = sum + product(sig).scaled(w);
    }
    return sum;
  }

 private:
  const QSeries& factor(const Factor& f) {
    auto it = factors_.find(f);
    if (it == factors_.end())
      it = factors_.emplace(f, shifted_theta(f.t, Rational(f.s4, 4), f.alternating, trunc_)).first;
    return it->second;
  }

  QSeries product(const Signature& sig) {
    QSeries p = QSeries::constant(1, trunc_);
    for (std::size_t i = 0; i < sig.size();) {
      std::size_t j = i;
      while (j < sig.size() && sig[j] == sig[i]) ++j;
      p = (p * power(factor(sig[i]), static_cast<unsigned>(j - i))).truncated(trunc_);
      i = j;
    }
    return p;
  }

  Exponent trunc_;
  std::map<Signature, Rational> weights_;
  std::map<Factor, QSeries> factors_;
};

// Adds the coset with per-orbit shifts s4[k] (quarters), with optional parity
// projection onto sum |O| n_O == parity (mod 2).
void add_coset(Accumulator& acc, const OrbitLayout& lay, const std::vector<int>& s4,
               std::optional<int> parity) {
  const std::size_t r = lay.size.size();
  Signature plain, alt;
  Rational constant = 0;
  for (std::size_t k = 0; k < r; ++k) {
    const int t = lay.size[k];
    const int p = lay.partner[k];
    bool flag = false;
    if (p == static_cast<int>(k)) {
      flag = (t * s4[k]) % 2 != 0;
      constant += Rational(t * s4[k] * s4[k], 8);
    } else if (p >= 0) {
      flag = (t * s4[p]) % 2 != 0;
      if (static_cast<int>(k) < p) constant += Rational(t * s4[k] * s4[p], 4);
    }
    plain.push_back({t, s4[k], flag});
    alt.push_back({t, s4[k], flag != (t % 2 != 0)});
  }
  constant.canonicalize();
  if (constant.get_den() != 1) throw std::logic_error("twisted sign constant is not an integer");
  const Rational sign = mpz_odd_p(constant.get_num_mpz_t()) ? -1 : 1;
  if (!parity) {
    acc.add(std::move(plain), sign);
    return;
  }
  acc.add(std::move(plain), sign / 2);
  acc.add(std::move(alt), (*parity == 0 ? sign : -sign) / 2);
}

void validate_group(const FixedLatticeSpec& spec) {
  if (spec.group.degree() != spec.code.length())
    throw PreconditionError("group degree differs from code length");
  if (spec.truncation.is_infinite() || spec.truncation <= Exponent())
    throw PreconditionError("theta truncation must be positive and finite");
}

QSeries engine(const FixedLatticeSpec& spec) {
  validate_group(spec);
  const OrbitLayout lay = layout_for(spec);
  const BinaryCode fixed = spec.code.fixed_subcode(spec.group);
  Accumulator acc(spec.truncation);
  const std::size_t r = lay.size.size();
  std::vector<int> s4(r);
  for (Codeword b : fixed.enumerate()) {
    for (std::size_t k = 0; k < r; ++k) s4[k] = (b & lay.mask[k]) ? 2 : 0;
    if (spec.flavor == Flavor::Plain) {
      add_coset(acc, lay, s4, std::nullopt);
      continue;
    }
    add_coset(acc, lay, s4, 0);
    for (std::size_t k = 0; k < r; ++k) s4[k] = (b & lay.mask[k]) ? 3 : 1;
    add_coset(acc, lay, s4, spec.flavor == Flavor::Super1 ? 1 : 0);
  }
  return acc.total();
}

void validate_supercode(const FixedLatticeSpec& spec) {
  const auto ch = spec.code.checks();
  if (!ch.doubly_even || !ch.self_dual)
    throw PreconditionError("super-code construction needs a doubly even self-dual code");
  if (ch.min_weight <= 4) throw PreconditionError("super-code construction needs minimum weight > 4");
  const int j = spec.flavor == Flavor::Super1 ? 1 : 0;
  if ((spec.code.length() / 8) % 2 != j)
    throw PreconditionError("lattice is not unimodular: N/8 must be congruent to " + std::to_string(j) +
                            " mod 2");
}

}  // namespace

QSeries fixed_theta_plain(const FixedLatticeSpec& spec) {
  if (spec.flavor != Flavor::Plain) throw PreconditionError("fixed_theta_plain needs the plain flavor");
  if (spec.twist) throw PreconditionError("fixed_theta_plain takes no twist");
  return engine(spec);
}

QSeries fixed_theta_supercode(const FixedLatticeSpec& spec) {
  if (spec.flavor == Flavor::Plain) throw PreconditionError("fixed_theta_supercode needs a super flavor");
  if (spec.twist) throw PreconditionError("fixed_theta_supercode takes no twist");
  validate_supercode(spec);
  return engine(spec);
}

QSeries twisted_theta(const FixedLatticeSpec& spec) {
  if (!spec.twist) throw PreconditionError("twisted_theta needs a twist");
  if (spec.flavor != Flavor::Plain) validate_supercode(spec);
  return engine(spec);
}

QSeries fixed_theta(const FixedLatticeSpec& spec) {
  if (spec.twist) return twisted_theta(spec);
  return spec.flavor == Flavor::Plain ? fixed_theta_plain(spec) : fixed_theta_supercode(spec);
}

QSeries full_lattice_theta(const BinaryCode& code, Exponent truncation) {
  if (truncation.is_infinite() || truncation <= Exponent())
    throw PreconditionError("theta truncation must be positive and finite");
  const auto w = code.weight_enumerator();
  const int n = code.length();
  const QSeries t2 = shifted_theta(1, Rational(1, 2), false, truncation);
  const QSeries t3 = shifted_theta(1, 0, false, truncation);
  std::vector<QSeries> p2{QSeries::constant(1, truncation)}, p3{QSeries::constant(1, truncation)};
  for (int k = 1; k <= n; ++k) {
    p2.push_back((p2.back() * t2).truncated(truncation));
    p3.push_back((p3.back() * t3).truncated(truncation));
  }
  QSeries sum = QSeries::zero(truncation);
  for (int k = 0; k <= n; ++k)
    if (w.counts[k] != 0)
      sum = sum + (p2[k] * p3[n - k]).truncated(truncation).scaled(Rational(static_cast<unsigned long>(w.counts[k])));
  return sum;
}

namespace {

// sum over (a,b) in Z^2 of q^{a^2 + k a b + m b^2}
QSeries binary_form_theta(int k, int m, Exponent truncation) {
  const std::int64_t limit = (truncation.num48() + Exponent::kDen - 1) / Exponent::kDen;
  const std::int64_t disc = 4 * m - k * k;
  std::int64_t bmax = 0;
  while (disc * bmax * bmax < 4 * limit) ++bmax;
  const std::int64_t amax = bmax * std::abs(k) + limit + 1;
  std::map<std::int64_t, std::int64_t> counts;
  for (std::int64_t b = -bmax; b <= bmax; ++b)
    for (std::int64_t a = -amax; a <= amax; ++a) {
      const std::int64_t v = a * a + k * a * b + m * b * b;
      if (v < limit) ++counts[v];
    }
  std::vector<Term> terms;
  for (auto [v, c] : counts) terms.push_back({Exponent::integer(v), Rational(c)});
  return QSeries::from_terms(std::move(terms), truncation);
}

// Paper-normalized Jacobi thetas: theta3(q) = sum q^{n^2/2}, etc.
QSeries jt(int which, Exponent trunc) {
  switch (which) {
    case 2: return jacobi_sum(Rational(1, 2), Rational(1, 2), false, trunc);
    case 3: return jacobi_sum(Rational(1, 2), 0, false, trunc);
    default: return jacobi_sum(Rational(1, 2), 0, true, trunc);
  }
}

QSeries pw(const QSeries& f, int n, Exponent trunc) { return power(f, n).truncated(trunc); }

QSeries catalog_base(std::string_view name, Exponent t) {
  static const std::regex a_re(R"(^A([12])(?:\^(\d+))?$)");
  static const std::regex d_re(R"(^D_?(\d+)(\^?\*)?$)");
  const std::string s(name);
  std::smatch m;
  if (std::regex_match(s, m, a_re)) {
    const int n = m[2].matched ? std::stoi(m[2]) : 1;
    if (n < 1) throw PreconditionError("catalog rank must be positive");
    const QSeries base = m[1] == "1" ? jt(3, t) : binary_form_theta(-1, 1, t);
    return pw(base, n, t);
  }
  if (std::regex_match(s, m, d_re)) {
    const int n = std::stoi(m[1]);
    if (n < 1) throw PreconditionError("catalog rank must be positive");
    if (m[2].matched) return pw(jt(3, t), n, t) + pw(jt(2, t), n, t);
    return (pw(jt(3, t), n, t) + pw(jt(4, t), n, t)).scaled(Rational(1, 2));
  }
  if (s == "E8")
    return (pw(jt(2, t), 8, t) + pw(jt(3, t), 8, t) + pw(jt(4, t), 8, t)).scaled(Rational(1, 2));
  if (s == "K") return binary_form_theta(1, 2, t);
  throw PreconditionError("unknown catalog lattice '" + s + "'");
}

}  // namespace

QSeries catalog_theta(std::string_view name, int scale, Exponent truncation) {
  if (scale < 1) throw PreconditionError("catalog scale must be >= 1");
  if (truncation.is_infinite() || truncation <= Exponent())
    throw PreconditionError("theta truncation must be positive and finite");
  const Exponent base_trunc = Exponent::from_num48((truncation.num48() + scale - 1) / scale);
  return substitute(catalog_base(name, base_trunc), scale).truncated(truncation);
}

ThetaComparison compare_theta(const QSeries& a, const QSeries& b) {
  ThetaComparison r;
  r.window = std::min(a.truncation(), b.truncation());
  const Exponent start = std::min(a.valuation(), b.valuation());
  if (r.window.is_infinite() || start.is_infinite() ||
      r.window - start < Exponent::integer(10))
    throw PreconditionError("theta comparison window is shorter than 10 integer exponents");
  const QSeries d = a.truncated(r.window) - b.truncated(r.window);
  r.equal = d.is_zero();
  if (!r.equal) r.first_difference = d.terms().front().exp;
  return r;
}

bool theta_matches(const QSeries& a, const QSeries& b) { return compare_theta(a, b).equal; }

}  // namespace thetaforge

namespace thetaforge {

namespace {

bool uniform_cycle_type(const Perm& g, int r) {
  const OrbitType ot = g.cycle_type();
  return ot.counts.size() == 1 && ot.counts.begin()->first == r;
}

template <class Accept>
bool exact_cover(const std::vector<Codeword>& pieces, Codeword full, Codeword covered,
                 std::vector<Codeword>& chosen, const Accept& accept) {
  if (covered == full) return accept(chosen);
  const Codeword first = full & ~covered & (~(full & ~covered) + 1);
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (!(pieces[i] & first) || (pieces[i] & covered)) continue;
    chosen.push_back(pieces[i]);
    if (exact_cover(pieces, full, covered | pieces[i], chosen, accept)) return true;
    chosen.pop_back();
  }
  return false;
}

}  // namespace

std::optional<int> theorem_b_order(const BinaryCode& code, const Perm& g) {
  const int n = code.length();
  const int r = g.order();
  if (n == 0 || !uniform_cycle_type(g, r) || n % (2 * r) != 0) return std::nullopt;
  const BinaryCode fixed = code.fixed_subcode(PermGroup::cyclic(g));
  if (fixed.dimension() != n / (2 * r)) return std::nullopt;
  const auto words = fixed.enumerate();
  std::vector<Codeword> minimal;
  for (Codeword w : words) {
    if (w == 0) continue;
    bool is_min = true;
    for (Codeword v : words)
      if (v != 0 && v != w && (v & w) == v) {
        is_min = false;
        break;
      }
    if (is_min) minimal.push_back(w);
  }
  if (static_cast<int>(minimal.size()) != fixed.dimension()) return std::nullopt;
  Codeword all = 0;
  for (Codeword w : minimal) {
    if (all & w) return std::nullopt;
    all |= w;
  }
  if (all != code.all_ones()) return std::nullopt;
  return r;
}

bool dn_star_hypotheses(const BinaryCode& code, const Perm& g) {
  const int n = code.length();
  if (n % 8 != 0 || !uniform_cycle_type(g, 2)) return false;
  const BinaryCode fixed = code.fixed_subcode(PermGroup::cyclic(g));
  if (fixed.dimension() != n / 4 + 1) return false;
  const auto words = fixed.enumerate();
  std::vector<Codeword> fours;
  for (Codeword w : words)
    if (weight(w) == 4) fours.push_back(w);
  std::vector<Codeword> halves;
  for (Codeword w : words)
    if (weight(w) == n / 2) halves.push_back(w);
  std::vector<Codeword> blocks;
  return exact_cover(fours, code.all_ones(), 0, blocks, [&](const std::vector<Codeword>& cover) {
    for (Codeword b0 : halves) {
      bool ok = true;
      for (Codeword b : cover) ok = ok && weight(b0 & b) == 2;
      if (ok) return true;
    }
    return false;
  });
}

}  // namespace thetaforge
