#include "thetaforge/voa_char.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "thetaforge/modfunc.hpp"

namespace thetaforge {

namespace {

FixedLatticeSpec spec_for(const BinaryCode& code, PermGroup group, Flavor flavor,
                          std::optional<Perm> twist, Exponent truncation) {
  FixedLatticeSpec s;
  s.code = code;
  s.group = std::move(group);
  s.flavor = flavor;
  s.twist = std::move(twist);
  s.truncation = truncation;
  return s;
}

QSeries full_theta(const BinaryCode& code, Flavor flavor, Exponent truncation) {
  if (flavor == Flavor::Plain) return full_lattice_theta(code, truncation);
  return fixed_theta(spec_for(code, PermGroup::trivial(code.length()), flavor, std::nullopt, truncation));
}

QSeries divide_by_eta(const QSeries& theta, const OrbitType& ot) {
  const QSeries e = EtaProduct::from_orbit_type(ot).as_series_relative(theta.truncation());
  return theta * pow_rational(e, Rational(-1));
}

Exponent probe_truncation(const BinaryCode& code) {
  int maxw = 0;
  for (Codeword b : code.basis()) maxw = std::max(maxw, weight(b));
  return Exponent::integer(std::max(3, maxw / 4 + 2));
}

std::vector<std::vector<int>> sorted_cycles(const Perm& p) {
  auto c = p.cycles();
  for (auto& x : c) std::sort(x.begin(), x.end());
  std::sort(c.begin(), c.end());
  return c;
}

void assert_graded_dimensions(const QSeries& ch, const std::string& what) {
  if (!ch.integral_coeffs() || !ch.nonnegative_coeffs())
    throw std::logic_error(what + " has a coefficient that is not a nonnegative integer: " + ch.to_string());
}

bool doubling_for(const BinaryCode& code, const Perm& g, Flavor flavor) {
  if (g.order() % 2 != 0) return false;
  return flavor == Flavor::Plain ? order_doubling_code(code, g) : order_doubling_lattice(code, g, flavor);
}

}  // namespace

bool order_doubling_code(const BinaryCode& code, const Perm& g) {
  const int m = g.order();
  if (m % 2 != 0) return false;
  const Perm h = g.pow(m / 2);
  for (Codeword b : code.enumerate())
    if (weight(b & h.apply(b)) % 4 != 0) return true;
  return false;
}

bool order_doubling_lattice(const BinaryCode& code, const Perm& g, Flavor flavor) {
  const int m = g.order();
  if (m % 2 != 0) return false;
  const Exponent t = probe_truncation(code);
  const QSeries plain = full_theta(code, flavor, t);
  const QSeries twisted =
      fixed_theta(spec_for(code, PermGroup::trivial(code.length()), flavor, g.pow(m / 2), t));
  return !(plain == twisted);
}

LiftInfo lift_info(const BinaryCode& code, const Perm& g, Flavor flavor, Exponent truncation) {
  if (!code.is_automorphism(g))
    throw PreconditionError(g.to_string() + " is not an automorphism of the code");
  LiftInfo info;
  info.g = g;
  info.lattice_order = g.order();
  if (flavor == Flavor::Plain) info.code_criterion = order_doubling_code(code, g);
  info.lattice_criterion = order_doubling_lattice(code, g, flavor);
  info.doubling = *info.lattice_criterion;
  info.lift_order = info.doubling ? 2 * info.lattice_order : info.lattice_order;
  if (info.doubling) {
    const Perm h = g.pow(info.lattice_order / 2);
    const QSeries plain = full_theta(code, flavor, truncation);
    const QSeries twisted =
        fixed_theta(spec_for(code, PermGroup::trivial(code.length()), flavor, h, truncation));
    info.kernel_theta = (plain + twisted).scaled(Rational(1, 2));
  }
  return info;
}

namespace {

std::optional<Perm> twist_for(const Perm& g, int j) {
  if (g.order() % 2 != 0 || j % 2 != 0) return std::nullopt;
  Perm h = g.pow(j / 2);
  if (h.is_identity()) return std::nullopt;
  return h;
}

}  // namespace

QSeries trace_series(const BinaryCode& code, const Perm& g, int j, Flavor flavor, Exponent truncation) {
  if (j < 0) throw PreconditionError("trace index must be nonnegative");
  const Perm gj = g.pow(j);
  const QSeries theta = fixed_theta(spec_for(code, PermGroup::cyclic(gj), flavor, twist_for(g, j), truncation));
  return divide_by_eta(theta, gj.cycle_type());
}

CharacterReport character_cyclic(const BinaryCode& code, const Perm& g, Flavor flavor, Exponent truncation) {
  const LiftInfo info = lift_info(code, g, flavor, truncation);
  CharacterReport rep;
  rep.group = "<" + g.to_string() + ">";
  rep.central_charge = code.length();
  rep.doubling = info.doubling;
  rep.lift_order = info.lift_order;
  std::map<std::pair<std::vector<std::vector<int>>, std::vector<int>>, QSeries> memo;
  QSeries sum = QSeries::constant(0);
  for (int j = 0; j < rep.lift_order; ++j) {
    const auto tw = twist_for(g, j);
    const auto key = std::make_pair(sorted_cycles(g.pow(j)), tw ? tw->images() : std::vector<int>{});
    auto it = memo.find(key);
    if (it == memo.end()) it = memo.emplace(key, trace_series(code, g, j, flavor, truncation)).first;
    rep.per_j.emplace_back(std::to_string(j), it->second);
    if (tw) rep.annotations.push_back("j=" + std::to_string(j) + ": twisted by " + tw->to_string());
    sum = sum + it->second;
  }
  rep.character = sum.scaled(Rational(1, rep.lift_order));
  assert_graded_dimensions(rep.character, "character of " + rep.group);
  return rep;
}

CharacterReport character_group(const BinaryCode& code, const PermGroup& group, Flavor flavor,
                                Exponent truncation) {
  const auto elems = group.elements();
  for (const auto& e : elems) {
    if (!code.is_automorphism(e))
      throw PreconditionError(e.to_string() + " is not an automorphism of the code");
    if (doubling_for(code, e, flavor))
      throw PreconditionError("element " + e.to_string() + " has order doubling; refusing the group character");
  }
  CharacterReport rep;
  rep.group = group.to_string();
  rep.central_charge = code.length();
  rep.lift_order = static_cast<int>(elems.size());
  std::map<std::vector<std::vector<int>>, std::pair<QSeries, int>> classes;
  for (const auto& e : elems) {
    const auto key = sorted_cycles(e);
    auto it = classes.find(key);
    if (it == classes.end()) it = classes.emplace(key, std::make_pair(trace_series(code, e, 1, flavor, truncation), 0)).first;
    ++it->second.second;
  }
  QSeries sum = QSeries::constant(0);
  for (const auto& [key, entry] : classes) {
    sum = sum + entry.first.scaled(entry.second);
    std::vector<int> im(code.length());
    std::iota(im.begin(), im.end(), 0);
    for (const auto& c : key)
      for (std::size_t k = 0; k < c.size(); ++k) im[c[k]] = c[(k + 1) % c.size()];
    rep.per_j.emplace_back(Perm(im).cycle_type().to_string() + " x" + std::to_string(entry.second), entry.first);
  }
  rep.character = sum.scaled(Rational(1, static_cast<long>(elems.size())));
  assert_graded_dimensions(rep.character, "character of " + rep.group);
  return rep;
}

QSeries lattice_character(const QSeries& theta, int rank) {
  OrbitType ot;
  ot.counts[1] = rank;
  return divide_by_eta(theta, ot);
}

QSeries character_plus(const QSeries& theta, int rank) {
  if (rank < 8 || rank % 8 != 0) throw PreconditionError("V_L^+ character needs rank N >= 8 with 8 | N");
  const QSeries first = lattice_character(theta, rank);
  EtaProduct e;
  e.factors = {{1, rank}, {2, -rank}};
  const QSeries second = e.as_series_relative(theta.truncation());
  return (first + second).scaled(Rational(1, 2));
}

QSeries d_lattice_character_q2(int half_rank, Exponent truncation) {
  const QSeries theta = catalog_theta("D" + std::to_string(half_rank), 2, truncation);
  OrbitType ot;
  ot.counts[2] = half_rank;
  return divide_by_eta(theta, ot);
}

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::NotApplicable: return "not-applicable";
  }
  return "not-applicable";
}

IdentityResult compare_series(const std::string& name, const QSeries& lhs, const QSeries& rhs) {
  IdentityResult r;
  r.name = name;
  r.window = std::min(lhs.truncation(), rhs.truncation());
  const QSeries d = lhs.truncated(r.window) - rhs.truncated(r.window);
  r.status = d.is_zero() ? CheckStatus::Pass : CheckStatus::Fail;
  if (!d.is_zero()) {
    r.first_difference = d.terms().front().exp;
    r.detail = "first difference at q^" + r.first_difference->to_string();
  }
  return r;
}

IdentityResult compare_parity(const std::string& name, const QSeries& a, const QSeries& b, int parity) {
  IdentityResult r;
  r.name = name;
  r.window = std::min(a.truncation(), b.truncation());
  const Exponent lead = a.valuation();
  r.status = CheckStatus::Pass;
  for (std::int64_t k = parity; lead + Exponent::integer(k) < r.window; k += 2) {
    const Exponent e = lead + Exponent::integer(k);
    if (a.coeff(e) != b.coeff(e)) {
      r.status = CheckStatus::Fail;
      r.first_difference = e;
      r.detail = "coefficients differ at q^" + e.to_string();
      break;
    }
  }
  return r;
}

namespace {

IdentityResult not_applicable(const std::string& name, const std::string& why) {
  IdentityResult r;
  r.name = name;
  r.status = CheckStatus::NotApplicable;
  r.detail = why;
  return r;
}

bool is_half_involution(const Perm& g) {
  OrbitType want;
  want.counts[2] = g.degree() / 2;
  return g.cycle_type() == want;
}

bool theta_equal(const QSeries& a, const QSeries& b) {
  const Exponent w = std::min(a.truncation(), b.truncation());
  return a.truncated(w) == b.truncated(w);
}

QSeries fixed_plain(const BinaryCode& code, const Perm& g, Exponent t) {
  return fixed_theta_plain(spec_for(code, PermGroup::cyclic(g), Flavor::Plain, std::nullopt, t));
}

struct RepSide {
  QSeries quotient;      // theta_{L^{g1}} / eta(q^2)^{N/2}
  QSeries char_minus;    // Ch V^{g1} - Ch V_{L0}^+
};

std::optional<RepSide> rep_side(const BinaryCode& code, const Perm& g1, Exponent t, std::string& why) {
  const int n = code.length();
  if (!is_half_involution(g1)) {
    why = "g1 does not have cycle type 2^{N/2}";
    return std::nullopt;
  }
  const QSeries th = fixed_plain(code, g1, t);
  if (!theta_equal(th, catalog_theta("A1^" + std::to_string(n / 2), 2, t))) {
    why = "fixed theta of g1 differs from A1(2)^{N/2}";
    return std::nullopt;
  }
  const LiftInfo info = lift_info(code, g1, Flavor::Plain, t);
  if (!info.doubling || !info.kernel_theta) {
    why = "lift of g1 has no order doubling";
    return std::nullopt;
  }
  RepSide s;
  s.quotient = trace_series(code, g1, 1, Flavor::Plain, t);
  s.char_minus = character_cyclic(code, g1, Flavor::Plain, t).character - character_plus(*info.kernel_theta, n);
  return s;
}

std::vector<int> prime_factors(int n) {
  std::vector<int> out;
  for (int p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      out.push_back(p);
      n /= p;
    }
  if (n > 1) out.push_back(n);
  return out;
}

bool is_abelian(const PermGroup& h) {
  for (const auto& a : h.generators())
    for (const auto& b : h.generators())
      if (a * b != b * a) return false;
  return true;
}

CharacterReport plain_group_char(const BinaryCode& code, const PermGroup& g, Exponent t) {
  return character_group(code, g, Flavor::Plain, t);
}

}  // namespace

IdentityResult verify_theorem_c1(const BinaryCode& code, const Perm& g1, Exponent truncation) {
  const std::string name = "ThmC-1";
  std::string why;
  const auto side = rep_side(code, g1, truncation, why);
  if (!side) return not_applicable(name, why);
  const int n = code.length();
  return compare_series(name, side->quotient, side->char_minus + d_lattice_character_q2(n / 2, truncation));
}

IdentityResult verify_theorem_c2(const BinaryCode& code, const Perm& g1, const Perm& g2, Exponent truncation) {
  const std::string name = "ThmC-2";
  std::string why;
  const auto side = rep_side(code, g1, truncation, why);
  if (!side) return not_applicable(name, why);
  const int n = code.length();
  if (!is_half_involution(g2)) return not_applicable(name, "g2 does not have cycle type 2^{N/2}");
  const QSeries th2 = fixed_plain(code, g2, truncation);
  if (!theta_equal(th2, catalog_theta("D" + std::to_string(n / 2) + "*", 2, truncation)))
    return not_applicable(name, "fixed theta of g2 differs from D*_{N/2}(2)");
  const QSeries lhs = trace_series(code, g2, 1, Flavor::Plain, truncation);
  const QSeries ch2 = character_cyclic(code, g2, Flavor::Plain, truncation).character;
  const QSeries plus = character_plus(full_lattice_theta(code, truncation), n);
  const QSeries rhs = (ch2 - plus).scaled(2) - side->char_minus + d_lattice_character_q2(n / 2, truncation);
  return compare_series(name, lhs, rhs);
}

IdentityResult verify_charpq(const BinaryCode& code, const PermGroup& h, Exponent truncation) {
  const std::string name = "ThmD-pq";
  const auto elems = h.elements();
  const auto pf = prime_factors(static_cast<int>(elems.size()));
  if (pf.size() != 2 || pf[0] == pf[1]) return not_applicable(name, "group order is not a product of two distinct primes");
  const int p = pf[0], q = pf[1];
  if (q % p != 1) return not_applicable(name, "q is not 1 mod p");
  if (is_abelian(h)) return not_applicable(name, "group is abelian");
  std::optional<Perm> xp, xq;
  for (const auto& e : elems) {
    if (!xp && e.order() == p) xp = e;
    if (!xq && e.order() == q) xq = e;
  }
  try {
    const QSeries chh = plain_group_char(code, h, truncation).character;
    const QSeries chq = plain_group_char(code, PermGroup::cyclic(*xq), truncation).character;
    const QSeries chp = plain_group_char(code, PermGroup::cyclic(*xp), truncation).character;
    const QSeries chl = lattice_character(full_lattice_theta(code, truncation), code.length());
    auto r = compare_series(name, chh.scaled(p), chq + chp.scaled(p) - chl);
    r.detail = "p=" + std::to_string(p) + " q=" + std::to_string(q) + (r.detail.empty() ? "" : "; " + r.detail);
    return r;
  } catch (const PreconditionError& e) {
    return not_applicable(name, e.what());
  }
}

IdentityResult verify_charp2q(const BinaryCode& code, const PermGroup& h, Exponent truncation) {
  const std::string name = "Thm-p2q";
  const auto elems = h.elements();
  const auto pf = prime_factors(static_cast<int>(elems.size()));
  if (pf.size() != 3 || pf[0] != pf[1] || pf[1] == pf[2] || pf[0] > pf[2])
    return not_applicable(name, "group order is not p^2 q with p < q");
  const int p = pf[0], q = pf[2];
  if (is_abelian(h)) return not_applicable(name, "group is abelian");
  std::vector<Perm> order_q, p_elements;
  for (const auto& e : elems) {
    const int o = e.order();
    if (o == q) order_q.push_back(e);
    if (o == 1 || o == p || o == p * p) p_elements.push_back(e);
  }
  const std::size_t nq = order_q.size() / (q - 1);
  const int n = code.length();
  try {
    const QSeries chh = plain_group_char(code, h, truncation).character;
    const QSeries chq = plain_group_char(code, PermGroup::cyclic(order_q.front()), truncation).character;
    const QSeries chl = lattice_character(full_lattice_theta(code, truncation), n);
    if (nq == static_cast<std::size_t>(p * p)) {
      const PermGroup sylow(n, p_elements);
      if (sylow.elements().size() != static_cast<std::size_t>(p * p))
        return not_applicable(name, "p-elements do not form a subgroup");
      const QSeries chp = plain_group_char(code, sylow, truncation).character;
      auto r = compare_series(name, chh.scaled(q), chp + chq.scaled(q) - chl);
      r.detail = "normal Sylow-p shape" + (r.detail.empty() ? "" : "; " + r.detail);
      return r;
    }
    std::optional<PermGroup> sylow;
    for (const auto& x : p_elements)
      if (x.order() == p * p) {
        sylow = PermGroup::cyclic(x);
        break;
      }
    for (std::size_t a = 0; !sylow && a < p_elements.size(); ++a)
      for (std::size_t b = a + 1; !sylow && b < p_elements.size(); ++b) {
        const PermGroup cand(n, {p_elements[a], p_elements[b]});
        if (cand.elements(p * p + 1).size() == static_cast<std::size_t>(p * p)) sylow = cand;
      }
    if (!sylow) return not_applicable(name, "no Sylow-p subgroup found");
    const QSeries chp = plain_group_char(code, *sylow, truncation).character;
    auto r = compare_series(name, chh.scaled(p * p), chp.scaled(p * p) + chq - chl);
    r.detail = "normal Sylow-q shape" + (r.detail.empty() ? "" : "; " + r.detail);
    return r;
  } catch (const PreconditionError& e) {
    return not_applicable(name, e.what());
  }
}

std::vector<IdentityResult> verify_parity_props(const BinaryCode& code, const Perm& g_rep, const Perm& g_nr,
                                                Exponent truncation) {
  std::vector<IdentityResult> out;
  const int n = code.length();
  if (!is_half_involution(g_rep) || !is_half_involution(g_nr)) {
    out.push_back(not_applicable("parity-props", "elements must have cycle type 2^{N/2}"));
    return out;
  }
  const QSeries th_rep = fixed_plain(code, g_rep, truncation);
  const QSeries th_nr = fixed_plain(code, g_nr, truncation);
  if (!theta_equal(th_rep, catalog_theta("A1^" + std::to_string(n / 2), 2, truncation)) ||
      !theta_equal(th_nr, catalog_theta("D" + std::to_string(n / 2) + "*", 2, truncation))) {
    out.push_back(not_applicable("parity-props", "fixed thetas are not A1(2)^{N/2} and D*_{N/2}(2)"));
    return out;
  }
  const bool eight = n % 16 == 8;
  const QSeries q_rep = trace_series(code, g_rep, 1, Flavor::Plain, truncation);
  const QSeries q_nr = trace_series(code, g_nr, 1, Flavor::Plain, truncation);
  out.push_back(compare_parity("quotient-parity", q_rep, q_nr, eight ? 0 : 1));
  if (eight) {
    const QSeries d = d_lattice_character_q2(n / 2, truncation);
    out.push_back(compare_parity("d-quotient-parity rep", d, q_rep, 0));
    out.push_back(compare_parity("d-quotient-parity nr", d, q_nr, 0));
  } else {
    out.push_back(not_applicable("d-quotient-parity", "needs N = 8 mod 16"));
  }
  const QSeries theta_l = full_lattice_theta(code, truncation);
  const QSeries ch_nr = character_cyclic(code, g_nr, Flavor::Plain, truncation).character;
  out.push_back(compare_parity("nr-vs-plus-even", ch_nr, character_plus(theta_l, n), 0));
  if (eight) {
    const LiftInfo info = lift_info(code, g_rep, Flavor::Plain, truncation);
    if (info.kernel_theta) {
      const QSeries ch_rep = character_cyclic(code, g_rep, Flavor::Plain, truncation).character;
      out.push_back(compare_parity("rep-vs-kernel-plus-even", ch_rep, character_plus(*info.kernel_theta, n), 0));
    } else {
      out.push_back(not_applicable("rep-vs-kernel-plus-even", "rep element has no order doubling"));
    }
  } else {
    out.push_back(not_applicable("rep-vs-kernel-plus-even", "needs N = 8 mod 16"));
  }
  return out;
}

nlohmann::json to_json(const CharacterReport& r) {
  nlohmann::json j = to_json(r.character);
  j["group"] = r.group;
  j["central_charge"] = r.central_charge;
  j["doubling"] = r.doubling;
  j["lift_order"] = r.lift_order;
  nlohmann::json per = nlohmann::json::object();
  for (const auto& [label, s] : r.per_j) per[label] = to_json(s);
  j["per_j"] = std::move(per);
  j["annotations"] = r.annotations;
  return j;
}

nlohmann::json to_json(const LiftInfo& l) {
  nlohmann::json j;
  j["g"] = l.g.to_string();
  j["lattice_order"] = l.lattice_order;
  j["lift_order"] = l.lift_order;
  j["doubling"] = l.doubling;
  j["code_criterion"] = l.code_criterion ? nlohmann::json(*l.code_criterion) : nlohmann::json();
  j["lattice_criterion"] = l.lattice_criterion ? nlohmann::json(*l.lattice_criterion) : nlohmann::json();
  j["kernel_theta"] = l.kernel_theta ? to_json(*l.kernel_theta) : nlohmann::json();
  return j;
}

nlohmann::json to_json(const IdentityResult& r) {
  nlohmann::json j;
  j["name"] = r.name;
  j["status"] = to_string(r.status);
  j["first_difference_num48"] = r.first_difference ? nlohmann::json(r.first_difference->num48()) : nlohmann::json();
  j["window_num48"] = r.window.is_infinite() ? nlohmann::json() : nlohmann::json(r.window.num48());
  j["detail"] = r.detail;
  return j;
}

}  // namespace thetaforge
