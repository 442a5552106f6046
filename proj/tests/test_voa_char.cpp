#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "thetaforge/cli.hpp"
#include "thetaforge/modfunc.hpp"
#include "thetaforge/voa_char.hpp"

using namespace thetaforge;

namespace {

Exponent I(std::int64_t k) { return Exponent::integer(k); }
const Exponent kLead8 = Exponent::from_num48(-16);

std::vector<Integer> from_lead(const QSeries& s, Exponent lead, int count) {
  std::vector<Integer> out;
  for (int k = 0; k < count; ++k) {
    const Rational c = s.coeff(lead + I(k));
    REQUIRE(c.get_den() == 1);
    out.push_back(c.get_num());
  }
  return out;
}

const std::vector<std::string> kClasses = {
    "()", "(1,7)(2,4)(3,8)(5,6)", "(1,2)(3,8)(4,7)(5,6)", "(1,6)(7,8)", "(1,5,2)(3,7,8)",
    "(1,7,8,6)(4,5)", "(1,3,7,8)(2,5,4,6)", "(1,5,2,6)(3,7,8,4)", "(1,3,7,8,2,6)(4,5)",
    "(1,3,7,8,5,4,2)", "(2,3,4,8,6,5,7)"};

}  // namespace

TEST_CASE("order doubling: code criterion, lattice criterion and root oracle agree") {
  const BinaryCode h = catalog_code("hamming8");
  int doubling = 0;
  for (const auto& g : brute_force_automorphism_list(h)) {
    const bool by_roots = oracle::doubling_by_roots(h, g);
    CHECK(order_doubling_code(h, g) == by_roots);
    CHECK(order_doubling_lattice(h, g, Flavor::Plain) == by_roots);
    doubling += by_roots;
  }
  CHECK(doubling == 42 + 168 + 42 + 168);
}

TEST_CASE("lift information") {
  const BinaryCode h = catalog_code("hamming8");
  const LiftInfo rep = lift_info(h, Perm::parse("(1,7)(2,4)(3,8)(5,6)", 8), Flavor::Plain, I(8));
  CHECK(rep.doubling);
  CHECK(rep.lift_order == 4);
  REQUIRE(rep.kernel_theta.has_value());
  CHECK(*rep.kernel_theta == catalog_theta("D8", 1, I(8)));
  const LiftInfo nr = lift_info(h, Perm::parse("(1,2)(3,8)(4,7)(5,6)", 8), Flavor::Plain, I(8));
  CHECK_FALSE(nr.doubling);
  CHECK(nr.lift_order == 2);
  CHECK_FALSE(nr.kernel_theta.has_value());
  CHECK_THROWS_AS(lift_info(h, Perm::parse("(1,2)", 8), Flavor::Plain, I(4)), PreconditionError);

  const BinaryCode g = catalog_code("golay24");
  const Perm x = Perm::parse("(1,16)(2,20)(3,22)(4,21)(5,10)(6,17)(7,13)(8,11)(9,15)(12,23)(14,18)(19,24)", 24);
  const LiftInfo leech = lift_info(g, x, Flavor::Super1, I(6));
  CHECK_FALSE(leech.code_criterion.has_value());
  REQUIRE(leech.lattice_criterion.has_value());
}

TEST_CASE("lattice characters") {
  const QSeries e8 = catalog_theta("E8", 1, I(6));
  const QSeries ch = lattice_character(e8, 8);
  CHECK(ch.valuation() == kLead8);
  CHECK(from_lead(ch, kLead8, 4) == oracle::ints({1, 248, 4124, 34752}));
  const QSeries plus = character_plus(e8, 8);
  // (248 - 8) / 2 and (4124 + 28) / 2 from prod (1 + q^n)^{-8} = 1 - 8q + 28q^2 - ...
  CHECK(from_lead(plus, kLead8, 3) == oracle::ints({1, 120, 2076}));
  CHECK_THROWS_AS(character_plus(e8, 0), PreconditionError);
  CHECK_THROWS_AS(character_plus(e8, 12), PreconditionError);
  const QSeries d = d_lattice_character_q2(4, I(6));
  CHECK(d.valuation() == kLead8);
  CHECK(d.coeff(kLead8) == 1);
}

TEST_CASE("cyclic characters") {
  const BinaryCode h = catalog_code("hamming8");
  const CharacterReport triv = character_cyclic(h, Perm::identity(8), Flavor::Plain, I(6));
  CHECK(triv.character == lattice_character(full_lattice_theta(h, I(6)), 8));
  for (const auto& s : kClasses) {
    CAPTURE(s);
    const Perm g = Perm::parse(s, 8);
    const CharacterReport r = character_cyclic(h, g, Flavor::Plain, I(6));
    CHECK(r.lift_order == (oracle::doubling_by_roots(h, g) ? 2 * g.order() : g.order()));
    CHECK(r.per_j.size() == static_cast<std::size_t>(r.lift_order));
    CHECK(r.character.valuation() == kLead8);
    CHECK(r.character.coeff(kLead8) == 1);
    CHECK(r.character.integral_coeffs());
    CHECK(r.character.nonnegative_coeffs());
    if (g.order() % 2) {
      for (int j = 1; j < g.order(); ++j) CHECK(r.per_j[j].second == r.per_j[g.order() - j].second);
    }
    if (!r.doubling) CHECK(character_group(h, PermGroup::cyclic(g), Flavor::Plain, I(6)).character == r.character);
  }
}

TEST_CASE("worked order-doubling example") {
  const BinaryCode h = catalog_code("hamming8");
  const CharacterReport r = character_cyclic(h, Perm::parse("(1,7,8,6)(4,5)", 8), Flavor::Plain, I(7));
  CHECK(r.lift_order == 8);
  CHECK(from_lead(r.character, kLead8, 7) == oracle::ints({1, 38, 550, 4432, 26914, 132760, 567756}));
  CHECK(from_lead(r.per_j[4].second, kLead8, 4) == oracle::ints({1, -8, 28, -64}));
  CHECK(r.annotations.size() == 3);
}

TEST_CASE("group characters refuse order doubling") {
  const BinaryCode h = catalog_code("hamming8");
  CHECK_THROWS_AS(character_group(h, PermGroup::parse("(1,7)(2,4)(3,8)(5,6)", 8), Flavor::Plain, I(5)),
                  PreconditionError);
  CHECK_THROWS_AS(character_group(h, PermGroup::parse("(1,2)", 8), Flavor::Plain, I(5)), PreconditionError);
  const CharacterReport r =
      character_group(h, PermGroup::parse("(1,2,5,3,7,6,4), (2,5,7)(3,4,6)", 8), Flavor::Plain, I(7));
  CHECK(r.lift_order == 21);
  CHECK(from_lead(r.character, kLead8, 4) == oracle::ints({1, 22, 242, 1762}));
}

TEST_CASE("identity verifiers") {
  const BinaryCode h = catalog_code("hamming8");
  const Perm rep = Perm::parse("(1,7)(2,4)(3,8)(5,6)", 8);
  const Perm nr = Perm::parse("(1,2)(3,8)(4,7)(5,6)", 8);
  CHECK(verify_theorem_c1(h, rep, I(7)).status == CheckStatus::Pass);
  CHECK(verify_theorem_c2(h, rep, nr, I(7)).status == CheckStatus::Pass);
  CHECK(verify_theorem_c1(h, Perm::parse("(1,5,2)(3,7,8)", 8), I(7)).status == CheckStatus::NotApplicable);
  for (const auto& r : verify_parity_props(h, rep, nr, I(11))) {
    CAPTURE(r.name);
    CHECK(r.status == CheckStatus::Pass);
  }
  CHECK(verify_charpq(h, PermGroup::parse("(1,2,5,3,7,6,4), (2,5,7)(3,4,6)", 8), I(7)).status ==
        CheckStatus::Pass);
  CHECK(verify_charp2q(h, PermGroup::parse("(3,4,5)(6,8,7), (1,6,8)(2,5,3)", 8), I(7)).status ==
        CheckStatus::Pass);
  CHECK(verify_charpq(h, PermGroup::parse("(1,3,7,8,5,4,2)", 8), I(7)).status == CheckStatus::NotApplicable);
  const auto c16 = d16_plus_code();
  const Perm rep16 = Perm::parse("(1,4)(2,3)(5,7)(6,8)(9,11)(10,12)(13,15)(14,16)", 16);
  const Perm nr16 = Perm::parse("(1,3)(2,4)(5,7)(6,8)(9,11)(10,12)(13,15)(14,16)", 16);
  CHECK(verify_theorem_c2(c16, rep16, nr16, I(7)).status == CheckStatus::Pass);
  const auto diff = compare_series("x", catalog_theta("E8", 1, I(5)), catalog_theta("D8", 1, I(5)));
  CHECK(diff.status == CheckStatus::Fail);
  REQUIRE(diff.first_difference.has_value());
  CHECK(*diff.first_difference == I(1));
  CHECK(to_json(diff)["status"] == "fail");
}
