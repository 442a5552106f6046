#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "thetaforge/binary_code.hpp"
#include "thetaforge/permgrp.hpp"
#include "thetaforge/qseries.hpp"

using namespace thetaforge;

TEST_CASE("parse and print") {
  const Perm g = Perm::parse("(2,8,4,6)(3,5)", 8);
  CHECK(g.to_string() == "(2,8,4,6)(3,5)");
  CHECK(Perm::parse("(3,5)(6,2,8,4)", 8).images() == g.images());
  CHECK(Perm::parse("()", 8).is_identity());
  CHECK(Perm::parse(" (1, 2) ", 4).to_string() == "(1,2)");
  CHECK_THROWS_AS(Perm::parse("(1,9)", 8), ParseError);
  CHECK_THROWS_AS(Perm::parse("(1,2,1)", 8), ParseError);
  CHECK_THROWS_AS(Perm::parse("(1,2", 8), ParseError);
  CHECK_THROWS_AS(Perm::parse("", 8), ParseError);
  try {
    Perm::parse("(2,8,x)", 8);
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("'x'") != std::string::npos);
  }
  CHECK(split_generators("(1,2)(3,4), (5,6,7)") == std::vector<std::string>{"(1,2)(3,4)", "(5,6,7)"});
}

TEST_CASE("cycle types and orders") {
  const Perm g = Perm::parse("(2,8,4,6)(3,5)", 8);
  CHECK(g.cycle_type().to_string() == "1^2 2^1 4^1");
  CHECK(g.order() == 4);
  CHECK(g.pow(2).cycle_type().to_string() == "1^4 2^2");
  CHECK(g.pow(0).is_identity());
  CHECK(g.pow(-1) == g.inverse());
  CHECK(Perm::identity(8).cycle_type().to_string() == "1^8");
  CHECK(Perm::parse("(1,2,3,4,5,6,7,8)", 8).cycle_type().to_string() == "8^1");
  CHECK(parse_orbit_type("2^2 4^1").degree() == 8);
  CHECK(parse_orbit_type("1^2 2^1 4^1") == g.cycle_type());
}

TEST_CASE("orbits") {
  const PermGroup g = PermGroup::parse("(4,6)(5,7), (4,7)(5,6), (1,3)(2,8)", 8);
  CHECK(g.orbit_type().to_string() == "2^2 4^1");
  CHECK(g.orbits().size() == 3);
  CHECK(PermGroup::trivial(8).orbit_type().to_string() == "1^8");
  CHECK(PermGroup::parse("(1,2,3,4,5,6,7,8)", 8).orbits().size() == 1);
}

TEST_CASE("element closure") {
  const PermGroup h = PermGroup::parse("(1,2,5,3,7,6,4), (2,5,7)(3,4,6)", 8);
  const auto els = h.elements();
  CHECK(els.size() == 21);
  std::map<int, int> orders;
  for (const auto& e : els) orders[e.order()]++;
  CHECK(orders == std::map<int, int>{{1, 1}, {3, 14}, {7, 6}});
  CHECK(PermGroup::trivial(8).elements().size() == 1);
  CHECK_THROWS_AS(PermGroup::parse("(1,2), (1,2,3,4,5,6,7,8)", 8).elements(100), PreconditionError);
}

TEST_CASE("orbit type of a cyclic group is the cycle type") {
  const auto auts = brute_force_automorphism_list(catalog_code("hamming8"));
  for (const auto& g : auts) CHECK(PermGroup::cyclic(g).orbit_type() == g.cycle_type());
}

TEST_CASE("group order divides N! and is divisible by generator orders; orbits refine") {
  const auto auts = brute_force_automorphism_list(catalog_code("hamming8"));
  std::mt19937 rng(11);
  std::uniform_int_distribution<std::size_t> pick(0, auts.size() - 1);
  for (int trial = 0; trial < 40; ++trial) {
    const Perm a = auts[pick(rng)], b = auts[pick(rng)];
    const PermGroup g(8, {a, b});
    const auto n = static_cast<long>(g.elements(2000).size());
    CHECK(40320 % n == 0);
    CHECK(n % a.order() == 0);
    CHECK(n % b.order() == 0);
    const PermGroup sub = PermGroup::cyclic(a * b);
    for (const auto& orbit : sub.orbits())
      for (int p : orbit) CHECK(g.orbit_of()[p] == g.orbit_of()[orbit.front()]);
  }
}

TEST_CASE("brute-force automorphisms") {
  const BinaryCode h = catalog_code("hamming8");
  const PermGroup aut = brute_force_automorphisms(h);
  CHECK(aut.elements(2000).size() == 1344);
  CHECK(h.is_automorphism(Perm::parse("(2,8,4,6)(3,5)", 8)));
  CHECK(brute_force_automorphism_list(BinaryCode(8, {})).size() == 40320);
  CHECK_THROWS_AS(brute_force_automorphisms(catalog_code("golay24")), PreconditionError);
}
