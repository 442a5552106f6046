#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace thetaforge {

using Mask = std::uint64_t;

// Multiset {t^{r_t}}: size -> number of orbits (or cycles) of that size.
struct OrbitType {
  std::map<int, int> counts;

  int degree() const;
  std::string to_string() const;  // e.g. "1^2 2^1 4^1"
  auto operator<=>(const OrbitType&) const = default;
};

OrbitType parse_orbit_type(std::string_view text);

// Permutation of {0..N-1}; text form uses 1-based cycles.
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<int> images);
  static Perm identity(int n);
  static Perm parse(std::string_view text, int n);  // "(2,8,4,6)(3,5)" or "()"

  int degree() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[i]; }
  const std::vector<int>& images() const { return images_; }

  Perm operator*(const Perm& rhs) const;  // (p*q)(i) = p(q(i))
  Perm inverse() const;
  Perm pow(long long j) const;
  bool is_identity() const;
  int order() const;
  std::vector<std::vector<int>> cycles() const;
  OrbitType cycle_type() const;
  Mask apply(Mask set) const;

  std::string to_string() const;
  auto operator<=>(const Perm&) const = default;

 private:
  std::vector<int> images_;
};

OrbitType cycle_type(const Perm& p);

class PermGroup {
 public:
  PermGroup() = default;
  PermGroup(int degree, std::vector<Perm> generators);
  static PermGroup trivial(int degree) { return PermGroup(degree, {}); }
  static PermGroup cyclic(const Perm& g) { return PermGroup(g.degree(), {g}); }
  // Generators separated by ';' or by top-level commas: "(1,2)(3,4), (1,3)(2,4)".
  static PermGroup parse(std::string_view text, int degree);

  int degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return generators_; }
  const std::vector<std::vector<int>>& orbits() const { return orbits_; }
  const std::vector<int>& orbit_of() const { return orbit_of_; }
  OrbitType orbit_type() const;

  std::vector<Perm> elements(std::size_t cap = 1000000) const;
  std::string to_string() const;

 private:
  int degree_ = 0;
  std::vector<Perm> generators_;
  std::vector<std::vector<int>> orbits_;
  std::vector<int> orbit_of_;
};

std::vector<std::string> split_generators(std::string_view text);

class BinaryCode;
PermGroup brute_force_automorphisms(const BinaryCode& code);
std::vector<Perm> brute_force_automorphism_list(const BinaryCode& code);

}  // namespace thetaforge
