#include "thetaforge/permgrp.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "thetaforge/binary_code.hpp"
#include "thetaforge/qseries.hpp"

namespace thetaforge {

int OrbitType::degree() const {
  int n = 0;
  for (auto [t, r] : counts) n += t * r;
  return n;
}

std::string OrbitType::to_string() const {
  std::string s;
  for (auto [t, r] : counts) {
    if (!s.empty()) s += ' ';
    s += std::to_string(t) + "^" + std::to_string(r);
  }
  return s;
}

OrbitType parse_orbit_type(std::string_view text) {
  OrbitType ot;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    const auto caret = tok.find('^');
    try {
      const int t = std::stoi(tok.substr(0, caret));
      const int r = caret == std::string::npos ? 1 : std::stoi(tok.substr(caret + 1));
      if (t < 1 || r < 1) throw ParseError("");
      ot.counts[t] += r;
    } catch (const std::exception&) {
      throw ParseError("bad orbit type token '" + tok + "'");
    }
  }
  return ot;
}

Perm::Perm(std::vector<int> images) : images_(std::move(images)) {
  std::vector<char> seen(images_.size(), 0);
  for (int x : images_) {
    if (x < 0 || x >= degree() || seen[x]) throw PreconditionError("images do not form a permutation");
    seen[x] = 1;
  }
}

Perm Perm::identity(int n) {
  std::vector<int> im(n);
  std::iota(im.begin(), im.end(), 0);
  return Perm(std::move(im));
}

Perm Perm::parse(std::string_view text, int n) {
  std::vector<int> im(n);
  std::iota(im.begin(), im.end(), 0);
  std::vector<char> used(n, 0);
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto fail = [&](const std::string& why) -> ParseError {
    return ParseError("permutation '" + std::string(text) + "': " + why);
  };
  auto token_at = [&](std::size_t k) {
    std::size_t e = k;
    while (e < text.size() && !std::isspace(static_cast<unsigned char>(text[e])) && text[e] != ',' &&
           text[e] != '(' && text[e] != ')')
      ++e;
    return "'" + std::string(text.substr(k, std::max<std::size_t>(e - k, 1))) + "'";
  };
  skip_ws();
  if (i == text.size()) throw fail("empty text");
  while (i < text.size()) {
    if (text[i] != '(') throw fail("unexpected token " + token_at(i) + " at offset " + std::to_string(i) + ", expected '('");
    ++i;
    std::vector<int> cycle;
    for (;;) {
      skip_ws();
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j == i) throw fail("unexpected token " + token_at(i) + " at offset " + std::to_string(i));
      if (j - i > 6) throw fail("point " + std::string(text.substr(i, j - i)) + " outside 1.." + std::to_string(n));
      const int v = std::stoi(std::string(text.substr(i, j - i)));
      if (v < 1 || v > n) throw fail("point " + std::to_string(v) + " outside 1.." + std::to_string(n));
      if (used[v - 1]) throw fail("point " + std::to_string(v) + " repeated");
      used[v - 1] = 1;
      cycle.push_back(v - 1);
      i = j;
      skip_ws();
      if (i < text.size() && text[i] == ',') ++i;
      else if (i >= text.size() || text[i] != ')') throw fail("unterminated cycle");
    }
    for (std::size_t k = 0; k < cycle.size(); ++k) im[cycle[k]] = cycle[(k + 1) % cycle.size()];
    skip_ws();
  }
  return Perm(std::move(im));
}

Perm Perm::operator*(const Perm& rhs) const {
  if (rhs.degree() != degree()) throw PreconditionError("degree mismatch in composition");
  std::vector<int> im(images_.size());
  for (std::size_t i = 0; i < im.size(); ++i) im[i] = images_[rhs.images_[i]];
  return Perm(std::move(im));
}

Perm Perm::inverse() const {
  std::vector<int> im(images_.size());
  for (std::size_t i = 0; i < im.size(); ++i) im[images_[i]] = static_cast<int>(i);
  return Perm(std::move(im));
}

Perm Perm::pow(long long j) const {
  const int m = order();
  long long e = ((j % m) + m) % m;
  Perm result = identity(degree());
  Perm base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

bool Perm::is_identity() const {
  for (int i = 0; i < degree(); ++i)
    if (images_[i] != i) return false;
  return true;
}

int Perm::order() const {
  long long m = 1;
  for (const auto& c : cycles()) m = std::lcm(m, static_cast<long long>(c.size()));
  return static_cast<int>(m);
}

std::vector<std::vector<int>> Perm::cycles() const {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(images_.size(), 0);
  for (int i = 0; i < degree(); ++i) {
    if (seen[i]) continue;
    std::vector<int> c;
    for (int x = i; !seen[x]; x = images_[x]) {
      seen[x] = 1;
      c.push_back(x);
    }
    out.push_back(std::move(c));
  }
  return out;
}

OrbitType Perm::cycle_type() const {
  OrbitType ot;
  for (const auto& c : cycles()) ++ot.counts[static_cast<int>(c.size())];
  return ot;
}

OrbitType cycle_type(const Perm& p) { return p.cycle_type(); }

Mask Perm::apply(Mask set) const {
  Mask out = 0;
  while (set) {
    const int i = __builtin_ctzll(set);
    set &= set - 1;
    out |= Mask{1} << images_[i];
  }
  return out;
}

std::string Perm::to_string() const {
  std::string s;
  for (const auto& c : cycles()) {
    if (c.size() < 2) continue;
    s += '(';
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (k) s += ',';
      s += std::to_string(c[k] + 1);
    }
    s += ')';
  }
  return s.empty() ? "()" : s;
}

std::vector<std::string> split_generators(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  auto flush = [&] {
    const auto b = cur.find_first_not_of(" \t\r\n");
    if (b != std::string::npos) out.push_back(cur.substr(b, cur.find_last_not_of(" \t\r\n") - b + 1));
    cur.clear();
  };
  for (char ch : text) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (depth == 0 && (ch == ',' || ch == ';')) {
      flush();
      continue;
    }
    cur += ch;
  }
  flush();
  if (depth != 0) throw ParseError("unbalanced parentheses in '" + std::string(text) + "'");
  return out;
}

PermGroup::PermGroup(int degree, std::vector<Perm> generators)
    : degree_(degree), generators_(std::move(generators)) {
  std::vector<int> parent(degree);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& g : generators_) {
    if (g.degree() != degree) throw PreconditionError("generator degree mismatch");
    for (int i = 0; i < degree; ++i) {
      const int a = find(i), b = find(g(i));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  orbit_of_.assign(degree, -1);
  for (int i = 0; i < degree; ++i) {
    const int r = find(i);
    if (orbit_of_[r] < 0) {
      orbit_of_[r] = static_cast<int>(orbits_.size());
      orbits_.emplace_back();
    }
    orbit_of_[i] = orbit_of_[r];
    orbits_[orbit_of_[i]].push_back(i);
  }
}

PermGroup PermGroup::parse(std::string_view text, int degree) {
  std::vector<Perm> gens;
  for (const auto& s : split_generators(text)) gens.push_back(Perm::parse(s, degree));
  return PermGroup(degree, std::move(gens));
}

OrbitType PermGroup::orbit_type() const {
  OrbitType ot;
  for (const auto& o : orbits_) ++ot.counts[static_cast<int>(o.size())];
  return ot;
}

std::vector<Perm> PermGroup::elements(std::size_t cap) const {
  std::set<Perm> seen;
  std::vector<Perm> out;
  std::queue<Perm> todo;
  const Perm id = Perm::identity(degree_);
  seen.insert(id);
  out.push_back(id);
  todo.push(id);
  while (!todo.empty()) {
    const Perm p = todo.front();
    todo.pop();
    for (const auto& g : generators_) {
      Perm q = g * p;
      if (seen.insert(q).second) {
        if (out.size() >= cap)
          throw PreconditionError("group closure exceeds cap of " + std::to_string(cap) + " elements");
        out.push_back(q);
        todo.push(std::move(q));
      }
    }
  }
  return out;
}

std::string PermGroup::to_string() const {
  if (generators_.empty()) return "<()>";
  std::string s = "<";
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (i) s += ", ";
    s += generators_[i].to_string();
  }
  return s + ">";
}

std::vector<Perm> brute_force_automorphism_list(const BinaryCode& code) {
  const int n = code.length();
  if (n > 8) throw PreconditionError("brute-force automorphisms are limited to N <= 8");
  std::vector<int> im(n);
  std::iota(im.begin(), im.end(), 0);
  std::vector<Perm> out;
  do {
    Perm p(im);
    if (code.is_automorphism(p)) out.push_back(std::move(p));
  } while (std::next_permutation(im.begin(), im.end()));
  return out;
}

PermGroup brute_force_automorphisms(const BinaryCode& code) {
  return PermGroup(code.length(), brute_force_automorphism_list(code));
}

}  // namespace thetaforge
