#include "thetaforge/binary_code.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "thetaforge/qseries.hpp"

namespace thetaforge {

namespace {

constexpr int kEnumerationCap = 24;

// Hamming matrix as printed in the source; Golay in (I | B) form with the
// coordinate labelling under which the standard generator sets act.
const std::vector<std::string> kHamming8 = {
    "10000111",
    "01001011",
    "00101101",
    "00011110",
};

const std::vector<std::string> kGolay24 = {
    "100000000000101011100011", "010000000000111110010010", "001000000000110100101011",
    "000100000000110001110110", "000010000000110011011001", "000001000000011001101101",
    "000000100000001100110111", "000000010000101101111000", "000000001000010110111100",
    "000000000100001011011110", "000000000010101110001101", "000000000001010111000111",
};

}  // namespace

BinaryCode::BinaryCode(int length, std::vector<Codeword> rows) : n_(length) {
  if (length < 0 || length > 64) throw PreconditionError("code length must be in 0..64");
  for (Codeword r : rows) {
    if (length < 64 && (r >> length) != 0) throw PreconditionError("row exceeds code length");
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if ((r >> pivots_[i]) & 1) r ^= basis_[i];
    if (r == 0) continue;
    const int p = __builtin_ctzll(r);
    for (auto& b : basis_)
      if ((b >> p) & 1) b ^= r;
    basis_.push_back(r);
    pivots_.push_back(p);
  }
  std::vector<std::size_t> order(basis_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return pivots_[a] < pivots_[b]; });
  std::vector<Codeword> b2;
  std::vector<int> p2;
  for (auto i : order) {
    b2.push_back(basis_[i]);
    p2.push_back(pivots_[i]);
  }
  basis_ = std::move(b2);
  pivots_ = std::move(p2);
}

BinaryCode BinaryCode::from_generator_rows(const std::vector<std::string>& rows) {
  if (rows.empty()) throw ParseError("no generator rows");
  const std::size_t n = rows.front().size();
  if (n == 0) throw ParseError("zero-length generator row");
  if (n > 64) throw ParseError("code length exceeds 64");
  std::vector<Codeword> masks;
  for (const auto& row : rows) {
    if (row.size() != n) throw ParseError("inconsistent row lengths");
    Codeword m = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (row[i] == '1') m |= Mask{1} << i;
      else if (row[i] != '0') throw ParseError(std::string("bad character '") + row[i] + "' in row " + row);
    }
    masks.push_back(m);
  }
  return BinaryCode(static_cast<int>(n), std::move(masks));
}

bool BinaryCode::contains(Codeword c) const {
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if ((c >> pivots_[i]) & 1) c ^= basis_[i];
  return c == 0;
}

std::vector<Codeword> BinaryCode::enumerate() const {
  if (dimension() > kEnumerationCap)
    throw PreconditionError("enumeration cap exceeded: dim " + std::to_string(dimension()));
  const std::uint64_t total = std::uint64_t{1} << dimension();
  std::vector<Codeword> out;
  out.reserve(total);
  Codeword c = 0;
  out.push_back(c);
  for (std::uint64_t k = 1; k < total; ++k) {
    c ^= basis_[__builtin_ctzll(k)];  // Gray code walk
    out.push_back(c);
  }
  return out;
}

WeightEnumerator BinaryCode::weight_enumerator() const {
  WeightEnumerator w;
  w.counts.assign(n_ + 1, 0);
  for (Codeword c : enumerate()) ++w.counts[weight(c)];
  return w;
}

CodeChecks BinaryCode::checks() const {
  CodeChecks r;
  r.doubly_even = true;
  for (Codeword c : enumerate()) {
    const int w = weight(c);
    if (w % 4 != 0) r.doubly_even = false;
    if (w > 0 && (r.min_weight == 0 || w < r.min_weight)) r.min_weight = w;
  }
  bool self_orthogonal = true;
  for (Codeword a : basis_)
    for (Codeword b : basis_)
      if (weight(a & b) % 2 != 0) self_orthogonal = false;
  r.self_dual = self_orthogonal && 2 * dimension() == n_;
  return r;
}

bool BinaryCode::is_automorphism(const Perm& p) const {
  if (p.degree() != n_) return false;
  for (Codeword b : basis_)
    if (!contains(p.apply(b))) return false;
  return true;
}

BinaryCode BinaryCode::fixed_subcode(const PermGroup& group) const {
  if (group.degree() != n_) throw PreconditionError("group degree differs from code length");
  for (const auto& g : group.generators())
    if (!is_automorphism(g))
      throw PreconditionError("generator " + g.to_string() + " is not an automorphism of the code");
  // Kernel of x -> (g(x) + x) over all generators, computed in coordinates of the basis.
  const int k = dimension();
  std::vector<std::vector<Codeword>> images(k);
  for (int i = 0; i < k; ++i)
    for (const auto& g : group.generators()) images[i].push_back(g.apply(basis_[i]) ^ basis_[i]);
  // Row-reduce the matrix whose row i is the concatenated images of basis_[i],
  // tracking combinations; rows that reduce to zero span the kernel.
  struct Row {
    std::vector<Codeword> img;
    Codeword combo;
  };
  std::vector<Row> rows;
  for (int i = 0; i < k; ++i) rows.push_back({images[i], basis_[i]});
  std::vector<Codeword> kernel;
  std::vector<Row> pivots;
  std::vector<std::pair<std::size_t, int>> pivot_pos;
  for (auto& r : rows) {
    for (std::size_t p = 0; p < pivots.size(); ++p) {
      auto [slot, bit] = pivot_pos[p];
      if ((r.img[slot] >> bit) & 1) {
        for (std::size_t s = 0; s < r.img.size(); ++s) r.img[s] ^= pivots[p].img[s];
        r.combo ^= pivots[p].combo;
      }
    }
    std::size_t slot = 0;
    while (slot < r.img.size() && r.img[slot] == 0) ++slot;
    if (slot == r.img.size()) {
      kernel.push_back(r.combo);
    } else {
      pivot_pos.push_back({slot, __builtin_ctzll(r.img[slot])});
      pivots.push_back(r);
    }
  }
  return BinaryCode(n_, std::move(kernel));
}

BinaryCode BinaryCode::direct_sum(const BinaryCode& other) const {
  if (n_ + other.n_ > 64) throw PreconditionError("direct sum exceeds length 64");
  std::vector<Codeword> rows = basis_;
  for (Codeword c : other.basis_) rows.push_back(c << n_);
  return BinaryCode(n_ + other.n_, std::move(rows));
}

std::vector<std::string> BinaryCode::rows_as_strings() const {
  std::vector<std::string> out;
  for (Codeword c : basis_) {
    std::string s(n_, '0');
    for (int i = 0; i < n_; ++i)
      if ((c >> i) & 1) s[i] = '1';
    out.push_back(s);
  }
  return out;
}

std::string codeword_to_string(Codeword c, int n) {
  std::string s = "{";
  for (int i = 0; i < n; ++i) {
    if (!((c >> i) & 1)) continue;
    if (s.size() > 1) s += ',';
    s += std::to_string(i + 1);
  }
  return s + "}";
}

BinaryCode parse_code_text(std::string_view text) {
  std::vector<std::string> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::string row;
    for (char ch : line)
      if (!std::isspace(static_cast<unsigned char>(ch))) row += ch;
    if (!row.empty()) rows.push_back(row);
  }
  return BinaryCode::from_generator_rows(rows);
}

BinaryCode load_code_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open code file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_code_text(ss.str());
}

BinaryCode catalog_code(std::string_view name) {
  auto checked = [](BinaryCode c, int min_weight) {
    const auto ch = c.checks();
    if (!ch.doubly_even || !ch.self_dual || ch.min_weight != min_weight)
      throw std::logic_error("catalog code failed its load-time checks");
    return c;
  };
  if (name == "hamming8") return checked(BinaryCode::from_generator_rows(kHamming8), 4);
  if (name == "golay24") return checked(BinaryCode::from_generator_rows(kGolay24), 8);
  if (name == "hamming8+hamming8") {
    const auto h = BinaryCode::from_generator_rows(kHamming8);
    return checked(h.direct_sum(h), 4);
  }
  throw PreconditionError("unknown catalog code '" + std::string(name) + "'");
}

BinaryCode resolve_code(const std::string& source) {
  if (source == "hamming8" || source == "golay24" || source == "hamming8+hamming8")
    return catalog_code(source);
  return load_code_file(source);
}

}  // namespace thetaforge
