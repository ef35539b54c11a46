#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <string>
#include <tuple>
#include <vector>

namespace qsym {

/// Sentinel for generators whose family carries no block index.
inline constexpr int kNoBlock = std::numeric_limits<int>::min();

/// One letter of the free *-algebra alphabet. A starred letter is an
/// independent symbol; `slot` places the letter in a tensor factor (0 in the
/// plain algebra, 0/1 in a tensor square, 0/1/2 in a cube).
struct Generator {
  std::string family;
  int block = kNoBlock;
  int row = 0;
  int col = 0;
  bool star = false;
  int slot = 0;

  Generator() = default;
  Generator(std::string f, int r, int c, bool s = false)
      : family(std::move(f)), row(r), col(c), star(s) {}
  Generator(std::string f, int b, int r, int c, bool s)
      : family(std::move(f)), block(b), row(r), col(c), star(s) {}

  Generator starred() const {
    Generator g = *this;
    g.star = !g.star;
    return g;
  }

  Generator unstarred() const {
    Generator g = *this;
    g.star = false;
    return g;
  }

  Generator at_slot(int s) const {
    Generator g = *this;
    g.slot = s;
    return g;
  }

  /// Canonical letter order: tensor slot, then family name, block, position,
  /// starredness. This order is global and deterministic; the rewrite engine's
  /// monomial order is built on top of it.
  friend std::strong_ordering operator<=>(const Generator& a, const Generator& b) {
    if (auto c = a.slot <=> b.slot; c != 0) return c;
    if (auto c = a.family.compare(b.family); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    if (auto c = a.block <=> b.block; c != 0) return c;
    if (auto c = a.row <=> b.row; c != 0) return c;
    if (auto c = a.col <=> b.col; c != 0) return c;
    return (a.star ? 1 : 0) <=> (b.star ? 1 : 0);
  }
  friend bool operator==(const Generator& a, const Generator& b) {
    return (a <=> b) == 0;
  }
};

using Word = std::vector<Generator>;

/// (w)* : reverse the word and star each letter.
inline Word word_star(const Word& w) {
  Word r;
  r.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(it->starred());
  return r;
}

/// Degree-lexicographic order: by length first, then letterwise.
struct DegLexLess {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    for (size_t i = 0; i < a.size(); ++i) {
      auto c = a[i] <=> b[i];
      if (c != 0) return c < 0;
    }
    return false;
  }
};

}  // namespace qsym
