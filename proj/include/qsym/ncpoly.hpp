#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>

#include "qsym/generator.hpp"
#include "qsym/scalar.hpp"

namespace qsym {

/// Element of the free *-algebra over Q(i): a finite Scalar combination of
/// words. Zero coefficients are never stored. Multiplication concatenates
/// words; tensor-slot normalization is a separate explicit step.
class NcPoly {
 public:
  using Terms = std::map<Word, Scalar, DegLexLess>;

  NcPoly() = default;
  explicit NcPoly(const Scalar& c) { add_term(Word{}, c); }
  explicit NcPoly(const Generator& g) { add_term(Word{g}, Scalar::one()); }
  explicit NcPoly(const Word& w, const Scalar& c = Scalar::one()) { add_term(w, c); }

  static NcPoly zero() { return NcPoly(); }
  static NcPoly one() { return NcPoly(Scalar::one()); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Max word length; 0 for constants and for the zero polynomial.
  size_t degree() const {
    size_t d = 0;
    for (const auto& [w, c] : terms_) d = std::max(d, w.size());
    return d;
  }

  void add_term(const Word& w, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
      terms_.emplace(w, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  NcPoly& operator+=(const NcPoly& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }
  NcPoly& operator-=(const NcPoly& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
  }

  friend NcPoly operator+(NcPoly a, const NcPoly& b) { a += b; return a; }
  friend NcPoly operator-(NcPoly a, const NcPoly& b) { a -= b; return a; }
  friend NcPoly operator-(const NcPoly& a) { return Scalar(-1) * a; }

  friend NcPoly operator*(const Scalar& c, const NcPoly& p) {
    NcPoly r;
    if (c.is_zero()) return r;
    for (const auto& [w, k] : p.terms_) r.terms_.emplace(w, c * k);
    return r;
  }

  friend NcPoly operator*(const NcPoly& a, const NcPoly& b) {
    NcPoly r;
    for (const auto& [wa, ca] : a.terms_)
      for (const auto& [wb, cb] : b.terms_) {
        Word w = wa;
        w.insert(w.end(), wb.begin(), wb.end());
        r.add_term(w, ca * cb);
      }
    return r;
  }

  friend bool operator==(const NcPoly& a, const NcPoly& b) { return a.terms_ == b.terms_; }

 private:
  Terms terms_;
};

/// Antilinear involution: (c w)* = conj(c) w*.
inline NcPoly star(const NcPoly& p) {
  NcPoly r;
  for (const auto& [w, c] : p.terms()) r.add_term(word_star(w), c.conj());
  return r;
}

inline NcPoly gen(const std::string& family, int row, int col, bool starred = false) {
  return NcPoly(Generator(family, row, col, starred));
}

/// Stable-sorts every word by tensor slot. Legal exactly because distinct
/// slots commute; order within a slot is preserved.
inline NcPoly normalize_slots(const NcPoly& p) {
  NcPoly r;
  for (const auto& [w, c] : p.terms()) {
    Word s = w;
    std::stable_sort(s.begin(), s.end(),
                     [](const Generator& a, const Generator& b) { return a.slot < b.slot; });
    r.add_term(s, c);
  }
  return r;
}

/// Star in a tensor power: (x (x) y)* = x* (x) y*. Plain star reverses the
/// whole word, so the slot order must be restored afterwards.
inline NcPoly tensor_star(const NcPoly& p) { return normalize_slots(star(p)); }

/// Relabels tensor slots letterwise.
template <typename Fn>
NcPoly map_slots(const NcPoly& p, Fn&& fn) {
  NcPoly r;
  for (const auto& [w, c] : p.terms()) {
    Word m = w;
    for (Generator& g : m) g.slot = fn(g.slot);
    r.add_term(m, c);
  }
  return r;
}

/// Algebra-map extension of a generator assignment. Keys are unstarred
/// slot-0 generators; a starred letter maps to star(image) (the extension is
/// automatically a *-morphism), and a letter at slot k maps to its image
/// relabeled into slot k (the extension acts factorwise on tensor words).
inline NcPoly substitute(const NcPoly& p, const std::map<Generator, NcPoly>& images) {
  NcPoly r;
  for (const auto& [w, c] : p.terms()) {
    NcPoly acc(c);
    for (const Generator& g : w) {
      auto it = images.find(g.unstarred().at_slot(0));
      if (it == images.end())
        throw std::out_of_range("substitute: no image for generator family " + g.family);
      NcPoly img = g.star ? star(it->second) : it->second;
      if (g.slot != 0) img = map_slots(img, [&](int) { return g.slot; });
      acc = acc * img;
      if (acc.is_zero()) break;
    }
    r += acc;
  }
  return r;
}

///// Evaluates under a one-dimensional representation (an algebra character):
/// each letter becomes a scalar, starred letters the conjugate.
inline Scalar apply_character(const NcPoly& p, const std::map<Generator, Scalar>& chars) {
  Scalar total = Scalar::zero();
  for (const auto& [w, c] : p.terms()) {
    Scalar prod = c;
    for (const Generator& g : w) {
      auto it = chars.find(g.unstarred().at_slot(0));
      if (it == chars.end())
        throw std::out_of_range("apply_character: no value for generator family " + g.family);
      prod *= g.star ? it->second.conj() : it->second;
    }
    total += prod;
  }
  return total;
}

}  // namespace qsym
