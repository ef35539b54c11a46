#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsym/matrix.hpp"
#include "qsym/ncpoly.hpp"

namespace qsym {

struct GeneratorFamily {
  std::string name;
  int block = kNoBlock;
  int rows = 1;
  int cols = 1;

  friend bool operator==(const GeneratorFamily& a, const GeneratorFamily& b) {
    return a.name == b.name && a.block == b.block && a.rows == b.rows && a.cols == b.cols;
  }
};

/// A *-algebra presentation with coalgebra data: generator families, relation
/// polynomials (each understood as = 0), and the comultiplication / counit /
/// antipode tables on generators.
///
/// comul images live in tensor slots {0,1}; keys are unstarred (Delta is a
/// *-morphism, so starred images are derived). The antipode table carries
/// BOTH unstarred and starred keys: S is only an antihomomorphism and its
/// value on starred letters is presentation-specific, never derived.
struct Presentation {
  std::string name;
  std::vector<GeneratorFamily> families;
  std::vector<NcPoly> relations;
  std::map<Generator, NcPoly> comul;
  std::map<Generator, Scalar> counit;
  std::map<Generator, NcPoly> antipode;

  /// All letters, canonically sorted. With stars: each letter and its star.
  std::vector<Generator> alphabet(bool include_starred = true) const {
    std::set<Generator> out;
    for (const GeneratorFamily& f : families)
      for (int r = 0; r < f.rows; ++r)
        for (int c = 0; c < f.cols; ++c) {
          Generator g(f.name, r, c);
          g.block = f.block;
          out.insert(g);
          if (include_starred) out.insert(g.starred());
        }
    return {out.begin(), out.end()};
  }

  const GeneratorFamily* find_family(const std::string& fname, int block) const {
    for (const GeneratorFamily& f : families)
      if (f.name == fname && f.block == block) return &f;
    return nullptr;
  }
};

/// Installs a d x d family whose matrix is multiplicative:
/// Delta(u_ij) = sum_k u_ik (x) u_kj, eps(u_ij) = delta_ij.
/// The antipode is left to the caller (it depends on the relations).
inline GeneratorFamily& add_multiplicative_family(Presentation& p, const std::string& name,
                                                  int d, int block = kNoBlock) {
  if (p.find_family(name, block))
    throw std::invalid_argument("duplicate generator family: " + name);
  p.families.push_back(GeneratorFamily{name, block, d, d});
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Generator g(name, i, j);
      g.block = block;
      NcPoly img;
      for (int k = 0; k < d; ++k) {
        Generator a(name, i, k), b(name, k, j);
        a.block = block;
        b.block = block;
        img += NcPoly(Word{a.at_slot(0), b.at_slot(1)});
      }
      p.comul.emplace(g, std::move(img));
      p.counit.emplace(g, i == j ? Scalar::one() : Scalar::zero());
    }
  return p.families.back();
}

/// Extends Delta multiplicatively from the generator table to any element.
/// Input letters must be at slot 0; the result is slot-normalized with
/// factors in slots {0,1}.
inline NcPoly comul_apply(const Presentation& p, const NcPoly& x) {
  NcPoly total;
  for (const auto& [w, c] : x.terms()) {
    NcPoly acc(c);
    for (const Generator& g : w) {
      auto it = p.comul.find(g.unstarred());
      if (it == p.comul.end())
        throw std::out_of_range("comul_apply: no image for " + g.family);
      acc = acc * (g.star ? star(it->second) : it->second);
      if (acc.is_zero()) break;
    }
    total += acc;
  }
  return normalize_slots(total);
}

inline Scalar counit_apply(const Presentation& p, const NcPoly& x) {
  return apply_character(x, p.counit);
}

/// Extends S antimultiplicatively: S(g1 ... gk) = S(gk) ... S(g1).
/// Starred letters are looked up verbatim in the antipode table.
inline NcPoly antipode_apply(const Presentation& p, const NcPoly& x) {
  NcPoly total;
  for (const auto& [w, c] : x.terms()) {
    NcPoly acc(c);  // S is linear (only antimultiplicative)
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      auto img = p.antipode.find(*it);
      if (img == p.antipode.end())
        throw std::out_of_range("antipode_apply: no image for " + it->family);
      acc = acc * img->second;
      if (acc.is_zero()) break;
    }
    total += acc;
  }
  return total;
}

/// Word reversal, the canonical antiisomorphism onto the opposite algebra.
/// op maps the relation ideal onto the opposite presentation's ideal.
inline NcPoly op(const NcPoly& x) {
  NcPoly r;
  for (const auto& [w, c] : x.terms()) r.add_term(Word(w.rbegin(), w.rend()), c);
  return r;
}

/// Exact termwise coassociativity on every generator:
/// (Delta (x) id) Delta(g) == (id (x) Delta) Delta(g) in slots {0,1,2}.
/// No relations are used; multiplicative families satisfy this on the nose.
inline bool check_coassociativity(const Presentation& p, std::string* witness = nullptr) {
  for (const auto& [g, dg] : p.comul) {
    NcPoly lhs, rhs;
    for (const auto& [w, c] : dg.terms()) {
      NcPoly accl(c), accr(c);
      for (const Generator& l : w) {
        if (l.slot == 0) {
          auto it = p.comul.find(l.unstarred().at_slot(0));
          if (it == p.comul.end()) throw std::out_of_range("comul table incomplete");
          NcPoly img = l.star ? star(it->second) : it->second;
          accl = accl * img;
          accr = accr * NcPoly(l);
        } else {
          accl = accl * NcPoly(l.at_slot(2));
          auto it = p.comul.find(l.unstarred().at_slot(0));
          if (it == p.comul.end()) throw std::out_of_range("comul table incomplete");
          NcPoly img = l.star ? star(it->second) : it->second;
          accr = accr * map_slots(img, [](int s) { return s + 1; });
        }
      }
      lhs += accl;
      rhs += accr;
    }
    if (normalize_slots(lhs) != normalize_slots(rhs)) {
      if (witness) *witness = "coassociativity fails on " + g.family;
      return false;
    }
  }
  return true;
}

/// (eps (x) id) Delta(g) = g = (id (x) eps) Delta(g), exact.
inline bool check_counit_law(const Presentation& p, std::string* witness = nullptr) {
  for (const auto& [g, dg] : p.comul) {
    NcPoly left, right;
    for (const auto& [w, c] : dg.terms()) {
      Scalar lc = c, rc = c;
      Word lw, rw;
      for (const Generator& l : w) {
        Scalar e;
        if (auto it = p.counit.find(l.unstarred().at_slot(0)); it != p.counit.end())
          e = l.star ? it->second.conj() : it->second;
        else
          throw std::out_of_range("counit table incomplete");
        if (l.slot == 0) {
          lc *= e;
          rw.push_back(l);
        } else {
          rc *= e;
          lw.push_back(l.at_slot(0));
        }
      }
      left.add_term(lw, lc);
      Word rw0 = rw;  // slot-0 copy for comparison
      right.add_term(rw0, rc);
    }
    if (left != NcPoly(g) || right != NcPoly(g)) {
      if (witness) *witness = "counit law fails on " + g.family;
      return false;
    }
  }
  return true;
}

/// Free product: disjoint union of families, relations, and tables.
inline Presentation free_product(const std::vector<Presentation>& parts) {
  Presentation out;
  out.name = "free_product";
  for (const Presentation& p : parts) {
    for (const GeneratorFamily& f : p.families) {
      if (out.find_family(f.name, f.block))
        throw std::invalid_argument("free_product: family collision: " + f.name);
      out.families.push_back(f);
    }
    out.relations.insert(out.relations.end(), p.relations.begin(), p.relations.end());
    out.comul.insert(p.comul.begin(), p.comul.end());
    out.counit.insert(p.counit.begin(), p.counit.end());
    out.antipode.insert(p.antipode.begin(), p.antipode.end());
  }
  return out;
}

/// Tensor product: union of families plus commutation of every letter of one
/// factor with every letter of the other. Coalgebra tables merge unchanged
/// (each factor's Delta formula is read inside the product).
inline Presentation tensor_product(const Presentation& a, const Presentation& b) {
  Presentation out = free_product({a, b});
  out.name = a.name + "(x)" + b.name;
  for (const Generator& ga : a.alphabet(true))
    for (const Generator& gb : b.alphabet(true)) {
      NcPoly comm;
      comm.add_term(Word{ga, gb}, Scalar::one());
      comm.add_term(Word{gb, ga}, Scalar(-1));
      out.relations.push_back(std::move(comm));
    }
  return out;
}

/// Universal unitary-with-twist presentation on a positive matrix s:
/// u unitary and u^t s conj(u) s^-1 = s conj(u) s^-1 u^t = I. The antipode is
/// S(u_ij) = u*_ji, S(u*_ij) = (s^-1 u^t s)_ij; the second table entry encodes
/// that conj(u) has inverse s^-1 u^t s.
inline Presentation build_au(const Matrix& s, const std::string& family = "u",
                             int block = kNoBlock) {
  if (s.rows() != s.cols()) throw std::invalid_argument("build_au: s must be square");
  if (!is_hermitian_positive(s))
    throw std::invalid_argument("build_au: s must be Hermitian positive-definite");
  const size_t d = s.rows();
  Matrix sinv = mat_inverse(s);

  Presentation p;
  p.name = "A_u";
  add_multiplicative_family(p, family, static_cast<int>(d), block);

  auto u = [&](size_t i, size_t j, bool st) {
    Generator g(family, static_cast<int>(i), static_cast<int>(j), st);
    g.block = block;
    return g;
  };
  auto delta = [](size_t i, size_t j) { return i == j ? Scalar::one() : Scalar::zero(); };

  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) {
      NcPoly uu, su;  // (u u*)_ij and (u* u)_ij
      for (size_t k = 0; k < d; ++k) {
        uu.add_term(Word{u(i, k, false), u(j, k, true)}, Scalar::one());
        su.add_term(Word{u(k, i, true), u(k, j, false)}, Scalar::one());
      }
      uu.add_term(Word{}, -delta(i, j));
      su.add_term(Word{}, -delta(i, j));
      p.relations.push_back(std::move(uu));
      p.relations.push_back(std::move(su));

      NcPoly tw1, tw2;  // (u^t s conj(u) s^-1)_ij and (s conj(u) s^-1 u^t)_ij
      for (size_t k = 0; k < d; ++k)
        for (size_t l = 0; l < d; ++l)
          for (size_t m = 0; m < d; ++m) {
            Scalar c1 = s(k, l) * sinv(m, j);
            if (!c1.is_zero()) tw1.add_term(Word{u(k, i, false), u(l, m, true)}, c1);
            Scalar c2 = s(i, k) * sinv(l, m);
            if (!c2.is_zero()) tw2.add_term(Word{u(k, l, true), u(j, m, false)}, c2);
          }
      tw1.add_term(Word{}, -delta(i, j));
      tw2.add_term(Word{}, -delta(i, j));
      p.relations.push_back(std::move(tw1));
      p.relations.push_back(std::move(tw2));
    }

  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) {
      p.antipode.emplace(u(i, j, false), NcPoly(u(j, i, true)));
      NcPoly simg;  // (s^-1 u^t s)_ij = sum_{k,l} sinv_ik u_lk s_lj
      for (size_t k = 0; k < d; ++k)
        for (size_t l = 0; l < d; ++l) {
          Scalar c = sinv(i, k) * s(l, j);
          if (!c.is_zero()) simg.add_term(Word{u(l, k, false)}, c);
        }
      p.antipode.emplace(u(i, j, true), std::move(simg));
    }
  return p;
}

}  // namespace qsym
