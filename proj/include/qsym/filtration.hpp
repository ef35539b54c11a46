#pragma once

#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsym/floatmat.hpp"
#include "qsym/matrix.hpp"

namespace qsym {

/// Coordinates of an element in a fixed finite basis.
using Coords = std::vector<Scalar>;

/// A basis-product result; disengaged when the true product leaves the
/// truncated basis span ("degree overflow").
using MaybeCoords = std::optional<Coords>;

/// A finite-dimensional slice of a *-algebra with a state, given by basis
/// data. Products may be partial: at a truncation scale, some basis products
/// fall outside the retained span and are recorded as undefined rather than
/// approximated.
struct AlgebraData {
  size_t dim = 0;
  std::vector<std::vector<MaybeCoords>> struct_consts;  // [r][s] -> coords of a_r a_s
  Matrix star_matrix;            // star(a_r) = sum_t star_matrix(t, r) a_t
  Coords unit_vector;            // coordinates of 1_A
  Coords trace_vector;           // tau(a_r)
  std::optional<Matrix> pair_trace;  // PT(p, s) = tau(a_p a_s), for partial products

  const MaybeCoords& product(size_t r, size_t s) const { return struct_consts.at(r).at(s); }

  /// Coordinates of x y, or nullopt if any needed basis product is undefined.
  MaybeCoords mul_coords(const Coords& x, const Coords& y) const {
    Coords out(dim, Scalar::zero());
    for (size_t r = 0; r < dim; ++r) {
      if (x[r].is_zero()) continue;
      for (size_t s = 0; s < dim; ++s) {
        if (y[s].is_zero()) continue;
        const MaybeCoords& c = product(r, s);
        if (!c) return std::nullopt;
        Scalar k = x[r] * y[s];
        for (size_t t = 0; t < dim; ++t) out[t] += k * (*c)[t];
      }
    }
    return out;
  }

  Coords star_coords(const Coords& x) const {
    Coords out(dim, Scalar::zero());
    for (size_t r = 0; r < dim; ++r) {
      if (x[r].is_zero()) continue;
      Scalar xc = x[r].conj();
      for (size_t t = 0; t < dim; ++t) out[t] += star_matrix(t, r) * xc;
    }
    return out;
  }

  Scalar trace_of(const Coords& x) const {
    Scalar s = Scalar::zero();
    for (size_t r = 0; r < dim; ++r) s += x[r] * trace_vector[r];
    return s;
  }

  /// tau(a_p a_s) matrix: the declared pair_trace if present, otherwise
  /// derived from struct_consts (nullopt if some needed product is undefined).
  std::optional<Matrix> effective_pair_trace() const {
    if (pair_trace) return pair_trace;
    Matrix pt(dim, dim);
    for (size_t p = 0; p < dim; ++p)
      for (size_t s = 0; s < dim; ++s) {
        const MaybeCoords& c = product(p, s);
        if (!c) return std::nullopt;
        Scalar v = Scalar::zero();
        for (size_t t = 0; t < dim; ++t) v += (*c)[t] * trace_vector[t];
        pt(p, s) = v;
      }
    return pt;
  }
};

/// A finitely generated Hilbert module slice over AlgebraData, with an
/// orthogonal block decomposition, an antilinear block map J, and a
/// distinguished vector.
struct FiltrationSpec {
  std::string name;
  AlgebraData algebra;
  size_t module_dim = 0;
  std::vector<std::vector<size_t>> blocks;  // partition of {0..module_dim-1}
  // <e_m | e_n> = sum_t inner_tensor[m][n][t] a_t  (always total)
  std::vector<std::vector<Coords>> inner_tensor;
  // e_m . a_r = sum_n action_tensor[m][r][n] e_n  (may be partial)
  std::vector<std::vector<MaybeCoords>> action_tensor;
  Matrix j_matrix;  // J(e_m) = sum_n j_matrix(n, m) e_n, composed with conj
  Coords xi0;

  size_t block_of(size_t m) const {
    for (size_t i = 0; i < blocks.size(); ++i)
      for (size_t x : blocks[i])
        if (x == m) return i;
    throw std::out_of_range("module index not in any block");
  }
};

struct CheckEntry {
  std::string name;
  bool pass = true;
  std::string witness;   // indices/values on failure
  size_t skipped = 0;    // instances not evaluable at this truncation
};

struct ValidationReport {
  std::vector<CheckEntry> entries;

  bool ok() const {
    for (const CheckEntry& e : entries)
      if (!e.pass) return false;
    return true;
  }
  size_t total_skipped() const {
    size_t n = 0;
    for (const CheckEntry& e : entries) n += e.skipped;
    return n;
  }
  const CheckEntry* find(const std::string& name) const {
    for (const CheckEntry& e : entries)
      if (e.name == name) return &e;
    return nullptr;
  }
  std::string to_string() const {
    std::ostringstream os;
    for (const CheckEntry& e : entries) {
      os << (e.pass ? "PASS " : "FAIL ") << e.name;
      if (e.skipped) os << " (skipped " << e.skipped << " undefined instances)";
      if (!e.pass && !e.witness.empty()) os << ": " << e.witness;
      os << "\n";
    }
    return os.str();
  }
};

/// tau-Gram of the module basis: T(m, n) = tau(<e_m|e_n>).
inline Matrix compute_module_gram(const FiltrationSpec& sp) {
  Matrix t(sp.module_dim, sp.module_dim);
  for (size_t m = 0; m < sp.module_dim; ++m)
    for (size_t n = 0; n < sp.module_dim; ++n)
      t(m, n) = sp.algebra.trace_of(sp.inner_tensor[m][n]);
  return t;
}

namespace detail {

inline std::string idx2(size_t a, size_t b) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}
inline std::string idx3(size_t a, size_t b, size_t c) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

inline bool coords_equal(const Coords& a, const Coords& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!(a[i] == b[i])) return false;
  return true;
}

}  // namespace detail

/// Checks every declared invariant, returning a report (never throws on
/// semantic failures; malformed shapes short-circuit the report).
inline ValidationReport validate(const FiltrationSpec& sp) {
  ValidationReport rep;
  const AlgebraData& A = sp.algebra;
  const size_t na = A.dim, ne = sp.module_dim;

  {  // shapes
    CheckEntry e{"shapes"};
    auto fail = [&](const std::string& w) {
      e.pass = false;
      if (e.witness.empty()) e.witness = w;
    };
    if (A.struct_consts.size() != na) fail("struct_consts rows");
    for (const auto& row : A.struct_consts) {
      if (row.size() != na) fail("struct_consts cols");
      for (const auto& c : row)
        if (c && c->size() != na) fail("struct_consts entry length");
    }
    if (A.star_matrix.rows() != na || A.star_matrix.cols() != na) fail("star_matrix shape");
    if (A.unit_vector.size() != na) fail("unit_vector length");
    if (A.trace_vector.size() != na) fail("trace_vector length");
    if (A.pair_trace && (A.pair_trace->rows() != na || A.pair_trace->cols() != na))
      fail("pair_trace shape");
    if (sp.inner_tensor.size() != ne) fail("inner_tensor rows");
    for (const auto& row : sp.inner_tensor) {
      if (row.size() != ne) fail("inner_tensor cols");
      for (const auto& c : row)
        if (c.size() != na) fail("inner_tensor entry length");
    }
    if (sp.action_tensor.size() != ne) fail("action_tensor rows");
    for (const auto& row : sp.action_tensor) {
      if (row.size() != na) fail("action_tensor cols");
      for (const auto& c : row)
        if (c && c->size() != ne) fail("action_tensor entry length");
    }
    if (sp.j_matrix.rows() != ne || sp.j_matrix.cols() != ne) fail("j_matrix shape");
    if (sp.xi0.size() != ne) fail("xi0 length");
    rep.entries.push_back(e);
    if (!e.pass) return rep;
  }

  {  // blocks form a partition with nonempty parts
    CheckEntry e{"blocks-partition"};
    std::vector<int> seen(ne, 0);
    for (size_t i = 0; i < sp.blocks.size(); ++i) {
      if (sp.blocks[i].empty()) {
        e.pass = false;
        e.witness = "block " + std::to_string(i) + " is empty";
      }
      for (size_t m : sp.blocks[i]) {
        if (m >= ne || seen[m]++) {
          e.pass = false;
          e.witness = "index " + std::to_string(m) + " out of range or repeated";
        }
      }
    }
    for (size_t m = 0; m < ne; ++m)
      if (!seen[m]) {
        e.pass = false;
        e.witness = "index " + std::to_string(m) + " in no block";
      }
    rep.entries.push_back(e);
    if (!e.pass) return rep;
  }

  {  // unit: a_r 1 = 1 a_r = a_r on defined products
    CheckEntry e{"unit-element"};
    for (size_t r = 0; r < na; ++r) {
      Coords er(na, Scalar::zero());
      er[r] = Scalar::one();
      auto left = A.mul_coords(A.unit_vector, er);
      auto right = A.mul_coords(er, A.unit_vector);
      if (!left || !right) {
        ++e.skipped;
        continue;
      }
      if (!detail::coords_equal(*left, er) || !detail::coords_equal(*right, er)) {
        e.pass = false;
        e.witness = "unit fails on basis index " + std::to_string(r);
        break;
      }
    }
    rep.entries.push_back(e);
  }

  {  // associativity on fully-defined triples
    CheckEntry e{"associativity"};
    for (size_t r = 0; r < na && e.pass; ++r)
      for (size_t s = 0; s < na && e.pass; ++s)
        for (size_t t = 0; t < na && e.pass; ++t) {
          const MaybeCoords& rs = A.product(r, s);
          const MaybeCoords& st = A.product(s, t);
          if (!rs || !st) {
            ++e.skipped;
            continue;
          }
          Coords et(na, Scalar::zero()), er(na, Scalar::zero());
          et[t] = Scalar::one();
          er[r] = Scalar::one();
          auto lhs = A.mul_coords(*rs, et);
          auto rhs = A.mul_coords(er, *st);
          if (!lhs || !rhs) {
            ++e.skipped;
            continue;
          }
          if (!detail::coords_equal(*lhs, *rhs)) {
            e.pass = false;
            e.witness = "associativity fails at " + detail::idx3(r, s, t);
          }
        }
    rep.entries.push_back(e);
  }

  {  // star involution: star(star(a_r)) = a_r
    CheckEntry e{"star-involution"};
    Matrix ss = A.star_matrix * A.star_matrix.conj();
    if (!(ss == Matrix::identity(na))) {
      e.pass = false;
      e.witness = "star_matrix * conj(star_matrix) != I";
    }
    rep.entries.push_back(e);
  }

  {  // star antimultiplicative on defined pairs
    CheckEntry e{"star-antimultiplicative"};
    for (size_t r = 0; r < na && e.pass; ++r)
      for (size_t s = 0; s < na && e.pass; ++s) {
        const MaybeCoords& rs = A.product(r, s);
        if (!rs) {
          ++e.skipped;
          continue;
        }
        Coords er(na, Scalar::zero()), es(na, Scalar::zero());
        er[r] = Scalar::one();
        es[s] = Scalar::one();
        auto rhs = A.mul_coords(A.star_coords(es), A.star_coords(er));
        if (!rhs) {
          ++e.skipped;
          continue;
        }
        if (!detail::coords_equal(A.star_coords(*rs), *rhs)) {
          e.pass = false;
          e.witness = "star antimultiplicativity fails at " + detail::idx2(r, s);
        }
      }
    rep.entries.push_back(e);
  }

  {  // trace of the unit
    CheckEntry e{"trace-unit"};
    if (!(A.trace_of(A.unit_vector) == Scalar::one())) {
      e.pass = false;
      e.witness = "tau(1) = " + scalar_to_string(A.trace_of(A.unit_vector));
    }
    rep.entries.push_back(e);
  }

  {  // tau(a*) = conj(tau(a))
    CheckEntry e{"trace-star"};
    for (size_t r = 0; r < na; ++r) {
      Coords er(na, Scalar::zero());
      er[r] = Scalar::one();
      if (!(A.trace_of(A.star_coords(er)) == A.trace_of(er).conj())) {
        e.pass = false;
        e.witness = "tau(a*) mismatch at index " + std::to_string(r);
        break;
      }
    }
    rep.entries.push_back(e);
  }

  {  // faithfulness: G(r,s) = tau(a_r* a_s) Hermitian positive-definite
    CheckEntry e{"trace-faithful"};
    auto pt = A.effective_pair_trace();
    if (!pt) {
      e.pass = false;
      e.witness = "pair trace not derivable (undefined products) and not supplied";
    } else {
      Matrix g(na, na);
      for (size_t r = 0; r < na; ++r)
        for (size_t s = 0; s < na; ++s) {
          Scalar v = Scalar::zero();
          for (size_t p = 0; p < na; ++p) v += A.star_matrix(p, r) * (*pt)(p, s);
          g(r, s) = v;
        }
      if (!g.is_hermitian()) {
        e.pass = false;
        e.witness = "Gram not Hermitian";
      } else {
        auto minors = leading_principal_minors(g);
        for (size_t k = 0; k < minors.size(); ++k) {
          if (!minors[k].is_real() || !(minors[k].re > 0)) {
            e.pass = false;
            e.witness = "leading principal minor " + std::to_string(k + 1) + " = " +
                        scalar_to_string(minors[k]);
            break;
          }
        }
      }
    }
    rep.entries.push_back(e);
  }

  {  // declared pair_trace consistent with derivable products
    CheckEntry e{"pair-trace-consistent"};
    if (A.pair_trace) {
      for (size_t p = 0; p < na && e.pass; ++p)
        for (size_t s = 0; s < na && e.pass; ++s) {
          const MaybeCoords& c = A.product(p, s);
          if (!c) {
            ++e.skipped;
            continue;
          }
          Scalar v = Scalar::zero();
          for (size_t t = 0; t < na; ++t) v += (*c)[t] * A.trace_vector[t];
          if (!((*A.pair_trace)(p, s) == v)) {
            e.pass = false;
            e.witness = "pair_trace mismatch at " + detail::idx2(p, s);
          }
        }
    }
    rep.entries.push_back(e);
  }

  {  // <x|y>* = <y|x>
    CheckEntry e{"inner-hermitian"};
    for (size_t m = 0; m < ne && e.pass; ++m)
      for (size_t n = 0; n < ne && e.pass; ++n) {
        if (!detail::coords_equal(A.star_coords(sp.inner_tensor[m][n]), sp.inner_tensor[n][m])) {
          e.pass = false;
          e.witness = "hermitian symmetry fails at " + detail::idx2(m, n);
        }
      }
    rep.entries.push_back(e);
  }

  {  // <e_m | e_n . a_r> = <e_m|e_n> a_r on defined instances
    CheckEntry e{"inner-a-linear"};
    for (size_t m = 0; m < ne && e.pass; ++m)
      for (size_t n = 0; n < ne && e.pass; ++n)
        for (size_t r = 0; r < na && e.pass; ++r) {
          const MaybeCoords& act = sp.action_tensor[n][r];
          if (!act) {
            ++e.skipped;
            continue;
          }
          Coords lhs(na, Scalar::zero());
          for (size_t p = 0; p < ne; ++p) {
            if ((*act)[p].is_zero()) continue;
            for (size_t t = 0; t < na; ++t) lhs[t] += (*act)[p] * sp.inner_tensor[m][p][t];
          }
          Coords ar(na, Scalar::zero());
          ar[r] = Scalar::one();
          auto rhs = A.mul_coords(sp.inner_tensor[m][n], ar);
          if (!rhs) {
            ++e.skipped;
            continue;
          }
          if (!detail::coords_equal(lhs, *rhs)) {
            e.pass = false;
            e.witness = "A-linearity fails at " + detail::idx3(m, n, r);
          }
        }
    rep.entries.push_back(e);
  }

  Matrix T = compute_module_gram(sp);

  {  // positivity of the module tau-Gram
    CheckEntry e{"gram-positive"};
    if (!is_hermitian_positive(T)) {
      e.pass = false;
      e.witness = "module Gram not Hermitian positive-definite";
    }
    rep.entries.push_back(e);
  }

  {  // orthonormality including cross-block vanishing
    CheckEntry e{"gram-orthonormal"};
    for (size_t m = 0; m < ne && e.pass; ++m)
      for (size_t n = 0; n < ne && e.pass; ++n) {
        Scalar want = (m == n) ? Scalar::one() : Scalar::zero();
        if (!(T(m, n) == want)) {
          e.pass = false;
          size_t bm = sp.block_of(m), bn = sp.block_of(n);
          e.witness = (bm == bn ? "within block " + std::to_string(bm)
                                : "across blocks " + detail::idx2(bm, bn)) +
                      " entry " + detail::idx2(m, n) + " = " + scalar_to_string(T(m, n));
        }
      }
    rep.entries.push_back(e);
  }

  {  // J invertible
    CheckEntry e{"j-invertible"};
    if (rank(sp.j_matrix) != ne) {
      e.pass = false;
      e.witness = "j_matrix is singular";
    }
    rep.entries.push_back(e);
  }

  {  // J preserves blocks
    CheckEntry e{"j-preserves-blocks"};
    for (size_t m = 0; m < ne && e.pass; ++m)
      for (size_t n = 0; n < ne && e.pass; ++n)
        if (!sp.j_matrix(n, m).is_zero() && sp.block_of(n) != sp.block_of(m)) {
          e.pass = false;
          e.witness = "J mixes blocks at entry " + detail::idx2(n, m);
        }
    rep.entries.push_back(e);
  }

  {  // fullness: inner products span the algebra
    CheckEntry e{"fullness"};
    Matrix span(ne * ne, na);
    for (size_t m = 0; m < ne; ++m)
      for (size_t n = 0; n < ne; ++n)
        for (size_t t = 0; t < na; ++t) span(m * ne + n, t) = sp.inner_tensor[m][n][t];
    size_t rk = rank(span);
    if (rk != na) {
      e.pass = false;
      e.witness = "inner products span rank " + std::to_string(rk) + " of " + std::to_string(na);
    }
    rep.entries.push_back(e);
  }

  {  // module unit action: e . 1 = e where defined
    CheckEntry e{"unit-action"};
    for (size_t m = 0; m < ne && e.pass; ++m) {
      Coords out(ne, Scalar::zero());
      bool defined = true;
      for (size_t r = 0; r < na && defined; ++r) {
        if (A.unit_vector[r].is_zero()) continue;
        const MaybeCoords& act = sp.action_tensor[m][r];
        if (!act) {
          defined = false;
          break;
        }
        for (size_t n = 0; n < ne; ++n) out[n] += A.unit_vector[r] * (*act)[n];
      }
      if (!defined) {
        ++e.skipped;
        continue;
      }
      Coords em(ne, Scalar::zero());
      em[m] = Scalar::one();
      if (!detail::coords_equal(out, em)) {
        e.pass = false;
        e.witness = "unit action fails on module index " + std::to_string(m);
      }
    }
    rep.entries.push_back(e);
  }

  {  // (e . a_r) . a_s = e . (a_r a_s) on defined instances
    CheckEntry e{"action-associative"};
    for (size_t m = 0; m < ne && e.pass; ++m)
      for (size_t r = 0; r < na && e.pass; ++r)
        for (size_t s = 0; s < na && e.pass; ++s) {
          const MaybeCoords& first = sp.action_tensor[m][r];
          const MaybeCoords& prod = A.product(r, s);
          if (!first || !prod) {
            ++e.skipped;
            continue;
          }
          bool defined = true;
          Coords lhs(ne, Scalar::zero());
          for (size_t p = 0; p < ne && defined; ++p) {
            if ((*first)[p].is_zero()) continue;
            const MaybeCoords& second = sp.action_tensor[p][s];
            if (!second) {
              defined = false;
              break;
            }
            for (size_t n = 0; n < ne; ++n) lhs[n] += (*first)[p] * (*second)[n];
          }
          Coords rhs(ne, Scalar::zero());
          for (size_t t = 0; t < na && defined; ++t) {
            if ((*prod)[t].is_zero()) continue;
            const MaybeCoords& act = sp.action_tensor[m][t];
            if (!act) {
              defined = false;
              break;
            }
            for (size_t n = 0; n < ne; ++n) rhs[n] += (*prod)[t] * (*act)[n];
          }
          if (!defined) {
            ++e.skipped;
            continue;
          }
          if (!detail::coords_equal(lhs, rhs)) {
            e.pass = false;
            e.witness = "action associativity fails at " + detail::idx3(m, r, s);
          }
        }
    rep.entries.push_back(e);
  }

  {  // tau(<xi0|e_m>) matches the declared coordinates through the Gram
    CheckEntry e{"xi0-consistent"};
    for (size_t m = 0; m < ne; ++m) {
      Scalar got = Scalar::zero();
      for (size_t n = 0; n < ne; ++n) got += sp.xi0[n].conj() * T(n, m);
      if (!(got == sp.xi0[m].conj())) {
        e.pass = false;
        e.witness = "pairing mismatch at module index " + std::to_string(m);
        break;
      }
    }
    rep.entries.push_back(e);
  }

  return rep;
}

/// The derived positive matrix of block i: s(j,k) = tau(<J e_j | J e_k>)
/// over the block's basis, computed exactly as Jcols^dagger T Jcols.
inline Matrix compute_s(const FiltrationSpec& sp, size_t block) {
  if (block >= sp.blocks.size()) throw std::out_of_range("unknown block index");
  const std::vector<size_t>& idx = sp.blocks[block];
  const size_t d = idx.size(), ne = sp.module_dim;
  Matrix jcols(ne, d);
  for (size_t c = 0; c < d; ++c)
    for (size_t r = 0; r < ne; ++r) jcols(r, c) = sp.j_matrix(r, idx[c]);
  Matrix T = compute_module_gram(sp);
  return jcols.dagger() * T * jcols;
}

/// Floating-point Gram-Schmidt of the block's left Gram. Returns (p, f):
/// columns of f are the orthonormal-basis coordinates, and p = f^-1 is the
/// change of basis with e_j = sum_k p(k,j) f_k, so p^t conj(p) ~ s.
inline std::pair<CMat, CMat> compute_left_basis_float(const FiltrationSpec& sp, size_t block,
                                                      double tol = 1e-12) {
  Matrix s_exact = compute_s(sp, block);
  CMat s = CMat::from_exact(s_exact);
  const size_t d = s.rows();
  // form(x, y) = sum_{j,k} x_j s(j,k) conj(y_k): linear first, antilinear second
  auto form = [&](const std::vector<cdouble>& x, const std::vector<cdouble>& y) {
    cdouble v = 0;
    for (size_t j = 0; j < d; ++j)
      for (size_t k = 0; k < d; ++k) v += x[j] * s(j, k) * std::conj(y[k]);
    return v;
  };
  std::vector<std::vector<cdouble>> f;  // coordinate columns
  for (size_t k = 0; k < d; ++k) {
    std::vector<cdouble> v(d, 0.0);
    v[k] = 1.0;
    for (const auto& fj : f) {
      cdouble c = form(v, fj);
      for (size_t t = 0; t < d; ++t) v[t] -= c * fj[t];
    }
    cdouble nn = form(v, v);
    if (!(nn.real() > tol) || std::abs(nn.imag()) > tol)
      throw std::domain_error("left Gram numerically singular");
    double inv = 1.0 / std::sqrt(nn.real());
    for (cdouble& t : v) t *= inv;
    f.push_back(std::move(v));
  }
  CMat fmat(d, d);
  for (size_t c = 0; c < d; ++c)
    for (size_t r = 0; r < d; ++r) fmat(r, c) = f[c][r];
  CMat p = c_inverse(fmat);
  return {p, fmat};
}

/// A pseudorandom spec that is valid by construction: the algebra of
/// functions on k points with a weighted state, a colored module basis with
/// scaled diagonal inner products, random blocks, and a random invertible
/// block-preserving J.
inline FiltrationSpec random_valid_spec(std::mt19937& rng, size_t points = 3,
                                        size_t module_dim = 4) {
  if (points < 1 || module_dim < points) throw std::invalid_argument("need module_dim >= points");
  std::uniform_int_distribution<long> small(1, 4), signed_small(-3, 3);

  FiltrationSpec sp;
  sp.name = "random-valid";
  AlgebraData& A = sp.algebra;
  A.dim = points;
  // weights w_r > 0 summing to 1
  std::vector<Rational> w(points);
  Rational total(0);
  for (auto& x : w) {
    x = make_rational(small(rng));
    total += x;
  }
  for (auto& x : w) x = Rational(x / total);
  A.struct_consts.assign(points, std::vector<MaybeCoords>(points));
  for (size_t r = 0; r < points; ++r)
    for (size_t s = 0; s < points; ++s) {
      Coords c(points, Scalar::zero());
      if (r == s) c[r] = Scalar::one();
      A.struct_consts[r][s] = std::move(c);
    }
  A.star_matrix = Matrix::identity(points);
  A.unit_vector.assign(points, Scalar::one());
  A.trace_vector.resize(points);
  for (size_t r = 0; r < points; ++r) A.trace_vector[r] = Scalar(w[r]);

  sp.module_dim = module_dim;
  // surjective coloring
  std::vector<size_t> color(module_dim);
  for (size_t a = 0; a < points; ++a) color[a] = a;
  std::uniform_int_distribution<size_t> anycolor(0, points - 1);
  for (size_t a = points; a < module_dim; ++a) color[a] = anycolor(rng);

  sp.inner_tensor.assign(module_dim, std::vector<Coords>(module_dim, Coords(points, Scalar::zero())));
  for (size_t a = 0; a < module_dim; ++a)
    sp.inner_tensor[a][a][color[a]] = Scalar(Rational(1 / w[color[a]]));

  sp.action_tensor.assign(module_dim, std::vector<MaybeCoords>(points));
  for (size_t a = 0; a < module_dim; ++a)
    for (size_t r = 0; r < points; ++r) {
      Coords c(module_dim, Scalar::zero());
      if (r == color[a]) c[a] = Scalar::one();
      sp.action_tensor[a][r] = std::move(c);
    }

  // blocks: contiguous runs, colors force nothing; sizes random
  size_t at = 0;
  std::uniform_int_distribution<size_t> blocksz(1, 2);
  while (at < module_dim) {
    size_t len = std::min(blocksz(rng), module_dim - at);
    std::vector<size_t> blk;
    for (size_t t = 0; t < len; ++t) blk.push_back(at + t);
    sp.blocks.push_back(std::move(blk));
    at += len;
  }

  // block-diagonal invertible J with rational entries
  sp.j_matrix = Matrix(module_dim, module_dim);
  for (const auto& blk : sp.blocks) {
    for (;;) {
      Matrix cand(blk.size(), blk.size());
      for (size_t r = 0; r < blk.size(); ++r)
        for (size_t c = 0; c < blk.size(); ++c)
          cand(r, c) = Scalar(make_rational(signed_small(rng)), make_rational(signed_small(rng)));
      if (rank(cand) == blk.size()) {
        for (size_t r = 0; r < blk.size(); ++r)
          for (size_t c = 0; c < blk.size(); ++c) sp.j_matrix(blk[r], blk[c]) = cand(r, c);
        break;
      }
    }
  }

  sp.xi0.assign(module_dim, Scalar::zero());
  for (size_t a = 0; a < module_dim; ++a)
    sp.xi0[a] = Scalar(make_rational(signed_small(rng), 2));
  return sp;
}

}  // namespace qsym
