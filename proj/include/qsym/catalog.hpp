#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qsym/coaction.hpp"
#include "qsym/filtration.hpp"
#include "qsym/matrix.hpp"
#include "qsym/ncpoly.hpp"
#include "qsym/poly_text.hpp"
#include "qsym/presentation.hpp"
#include "qsym/rewrite.hpp"

namespace qsym {

// ---------------------------------------------------------------------------
// Standard presentations
// ---------------------------------------------------------------------------

/// C(Z2): one self-adjoint unitary generator z with Delta(z) = z (x) z.
inline Presentation reflection_presentation(const std::string& family = "z") {
  Presentation p;
  p.name = "C(Z2)";
  add_multiplicative_family(p, family, 1);
  Generator z(family, 0, 0);
  p.relations.push_back(NcPoly(z.starred()) - NcPoly(z));   // z* = z
  p.relations.push_back(NcPoly(z) * NcPoly(z) - NcPoly(Scalar::one()));  // z^2 = 1
  p.antipode.emplace(z, NcPoly(z));
  p.antipode.emplace(z.starred(), NcPoly(z));
  return p;
}

/// A_s(d), the quantum permutation algebra: u_ij self-adjoint idempotents,
/// each row and column summing to 1.
inline Presentation quantum_permutation_presentation(int d, const std::string& family = "v") {
  if (d < 1) throw std::invalid_argument("quantum_permutation_presentation: d must be >= 1");
  Presentation p;
  p.name = "A_s(" + std::to_string(d) + ")";
  add_multiplicative_family(p, family, d);
  auto v = [&](int i, int j) { return Generator(family, i, j); };
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      p.relations.push_back(NcPoly(v(i, j).starred()) - NcPoly(v(i, j)));
      p.relations.push_back(NcPoly(v(i, j)) * NcPoly(v(i, j)) - NcPoly(v(i, j)));
      p.antipode.emplace(v(i, j), NcPoly(v(j, i)));
      p.antipode.emplace(v(i, j).starred(), NcPoly(v(j, i)));
    }
  for (int i = 0; i < d; ++i) {
    NcPoly row(Scalar(-1)), col(Scalar(-1));
    for (int j = 0; j < d; ++j) {
      row += NcPoly(v(i, j));
      col += NcPoly(v(j, i));
    }
    p.relations.push_back(std::move(row));
    p.relations.push_back(std::move(col));
  }
  return p;
}

/// A_h(d), the hyperoctahedral algebra: u_ij self-adjoint, distinct entries of
/// a row or column multiply to zero, and the squares along each row and each
/// column sum to 1.
inline Presentation hyperoctahedral_presentation(int d, const std::string& family = "u") {
  if (d < 1) throw std::invalid_argument("hyperoctahedral_presentation: d must be >= 1");
  Presentation p;
  p.name = "A_h(" + std::to_string(d) + ")";
  add_multiplicative_family(p, family, d);
  auto u = [&](int i, int j) { return Generator(family, i, j); };
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      p.relations.push_back(NcPoly(u(i, j).starred()) - NcPoly(u(i, j)));
      p.antipode.emplace(u(i, j), NcPoly(u(j, i)));
      p.antipode.emplace(u(i, j).starred(), NcPoly(u(j, i)));
      for (int k = 0; k < d; ++k) {
        if (k == j) continue;
        p.relations.push_back(NcPoly(u(i, j)) * NcPoly(u(i, k)));  // row
        p.relations.push_back(NcPoly(u(j, i)) * NcPoly(u(k, i)));  // column
      }
    }
  for (int i = 0; i < d; ++i) {
    NcPoly row(Scalar(-1)), col(Scalar(-1));
    for (int l = 0; l < d; ++l) {
      row += NcPoly(u(i, l)) * NcPoly(u(i, l));
      col += NcPoly(u(l, i)) * NcPoly(u(l, i));
    }
    p.relations.push_back(std::move(row));
    p.relations.push_back(std::move(col));
  }
  return p;
}

/// A_o(P): u is unitary and equals P conj(u) P^-1 entrywise.
inline Presentation free_orthogonal_presentation(const Matrix& pmat,
                                                 const std::string& family = "u") {
  if (pmat.rows() != pmat.cols())
    throw std::invalid_argument("free_orthogonal_presentation: P must be square");
  if (rank(pmat) != pmat.rows())
    throw std::invalid_argument("free_orthogonal_presentation: P must be invertible");
  const int d = static_cast<int>(pmat.rows());
  Matrix pinv = mat_inverse(pmat);

  Presentation p;
  p.name = "A_o(P," + std::to_string(d) + ")";
  add_multiplicative_family(p, family, d);
  auto u = [&](int i, int j, bool st = false) { return Generator(family, i, j, st); };
  auto delta = [](int i, int j) { return i == j ? Scalar::one() : Scalar::zero(); };
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      NcPoly uu(-delta(i, j)), su(-delta(i, j));
      for (int k = 0; k < d; ++k) {
        uu += NcPoly(u(i, k)) * NcPoly(u(j, k, true));
        su += NcPoly(u(k, i, true)) * NcPoly(u(k, j));
      }
      p.relations.push_back(std::move(uu));
      p.relations.push_back(std::move(su));

      NcPoly cj(u(i, j));  // u_ij - (P conj(u) P^-1)_ij
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          Scalar c = pmat(i, k) * pinv(l, j);
          if (!c.is_zero()) cj.add_term(Word{u(k, l, true)}, -c);
        }
      p.relations.push_back(std::move(cj));

      p.antipode.emplace(u(i, j), NcPoly(u(j, i, true)));
      NcPoly simg;  // S(u*_ij) = (P^-1 u P)-bar pattern: sum P^-1(i,k) P(l,j) u*_lk
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          Scalar c = pinv(i, k) * pmat(l, j);
          if (!c.is_zero()) simg.add_term(Word{u(l, k, true)}, c);
        }
      p.antipode.emplace(u(i, j).starred(), std::move(simg));
    }
  return p;
}

/// A_s(d) (x) C(Z2): the tensor presentation with cross-commutation.
inline Presentation quantum_permutation_reflection_presentation(
    int d, const std::string& vfamily = "v", const std::string& zfamily = "z") {
  return tensor_product(quantum_permutation_presentation(d, vfamily),
                        reflection_presentation(zfamily));
}

/// A_h(d) extended by the requirement that all column sums agree. Under this
/// extension the common column sum is a group-like self-adjoint involution.
inline Presentation hyperoctahedral_equal_column_sums_presentation(
    int d, const std::string& family = "u") {
  Presentation p = hyperoctahedral_presentation(d, family);
  p.name += "+colsums";
  for (int j = 1; j < d; ++j) {
    NcPoly rel;
    for (int k = 0; k < d; ++k)
      rel += NcPoly(Generator(family, k, 0)) - NcPoly(Generator(family, k, j));
    p.relations.push_back(std::move(rel));
  }
  return p;
}

/// The column sum sum_k u_{k,col}.
inline NcPoly column_sum_element(int d, const std::string& family = "u", int col = 0) {
  NcPoly out;
  for (int k = 0; k < d; ++k) out += NcPoly(Generator(family, k, col));
  return out;
}

// ---------------------------------------------------------------------------
// Free orthogonal model: A = C, E = C^n with one block, J = P, xi0 = 0
// ---------------------------------------------------------------------------

struct FreeOrthogonalModel {
  FiltrationSpec spec;
  CoactionCertificate certificate;
};

inline FreeOrthogonalModel free_orthogonal_model(const Matrix& pmat,
                                                 const std::string& family = "u") {
  if (pmat.rows() != pmat.cols() || rank(pmat) != pmat.rows())
    throw std::invalid_argument("free_orthogonal_model: P must be square invertible");
  const size_t n = pmat.rows();

  FiltrationSpec sp;
  sp.name = "free-orthogonal(n=" + std::to_string(n) + ")";
  AlgebraData& A = sp.algebra;
  A.dim = 1;
  A.struct_consts = {{Coords{Scalar::one()}}};
  A.star_matrix = Matrix::identity(1);
  A.unit_vector = {Scalar::one()};
  A.trace_vector = {Scalar::one()};

  sp.module_dim = n;
  sp.blocks.push_back({});
  for (size_t m = 0; m < n; ++m) sp.blocks[0].push_back(m);
  sp.inner_tensor.assign(n, std::vector<Coords>(n, Coords{Scalar::zero()}));
  sp.action_tensor.assign(n, std::vector<MaybeCoords>(1));
  for (size_t m = 0; m < n; ++m) {
    sp.inner_tensor[m][m] = Coords{Scalar::one()};
    Coords self(n, Scalar::zero());
    self[m] = Scalar::one();
    sp.action_tensor[m][0] = self;
  }
  sp.j_matrix = pmat;
  sp.xi0.assign(n, Scalar::zero());

  CoactionCertificate cert;
  cert.target = free_orthogonal_presentation(pmat, family);
  cert.alpha_matrix = {{NcPoly(Scalar::one())}};
  cert.beta_blocks.emplace_back(n, std::vector<NcPoly>(n));
  for (size_t k = 0; k < n; ++k)
    for (size_t j = 0; j < n; ++j)
      cert.beta_blocks[0][k][j] =
          NcPoly(Generator(family, static_cast<int>(k), static_cast<int>(j)));
  cert.rewrite_cfg.max_degree = 4;
  return {std::move(sp), std::move(cert)};
}

// ---------------------------------------------------------------------------
// C*-algebra viewed as a module over itself
// ---------------------------------------------------------------------------

/// E = A with <a|b> = a* b, right multiplication as the action, J = star, and
/// xi0 = 1. Requires the algebra basis to be orthonormal for tau(a* b) and
/// the unit to be supported on block 0.
inline FiltrationSpec cstar_filtration_spec(const AlgebraData& alg,
                                            std::vector<std::vector<size_t>> blocks,
                                            const std::string& name) {
  FiltrationSpec sp;
  sp.name = name;
  sp.algebra = alg;
  sp.module_dim = alg.dim;
  sp.blocks = std::move(blocks);

  if (!sp.blocks.empty()) {
    for (size_t r = 0; r < alg.dim; ++r) {
      if (alg.unit_vector.at(r).is_zero()) continue;
      bool in0 = false;
      for (size_t x : sp.blocks[0]) in0 |= (x == r);
      if (!in0)
        throw std::invalid_argument("cstar_filtration_spec: unit not supported on block 0");
    }
  }

  sp.inner_tensor.assign(alg.dim, std::vector<Coords>(alg.dim));
  sp.action_tensor.assign(alg.dim, std::vector<MaybeCoords>(alg.dim));
  for (size_t m = 0; m < alg.dim; ++m) {
    Coords em(alg.dim, Scalar::zero());
    em[m] = Scalar::one();
    Coords sm = alg.star_coords(em);
    for (size_t r = 0; r < alg.dim; ++r) {
      Coords er(alg.dim, Scalar::zero());
      er[r] = Scalar::one();
      MaybeCoords prod = alg.mul_coords(sm, er);
      if (!prod)
        throw std::invalid_argument(
            "cstar_filtration_spec: inner product undefined under truncation");
      sp.inner_tensor[m][r] = *prod;
      sp.action_tensor[m][r] = alg.product(m, r);
    }
  }
  sp.j_matrix = alg.star_matrix;
  sp.xi0 = alg.unit_vector;

  ValidationReport rep = validate(sp);
  if (!rep.ok())
    throw std::invalid_argument("cstar_filtration_spec: invalid spec\n" + rep.to_string());
  return sp;
}

/// Functions on two points in the orthonormal basis {1, g} with g^2 = 1
/// (g is the difference of the two point evaluations; tau is the uniform
/// state, so tau(1) = 1 and tau(g) = 0).
inline AlgebraData two_point_algebra() {
  AlgebraData A;
  A.dim = 2;
  Coords one{Scalar::one(), Scalar::zero()};
  Coords g{Scalar::zero(), Scalar::one()};
  A.struct_consts = {{one, g}, {g, one}};
  A.star_matrix = Matrix::identity(2);
  A.unit_vector = one;
  A.trace_vector = {Scalar::one(), Scalar::zero()};
  return A;
}

struct TwoPointModel {
  FiltrationSpec spec;
  CoactionCertificate certificate;
};

/// The quantum permutation coaction on two points, written in the {1, g}
/// basis: conjugating alpha(point_i) = sum_k point_k (x) v_ki by the basis
/// change 1 = p_0 + p_1, g = p_0 - p_1.
inline TwoPointModel two_point_model(const std::string& family = "v") {
  TwoPointModel out;
  out.spec = cstar_filtration_spec(two_point_algebra(), {{0}, {1}}, "two-point");

  Matrix m(2, 2);  // columns: coordinates of {1, g} in the point basis
  m(0, 0) = Scalar::one();
  m(0, 1) = Scalar::one();
  m(1, 0) = Scalar::one();
  m(1, 1) = Scalar(-1);
  Matrix minv = mat_inverse(m);

  CoactionCertificate& cert = out.certificate;
  cert.target = quantum_permutation_presentation(2, family);
  cert.alpha_matrix.assign(2, std::vector<NcPoly>(2));
  for (int t = 0; t < 2; ++t)
    for (int k = 0; k < 2; ++k) {
      NcPoly entry;
      for (int p = 0; p < 2; ++p)
        for (int j = 0; j < 2; ++j) {
          Scalar c = minv(t, p) * m(j, k);
          if (!c.is_zero()) entry.add_term(Word{Generator(family, p, j)}, c);
        }
      cert.alpha_matrix[t][k] = std::move(entry);
    }
  cert.beta_blocks = {{{cert.alpha_matrix[0][0]}}, {{cert.alpha_matrix[1][1]}}};
  cert.rewrite_cfg.max_degree = 4;
  return out;
}

// ---------------------------------------------------------------------------
// Segments: d copies of the unit interval at Fourier truncation N
// ---------------------------------------------------------------------------

struct SegmentsParams {
  int d = 2;  // segment count >= 1
  int N = 2;  // Fourier truncation >= 1
};

/// Worked model for d disjoint unit segments.
///
/// Algebra basis: cos(pi n .) e_i for 0 <= n <= 2N, one copy per segment i,
/// with product-to-sum structure constants truncated at frequency 2N.
/// Module basis: e_{ni} = (sin(pi n .), cos(pi n .)) e_i for -N <= n <= N;
/// block b holds frequency n = b - N. The state is the normalized average of
/// the segment integrals, and the inner product carries a factor d so that
/// the module basis is exactly orthonormal.
///
/// Certificate entries attach the generator power r(n) = 2 for even n and
/// r(n) = 1 for odd n to frequency n.
struct SegmentsModel {
  SegmentsParams params;
  FiltrationSpec spec;
  CoactionCertificate hyper;        // target A_h(d)
  CoactionCertificate quotient;     // target A_s(d) (x) C(Z2)
  CoactionCertificate permutation;  // target A_s(d)
};

namespace segments_detail {

inline size_t alg_index(const SegmentsParams& pr, int n, int i) {
  return static_cast<size_t>(n) * pr.d + i;
}
inline size_t mod_index(const SegmentsParams& pr, int n, int i) {
  return static_cast<size_t>(n + pr.N) * pr.d + i;
}
inline int exponent_for(int n) { return n % 2 == 0 ? 2 : 1; }

}  // namespace segments_detail

inline SegmentsModel segments_model(SegmentsParams pr) {
  using segments_detail::alg_index;
  using segments_detail::exponent_for;
  using segments_detail::mod_index;
  if (pr.d < 1 || pr.N < 1)
    throw std::invalid_argument("segments_model: need d >= 1 and N >= 1");

  SegmentsModel model;
  model.params = pr;
  FiltrationSpec& sp = model.spec;
  sp.name = "segments(d=" + std::to_string(pr.d) + ",N=" + std::to_string(pr.N) + ")";

  const int d = pr.d, N = pr.N;
  const size_t na = static_cast<size_t>(d) * (2 * N + 1);
  const size_t ne = na;
  const Scalar half(make_rational(1, 2));

  AlgebraData& A = sp.algebra;
  A.dim = na;
  A.struct_consts.assign(na, std::vector<MaybeCoords>(na));
  A.star_matrix = Matrix::identity(na);
  A.unit_vector.assign(na, Scalar::zero());
  A.trace_vector.assign(na, Scalar::zero());
  Matrix pt(na, na);
  for (int i = 0; i < d; ++i) {
    A.unit_vector[alg_index(pr, 0, i)] = Scalar::one();
    A.trace_vector[alg_index(pr, 0, i)] = Scalar(make_rational(1, d));
  }
  for (int n = 0; n <= 2 * N; ++n)
    for (int m = 0; m <= 2 * N; ++m)
      for (int i = 0; i < d; ++i) {
        // cos(pi n .) cos(pi m .) = (cos(pi(n+m).) + cos(pi(n-m).)) / 2
        if (n + m <= 2 * N) {
          Coords c(na, Scalar::zero());
          c[alg_index(pr, n + m, i)] += half;
          c[alg_index(pr, std::abs(n - m), i)] += half;
          for (int j = 0; j < d; ++j)
            if (j == i) A.struct_consts[alg_index(pr, n, i)][alg_index(pr, m, j)] = c;
        }
        for (int j = 0; j < d; ++j)
          if (j != i)
            A.struct_consts[alg_index(pr, n, i)][alg_index(pr, m, j)] =
                Coords(na, Scalar::zero());
        if (n == m) {
          pt(alg_index(pr, n, i), alg_index(pr, m, i)) =
              n == 0 ? Scalar(make_rational(1, d)) : Scalar(make_rational(1, 2 * d));
        }
      }
  A.pair_trace = pt;

  sp.module_dim = ne;
  for (int n = -N; n <= N; ++n) {
    sp.blocks.emplace_back();
    for (int i = 0; i < d; ++i) sp.blocks.back().push_back(mod_index(pr, n, i));
  }
  sp.inner_tensor.assign(ne, std::vector<Coords>(ne, Coords(na, Scalar::zero())));
  sp.action_tensor.assign(ne, std::vector<MaybeCoords>(na));
  for (int n = -N; n <= N; ++n)
    for (int i = 0; i < d; ++i) {
      for (int m = -N; m <= N; ++m) {
        // <e_ni | e_mi> = d cos(pi(n-m).) e_i  (the factor d normalizes tau)
        sp.inner_tensor[mod_index(pr, n, i)][mod_index(pr, m, i)]
                       [alg_index(pr, std::abs(n - m), i)] = Scalar(d);
      }
      for (int m = 0; m <= 2 * N; ++m)
        for (int j = 0; j < d; ++j) {
          if (j != i) {
            sp.action_tensor[mod_index(pr, n, i)][alg_index(pr, m, j)] =
                Coords(ne, Scalar::zero());
            continue;
          }
          // e_ni . cos(pi m .) e_i = (e_{n+m,i} + e_{n-m,i}) / 2
          if (std::abs(n + m) <= N && std::abs(n - m) <= N) {
            Coords c(ne, Scalar::zero());
            c[mod_index(pr, n + m, i)] += half;
            c[mod_index(pr, n - m, i)] += half;
            sp.action_tensor[mod_index(pr, n, i)][alg_index(pr, m, i)] = c;
          }
        }
    }
  sp.j_matrix = Matrix::identity(ne);
  sp.xi0.assign(ne, Scalar::zero());
  for (int i = 0; i < d; ++i) sp.xi0[mod_index(pr, 0, i)] = Scalar::one();

  // Certificates: entry(n) attached to frequency n is
  //   hyper:        u_ki^r(n)        in A_h(d)
  //   quotient:     v_ki z^(n mod 2) in A_s(d) (x) C(Z2)
  //   permutation:  v_ki             in A_s(d)
  auto build_cert = [&](const Presentation& target,
                        auto&& entry) -> CoactionCertificate {
    CoactionCertificate cert;
    cert.target = target;
    cert.alpha_matrix.assign(na, std::vector<NcPoly>(na));
    for (int n = 0; n <= 2 * N; ++n)
      for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k)
          cert.alpha_matrix[alg_index(pr, n, k)][alg_index(pr, n, i)] = entry(n, k, i);
    for (int n = -N; n <= N; ++n) {
      cert.beta_blocks.emplace_back(d, std::vector<NcPoly>(d));
      for (int k = 0; k < d; ++k)
        for (int i = 0; i < d; ++i) cert.beta_blocks.back()[k][i] = entry(n, k, i);
    }
    cert.rewrite_cfg.max_degree = 6;
    return cert;
  };

  model.hyper = build_cert(hyperoctahedral_presentation(d), [](int n, int k, int i) {
    Generator u("u", k, i);
    NcPoly e(u);
    return exponent_for(n) == 2 ? e * e : e;
  });
  model.quotient =
      build_cert(quantum_permutation_reflection_presentation(d), [](int n, int k, int i) {
        NcPoly e(Generator("v", k, i));
        if (exponent_for(n) == 1) e = e * NcPoly(Generator("z", 0, 0));
        return e;
      });
  model.permutation =
      build_cert(quantum_permutation_presentation(d),
                 [](int, int k, int i) { return NcPoly(Generator("v", k, i)); });
  return model;
}

// ---------------------------------------------------------------------------
// Gluing subalgebras of the segments algebra (coordinate bases)
// ---------------------------------------------------------------------------
//
// Endpoint evaluations on basis element cos(pi n .) e_i: the value at the
// left endpoint of segment i is 1 and at the right endpoint (-1)^n.

/// All left endpoints identified: f_i(0) equal for all i.
inline std::vector<Coords> segments_left_glued_subalgebra(const SegmentsParams& pr) {
  using segments_detail::alg_index;
  const size_t na = static_cast<size_t>(pr.d) * (2 * pr.N + 1);
  std::vector<Coords> basis;
  Coords one(na, Scalar::zero());
  for (int i = 0; i < pr.d; ++i) one[alg_index(pr, 0, i)] = Scalar::one();
  basis.push_back(one);
  for (int i = 0; i < pr.d; ++i)
    for (int n = 1; n <= 2 * pr.N; ++n) {
      Coords c(na, Scalar::zero());
      c[alg_index(pr, n, i)] = Scalar::one();
      c[alg_index(pr, 0, i)] = Scalar(-1);  // vanishes at the left endpoint
      basis.push_back(c);
    }
  return basis;
}

/// Left endpoints identified with each other, and right endpoints identified
/// with each other: f_i(0) all equal and f_i(1) all equal.
inline std::vector<Coords> segments_endpoint_glued_subalgebra(const SegmentsParams& pr) {
  using segments_detail::alg_index;
  const size_t na = static_cast<size_t>(pr.d) * (2 * pr.N + 1);
  std::vector<Coords> basis;
  Coords one(na, Scalar::zero()), alt(na, Scalar::zero());
  for (int i = 0; i < pr.d; ++i) {
    one[alg_index(pr, 0, i)] = Scalar::one();
    alt[alg_index(pr, 1, i)] = Scalar::one();
  }
  basis.push_back(one);
  basis.push_back(alt);
  for (int i = 0; i < pr.d; ++i)
    for (int n = 2; n <= 2 * pr.N; ++n) {
      Coords c(na, Scalar::zero());  // vanishes at both endpoints of segment i
      c[alg_index(pr, n, i)] = Scalar::one();
      c[alg_index(pr, n % 2, i)] = Scalar(-1);
      basis.push_back(c);
    }
  return basis;
}

/// Every endpoint identified to a single point: all f_i(0), f_i(1) equal.
inline std::vector<Coords> segments_point_glued_subalgebra(const SegmentsParams& pr) {
  using segments_detail::alg_index;
  const size_t na = static_cast<size_t>(pr.d) * (2 * pr.N + 1);
  std::vector<Coords> basis;
  Coords one(na, Scalar::zero());
  for (int i = 0; i < pr.d; ++i) one[alg_index(pr, 0, i)] = Scalar::one();
  basis.push_back(one);
  for (int i = 0; i < pr.d; ++i)
    for (int n = 2; n <= 2 * pr.N; ++n) {
      Coords c(na, Scalar::zero());
      c[alg_index(pr, n, i)] = Scalar::one();
      c[alg_index(pr, n % 2, i)] = Scalar(-1);
      basis.push_back(c);
    }
  return basis;
}

// ---------------------------------------------------------------------------
// Block coefficient chain: from the relations a generic filtration-preserving
// coaction imposes on the per-frequency coefficient matrices v(n), derive
// that every v(n) is a power of w = v(1).
// ---------------------------------------------------------------------------

struct WChainEntry {
  std::string label;
  Verdict verdict = Verdict::Proven;
  size_t instances = 0;
  std::string witness;
};

struct WChainReport {
  std::vector<WChainEntry> entries;
  CompletionStatus completion = CompletionStatus::Pending;
  std::string digest;

  bool all_proven() const {
    for (const WChainEntry& e : entries)
      if (e.verdict != Verdict::Proven) return false;
    return true;
  }
  std::string to_string() const {
    std::string out = "coefficient chain [completion " +
                      std::string(qsym::to_string(completion)) + ", digest " + digest + "]\n";
    for (const WChainEntry& e : entries) {
      out += "  [" + std::string(qsym::to_string(e.verdict)) + "] " + e.label + " (" +
             std::to_string(e.instances) + " instances)";
      if (!e.witness.empty()) out += " -- " + e.witness;
      out += "\n";
    }
    return out;
  }
};

/// Window of frequencies used for the chain derivation.
inline constexpr int kWChainWindow = 2;

/// Input relations, one coefficient family v(n) per frequency |n| <= 2:
///   - every entry self-adjoint,
///   - every v(n) unitary,
///   - v(n)_ki v(m)_kj = 0 for i != j,
///   - v(n)_ki v(m)_ki depends only on |n - m| (instantiated against a
///     canonical representative pair for each difference class),
///   - v(0) entrywise idempotent.
/// Targets: v(n) = v(-n); v(n+1) = v(n) w; w^2 = v(0); v(n) = w^r(n).
inline WChainReport derive_w_chain(int d, CompletionConfig cfg = {6, 200000, 20000}) {
  if (d < 2) throw std::invalid_argument("derive_w_chain: need d >= 2");
  constexpr int W = kWChainWindow;
  auto fam = [](int n) { return "v(" + std::to_string(n) + ")"; };
  auto v = [&](int n, int k, int i, bool st = false) {
    return Generator(fam(n), k, i, st);
  };
  auto delta = [](int i, int j) { return i == j ? Scalar::one() : Scalar::zero(); };

  std::vector<NcPoly> rels;
  for (int n = -W; n <= W; ++n)
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i) {
        rels.push_back(NcPoly(v(n, k, i, true)) - NcPoly(v(n, k, i)));
        NcPoly uu(-delta(k, i)), su(-delta(k, i));
        for (int l = 0; l < d; ++l) {
          uu += NcPoly(v(n, k, l)) * NcPoly(v(n, i, l, true));
          su += NcPoly(v(n, l, k, true)) * NcPoly(v(n, l, i));
        }
        rels.push_back(std::move(uu));
        rels.push_back(std::move(su));
      }
  for (int n = -W; n <= W; ++n)
    for (int m = -W; m <= W; ++m)
      for (int k = 0; k < d; ++k)
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j)
            if (i != j) rels.push_back(NcPoly(v(n, k, i)) * NcPoly(v(m, k, j)));
  auto rep_pair = [&](int diff) {
    return diff <= W ? std::pair<int, int>{diff, 0} : std::pair<int, int>{diff - W, -W};
  };
  for (int n = -W; n <= W; ++n)
    for (int m = -W; m <= W; ++m) {
      auto [rn, rm] = rep_pair(std::abs(n - m));
      if (rn == n && rm == m) continue;
      for (int k = 0; k < d; ++k)
        for (int i = 0; i < d; ++i)
          rels.push_back(NcPoly(v(n, k, i)) * NcPoly(v(m, k, i)) -
                         NcPoly(v(rn, k, i)) * NcPoly(v(rm, k, i)));
    }
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      rels.push_back(NcPoly(v(0, k, i)) * NcPoly(v(0, k, i)) - NcPoly(v(0, k, i)));

  RewriteSystem rs = RewriteSystem::from_relations(rels, true, {});
  rs.complete(cfg);

  WChainReport rep;
  rep.completion = rs.status();
  rep.digest = rs.digest();
  auto run = [&](const std::string& label, auto&& defect_at) {
    WChainEntry e;
    e.label = label;
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i) {
        ++e.instances;
        NcPoly nf = rs.reduce(defect_at(k, i)).normal_form;
        if (!nf.is_zero() && e.verdict == Verdict::Proven) {
          e.verdict = rs.is_confluent() ? Verdict::NotInIdeal : Verdict::Inconclusive;
          e.witness = "entry (" + std::to_string(k) + "," + std::to_string(i) +
                      ") normal form " + poly_to_string(nf);
        }
      }
    rep.entries.push_back(std::move(e));
  };

  for (int n = 1; n <= W; ++n)
    run("v(" + std::to_string(n) + ") = v(" + std::to_string(-n) + ")",
        [&](int k, int i) { return NcPoly(v(n, k, i)) - NcPoly(v(-n, k, i)); });
  for (int n = 0; n + 1 <= W; ++n)
    run("v(" + std::to_string(n + 1) + ") = v(" + std::to_string(n) + ") w",
        [&](int k, int i) {
          return NcPoly(v(n + 1, k, i)) - NcPoly(v(n, k, i)) * NcPoly(v(1, k, i));
        });
  run("w^2 = v(0)", [&](int k, int i) {
    return NcPoly(v(1, k, i)) * NcPoly(v(1, k, i)) - NcPoly(v(0, k, i));
  });
  for (int n = -W; n <= W; ++n)
    run("v(" + std::to_string(n) + ") = w^r(" + std::to_string(n) + ")",
        [&](int k, int i) {
          NcPoly w(v(1, k, i));
          NcPoly pw = segments_detail::exponent_for(n) == 2 ? w * w : w;
          return NcPoly(v(n, k, i)) - pw;
        });
  return rep;
}

}  // namespace qsym
