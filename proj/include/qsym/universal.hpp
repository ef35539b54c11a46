#pragma once

#include <set>
#include <string>
#include <vector>

#include "qsym/coaction.hpp"

namespace qsym {

// ---------------------------------------------------------------------------
// The generators-and-relations shadow of the universal symmetry object of a
// filtration spec: the free product of the universal unitary presentations
// A_u(s^(i)) over the blocks, cut down by the polynomial relations that make
// the tautological coaction (beta = the symbolic generator matrix per block)
// preserve the filtration data.
// ---------------------------------------------------------------------------

/// Free product of A_u(s^(i)) with one generator family per block, sharing a
/// family name and distinguished by block index.
inline Presentation build_universal(const FiltrationSpec& spec,
                                    const std::string& family = "v") {
  if (spec.blocks.empty()) throw std::invalid_argument("spec has no blocks");
  std::vector<Presentation> parts;
  for (size_t i = 0; i < spec.blocks.size(); ++i)
    parts.push_back(build_au(compute_s(spec, i), family, static_cast<int>(i)));
  Presentation p = free_product(parts);
  p.name = "U(" + spec.name + ")";
  return p;
}

/// The tautological certificate over build_universal: the module coaction is
/// the symbolic generator matrix blockwise, and the algebra coaction is the
/// one induced through the inner product. Each algebra basis element a_t must
/// be a scalar multiple of a single inner product <e_m|e_n>; the first such
/// pair (lexicographically) defines alpha(a_t) = c^-1 <beta(e_m)|beta(e_n)>.
inline CoactionCertificate universal_certificate(const FiltrationSpec& spec,
                                                 const std::string& family = "v",
                                                 CompletionConfig cfg = {}) {
  CoactionCertificate cert;
  cert.target = build_universal(spec, family);
  cert.rewrite_cfg = cfg;

  coact::BlockIndex bi(spec);
  for (size_t i = 0; i < spec.blocks.size(); ++i) {
    size_t d = spec.blocks[i].size();
    std::vector<std::vector<NcPoly>> blk(d, std::vector<NcPoly>(d));
    for (size_t k = 0; k < d; ++k)
      for (size_t j = 0; j < d; ++j) {
        Generator g(family, static_cast<int>(k), static_cast<int>(j));
        g.block = static_cast<int>(i);
        blk[k][j] = NcPoly(g);
      }
    cert.beta_blocks.push_back(std::move(blk));
  }

  const size_t na = spec.algebra.dim, ne = spec.module_dim;
  cert.alpha_matrix.assign(na, std::vector<NcPoly>(na));
  for (size_t t = 0; t < na; ++t) {
    bool found = false;
    for (size_t m = 0; m < ne && !found; ++m)
      for (size_t n = 0; n < ne && !found; ++n) {
        const Coords& it = spec.inner_tensor[m][n];
        if (it[t].is_zero()) continue;
        bool pure = true;
        for (size_t u = 0; u < na; ++u)
          if (u != t && !it[u].is_zero()) {
            pure = false;
            break;
          }
        if (!pure) continue;
        found = true;
        Scalar cinv = Scalar::one() / it[t];
        for (size_t p = 0; p < ne; ++p) {
          const NcPoly* bpm = bi.global_beta(cert, p, m);
          if (!bpm || bpm->is_zero()) continue;
          NcPoly bpm_star = star(*bpm);
          for (size_t q = 0; q < ne; ++q) {
            const NcPoly* bqn = bi.global_beta(cert, q, n);
            if (!bqn || bqn->is_zero()) continue;
            NcPoly prod = bpm_star * (*bqn);
            for (size_t s = 0; s < na; ++s)
              if (!spec.inner_tensor[p][q][s].is_zero())
                cert.alpha_matrix[s][t] += (cinv * spec.inner_tensor[p][q][s]) * prod;
          }
        }
      }
    if (!found)
      throw std::invalid_argument(
          "algebra basis element " + std::to_string(t) +
          " is not a scalar multiple of any single basis inner product; the "
          "induced coaction on the algebra is not determined");
  }
  return cert;
}

namespace detail {

/// Scales a nonzero polynomial so its leading (degree-lex greatest) term has
/// coefficient 1; used to dedupe relation sets up to scalar multiples.
inline NcPoly monic(const NcPoly& p) {
  const Scalar& lead = p.terms().rbegin()->second;
  return (Scalar::one() / lead) * p;
}

}  // namespace detail

/// Defect polynomials of the filtration axioms -- inner-product equivariance,
/// action equivariance, state preservation, J-equivariance, and invariance of
/// the distinguished vector -- for the tautological certificate. Instances
/// that need a product outside the truncation are skipped, matching the
/// verifier. Deduped up to scalar multiples; `exclude` (typically the A_u
/// relations already present) is dropped from the output.
inline std::vector<NcPoly> universal_relations(const FiltrationSpec& spec,
                                               const CoactionCertificate& cert,
                                               const std::vector<NcPoly>& exclude = {}) {
  coact::validate_shapes(spec, cert);
  const AlgebraData& A = spec.algebra;
  const size_t na = A.dim, ne = spec.module_dim;
  const auto& alpha = cert.alpha_matrix;
  coact::BlockIndex bi(spec);

  std::set<std::string> seen;
  for (const NcPoly& r : exclude)
    if (!r.is_zero()) seen.insert(poly_to_string(detail::monic(r)));

  std::vector<NcPoly> out;
  auto emit = [&](NcPoly defect) {
    if (defect.is_zero()) return;
    NcPoly m = detail::monic(defect);
    if (seen.insert(poly_to_string(m)).second) out.push_back(std::move(m));
  };

  // Inner-product equivariance: <beta(e_m)|beta(e_n)> = alpha(<e_m|e_n>).
  for (size_t m = 0; m < ne; ++m)
    for (size_t n = 0; n < ne; ++n) {
      std::vector<NcPoly> comp(na);
      for (size_t p = 0; p < ne; ++p) {
        const NcPoly* bpm = bi.global_beta(cert, p, m);
        if (!bpm || bpm->is_zero()) continue;
        NcPoly bpm_star = star(*bpm);
        for (size_t q = 0; q < ne; ++q) {
          const NcPoly* bqn = bi.global_beta(cert, q, n);
          if (!bqn || bqn->is_zero()) continue;
          NcPoly prod = bpm_star * (*bqn);
          for (size_t t = 0; t < na; ++t)
            if (!spec.inner_tensor[p][q][t].is_zero())
              comp[t] += spec.inner_tensor[p][q][t] * prod;
        }
      }
      for (size_t t = 0; t < na; ++t) {
        NcPoly rhs;
        for (size_t u = 0; u < na; ++u)
          if (!spec.inner_tensor[m][n][u].is_zero())
            rhs += spec.inner_tensor[m][n][u] * alpha[t][u];
        emit(comp[t] - rhs);
      }
    }

  // Action equivariance: beta(e_m . a_r) = beta(e_m) . alpha(a_r).
  for (size_t m = 0; m < ne; ++m)
    for (size_t r = 0; r < na; ++r) {
      const MaybeCoords& act = spec.action_tensor[m][r];
      if (!act) continue;
      bool skip = false;
      std::vector<NcPoly> comp(ne);
      for (size_t n = 0; n < ne; ++n) {
        if ((*act)[n].is_zero()) continue;
        for (size_t p : spec.blocks[bi.block_of[n]])
          comp[p] += (*act)[n] * (*bi.global_beta(cert, p, n));
      }
      for (size_t q = 0; q < ne && !skip; ++q) {
        const NcPoly* bqm = bi.global_beta(cert, q, m);
        if (!bqm || bqm->is_zero()) continue;
        for (size_t s = 0; s < na && !skip; ++s) {
          if (alpha[s][r].is_zero()) continue;
          const MaybeCoords& gqs = spec.action_tensor[q][s];
          if (!gqs) {
            skip = true;
            break;
          }
          NcPoly prod = (*bqm) * alpha[s][r];
          for (size_t p = 0; p < ne; ++p)
            if (!(*gqs)[p].is_zero()) comp[p] -= (*gqs)[p] * prod;
        }
      }
      if (skip) continue;
      for (size_t p = 0; p < ne; ++p) emit(std::move(comp[p]));
    }

  // State preservation: (tau (x) id) alpha = tau(.) 1.
  for (size_t r = 0; r < na; ++r) {
    NcPoly lhs;
    for (size_t s = 0; s < na; ++s)
      if (!A.trace_vector[s].is_zero()) lhs += A.trace_vector[s] * alpha[s][r];
    emit(lhs - A.trace_vector[r] * NcPoly::one());
  }

  // J-equivariance blockwise: (J (x) *) beta = beta J.
  for (size_t i = 0; i < spec.blocks.size(); ++i) {
    size_t d = spec.blocks[i].size();
    auto jb = [&](size_t r, size_t c) {
      return spec.j_matrix(spec.blocks[i][r], spec.blocks[i][c]);
    };
    for (size_t k = 0; k < d; ++k)
      for (size_t j = 0; j < d; ++j) {
        NcPoly lhs, rhs;
        for (size_t l = 0; l < d; ++l) {
          if (!jb(k, l).is_zero()) lhs += jb(k, l) * star(cert.beta_blocks[i][l][j]);
          if (!jb(l, j).is_zero()) rhs += jb(l, j) * cert.beta_blocks[i][k][l];
        }
        emit(lhs - rhs);
      }
  }

  // The distinguished vector is fixed: beta(xi0) = xi0 (x) 1.
  for (size_t p = 0; p < ne; ++p) {
    NcPoly got;
    for (size_t n : spec.blocks[bi.block_of[p]])
      if (!spec.xi0[n].is_zero()) got += spec.xi0[n] * (*bi.global_beta(cert, p, n));
    emit(got - spec.xi0[p] * NcPoly::one());
  }

  return out;
}

/// The emitted presentation: build_universal plus the filtration-derived
/// relations of the tautological certificate.
inline Presentation universal_presentation(const FiltrationSpec& spec,
                                           const std::string& family = "v") {
  CoactionCertificate cert = universal_certificate(spec, family);
  Presentation p = cert.target;
  for (NcPoly& r : universal_relations(spec, cert, p.relations))
    p.relations.push_back(std::move(r));
  return p;
}

}  // namespace qsym
