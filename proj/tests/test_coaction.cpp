#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <stdexcept>

#include "qsym/catalog.hpp"
#include "qsym/coaction.hpp"
#include "qsym/filtration.hpp"
#include "qsym/numeric.hpp"

using namespace qsym;

namespace {

Matrix identity2() { return Matrix::identity(2); }

/// A rational rotation by the 3-4-5 triangle: a real orthogonal matrix that is
/// not a signed permutation, hence separates genuinely orthogonal-group
/// identities from hyperoctahedral ones.
ClassicalPoint rotation_point(const std::string& family = "u") {
  CMat m(2, 2);
  m(0, 0) = cdouble(3.0 / 5.0, 0.0);
  m(0, 1) = cdouble(-4.0 / 5.0, 0.0);
  m(1, 0) = cdouble(4.0 / 5.0, 0.0);
  m(1, 1) = cdouble(3.0 / 5.0, 0.0);
  ClassicalPoint pt;
  pt.label = "rotation(3-4-5)";
  pt.set(family, m);
  return pt;
}

ClassicalPoint reflection_point(double value, const std::string& family = "z") {
  CMat m(1, 1);
  m(0, 0) = cdouble(value, 0.0);
  ClassicalPoint pt;
  pt.label = "z=" + std::to_string(static_cast<int>(value));
  pt.set(family, m);
  return pt;
}

/// Functions on three points with the uniform state, in the point basis.
AlgebraData three_point_algebra() {
  AlgebraData A;
  A.dim = 3;
  A.struct_consts.assign(3, std::vector<MaybeCoords>(3));
  for (size_t r = 0; r < 3; ++r)
    for (size_t s = 0; s < 3; ++s) {
      Coords c(3, Scalar::zero());
      if (r == s) c[r] = Scalar::one();
      A.struct_consts[r][s] = c;
    }
  A.star_matrix = Matrix::identity(3);
  A.unit_vector = Coords(3, Scalar::one());
  A.trace_vector = Coords(3, Scalar(make_rational(1, 3)));
  return A;
}

/// The reflection swap of points 1 and 2, as a certificate over C(Z2):
/// alpha(d_0) = d_0 (x) 1, alpha(d_1/2) mix through (1 +- z)/2.
CoactionCertificate three_point_swap_certificate() {
  CoactionCertificate cert;
  cert.target = reflection_presentation();
  NcPoly one(Scalar::one());
  NcPoly z(Generator("z", 0, 0));
  Scalar half(make_rational(1, 2));
  NcPoly even = half * (one + z), odd = half * (one - z);
  cert.alpha_matrix.assign(3, std::vector<NcPoly>(3));
  cert.alpha_matrix[0][0] = one;
  cert.alpha_matrix[1][1] = even;
  cert.alpha_matrix[2][1] = odd;
  cert.alpha_matrix[1][2] = odd;
  cert.alpha_matrix[2][2] = even;
  cert.rewrite_cfg.max_degree = 4;
  return cert;
}

FiltrationSpec three_point_bare_spec() {
  FiltrationSpec sp;
  sp.name = "three-point";
  sp.algebra = three_point_algebra();
  return sp;
}

Coords coords(std::initializer_list<long> vals) {
  Coords out;
  for (long v : vals) out.emplace_back(v);
  return out;
}

}  // namespace

TEST_CASE("trivial certificate proves every axiom on the two point spec") {
  TwoPointModel model = two_point_model();
  CoactionCertificate cert = trivial_certificate(model.spec);
  AxiomReport rep = verify_certificate(model.spec, cert);
  INFO(rep.to_string());
  REQUIRE(rep.all_proven());
  REQUIRE(rep.total_skipped() == 0);
  REQUIRE_FALSE(rep.any_refuted());
  REQUIRE(rep.find("alpha-multiplicative") != nullptr);
  REQUIRE(rep.find("inner-product-equivariant")->status == AxiomStatus::Proven);
  REQUIRE(rep.find("base-vector-fixed")->status == AxiomStatus::Proven);
  REQUIRE(rep.find("v-s-twisted-unitary")->status == AxiomStatus::Proven);
  REQUIRE(rep.checks.size() == 15);
  for (const AxiomCheck& c : rep.checks) {
    INFO(c.key);
    REQUIRE_FALSE(c.trace_digest.empty());
  }
}

TEST_CASE("trivial certificate proves every axiom on random specs") {
  std::mt19937 rng(424242);
  for (int iter = 0; iter < 5; ++iter) {
    FiltrationSpec sp = random_valid_spec(rng, 1 + iter % 3, 2 + iter % 3);
    AxiomReport rep = verify_certificate(sp, trivial_certificate(sp));
    INFO(rep.to_string());
    REQUIRE(rep.all_proven());
    REQUIRE(rep.total_skipped() == 0);
  }
}

TEST_CASE("certificate shape mismatches are rejected") {
  TwoPointModel model = two_point_model();
  SECTION("alpha matrix must be square of algebra dimension") {
    CoactionCertificate bad = trivial_certificate(model.spec);
    bad.alpha_matrix.pop_back();
    REQUIRE_THROWS_AS(verify_coaction(model.spec, bad), std::invalid_argument);
  }
  SECTION("beta must have one square block per filtration block") {
    CoactionCertificate bad = trivial_certificate(model.spec);
    bad.beta_blocks.pop_back();
    REQUIRE_THROWS_AS(verify_coaction(model.spec, bad), std::invalid_argument);
  }
  SECTION("beta block rows must match the block size") {
    CoactionCertificate bad = trivial_certificate(model.spec);
    bad.beta_blocks[1].push_back(bad.beta_blocks[1][0]);
    REQUIRE_THROWS_AS(verify_coaction(model.spec, bad), std::invalid_argument);
  }
}

TEST_CASE("quantum permutation certificate verifies on the two point spec") {
  TwoPointModel model = two_point_model();
  AxiomReport rep = verify_certificate(model.spec, model.certificate);
  INFO(rep.to_string());
  REQUIRE(rep.all_proven());
  REQUIRE(rep.total_skipped() == 0);
  REQUIRE(rep.completion == CompletionStatus::Complete);
}

TEST_CASE("free orthogonal certificate verifies") {
  SECTION("P = identity") {
    FreeOrthogonalModel model = free_orthogonal_model(identity2());
    REQUIRE(validate(model.spec).ok());
    AxiomReport rep = verify_certificate(model.spec, model.certificate);
    INFO(rep.to_string());
    REQUIRE(rep.all_proven());
    REQUIRE(rep.total_skipped() == 0);
  }
  SECTION("P a weighted swap, so J squared is not the identity") {
    Matrix p(2, 2);
    p(0, 1) = Scalar(2);
    p(1, 0) = Scalar::one();
    FreeOrthogonalModel model = free_orthogonal_model(p);
    REQUIRE(validate(model.spec).ok());
    Matrix s = compute_s(model.spec, 0);
    REQUIRE(s(0, 0) == Scalar::one());
    REQUIRE(s(1, 1) == Scalar(4));
    AxiomReport rep = verify_certificate(model.spec, model.certificate);
    INFO(rep.to_string());
    REQUIRE(rep.all_proven());
  }
  SECTION("singular P is rejected") {
    Matrix p(2, 2);
    p(0, 0) = Scalar::one();
    REQUIRE_THROWS_AS(free_orthogonal_model(p), std::invalid_argument);
  }
}

TEST_CASE("tampered certificate: symbolic inconclusive, numeric refutation") {
  FreeOrthogonalModel model = free_orthogonal_model(identity2());
  CoactionCertificate tampered = model.certificate;
  tampered.beta_blocks[0][0][1] = Scalar(-1) * tampered.beta_blocks[0][0][1];

  SECTION("without numeric points the failure stays inconclusive") {
    AxiomReport rep = verify_certificate(model.spec, tampered);
    INFO(rep.to_string());
    REQUIRE_FALSE(rep.all_proven());
    REQUIRE_FALSE(rep.any_refuted());
    const AxiomCheck* ipe = rep.find("inner-product-equivariant");
    REQUIRE(ipe->status == AxiomStatus::Inconclusive);
    REQUIRE(ipe->witness.find("normal form") != std::string::npos);
    REQUIRE(rep.find("alpha-multiplicative")->status == AxiomStatus::Proven);
    REQUIRE(rep.find("j-equivariant")->status == AxiomStatus::Proven);
    REQUIRE(rep.find("beta-coassociative")->status == AxiomStatus::Inconclusive);
  }
  SECTION("a rotation point upgrades the failure to a refutation") {
    AxiomReport rep = verify_certificate(model.spec, tampered, {rotation_point()});
    INFO(rep.to_string());
    REQUIRE(rep.any_refuted());
    const AxiomCheck* ipe = rep.find("inner-product-equivariant");
    REQUIRE(ipe->status == AxiomStatus::RefutedNumerically);
    REQUIRE(ipe->witness.find("rotation(3-4-5)") != std::string::npos);
    REQUIRE(rep.find("beta-density")->status == AxiomStatus::RefutedNumerically);
    REQUIRE(rep.find("beta-coassociative")->status == AxiomStatus::RefutedNumerically);
    REQUIRE(rep.find("alpha-multiplicative")->status == AxiomStatus::Proven);
    REQUIRE(rep.find("j-equivariant")->status == AxiomStatus::Proven);
    REQUIRE(rep.find("alpha-coassociative")->status == AxiomStatus::Proven);
  }
}

TEST_CASE("unitarity consequences hold for the free orthogonal certificate") {
  FreeOrthogonalModel model = free_orthogonal_model(identity2());
  AxiomReport rep = check_unitarity_consequences(model.spec, model.certificate);
  INFO(rep.to_string());
  REQUIRE(rep.all_proven());
  REQUIRE(rep.checks.size() == 3);
}

TEST_CASE("group-like element checks") {
  SECTION("the reflection generator is group-like") {
    Presentation p = reflection_presentation();
    AxiomReport rep = check_group_like(p, NcPoly(Generator("z", 0, 0)));
    INFO(rep.to_string());
    REQUIRE(rep.all_proven());
    REQUIRE(rep.find("square-is-one")->status == AxiomStatus::Proven);
    REQUIRE(rep.find("self-adjoint")->status == AxiomStatus::Proven);
    REQUIRE(rep.find("group-like-comultiplication")->status == AxiomStatus::Proven);
  }
  SECTION("the unit is group-like") {
    Presentation p = reflection_presentation();
    AxiomReport rep = check_group_like(p, NcPoly(Scalar::one()));
    REQUIRE(rep.all_proven());
  }
  SECTION("a generic generator is not provably group-like") {
    Presentation p = free_orthogonal_presentation(identity2());
    CompletionConfig cfg;
    cfg.max_degree = 4;
    AxiomReport rep = check_group_like(p, NcPoly(Generator("u", 0, 0)), cfg);
    INFO(rep.to_string());
    REQUIRE_FALSE(rep.all_proven());
    REQUIRE(rep.find("group-like-comultiplication")->status == AxiomStatus::Inconclusive);
  }
}

TEST_CASE("morphism checks") {
  Presentation refl = reflection_presentation();
  Generator z("z", 0, 0);
  SECTION("identity morphism") {
    std::map<Generator, NcPoly> idmap{{z, NcPoly(z)}};
    MorphismReport rep = check_morphism(refl, refl, idmap);
    INFO(rep.to_string());
    REQUIRE(rep.all_proven());
    REQUIRE(rep.relation_checks.size() == 2);
    REQUIRE(rep.comultiplication_checks.size() == 1);
  }
  SECTION("sign flip respects relations but not comultiplication") {
    std::map<Generator, NcPoly> flip{{z, Scalar(-1) * NcPoly(z)}};
    MorphismReport rep = check_morphism(refl, refl, flip);
    INFO(rep.to_string());
    REQUIRE_FALSE(rep.all_proven());
    for (const MorphismEntry& e : rep.relation_checks)
      REQUIRE(e.verdict == Verdict::Proven);
    REQUIRE(rep.comultiplication_checks[0].verdict == Verdict::NotInIdeal);
  }
  SECTION("missing generator image throws") {
    std::map<Generator, NcPoly> empty;
    REQUIRE_THROWS_AS(check_morphism(refl, refl, empty), std::out_of_range);
  }
  SECTION("the one dimensional hyperoctahedral algebra is the reflection algebra") {
    Presentation h1 = hyperoctahedral_presentation(1);
    Generator u("u", 0, 0);
    std::map<Generator, NcPoly> fwd{{u, NcPoly(z)}};
    std::map<Generator, NcPoly> bwd{{z, NcPoly(u)}};
    MorphismReport to_refl = check_morphism(h1, refl, fwd);
    MorphismReport from_refl = check_morphism(refl, h1, bwd);
    INFO(to_refl.to_string());
    INFO(from_refl.to_string());
    REQUIRE(to_refl.all_proven());
    REQUIRE(from_refl.all_proven());
  }
}

TEST_CASE("subalgebra preservation checks") {
  FiltrationSpec sp = three_point_bare_spec();
  CoactionCertificate cert = three_point_swap_certificate();

  SECTION("the full algebra is vacuously preserved") {
    std::vector<Coords> full{coords({1, 0, 0}), coords({0, 1, 0}), coords({0, 0, 1})};
    AxiomReport rep = check_subalgebra_preserved(sp, cert, full);
    const AxiomCheck* check = rep.find("subalgebra-preserved");
    REQUIRE(check->status == AxiomStatus::Proven);
    REQUIRE(check->instances == 0);
  }
  SECTION("a swap-invariant subalgebra is preserved") {
    std::vector<Coords> inv{coords({1, 0, 0}), coords({0, 1, 1})};
    AxiomReport rep = check_subalgebra_preserved(sp, cert, inv);
    const AxiomCheck* check = rep.find("subalgebra-preserved");
    INFO(check->witness);
    REQUIRE(check->status == AxiomStatus::Proven);
    REQUIRE(check->instances > 0);
  }
  SECTION("a non-invariant subalgebra fails, numerically once a point is given") {
    std::vector<Coords> bad{coords({1, 1, 0}), coords({0, 0, 1})};
    AxiomReport sym = check_subalgebra_preserved(sp, cert, bad);
    const AxiomCheck* symc = sym.find("subalgebra-preserved");
    INFO(symc->witness);
    REQUIRE(symc->status == AxiomStatus::Inconclusive);
    AxiomReport num =
        check_subalgebra_preserved(sp, cert, bad, {reflection_point(-1.0)});
    const AxiomCheck* numc = num.find("subalgebra-preserved");
    INFO(numc->witness);
    REQUIRE(numc->status == AxiomStatus::RefutedNumerically);
    REQUIRE(numc->witness.find("z=-1") != std::string::npos);
  }
  SECTION("bases that are not subalgebras are rejected") {
    REQUIRE_THROWS_AS(
        check_subalgebra_preserved(sp, cert, {coords({0, 1, 0})}),
        std::invalid_argument);  // no unit
    REQUIRE_THROWS_AS(
        check_subalgebra_preserved(sp, cert, {coords({1, 0, 0}), coords({1, 0, 0})}),
        std::invalid_argument);  // dependent
    REQUIRE_THROWS_AS(
        check_subalgebra_preserved(
            sp, cert, {coords({1, 1, 1}), coords({1, 2, 0})}),
        std::invalid_argument);  // not multiplicatively closed
  }
}
