#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>
#include <string>
#include <vector>

#include "qsym/poly_text.hpp"
#include "qsym/rewrite.hpp"

using namespace qsym;

namespace {

NcPoly P(const std::string& s) { return poly_from_string(s); }

// Entrywise self-adjoint 2x2 matrix whose rows and columns consist of
// pairwise-orthogonal elements with squares summing to 1.
std::vector<NcPoly> quad_orthogonal_2x2() {
  std::vector<NcPoly> rels;
  auto u = [](int i, int j, bool st = false) { return gen("u", i, j, st); };
  for (int i = 0; i < 2; ++i) {
    rels.push_back(u(i, 0) * u(i, 1));
    rels.push_back(u(i, 1) * u(i, 0));
    rels.push_back(u(0, i) * u(1, i));
    rels.push_back(u(1, i) * u(0, i));
  }
  for (int i = 0; i < 2; ++i) {
    NcPoly row, col;
    for (int l = 0; l < 2; ++l) {
      row += u(i, l) * u(i, l);
      col += u(l, i) * u(l, i);
    }
    rels.push_back(row - NcPoly::one());
    rels.push_back(col - NcPoly::one());
  }
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) rels.push_back(u(i, j, true) - u(i, j));
  return rels;
}

std::vector<NcPoly> magic_2x2() {
  std::vector<NcPoly> rels;
  auto u = [](int i, int j, bool st = false) { return gen("u", i, j, st); };
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      rels.push_back(u(i, j) * u(i, j) - u(i, j));
      rels.push_back(u(i, j, true) - u(i, j));
    }
  for (int i = 0; i < 2; ++i) {
    NcPoly row, col;
    for (int j = 0; j < 2; ++j) {
      row += u(i, j);
      col += u(j, i);
    }
    rels.push_back(row - NcPoly::one());
    rels.push_back(col - NcPoly::one());
  }
  return rels;
}

}  // namespace

TEST_CASE("encoded-polynomial merge arithmetic matches NcPoly arithmetic") {
  RewriteSystem rs = RewriteSystem::from_relations(
      {}, false,
      {Generator("u", 0, 0), Generator("v", 0, 0), Generator("z", 0, 0)});
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> pick(0, 2), len(0, 3), coeff(-4, 4);
  auto rnd_word = [&]() {
    Word w;
    static const std::vector<std::string> fams = {"u", "v", "z"};
    int l = len(rng);
    for (int i = 0; i < l; ++i) {
      Generator g(fams[pick(rng)], 0, 0, pick(rng) == 0);
      w.push_back(g);
    }
    return w;
  };
  auto rnd_poly = [&]() {
    NcPoly p;
    int n = len(rng);
    for (int i = 0; i < n; ++i)
      p.add_term(rnd_word(), Scalar(make_rational(coeff(rng)), make_rational(coeff(rng))));
    return p;
  };
  for (int it = 0; it < 200; ++it) {
    NcPoly a = rnd_poly(), b = rnd_poly();
    Word pre = rnd_word(), suf = rnd_word();
    Scalar k(make_rational(coeff(rng), 3));
    EPoly got = epoly_add_scaled(rs.encode_poly(a), rs.encode_poly(b), k,
                                 rs.alphabet().encode(pre), rs.alphabet().encode(suf));
    NcPoly want = a + k * (NcPoly(pre) * b * NcPoly(suf));
    CHECK(rs.decode_poly(got) == want);
  }
}

TEST_CASE("unitary circle relations complete to a two-rule system") {
  std::vector<NcPoly> rels = {P("z z* - 1"), P("z* z - 1")};
  RewriteSystem rs = RewriteSystem::from_relations(rels);
  CHECK(rs.complete() == CompletionStatus::Complete);
  CHECK(rs.is_confluent());
  CHECK(rs.active_rule_count() == 2);

  CHECK(rs.reduce(P("z z z* z* - 1")).normal_form.is_zero());
  CHECK(rs.reduce(P("z z* z")).normal_form == P("z"));

  auto r = implies(rels, P("z z z* z* - 1"));
  CHECK(r.verdict == Verdict::Proven);
  auto r2 = implies(rels, P("z - 1"));
  CHECK(r2.verdict == Verdict::NotInIdeal);  // complete system: nonzero nf is a refutation
}

TEST_CASE("reduction strategy: leftmost position, lowest rule id") {
  RewriteSystem rs =
      RewriteSystem::from_relations({P("a a - 1"), P("a b - 1")}, false);
  auto red = rs.reduce(P("a a b"));
  // position 0 (rule a a -> 1) wins over position 1 (rule a b -> 1)
  REQUIRE(red.steps.size() == 1);
  CHECK(red.steps[0] == ReductionStep{0, 0});
  CHECK(red.normal_form == P("b"));

  SECTION("completion derives b -> a and collapses a b -> 1") {
    CHECK(rs.complete() == CompletionStatus::Complete);
    CHECK(rs.active_rule_count() == 2);
    auto lines = rs.rule_strings();
    CHECK(std::find(lines.begin(), lines.end(), "b -> a") != lines.end());
    CHECK(rs.reduce(P("b - a")).normal_form.is_zero());
  }
}

TEST_CASE("reflection-pair group: canonical system and order-six normal form count") {
  // <a, b | a^2 = b^2 = (ab)^3 = 1>: six elements; the canonical deg-lex
  // system is { aa -> 1, bb -> 1, bab -> aba }.
  std::vector<NcPoly> rels = {P("a a - 1"), P("b b - 1"),
                              P("a b a b a b - 1")};
  RewriteSystem rs = RewriteSystem::from_relations(rels, false);
  CompletionConfig cfg;
  cfg.max_degree = 12;
  REQUIRE(rs.complete(cfg) == CompletionStatus::Complete);
  CHECK(rs.active_rule_count() == 3);
  auto lines = rs.rule_strings();
  CHECK(std::find(lines.begin(), lines.end(), "b a b -> a b a") != lines.end());

  // independent oracle: the number of distinct normal forms of all words of
  // length <= 6 must equal the group order
  std::set<std::string> nfs;
  Generator a("a", 0, 0), b("b", 0, 0);
  std::vector<Word> frontier = {Word{}};
  for (int l = 0; l < 6; ++l) {
    std::vector<Word> next;
    for (const Word& w : frontier)
      for (const Generator& g : {a, b}) {
        Word x = w;
        x.push_back(g);
        next.push_back(x);
      }
    for (const Word& w : next) nfs.insert(poly_to_string(rs.reduce(NcPoly(w)).normal_form));
    frontier = std::move(next);
  }
  nfs.insert("1");
  CHECK(nfs.size() == 6);

  CHECK(implies(rels, P("a b a - b a b"), cfg).verdict == Verdict::Proven);

  SECTION("degree cap yields Inconclusive, not a wrong refutation") {
    CompletionConfig low;
    low.max_degree = 3;
    auto r = implies(rels, P("a b a - b a b"), low);
    CHECK(r.completion == CompletionStatus::DegreeCapped);
    CHECK(r.verdict == Verdict::Inconclusive);
    CHECK_FALSE(r.normal_form.is_zero());
  }
}

TEST_CASE("quad-orthogonal family: derived consequences") {
  std::vector<NcPoly> rels = quad_orthogonal_2x2();
  RewriteSystem rs = RewriteSystem::from_relations(rels);
  CompletionConfig cfg;
  cfg.max_degree = 6;
  rs.complete(cfg);

  // cube law on each entry
  CHECK(rs.reduce(P("u[0,0] u[0,0] u[0,0] - u[0,0]")).normal_form.is_zero());
  // the column-sum element is a self-adjoint reflection
  NcPoly omega = P("u[0,0] + u[1,0]");
  CHECK(rs.reduce(omega * omega - NcPoly::one()).normal_form.is_zero());
  CHECK(rs.reduce(star(omega) - omega).normal_form.is_zero());
  // off-diagonal squares agree
  CHECK(rs.reduce(P("u[0,1] u[0,1] - u[1,0] u[1,0]")).normal_form.is_zero());
  // a generator itself is not in the ideal
  CHECK_FALSE(rs.reduce(P("u[0,0]")).normal_form.is_zero());
}

TEST_CASE("magic family: cross products vanish and diagonal links") {
  std::vector<NcPoly> rels = magic_2x2();
  CompletionConfig cfg;
  cfg.max_degree = 5;
  CHECK(implies(rels, P("u[0,0] u[0,1]"), cfg).verdict == Verdict::Proven);
  CHECK(implies(rels, P("u[0,0] u[1,0]"), cfg).verdict == Verdict::Proven);
  CHECK(implies(rels, P("u[0,0] u[1,1] - u[0,0]"), cfg).verdict == Verdict::Proven);
  CHECK(implies(rels, P("u[0,0] - u[1,1]"), cfg).verdict == Verdict::Proven);
  CHECK(implies(rels, P("u[0,0] - u[0,1]"), cfg).verdict != Verdict::Proven);
}

TEST_CASE("star closure adds the mirrored rules") {
  RewriteSystem closed = RewriteSystem::from_relations({P("z z - z")}, true);
  CHECK(closed.reduce(P("z* z* z*")).normal_form == P("z*"));

  RewriteSystem open = RewriteSystem::from_relations({P("z z - z")}, false);
  CHECK(open.reduce(P("z* z*")).normal_form == P("z* z*"));
}

TEST_CASE("inconsistent relations collapse the algebra") {
  std::vector<NcPoly> rels = {P("z - 1"), P("z + 1")};
  RewriteSystem rs = RewriteSystem::from_relations(rels);
  CHECK(rs.is_trivial());
  CHECK(rs.reduce(P("z z* - 5")).normal_form.is_zero());
  CHECK(rs.complete() == CompletionStatus::Complete);
  CHECK(implies(rels, P("17")).verdict == Verdict::Proven);
}

TEST_CASE("reduction certificates replay and detect tampering") {
  std::vector<NcPoly> rels = quad_orthogonal_2x2();
  RewriteSystem rs = RewriteSystem::from_relations(rels);
  CompletionConfig cfg;
  cfg.max_degree = 6;
  rs.complete(cfg);

  NcPoly omega = P("u[0,0] + u[1,0]");
  NcPoly input = omega * omega - NcPoly::one();
  auto red = rs.reduce(input);
  REQUIRE(red.normal_form.is_zero());
  REQUIRE_FALSE(red.steps.empty());

  CHECK(rs.replay(input, red.steps, red.normal_form));

  auto bad_steps = red.steps;
  bad_steps[0].pos += 7;
  CHECK_FALSE(rs.replay(input, bad_steps, red.normal_form));

  CHECK_FALSE(rs.replay(input, red.steps, NcPoly::one()));

  // no-op certificate on an irreducible element
  auto idred = rs.reduce(P("u[0,0]"));
  CHECK(rs.replay(P("u[0,0]"), idred.steps, idred.normal_form));
}

TEST_CASE("completion is deterministic and canonical") {
  std::vector<NcPoly> rels = quad_orthogonal_2x2();
  CompletionConfig cfg;
  cfg.max_degree = 6;

  RewriteSystem r1 = RewriteSystem::from_relations(rels);
  r1.complete(cfg);
  RewriteSystem r2 = RewriteSystem::from_relations(rels);
  r2.complete(cfg);
  CHECK(r1.digest() == r2.digest());
  CHECK(r1.rule_strings() == r2.rule_strings());

  // a confluent inter-reduced monic system is unique for the ideal and
  // order, so even reversed input order must give the same system
  if (r1.is_confluent()) {
    std::vector<NcPoly> rev(rels.rbegin(), rels.rend());
    RewriteSystem r3 = RewriteSystem::from_relations(rev);
    r3.complete(cfg);
    if (r3.is_confluent()) {
      CHECK(r3.digest() == r1.digest());
      CHECK(r3.rule_strings() == r1.rule_strings());
    }
  }
}

TEST_CASE("empty relation set and foreign letters") {
  RewriteSystem rs = RewriteSystem::from_relations({});
  CHECK(rs.complete() == CompletionStatus::Complete);
  CHECK(rs.reduce(NcPoly::one()).normal_form == NcPoly::one());

  auto r = implies({P("z z - 1")}, P("w[0,1] w[0,1]"));
  CHECK(r.verdict == Verdict::NotInIdeal);
  CHECK(r.normal_form == P("w[0,1] w[0,1]"));
}
