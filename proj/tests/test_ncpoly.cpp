#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <string>
#include <vector>

#include "qsym/ncpoly.hpp"
#include "qsym/poly_text.hpp"

using namespace qsym;

namespace {

std::mt19937 rng(20240817);

Rational rnd_rational() {
  std::uniform_int_distribution<long> num(-6, 6), den(1, 5);
  return make_rational(num(rng), den(rng));
}

Scalar rnd_scalar_nonzero() {
  for (;;) {
    Scalar s(rnd_rational(), rnd_rational());
    if (!s.is_zero()) return s;
  }
}

Generator rnd_generator(int max_slot = 0) {
  static const std::vector<std::string> fams = {"u", "v", "z"};
  std::uniform_int_distribution<size_t> fam(0, fams.size() - 1);
  std::uniform_int_distribution<int> idx(0, 1), coin(0, 1), slot(0, max_slot);
  Generator g(fams[fam(rng)], idx(rng), idx(rng), coin(rng) == 1);
  if (coin(rng) == 1) g.block = idx(rng);
  g.slot = slot(rng);
  return g;
}

NcPoly rnd_poly(int max_terms = 4, int max_len = 3, int max_slot = 0) {
  std::uniform_int_distribution<int> nterms(0, max_terms), len(0, max_len);
  NcPoly p;
  int n = nterms(rng);
  for (int t = 0; t < n; ++t) {
    Word w;
    int l = len(rng);
    for (int k = 0; k < l; ++k) w.push_back(rnd_generator(max_slot));
    p.add_term(w, rnd_scalar_nonzero());
  }
  return p;
}

}  // namespace

TEST_CASE("generator canonical order: slot, family, block, row, col, star") {
  Generator u00("u", 0, 0), u01("u", 0, 1), v00("v", 0, 0);
  Generator u00s = u00.starred();
  Generator u00_slot1 = u00.at_slot(1);
  Generator ub("u", 0, 0, 0, false);  // block 0

  CHECK(u00 < u01);
  CHECK(u00 < v00);
  CHECK(u00 < u00s);
  CHECK(v00 < u00_slot1);   // slot dominates family
  CHECK(u01 < u00_slot1);   // slot dominates everything
  CHECK(u00 < ub);          // kNoBlock (INT_MIN) sorts before block 0
  CHECK(u00 == Generator("u", 0, 0));
  CHECK(u00 != u00s);
}

TEST_CASE("deg-lex word order: length first, then letterwise") {
  Word e, u = {Generator("u", 0, 0)}, z = {Generator("z", 0, 0)};
  Word uu = {Generator("u", 0, 0), Generator("u", 0, 0)};
  DegLexLess lt;
  CHECK(lt(e, u));
  CHECK(lt(u, z));
  CHECK(lt(z, uu));    // shorter word is smaller even if letters are larger
  CHECK_FALSE(lt(u, u));
  CHECK_FALSE(lt(uu, z));
}

TEST_CASE("ring axioms on random polynomials") {
  for (int it = 0; it < 60; ++it) {
    NcPoly a = rnd_poly(), b = rnd_poly(), c = rnd_poly();
    CHECK(a + b == b + a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a + b) * c == a * c + b * c);
    CHECK(a - a == NcPoly::zero());
    CHECK(NcPoly::one() * a == a);
    CHECK(a * NcPoly::one() == a);
    CHECK(NcPoly::zero() * a == NcPoly::zero());
  }
}

TEST_CASE("star is an antilinear antimultiplicative involution") {
  for (int it = 0; it < 60; ++it) {
    NcPoly a = rnd_poly(), b = rnd_poly();
    Scalar c = rnd_scalar_nonzero();
    CHECK(star(star(a)) == a);
    CHECK(star(a + b) == star(a) + star(b));
    CHECK(star(a * b) == star(b) * star(a));
    CHECK(star(c * a) == c.conj() * star(a));
  }
  // pinned: (i * u[0,1] v*[1,0])* = -i * v[1,0] u*[0,1]
  NcPoly p = Scalar::unit_i() * (gen("u", 0, 1, false) * gen("v", 1, 0, true));
  NcPoly q = -Scalar::unit_i() * (gen("v", 1, 0, false) * gen("u", 0, 1, true));
  CHECK(star(p) == q);
}

TEST_CASE("slot normalization reorders commuting tensor factors") {
  Generator a("u", 0, 0), b("v", 1, 1);
  NcPoly p(Word{b.at_slot(1), a.at_slot(0)});
  NcPoly q(Word{a.at_slot(0), b.at_slot(1)});
  CHECK(normalize_slots(p) == q);
  CHECK(normalize_slots(q) == q);

  // stable within one slot: letters in the same slot keep their order
  NcPoly r(Word{b.at_slot(0), a.at_slot(0)});
  CHECK(normalize_slots(r) == r);

  NcPoly shifted = map_slots(q, [](int s) { return s + 3; });
  NcPoly expect(Word{a.at_slot(3), b.at_slot(4)});
  CHECK(shifted == expect);
}

TEST_CASE("substitute extends generator images to a *-algebra morphism") {
  std::map<Generator, NcPoly> images;
  for (const std::string& f : {"u", "v", "z"})
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) {
        images.emplace(Generator(f, r, c), rnd_poly(3, 2));
        Generator gb(f, r, c);
        gb.block = 0;
        images.emplace(gb, rnd_poly(3, 2));
        Generator gb1(f, r, c);
        gb1.block = 1;
        images.emplace(gb1, rnd_poly(3, 2));
      }

  for (int it = 0; it < 40; ++it) {
    NcPoly a = rnd_poly(3, 2), b = rnd_poly(3, 2);
    CHECK(substitute(a + b, images) == substitute(a, images) + substitute(b, images));
    CHECK(substitute(a * b, images) == substitute(a, images) * substitute(b, images));
    CHECK(substitute(star(a), images) == star(substitute(a, images)));
  }

  SECTION("missing image throws") {
    NcPoly w(Generator("missing", 0, 0));
    CHECK_THROWS_AS(substitute(w, images), std::out_of_range);
  }

  SECTION("slot-aware: images land in the letter's slot") {
    std::map<Generator, NcPoly> simple;
    simple.emplace(Generator("u", 0, 0), gen("v", 0, 0) + NcPoly::one());
    Generator u00("u", 0, 0);
    NcPoly p(Word{u00.at_slot(0), u00.at_slot(2)});
    NcPoly img = substitute(p, simple);
    NcPoly v0 = NcPoly(Generator("v", 0, 0).at_slot(0)) + NcPoly::one();
    NcPoly v2 = NcPoly(Generator("v", 0, 0).at_slot(2)) + NcPoly::one();
    CHECK(img == v0 * v2);
  }
}

TEST_CASE("apply_character is a *-character") {
  std::map<Generator, Scalar> chi;
  for (const std::string& f : {"u", "v", "z"})
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) {
        chi.emplace(Generator(f, r, c), Scalar(rnd_rational(), rnd_rational()));
        Generator gb(f, r, c);
        gb.block = 0;
        chi.emplace(gb, Scalar(rnd_rational(), rnd_rational()));
        Generator gb1(f, r, c);
        gb1.block = 1;
        chi.emplace(gb1, Scalar(rnd_rational(), rnd_rational()));
      }
  for (int it = 0; it < 40; ++it) {
    NcPoly a = rnd_poly(3, 2), b = rnd_poly(3, 2);
    CHECK(apply_character(a * b, chi) == apply_character(a, chi) * apply_character(b, chi));
    CHECK(apply_character(a + b, chi) == apply_character(a, chi) + apply_character(b, chi));
    CHECK(apply_character(star(a), chi) == apply_character(a, chi).conj());
  }
  CHECK(apply_character(NcPoly::one(), chi) == Scalar::one());
}

TEST_CASE("polynomial text format: pinned strings") {
  CHECK(poly_to_string(NcPoly::zero()) == "0");
  CHECK(poly_to_string(NcPoly::one()) == "1");
  CHECK(poly_to_string(NcPoly(Scalar(make_rational(-1)))) == "-1");
  CHECK(poly_to_string(gen("z", 0, 0)) == "z");
  CHECK(poly_to_string(gen("u", 1, 2)) == "u[1,2]");
  CHECK(poly_to_string(gen("u", 1, 2, true)) == "u*[1,2]");

  Generator blocked("u", 0, 1, 2, true);
  CHECK(poly_to_string(NcPoly(blocked)) == "u*[0;1,2]");
  CHECK(poly_to_string(NcPoly(blocked.at_slot(1))) == "u*[0;1,2]@1");

  NcPoly p = gen("u", 0, 0) * gen("u", 0, 0) - gen("u", 0, 0);
  CHECK(poly_to_string(p) == "u u - u");  // [0,0] with no block compacts to the bare name
  CHECK(poly_from_string("u u - u") == p);

  NcPoly q = Scalar(make_rational(1, 2), make_rational(-3, 4)) * gen("v", 0, 1);
  CHECK(poly_to_string(q) == "(1/2-3/4i) v[0,1]");

  NcPoly im = Scalar::unit_i() * NcPoly::one();
  CHECK(poly_to_string(im) == "1i");
  CHECK(poly_from_string("1i") == im);
  CHECK(poly_from_string("i") == im);
  CHECK(poly_from_string("-i") == -im);

  CHECK(poly_from_string("u[0,0] u[0,0] - u[0,0]") == p);
  CHECK(poly_from_string("(1/2-3/4i) v[0,1]") == q);
  CHECK(poly_from_string("3/2 z - 1") ==
        Scalar(make_rational(3, 2)) * gen("z", 0, 0) - NcPoly::one());
  CHECK(poly_from_string("u*[0;1,2]@1") == NcPoly(blocked.at_slot(1)));
  CHECK(poly_from_string("2i u") == (Scalar(Rational(0), Rational(2)) * gen("u", 0, 0)));

  CHECK(generator_from_string("u*[0;1,2]@1") == blocked.at_slot(1));
  CHECK(generator_from_string("z") == Generator("z", 0, 0));
}

TEST_CASE("polynomial text format: parse errors") {
  CHECK_THROWS_AS(poly_from_string(""), std::invalid_argument);
  CHECK_THROWS_AS(poly_from_string("+"), std::invalid_argument);
  CHECK_THROWS_AS(poly_from_string("u["), std::invalid_argument);
  CHECK_THROWS_AS(poly_from_string("u[0"), std::invalid_argument);
  CHECK_THROWS_AS(poly_from_string("(1/2"), std::invalid_argument);
  CHECK_THROWS_AS(poly_from_string("u**"), std::invalid_argument);
  CHECK_THROWS_AS(poly_from_string("u[0,0] +"), std::invalid_argument);
  CHECK_THROWS_AS(poly_from_string("i[0,0]"), std::invalid_argument);  // reserved name
  CHECK_THROWS_AS(generator_from_string("u + v"), std::invalid_argument);
}

TEST_CASE("polynomial text round-trip property") {
  for (int it = 0; it < 200; ++it) {
    NcPoly p = rnd_poly(5, 4, 2);
    std::string s = poly_to_string(p);
    NcPoly back = poly_from_string(s);
    INFO("text: " << s);
    CHECK(back == p);
    // printing is deterministic
    CHECK(poly_to_string(back) == s);
  }
}
