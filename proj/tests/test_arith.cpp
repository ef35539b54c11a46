#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qsym/floatmat.hpp"
#include "qsym/matrix.hpp"
#include "qsym/scalar.hpp"

using namespace qsym;

namespace {

Scalar random_scalar(std::mt19937& rng) {
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 9);
  return Scalar(make_rational(num(rng), den(rng)), make_rational(num(rng), den(rng)));
}

Matrix random_matrix(std::mt19937& rng, size_t n, size_t m) {
  Matrix a(n, m);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < m; ++j) a(i, j) = random_scalar(rng);
  return a;
}

Matrix swap2() {
  Matrix s(2, 2);
  s(0, 1) = Scalar::one();
  s(1, 0) = Scalar::one();
  return s;
}

}  // namespace

TEST_CASE("scalar field operations are exact") {
  Scalar a(Rational(1, 2), Rational(1, 3));
  Scalar b(Rational(2), Rational(1));
  Scalar p = a * b;
  CHECK(p.re == Rational(2, 3));
  CHECK(p.im == Rational(7, 6));

  std::mt19937 rng(12345);
  for (int k = 0; k < 200; ++k) {
    Scalar x = random_scalar(rng), y = random_scalar(rng), z = random_scalar(rng);
    CHECK((x + y) * z == x * z + y * z);
    CHECK(x * (y * z) == (x * y) * z);
    CHECK(x.conj().conj() == x);
    CHECK((x * y).conj() == x.conj() * y.conj());
    CHECK(x.norm2() >= 0);
    CHECK((x.norm2() == 0) == x.is_zero());
    if (!y.is_zero()) CHECK((x / y) * y == x);
  }
}

TEST_CASE("scalar division by zero throws") {
  CHECK_THROWS_AS(Scalar::one() / Scalar::zero(), std::domain_error);
}

TEST_CASE("rational and scalar text forms round-trip") {
  for (const char* s : {"0", "1", "-1", "1/2", "-22/7", "355/113"}) {
    CHECK(rational_to_string(rational_from_string(s)) == s);
  }
  CHECK(rational_from_string("3/6") == Rational(1, 2));
  CHECK(rational_from_string("+5") == Rational(5));
  CHECK_THROWS_AS(rational_from_string("abc"), std::invalid_argument);
  CHECK_THROWS_AS(rational_from_string(""), std::invalid_argument);

  std::mt19937 rng(777);
  for (int k = 0; k < 100; ++k) {
    Scalar x = random_scalar(rng);
    CHECK(scalar_from_string(scalar_to_string(x)) == x);
  }
  CHECK(scalar_from_string("i") == Scalar::unit_i());
  CHECK(scalar_from_string("-i") == -Scalar::unit_i());
  CHECK(scalar_from_string("(1/2-3/4i)") == Scalar(Rational(1, 2), Rational(-3, 4)));
}

TEST_CASE("mat_mul identity and swap cases") {
  Matrix i2 = Matrix::identity(2);
  CHECK(i2 * i2 == i2);
  CHECK(swap2() * swap2() == i2);
}

TEST_CASE("mat_mul agrees with the float shadow") {
  std::mt19937 rng(2024);
  Matrix a = random_matrix(rng, 3, 3);
  Matrix b = random_matrix(rng, 3, 3);
  CMat exact_cast = CMat::from_exact(a * b);
  CMat shadow = CMat::from_exact(a) * CMat::from_exact(b);
  CHECK(max_abs_diff(exact_cast, shadow) < 1e-12);
}

TEST_CASE("mat_mul shape mismatch throws") {
  CHECK_THROWS_AS(Matrix(2, 3) * Matrix(2, 3), std::invalid_argument);
}

TEST_CASE("mat_inverse on fixed cases") {
  CHECK(mat_inverse(Matrix::identity(3)) == Matrix::identity(3));

  Matrix d(2, 2);
  d(0, 0) = Scalar(Rational(2));
  d(1, 1) = Scalar(Rational(1, 2));
  Matrix dinv = mat_inverse(d);
  CHECK(dinv(0, 0) == Scalar(Rational(1, 2)));
  CHECK(dinv(1, 1) == Scalar(Rational(2)));
  CHECK(dinv(0, 1) == Scalar::zero());
}

TEST_CASE("mat_inverse self-check by multiplication") {
  std::mt19937 rng(99);
  for (int k = 0; k < 20; ++k) {
    Matrix a = random_matrix(rng, 4, 4);
    Matrix m;
    try {
      m = mat_inverse(a);
    } catch (const std::domain_error&) {
      continue;  // singular draw, try another
    }
    CHECK(a * m == Matrix::identity(4));
    CHECK(m * a == Matrix::identity(4));
    CHECK(mat_inverse(m) == a);
  }
  CHECK_THROWS_AS(mat_inverse(Matrix(2, 2)), std::domain_error);
}

TEST_CASE("is_hermitian_positive by exact minors") {
  CHECK(is_hermitian_positive(Matrix::identity(2)));

  Matrix m(2, 2);
  m(0, 0) = Scalar(Rational(1));
  m(0, 1) = Scalar(Rational(2));
  m(1, 0) = Scalar(Rational(2));
  m(1, 1) = Scalar(Rational(1));
  CHECK_FALSE(is_hermitian_positive(m));  // det = 1 - 4 < 0
  std::vector<Scalar> minors = leading_principal_minors(m);
  REQUIRE(minors.size() == 2);
  CHECK(minors[0] == Scalar(Rational(1)));
  CHECK(minors[1] == Scalar(Rational(-3)));

  Matrix h(2, 2);  // [[2, i],[-i, 2]] is Hermitian positive
  h(0, 0) = Scalar(Rational(2));
  h(0, 1) = Scalar::unit_i();
  h(1, 0) = -Scalar::unit_i();
  h(1, 1) = Scalar(Rational(2));
  CHECK(h.is_hermitian());
  CHECK(is_hermitian_positive(h));
  CHECK_FALSE(is_hermitian_positive(swap2()));  // hermitian, not positive
}

TEST_CASE("rref, rank, kernel are consistent") {
  std::mt19937 rng(4242);
  Matrix a = random_matrix(rng, 3, 5);
  std::vector<std::vector<Scalar>> ker = kernel_basis(a);
  CHECK(rank(a) + ker.size() == 5);
  for (const auto& v : ker) {
    for (size_t i = 0; i < a.rows(); ++i) {
      Scalar acc = Scalar::zero();
      for (size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * v[j];
      CHECK(acc.is_zero());
    }
  }
}

TEST_CASE("determinant multiplies") {
  std::mt19937 rng(7);
  Matrix a = random_matrix(rng, 3, 3);
  Matrix b = random_matrix(rng, 3, 3);
  CHECK(determinant(a * b) == determinant(a) * determinant(b));
}

TEST_CASE("float shadow cholesky reconstructs") {
  Matrix s(2, 2);
  s(0, 0) = Scalar(Rational(4));
  s(1, 1) = Scalar(Rational(1));
  CMat l = cholesky(CMat::from_exact(s));
  CHECK(std::abs(l(0, 0) - cdouble(2.0)) < 1e-12);
  CHECK(std::abs(l(1, 1) - cdouble(1.0)) < 1e-12);
  CHECK(max_abs_diff(l * l.dagger(), CMat::from_exact(s)) < 1e-12);

  Matrix ind(2, 2);  // indefinite: cholesky must refuse
  ind(0, 0) = Scalar(Rational(1));
  ind(0, 1) = Scalar(Rational(2));
  ind(1, 0) = Scalar(Rational(2));
  ind(1, 1) = Scalar(Rational(1));
  CHECK_THROWS_AS(cholesky(CMat::from_exact(ind)), std::domain_error);
}

TEST_CASE("c_inverse inverts") {
  std::mt19937 rng(31);
  Matrix a = random_matrix(rng, 3, 3);
  CMat ca = CMat::from_exact(a);
  try {
    CMat ci = c_inverse(ca);
    CHECK(max_abs_diff(ca * ci, CMat::identity(3)) < 1e-9);
  } catch (const std::domain_error&) {
    // singular draw is acceptable for this seed-free sanity check
  }
}
