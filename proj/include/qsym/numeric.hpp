#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qsym/floatmat.hpp"
#include "qsym/ncpoly.hpp"

namespace qsym {

// ---------------------------------------------------------------------------
// Classical points: one complex scalar per generator, i.e. evaluation at a
// character. A point assigns one concrete matrix to each generator family
// (keyed by family name and block); g[j,k] evaluates to the (j,k) entry and
// g*[j,k] to its conjugate, so evaluation is a *-homomorphism to C.
// ---------------------------------------------------------------------------

struct ClassicalPoint {
  std::string label;
  std::map<std::pair<std::string, int>, CMat> matrices;

  void set(const std::string& family, CMat m, int block = kNoBlock) {
    matrices[{family, block}] = std::move(m);
  }
  const CMat& matrix_for(const std::string& family, int block = kNoBlock) const {
    auto it = matrices.find({family, block});
    if (it == matrices.end())
      throw std::out_of_range("classical point does not cover family '" + family + "'");
    return it->second;
  }
};

/// Evaluates a polynomial at a classical point. Tensor slots all evaluate at
/// the same point (a character applied leg by leg). Throws out_of_range if a
/// generator family is not covered or an index exceeds its matrix.
inline cdouble eval_at_point(const NcPoly& p, const ClassicalPoint& pt) {
  cdouble total = 0.0;
  for (const auto& [word, coeff] : p.terms()) {
    cdouble v = 1.0;
    for (const Generator& g : word) {
      const CMat& m = pt.matrix_for(g.family, g.block);
      if (static_cast<size_t>(g.row) >= m.rows() || static_cast<size_t>(g.col) >= m.cols())
        throw std::out_of_range("generator index outside the point's matrix for '" + g.family +
                                "'");
      cdouble e = m(g.row, g.col);
      v *= g.star ? std::conj(e) : e;
    }
    total += coeff.to_complex() * v;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Deterministic point strategies
// ---------------------------------------------------------------------------

namespace detail {

inline std::string perm_signs_label(const std::vector<size_t>& perm, const std::vector<int>& sign) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < perm.size(); ++i) {
    if (i) os << ",";
    if (!sign.empty() && sign[i] < 0) os << "-";
    os << perm[i];
  }
  os << "]";
  return os.str();
}

}  // namespace detail

/// All d! permutation matrices (rows permuted), lexicographic order of the
/// permutation. Matrix entry (perm[c], c) = 1.
inline std::vector<ClassicalPoint> permutation_points(const std::string& family, size_t d,
                                                      int block = kNoBlock) {
  std::vector<size_t> perm(d);
  for (size_t i = 0; i < d; ++i) perm[i] = i;
  std::vector<ClassicalPoint> out;
  do {
    CMat m(d, d);
    for (size_t c = 0; c < d; ++c) m(perm[c], c) = 1.0;
    ClassicalPoint pt;
    pt.label = "perm" + detail::perm_signs_label(perm, {});
    pt.set(family, std::move(m), block);
    out.push_back(std::move(pt));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

/// All d! 2^d signed permutation matrices: permutations in lexicographic
/// order, and for each, sign patterns in binary counting order where bit c of
/// the counter flips column c.
inline std::vector<ClassicalPoint> signed_permutation_points(const std::string& family, size_t d,
                                                             int block = kNoBlock) {
  std::vector<size_t> perm(d);
  for (size_t i = 0; i < d; ++i) perm[i] = i;
  std::vector<ClassicalPoint> out;
  do {
    for (size_t bits = 0; bits < (size_t{1} << d); ++bits) {
      CMat m(d, d);
      std::vector<int> sign(d, 1);
      for (size_t c = 0; c < d; ++c) {
        sign[c] = (bits >> c) & 1 ? -1 : 1;
        m(perm[c], c) = static_cast<double>(sign[c]);
      }
      ClassicalPoint pt;
      pt.label = "signed-perm" + detail::perm_signs_label(perm, sign);
      pt.set(family, std::move(m), block);
      out.push_back(std::move(pt));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

/// `count` pseudorandom unitaries from the fixed seed (Gaussian matrix then
/// modified Gram-Schmidt). Deterministic for a given (d, count, seed).
inline std::vector<ClassicalPoint> random_unitary_points(const std::string& family, size_t d,
                                                         size_t count, uint64_t seed,
                                                         int block = kNoBlock) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<ClassicalPoint> out;
  for (size_t n = 0; n < count; ++n) {
    // columns of g orthonormalized left to right
    std::vector<std::vector<cdouble>> cols(d, std::vector<cdouble>(d));
    for (auto& col : cols)
      for (auto& x : col) x = cdouble(gauss(rng), gauss(rng));
    for (size_t c = 0; c < d; ++c) {
      for (size_t p = 0; p < c; ++p) {
        cdouble dot = 0.0;
        for (size_t r = 0; r < d; ++r) dot += std::conj(cols[p][r]) * cols[c][r];
        for (size_t r = 0; r < d; ++r) cols[c][r] -= dot * cols[p][r];
      }
      double norm = 0.0;
      for (size_t r = 0; r < d; ++r) norm += std::norm(cols[c][r]);
      norm = std::sqrt(norm);
      if (norm < 1e-12) {  // astronomically unlikely; retry deterministically
        for (auto& x : cols[c]) x = cdouble(gauss(rng), gauss(rng));
        --c;
        continue;
      }
      for (size_t r = 0; r < d; ++r) cols[c][r] /= norm;
    }
    CMat m(d, d);
    for (size_t c = 0; c < d; ++c)
      for (size_t r = 0; r < d; ++r) m(r, c) = cols[c][r];
    ClassicalPoint pt;
    pt.label = "random-unitary#" + std::to_string(n) + "(seed=" + std::to_string(seed) + ")";
    pt.set(family, std::move(m), block);
    out.push_back(std::move(pt));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Falsification
// ---------------------------------------------------------------------------

struct FalsifyResult {
  bool falsified = false;
  size_t relation_index = 0;   // which relation broke, when falsified
  double magnitude = 0.0;      // |value| at the witness
  std::optional<ClassicalPoint> witness;
  size_t points_tested = 0;
  std::string strategy;
  uint64_t seed = 0;  // 0 for exhaustive strategies

  std::string to_string() const {
    std::ostringstream os;
    if (falsified)
      os << "falsified: relation " << relation_index << " at " << witness->label
         << " with magnitude " << magnitude;
    else
      os << "not falsified after " << points_tested << " points (" << strategy << ")";
    return os.str();
  }
};

/// Scans the points in order and returns the first one where some relation
/// evaluates above tol in absolute value.
inline FalsifyResult falsify(const std::vector<NcPoly>& relations,
                             const std::vector<ClassicalPoint>& points, double tol = 1e-9) {
  FalsifyResult res;
  res.strategy = "explicit-point-list";
  for (const ClassicalPoint& pt : points) {
    ++res.points_tested;
    for (size_t r = 0; r < relations.size(); ++r) {
      double mag = std::abs(eval_at_point(relations[r], pt));
      if (mag > tol) {
        res.falsified = true;
        res.relation_index = r;
        res.magnitude = mag;
        res.witness = pt;
        return res;
      }
    }
  }
  return res;
}

/// Strategy dispatch for a single square family of size d: exhaustive signed
/// permutations for d <= 3, seeded random unitaries otherwise.
inline FalsifyResult falsify_auto(const std::vector<NcPoly>& relations, const std::string& family,
                                  size_t d, double tol = 1e-9, size_t random_count = 64,
                                  uint64_t seed = 20260816, int block = kNoBlock) {
  FalsifyResult res;
  if (d <= 3) {
    res = falsify(relations, signed_permutation_points(family, d, block), tol);
    res.strategy = "exhaustive-signed-permutations(d=" + std::to_string(d) + ")";
    res.seed = 0;
  } else {
    res = falsify(relations, random_unitary_points(family, d, random_count, seed, block), tol);
    res.strategy = "random-unitaries(d=" + std::to_string(d) +
                   ",count=" + std::to_string(random_count) + ")";
    res.seed = seed;
  }
  return res;
}

// ---------------------------------------------------------------------------
// Factorization oracle
// ---------------------------------------------------------------------------

/// Factor p with p^t conj(p) ~ s for numerically Hermitian positive-definite
/// s. Uses the Cholesky factor s = L L^dagger and returns p = L^t, since then
/// p^t conj(p) = L conj(L^t) = L L^dagger = s. Throws domain_error when a
/// pivot fails.
inline CMat cholesky_oracle(const CMat& s, double tol = 1e-12) {
  return cholesky(s, tol).transpose();
}

// ---------------------------------------------------------------------------
// Exact trigonometric layer: finite combinations of sin(pi n x), cos(pi n x)
// with coefficients that are exact rationals times integer powers of pi.
// ---------------------------------------------------------------------------

/// An exact number sum_j q_j pi^j with rational q_j and integer j.
struct PiRational {
  std::map<long, Rational> coeffs;  // pi power -> rational coefficient

  static PiRational zero() { return {}; }
  static PiRational of(Rational q, long pi_power = 0) {
    PiRational r;
    if (q != 0) r.coeffs[pi_power] = std::move(q);
    return r;
  }

  bool is_zero() const { return coeffs.empty(); }

  PiRational& add(const Rational& q, long pi_power) {
    if (q == 0) return *this;
    Rational& slot = coeffs[pi_power];
    slot += q;
    if (slot == 0) coeffs.erase(pi_power);
    return *this;
  }
  PiRational& operator+=(const PiRational& o) {
    for (const auto& [p, q] : o.coeffs) add(q, p);
    return *this;
  }
  friend PiRational operator+(PiRational a, const PiRational& b) { return a += b; }
  friend PiRational operator-(const PiRational& a) {
    PiRational r;
    for (const auto& [p, q] : a.coeffs) r.coeffs[p] = Rational(-q);
    return r;
  }
  friend PiRational operator-(PiRational a, const PiRational& b) { return a += -b; }
  friend PiRational operator*(const PiRational& a, const PiRational& b) {
    PiRational r;
    for (const auto& [pa, qa] : a.coeffs)
      for (const auto& [pb, qb] : b.coeffs) r.add(Rational(qa * qb), pa + pb);
    return r;
  }
  friend bool operator==(const PiRational& a, const PiRational& b) { return a.coeffs == b.coeffs; }

  double to_double() const {
    constexpr double kPi = 3.14159265358979323846;
    double v = 0.0;
    for (const auto& [p, q] : coeffs) v += rational_to_double(q) * std::pow(kPi, double(p));
    return v;
  }

  std::string to_string() const {
    if (coeffs.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [p, q] : coeffs) {
      if (!first) os << " + ";
      first = false;
      os << rational_to_string(q);
      if (p != 0) os << "*pi^" << p;
    }
    return os.str();
  }
};

/// A finite combination of sin(pi n x) and cos(pi n x), n >= 0, with
/// PiRational coefficients. sin frequency 0 is identically zero and is never
/// stored; negative frequencies are normalized via parity.
struct TrigPoly {
  // key: (is_sin, frequency n >= 0)
  std::map<std::pair<bool, long>, PiRational> terms;

  static TrigPoly zero() { return {}; }
  static TrigPoly sin_pi(long n, PiRational c = PiRational::of(make_rational(1))) {
    TrigPoly t;
    if (n < 0) {
      n = -n;
      c = -c;
    }
    if (n != 0 && !c.is_zero()) t.terms[{true, n}] = std::move(c);
    return t;
  }
  static TrigPoly cos_pi(long n, PiRational c = PiRational::of(make_rational(1))) {
    TrigPoly t;
    if (n < 0) n = -n;
    if (!c.is_zero()) t.terms[{false, n}] = std::move(c);
    return t;
  }

  bool is_zero() const { return terms.empty(); }

  TrigPoly& add_term(bool is_sin, long n, const PiRational& c) {
    PiRational cc = c;
    if (n < 0) {
      n = -n;
      if (is_sin) cc = -cc;
    }
    if (is_sin && n == 0) return *this;
    if (cc.is_zero()) return *this;
    PiRational& slot = terms[{is_sin, n}];
    slot += cc;
    if (slot.is_zero()) terms.erase({is_sin, n});
    return *this;
  }
  TrigPoly& operator+=(const TrigPoly& o) {
    for (const auto& [k, c] : o.terms) add_term(k.first, k.second, c);
    return *this;
  }
  friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
  friend TrigPoly operator-(const TrigPoly& a) {
    TrigPoly r;
    for (const auto& [k, c] : a.terms) r.terms[k] = -c;
    return r;
  }
  friend TrigPoly operator-(TrigPoly a, const TrigPoly& b) { return a += -b; }
  friend bool operator==(const TrigPoly& a, const TrigPoly& b) { return a.terms == b.terms; }

  friend TrigPoly operator*(const PiRational& c, const TrigPoly& t) {
    TrigPoly r;
    for (const auto& [k, tc] : t.terms) r.add_term(k.first, k.second, c * tc);
    return r;
  }

  /// Exact product via the product-to-sum identities.
  friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
    TrigPoly r;
    PiRational half = PiRational::of(make_rational(1, 2));
    for (const auto& [ka, ca] : a.terms)
      for (const auto& [kb, cb] : b.terms) {
        PiRational c = half * (ca * cb);
        long n = ka.second, m = kb.second;
        if (ka.first && kb.first) {  // sin sin = (cos(n-m) - cos(n+m))/2
          r.add_term(false, n - m, c);
          r.add_term(false, n + m, -c);
        } else if (!ka.first && !kb.first) {  // cos cos = (cos(n-m) + cos(n+m))/2
          r.add_term(false, n - m, c);
          r.add_term(false, n + m, c);
        } else if (ka.first) {  // sin cos = (sin(n+m) + sin(n-m))/2
          r.add_term(true, n + m, c);
          r.add_term(true, n - m, c);
        } else {  // cos sin = (sin(n+m) - sin(n-m))/2
          r.add_term(true, n + m, c);
          r.add_term(true, n - m, -c);
        }
      }
    return r;
  }

  /// d/dx, exactly: sin(pi n x) -> pi n cos(pi n x), cos -> -pi n sin.
  TrigPoly derivative() const {
    TrigPoly r;
    for (const auto& [k, c] : terms) {
      PiRational pin = PiRational::of(make_rational(k.second), 1);
      if (k.first)
        r.add_term(false, k.second, pin * c);
      else
        r.add_term(true, k.second, -(pin * c));
    }
    return r;
  }

  /// Exact value at an integer point x = m (sin vanishes, cos gives ±1).
  PiRational eval_at_integer(long m) const {
    PiRational v;
    for (const auto& [k, c] : terms) {
      if (k.first) continue;  // sin(pi n m) = 0
      long par = (k.second * m) % 2;
      v += (par == 0) ? c : -c;
    }
    return v;
  }

  /// Exact integral over [0, 1]: cos(pi n x) integrates to 0 (n >= 1) or 1
  /// (n = 0); sin(pi n x) integrates to (1 - (-1)^n)/(pi n).
  PiRational integral01() const {
    PiRational v;
    for (const auto& [k, c] : terms) {
      long n = k.second;
      if (!k.first) {
        if (n == 0) v += c;
      } else {
        if (n % 2 != 0) v += PiRational::of(make_rational(2, n), -1) * c;
      }
    }
    return v;
  }

  double eval_double(double x) const {
    constexpr double kPi = 3.14159265358979323846;
    double v = 0.0;
    for (const auto& [k, c] : terms) {
      double arg = kPi * double(k.second) * x;
      v += c.to_double() * (k.first ? std::sin(arg) : std::cos(arg));
    }
    return v;
  }

  std::string to_string() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms) {
      if (!first) os << " + ";
      first = false;
      os << "(" << c.to_string() << ")*" << (k.first ? "sin" : "cos") << "(pi*" << k.second
         << "*x)";
    }
    return os.str();
  }
};

// ---------------------------------------------------------------------------
// Gauss-Legendre quadrature on [0, 1]
// ---------------------------------------------------------------------------

struct QuadratureRule {
  std::vector<double> nodes;    // in (0, 1)
  std::vector<double> weights;  // summing to 1
};

/// Nodes and weights of n-point Gauss-Legendre quadrature mapped to [0, 1]
/// (Newton iteration on the Legendre recurrence).
inline QuadratureRule gauss_legendre(size_t n) {
  if (n == 0) throw std::invalid_argument("quadrature needs at least one point");
  constexpr double kPi = 3.14159265358979323846;
  QuadratureRule q;
  q.nodes.resize(n);
  q.weights.resize(n);
  for (size_t i = 0; i < n; ++i) {
    double x = std::cos(kPi * (double(i) + 0.75) / (double(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (size_t k = 2; k <= n; ++k) {
        double p2 = ((2.0 * double(k) - 1.0) * x * p1 - (double(k) - 1.0) * p0) / double(k);
        p0 = p1;
        p1 = p2;
      }
      dp = double(n) * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    q.nodes[i] = 0.5 * (1.0 - x);  // map [-1,1] -> [0,1], also reverses order
    q.weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return q;
}

inline double quadrature_integral01(const TrigPoly& f, const QuadratureRule& q) {
  double v = 0.0;
  for (size_t i = 0; i < q.nodes.size(); ++i) v += q.weights[i] * f.eval_double(q.nodes[i]);
  return v;
}

// ---------------------------------------------------------------------------
// Eigenbasis verification for the segment operator
// ---------------------------------------------------------------------------

/// For pairs (f, g) of functions on [0, 1], the first-order operator
/// D(f, g) = (-g', f') built from the derivative on functions vanishing at
/// the endpoints and its formal adjoint. The claim verified here: the pairs
/// (sin(pi k x), cos(pi k x)) are eigenvectors with eigenvalue pi k, the sin
/// component satisfies the boundary conditions, and the exact orthogonality
/// integrals agree with quadrature.
struct EigenbasisReport {
  struct Entry {
    long k = 0;
    bool eigen_ok = false;
    bool boundary_ok = false;
  };
  std::vector<Entry> entries;
  size_t integrals_checked = 0;
  double max_quadrature_error = 0.0;
  double quadrature_tol = 0.0;

  bool ok() const {
    for (const Entry& e : entries)
      if (!e.eigen_ok || !e.boundary_ok) return false;
    return max_quadrature_error < quadrature_tol;
  }
  std::string to_string() const {
    std::ostringstream os;
    for (const Entry& e : entries)
      os << "k=" << e.k << " eigen=" << (e.eigen_ok ? "ok" : "FAIL")
         << " boundary=" << (e.boundary_ok ? "ok" : "FAIL") << "\n";
    os << integrals_checked << " integrals cross-checked, max quadrature error "
       << max_quadrature_error << " (tol " << quadrature_tol << ")\n";
    return os.str();
  }
};

inline EigenbasisReport verify_segments_eigenbasis(long n_max, size_t quadrature_points = 24,
                                                   double quadrature_tol = 1e-10) {
  if (n_max < 1) throw std::invalid_argument("need n_max >= 1");
  EigenbasisReport rep;
  rep.quadrature_tol = quadrature_tol;
  for (long k = -n_max; k <= n_max; ++k) {
    EigenbasisReport::Entry e;
    e.k = k;
    TrigPoly f = TrigPoly::sin_pi(k);
    TrigPoly g = TrigPoly::cos_pi(k);
    PiRational pik = PiRational::of(make_rational(k), 1);
    // D(f, g) = (-g', f') must equal (pi k f, pi k g) exactly
    e.eigen_ok = (-g.derivative() == pik * f) && (f.derivative() == pik * g);
    e.boundary_ok = f.eval_at_integer(0).is_zero() && f.eval_at_integer(1).is_zero();
    rep.entries.push_back(e);
  }

  QuadratureRule quad = gauss_legendre(quadrature_points);
  for (long n = 0; n <= n_max; ++n)
    for (long m = 0; m <= n_max; ++m)
      for (int kinds = 0; kinds < 4; ++kinds) {
        TrigPoly a = (kinds & 1) ? TrigPoly::sin_pi(n) : TrigPoly::cos_pi(n);
        TrigPoly b = (kinds & 2) ? TrigPoly::sin_pi(m) : TrigPoly::cos_pi(m);
        if (a.is_zero() || b.is_zero()) continue;  // sin(0)
        TrigPoly prod = a * b;
        double exact = prod.integral01().to_double();
        double approx = quadrature_integral01(prod, quad);
        rep.max_quadrature_error = std::max(rep.max_quadrature_error, std::abs(exact - approx));
        ++rep.integrals_checked;
      }
  return rep;
}

}  // namespace qsym
