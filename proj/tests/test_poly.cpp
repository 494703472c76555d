#include "frobsplit/poly.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>

#include "frobsplit/moore.hpp"
#include "frobsplit/parse.hpp"

using namespace frobsplit;

namespace {

// test-only naive expansion: raw exponent-vector maps, no shared code path
// with FracPolynomial::operator*
std::map<ExpVec, FieldElement> naive_product(const FracPolynomial& a, const FracPolynomial& b) {
  EXPECT_EQ(a.level(), b.level());
  std::map<ExpVec, FieldElement> out;
  for (const auto& [ea, ca] : a.terms()) {
    for (const auto& [eb, cb] : b.terms()) {
      ExpVec e(ea.size());
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      FieldElement c = ca * cb;
      auto it = out.find(e);
      if (it == out.end())
        out.emplace(e, c);
      else
        it->second = it->second + c;
    }
  }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second.is_zero())
      it = out.erase(it);
    else
      ++it;
  }
  return out;
}

void expect_equals_naive(const FracPolynomial& prod, const std::map<ExpVec, FieldElement>& oracle) {
  ASSERT_EQ(prod.term_count(), oracle.size());
  for (const auto& [e, c] : oracle) EXPECT_EQ(prod.coefficient(e), c);
}

TEST(PolyArith, FreshmansDream) {
  auto k = FieldSpec::prime_field(2);
  FracPolynomial f = parse_polynomial("x1 + x2", k, 2);
  FracPolynomial sq = f * f;
  EXPECT_EQ(sq, parse_polynomial("x1^2 + x2^2", k, 2));
}

TEST(PolyArith, FractionalExponentsRenormalize) {
  auto k = FieldSpec::prime_field(3);
  FracPolynomial a = parse_polynomial("x1^(1/3)", k, 1);
  FracPolynomial b = parse_polynomial("x1^(2/3)", k, 1);
  FracPolynomial prod = a * b;
  EXPECT_EQ(prod.level(), 0);
  EXPECT_EQ(prod, parse_polynomial("x1", k, 1));
}

// the degree-(p+1) invariant of the order-p^3 example: t = x1*x4^p - x1^p*x4 + x2*x3^p - x2^p*x3
FracPolynomial invariant_t(const FieldSpecPtr& k, int p) {
  std::string s = "x1*x4^" + std::to_string(p) + " - x1^" + std::to_string(p) + "*x4 + x2*x3^" +
                  std::to_string(p) + " - x2^" + std::to_string(p) + "*x3";
  return parse_polynomial(s, k, 4);
}

TEST(PolyArith, InvariantSquareMatchesBruteForce) {
  auto k = FieldSpec::prime_field(3);
  FracPolynomial t = invariant_t(k, 3);
  ASSERT_EQ(t.term_count(), 4u);
  auto oracle = naive_product(t, t);
  FracPolynomial sq = t * t;
  expect_equals_naive(sq, oracle);
  // ten distinct monomials survive collection (the 16 raw term products
  // collapse pairwise off the diagonal)
  EXPECT_EQ(sq.term_count(), 10u);
}

TEST(PolyArith, MultiplicationMatchesNaiveOracleRandom) {
  std::mt19937_64 rng(777);
  auto k = FieldSpec::prime_field(5);
  std::uniform_int_distribution<int> coef(0, 4), expd(0, 6), nterms(1, 12);
  for (int iter = 0; iter < 50; ++iter) {
    FracPolynomial a(k, 3), b(k, 3);
    for (int i = nterms(rng); i > 0; --i)
      a.add_term({expd(rng), expd(rng), expd(rng)}, FieldElement::from_int(k, coef(rng)), 0);
    for (int i = nterms(rng); i > 0; --i)
      b.add_term({expd(rng), expd(rng), expd(rng)}, FieldElement::from_int(k, coef(rng)), 0);
    expect_equals_naive(a * b, naive_product(a, b));
  }
}

std::vector<std::vector<FieldElement>> matrix_from(const FieldSpecPtr& k, int n,
                                                   const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::vector<FieldElement>> m(n, std::vector<FieldElement>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = parse_element(rows[i][j], k);
  return m;
}

TEST(PolySubstitute, ColumnConvention) {
  auto k = FieldSpec::perfection(3);
  auto sigma = matrix_from(k, 3, {{"1", "1", "0"}, {"0", "1", "1"}, {"0", "0", "1"}});
  FracPolynomial x1 = FracPolynomial::variable(k, 3, 0);
  FracPolynomial x3 = FracPolynomial::variable(k, 3, 2);
  EXPECT_EQ(x1.substitute(sigma), x1);
  // g x_j = sum_i m_ij x_i: third column (0,1,1) sends x3 to x2 + x3
  EXPECT_EQ(x3.substitute(sigma), parse_polynomial("x2 + x3", k, 3));
  auto id = matrix_from(k, 3, {{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}});
  FracPolynomial f = parse_polynomial("t*x1^2*x2 + x3^3", k, 3);
  EXPECT_EQ(f.substitute(id), f);
}

TEST(PolySubstitute, Section5InvariantFixed) {
  auto k = FieldSpec::prime_field(2);
  FracPolynomial t = invariant_t(k, 2);
  auto g1 = matrix_from(k, 4, {{"1", "0", "1", "0"}, {"0", "1", "0", "1"}, {"0", "0", "1", "0"}, {"0", "0", "0", "1"}});
  auto g2 = matrix_from(k, 4, {{"1", "0", "0", "1"}, {"0", "1", "0", "0"}, {"0", "0", "1", "0"}, {"0", "0", "0", "1"}});
  auto g3 = matrix_from(k, 4, {{"1", "0", "0", "0"}, {"0", "1", "1", "0"}, {"0", "0", "1", "0"}, {"0", "0", "0", "1"}});
  EXPECT_EQ(t.substitute(g1), t);
  EXPECT_EQ(t.substitute(g2), t);
  EXPECT_EQ(t.substitute(g3), t);
}

TEST(PolySubstitute, MultiplicativeOnRandomPairs) {
  std::mt19937_64 rng(424242);
  auto k = FieldSpec::prime_field(3);
  std::uniform_int_distribution<int> coef(0, 2), expd(0, 3), nterms(1, 6);
  // a fixed invertible matrix plus random polynomials
  auto g = matrix_from(k, 2, {{"1", "2"}, {"1", "1"}});
  for (int iter = 0; iter < 40; ++iter) {
    FracPolynomial a(k, 2), b(k, 2);
    for (int i = nterms(rng); i > 0; --i)
      a.add_term({expd(rng), expd(rng)}, FieldElement::from_int(k, coef(rng)), 0);
    for (int i = nterms(rng); i > 0; --i)
      b.add_term({expd(rng), expd(rng)}, FieldElement::from_int(k, coef(rng)), 0);
    EXPECT_EQ((a * b).substitute(g), a.substitute(g) * b.substitute(g));
  }
}

TEST(PolyFrobenius, RootExamples) {
  auto f2 = FieldSpec::prime_field(2);
  EXPECT_EQ(parse_polynomial("x1^2", f2, 1).frobenius_root(1), parse_polynomial("x1", f2, 1));

  auto f3t = FieldSpec::perfection(3);
  FracPolynomial f = parse_polynomial("t*x1^3", f3t, 1);
  FracPolynomial r = f.frobenius_root(1);
  EXPECT_EQ(r, parse_polynomial("t^(1/3)*x1", f3t, 1));
  EXPECT_EQ(r.degree(), Rational(1));

  auto f3 = FieldSpec::prime_field(3);
  FracPolynomial s = parse_polynomial("x1 + x2", f3, 2);
  EXPECT_EQ((s * s * s).frobenius_root(1), s);
}

TEST(PolyFrobenius, RootPowerRoundTripRandom) {
  std::mt19937_64 rng(31337);
  auto k = FieldSpec::perfection(3);
  std::uniform_int_distribution<int> coef(0, 2), expd(0, 4), nterms(1, 8), lvl(0, 2);
  FieldElement t = FieldElement::t(k);
  for (int iter = 0; iter < 40; ++iter) {
    FracPolynomial f(k, 2);
    for (int i = nterms(rng); i > 0; --i) {
      FieldElement c = FieldElement::from_int(k, coef(rng)) + FieldElement::from_int(k, coef(rng)) * t;
      f.add_term({expd(rng), expd(rng)}, c, lvl(rng));
    }
    int e = lvl(rng);
    EXPECT_EQ(f.frobenius_power(e).frobenius_root(e), f);
    EXPECT_EQ(f.frobenius_root(e).frobenius_power(e), f);
  }
}

TEST(PolyMoore, TwoByTwo) {
  auto k = FieldSpec::prime_field(2);
  FracPolynomial x1 = FracPolynomial::variable(k, 2, 0);
  FracPolynomial x2 = FracPolynomial::variable(k, 2, 1);
  EXPECT_EQ(moore_determinant({x1, x2}, 2), parse_polynomial("x1*x2^2 + x1^2*x2", k, 2));
}

// independent oracle: determinant by explicit permutation expansion
FracPolynomial perm_expansion_det(const PolyMatrix& m) {
  int n = m.rows();
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  FracPolynomial acc = FracPolynomial::zero(m.entries[0][0].spec(), m.entries[0][0].nvars());
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    FracPolynomial term = FracPolynomial::one(m.entries[0][0].spec(), m.entries[0][0].nvars());
    for (int i = 0; i < n; ++i) term = term * m.entries[i][perm[i]];
    acc = (inversions % 2 == 0) ? acc + term : acc - term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

TEST(PolyMoore, ThreeByThreeAgainstPermutationOracle) {
  auto k = FieldSpec::prime_field(2);
  std::vector<FracPolynomial> cols = {FracPolynomial::variable(k, 3, 0), FracPolynomial::variable(k, 3, 1),
                                      FracPolynomial::variable(k, 3, 2)};
  FracPolynomial det = moore_determinant(cols, 3);
  EXPECT_EQ(det, perm_expansion_det(moore_matrix(cols, 3)));
  EXPECT_EQ(det.term_count(), 6u);
  EXPECT_EQ(det.degree(), Rational(7));
  EXPECT_TRUE(det.is_homogeneous());
}

// brute-force orbit product over all linear forms x_m + sum c_i x_i, c in F_p
FracPolynomial orbit_product_brute(const FieldSpecPtr& k, int nvars, int m, int p) {
  FracPolynomial prod = FracPolynomial::one(k, nvars);
  std::vector<int> c(m - 1, 0);
  for (;;) {
    FracPolynomial form = FracPolynomial::variable(k, nvars, m - 1);
    for (int i = 0; i < m - 1; ++i)
      form = form + FieldElement::from_int(k, c[i]) * FracPolynomial::variable(k, nvars, i);
    prod = prod * form;
    int i = 0;
    while (i < m - 1 && ++c[i] == p) c[i++] = 0;
    if (i == m - 1) break;
  }
  return prod;
}

TEST(PolyMoore, QuotientIsOrbitProduct) {
  for (int p : {2, 3}) {
    auto k = FieldSpec::prime_field(p);
    for (int m : {2, 3}) {
      std::vector<FracPolynomial> cols;
      for (int j = 0; j < m; ++j) cols.push_back(FracPolynomial::variable(k, m, j));
      FracPolynomial big = moore_determinant(cols, m);
      FracPolynomial small =
          m == 1 ? FracPolynomial::one(k, m) : moore_determinant(std::vector<FracPolynomial>(cols.begin(), cols.end() - 1), m - 1);
      auto quot = divide_exact(big, small);
      ASSERT_TRUE(quot.has_value()) << "p=" << p << " m=" << m;
      EXPECT_EQ(*quot, orbit_product_brute(k, m, m, p)) << "p=" << p << " m=" << m;
    }
  }
}

TEST(PolyGradedPiece, Examples) {
  // S^{1/3}, d = 1/3, n = 3: the three root variables
  auto basis = graded_piece(3, 3, 1, Rational(1, 3));
  ASSERT_EQ(basis.size(), 3u);
  EXPECT_EQ(basis[0], (ExpVec{0, 0, 1}));
  EXPECT_EQ(basis[2], (ExpVec{1, 0, 0}));
  // S, d = 0: the constant monomial
  EXPECT_EQ(graded_piece(3, 3, 0, Rational(0)).size(), 1u);
  // S, d = 2, n = 2: stars and bars
  EXPECT_EQ(graded_piece(5, 2, 0, Rational(2)).size(), 3u);
  // non-representable degree: empty
  EXPECT_TRUE(graded_piece(3, 3, 0, Rational(1, 3)).empty());
}

TEST(PolyDivideSplit, Examples) {
  auto k = FieldSpec::prime_field(2);
  FracPolynomial w = parse_polynomial("x1*x2^2 - x1^2*x2", k, 2);
  DivideSplit s = poly_divide_split(w, 2);  // w^(p-1) = w at p = 2
  EXPECT_TRUE(s.remainder.is_zero());
  EXPECT_EQ(s.a * parse_polynomial("x1^2", k, 2) + s.b * parse_polynomial("x2^2", k, 2), w);

  FracPolynomial xy = parse_polynomial("x1*x2", k, 2);
  DivideSplit s2 = poly_divide_split(xy, 2);
  EXPECT_TRUE(s2.a.is_zero());
  EXPECT_TRUE(s2.b.is_zero());
  EXPECT_EQ(s2.remainder, xy);

  FracPolynomial xp = parse_polynomial("x1^2", k, 2);
  DivideSplit s3 = poly_divide_split(xp, 2);
  EXPECT_EQ(s3.a, FracPolynomial::one(k, 2));
  EXPECT_TRUE(s3.b.is_zero());
  EXPECT_TRUE(s3.remainder.is_zero());
}

TEST(PolyDivideSplit, ReassemblesRandom) {
  std::mt19937_64 rng(1001);
  for (int p : {2, 3, 5}) {
    auto k = FieldSpec::prime_field(p);
    std::uniform_int_distribution<int> coef(0, p - 1), expd(0, 2 * p), nterms(1, 15);
    FracPolynomial x1p = parse_polynomial("x1^" + std::to_string(p), k, 3);
    FracPolynomial x2p = parse_polynomial("x2^" + std::to_string(p), k, 3);
    for (int iter = 0; iter < 20; ++iter) {
      FracPolynomial f(k, 3);
      for (int i = nterms(rng); i > 0; --i)
        f.add_term({expd(rng), expd(rng), expd(rng)}, FieldElement::from_int(k, coef(rng)), 0);
      DivideSplit s = poly_divide_split(f, p);
      EXPECT_EQ(s.a * x1p + s.b * x2p + s.remainder, f);
      for (const auto& [e, c] : s.remainder.terms()) {
        EXPECT_LT(e[0], p);
        EXPECT_LT(e[1], p);
      }
    }
  }
}

TEST(PolyParse, PrintParseIdentity) {
  auto k = FieldSpec::perfection(3);
  std::vector<std::string> cases = {
      "3*t*x1^2*x2 - x3^(1/3)",
      "t*x1^2*x2 - (t+1)*x1^2*x3 - (t+1)*x1*x2^2 + x2^3",
      "x1^(2/9) + x2^(1/3)*x3",
      "(t^2+2*t)/(t+1)*x1 + 2",
  };
  auto names = default_varnames(3);
  for (const auto& s : cases) {
    FracPolynomial f = parse_polynomial(s, k, 3);
    FracPolynomial g = parse_polynomial(f.to_string(names), k, 3);
    EXPECT_EQ(f, g) << s << " -> " << f.to_string(names);
  }
  // juxtaposition multiplies
  EXPECT_EQ(parse_polynomial("t(t-1)^2 x1", k, 3),
            parse_polynomial("t*(t-1)^2*x1", k, 3));
}

TEST(PolyParse, Errors) {
  auto k = FieldSpec::prime_field(3);
  EXPECT_THROW(parse_polynomial("x1 +", k, 2), FrobError);
  EXPECT_THROW(parse_polynomial("x9", k, 2), FrobError);
  EXPECT_THROW(parse_polynomial("x1 / x2", k, 2), FrobError);
  EXPECT_THROW(parse_polynomial("(x1+x2)^(1/3)", k, 2), FrobError);
  try {
    parse_polynomial("x1 + $", k, 2);
    FAIL() << "expected FrobError";
  } catch (const FrobError& e) {
    EXPECT_NE(std::string(e.what()).find("line 1"), std::string::npos);
  }
}

TEST(PolyWorkers, ProductIndependentOfWorkerCount) {
  auto k = FieldSpec::prime_field(5);
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> coef(1, 4), expd(0, 30);
  FracPolynomial a(k, 3), b(k, 3);
  for (int i = 0; i < 400; ++i) {
    a.add_term({expd(rng), expd(rng), expd(rng)}, FieldElement::from_int(k, coef(rng)), 0);
    b.add_term({expd(rng), expd(rng), expd(rng)}, FieldElement::from_int(k, coef(rng)), 0);
  }
  worker_count() = 1;
  FracPolynomial seq = a * b;
  worker_count() = 4;
  FracPolynomial par = a * b;
  worker_count() = 1;
  EXPECT_EQ(seq, par);
}

}  // namespace
