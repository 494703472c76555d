#include "frobsplit/group.hpp"

#include <gtest/gtest.h>

#include <random>

#include "frobsplit/parse.hpp"

using namespace frobsplit;

namespace {

FMatrix matrix_of(const FieldSpecPtr& k, const std::vector<std::vector<std::string>>& rows) {
  int n = static_cast<int>(rows.size());
  FMatrix m(k, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = parse_element(rows[i][j], k);
  return m;
}

// sigma, tau of the order-9 counterexample family: I + N and I + alpha N
MatrixGroup counterexample_group(const FieldSpecPtr& k, const std::string& alpha) {
  FMatrix s = matrix_of(k, {{"1", "1", "0"}, {"0", "1", "1"}, {"0", "0", "1"}});
  FMatrix t = matrix_of(k, {{"1", alpha, "0"}, {"0", "1", alpha}, {"0", "0", "1"}});
  GroupPresentation pres;
  pres.relators = {Relator{{{0, 3}}, "g1^3"},
                   Relator{{{1, 3}}, "g2^3"},
                   Relator{{{0, 1}, {1, 1}, {0, -1}, {1, -1}}, "g1 g2 g1^-1 g2^-1"}};
  pres.abstract_order = 9;
  return generate_group(k, 3, {s, t}, default_group_cap(), pres);
}

MatrixGroup section5_group(int p) {
  auto k = FieldSpec::prime_field(p);
  FMatrix g1 = matrix_of(k, {{"1", "0", "1", "0"}, {"0", "1", "0", "1"}, {"0", "0", "1", "0"}, {"0", "0", "0", "1"}});
  FMatrix g2 = matrix_of(k, {{"1", "0", "0", "1"}, {"0", "1", "0", "0"}, {"0", "0", "1", "0"}, {"0", "0", "0", "1"}});
  FMatrix g3 = matrix_of(k, {{"1", "0", "0", "0"}, {"0", "1", "1", "0"}, {"0", "0", "1", "0"}, {"0", "0", "0", "1"}});
  return generate_group(k, 4, {g1, g2, g3});
}

MatrixGroup cyclic_permutation_group(const FieldSpecPtr& k, int n) {
  FMatrix g(k, n, n);
  // x_j -> x_{j+1}: column j has its 1 in row j+1 (mod n)
  for (int j = 0; j < n; ++j) g.at((j + 1) % n, j) = FieldElement::one(k);
  return generate_group(k, n, {g});
}

TEST(GenerateGroup, CounterexampleOrderNine) {
  auto k = FieldSpec::perfection(3);
  MatrixGroup g = counterexample_group(k, "t");
  EXPECT_EQ(g.order(), 9);
  // abelian: every pair commutes
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) EXPECT_EQ(g.product_index(i, j), g.product_index(j, i));
  // exponent 3: g^3 = id for all elements
  for (int i = 0; i < 9; ++i) {
    int cube = g.product_index(g.product_index(i, i), i);
    EXPECT_EQ(cube, 0);
  }
}

TEST(GenerateGroup, Section5OrderPCubed) {
  EXPECT_EQ(section5_group(2).order(), 8);
  EXPECT_EQ(section5_group(3).order(), 27);
  EXPECT_EQ(section5_group(5).order(), 125);
}

TEST(GenerateGroup, TrivialGroup) {
  auto k = FieldSpec::prime_field(3);
  MatrixGroup g = generate_group(k, 2, {FMatrix::identity(k, 2)});
  EXPECT_EQ(g.order(), 1);
}

TEST(GenerateGroup, CapExceeded) {
  auto k = FieldSpec::perfection(3);
  // infinite subgroup: diag(t, 1) has infinite order
  FMatrix m(k, 2, 2);
  m.at(0, 0) = FieldElement::t(k);
  m.at(1, 1) = FieldElement::one(k);
  EXPECT_THROW(generate_group(k, 2, {m}, 100), FrobError);
}

TEST(GenerateGroup, SingularGeneratorRejected) {
  auto k = FieldSpec::prime_field(2);
  FMatrix m(k, 2, 2);
  m.at(0, 0) = FieldElement::one(k);
  EXPECT_THROW(generate_group(k, 2, {m}), FrobError);
}

TEST(DetectMonomial, PermutationGroup) {
  auto k = FieldSpec::prime_field(3);
  MatrixGroup a3 = cyclic_permutation_group(k, 3);
  EXPECT_EQ(a3.order(), 3);
  auto det = detect_monomial(a3);
  ASSERT_TRUE(det.ok());
  EXPECT_TRUE(det.structure->is_permutation());
  // the generator x1 -> x2 -> x3 -> x1 appears in the table
  bool found = false;
  for (const auto& e : det.structure->per_element)
    if (e.perm == std::vector<int>{1, 2, 0}) found = true;
  EXPECT_TRUE(found);
}

TEST(DetectMonomial, VeroneseScalars) {
  auto k = FieldSpec::extension(2, 2);
  FieldElement w = FieldElement::generator(k);
  FMatrix m(k, 2, 2);
  m.at(0, 0) = w;
  m.at(1, 1) = w;
  MatrixGroup g = generate_group(k, 2, {m});
  EXPECT_EQ(g.order(), 3);
  auto det = detect_monomial(g);
  ASSERT_TRUE(det.ok());
  EXPECT_FALSE(det.structure->is_permutation());
  // diag(w, w): identity permutation with scalars (w, w)
  const auto& gen = det.structure->per_element[1];
  EXPECT_EQ(gen.perm, (std::vector<int>{0, 1}));
  EXPECT_EQ(gen.scalars[0], w);
  EXPECT_EQ(gen.scalars[1], w);
}

TEST(DetectMonomial, UnipotentRefused) {
  auto k = FieldSpec::perfection(3);
  MatrixGroup g = counterexample_group(k, "t");
  auto det = detect_monomial(g);
  EXPECT_FALSE(det.ok());
  EXPECT_NE(det.refusal().find("element #"), std::string::npos);
}

TEST(Smallness, CounterexampleFamilyOverAlpha) {
  auto k = FieldSpec::perfection(3);
  // small iff alpha is not in F_3
  for (const std::string& alpha : {"t", "t+1"}) {
    MatrixGroup g = counterexample_group(k, alpha);
    auto rep = pseudoreflection_and_smallness(g);
    EXPECT_EQ(rep.order, 9) << alpha;
    EXPECT_TRUE(rep.relators_hold) << alpha;
    EXPECT_TRUE(rep.injective) << alpha;
    EXPECT_TRUE(rep.pseudoreflections.empty()) << alpha;
    EXPECT_TRUE(rep.small) << alpha;
  }
  // alpha = 0, 1: generators collapse, representation not faithful
  for (const std::string& alpha : {"0", "1"}) {
    MatrixGroup g = counterexample_group(k, alpha);
    auto rep = pseudoreflection_and_smallness(g);
    EXPECT_LT(rep.order, 9) << alpha;
    EXPECT_FALSE(rep.injective) << alpha;
    EXPECT_FALSE(rep.small) << alpha;
  }
  // alpha = 2: faithful of order 9, but sigma*tau - I has rank 1
  {
    MatrixGroup g = counterexample_group(k, "2");
    auto rep = pseudoreflection_and_smallness(g);
    EXPECT_EQ(rep.order, 9);
    EXPECT_TRUE(rep.injective);
    EXPECT_FALSE(rep.pseudoreflections.empty());
    EXPECT_FALSE(rep.small);
  }
}

TEST(Smallness, AlphaOneCollapse) {
  // with alpha = 1 the word g1 g2^2 evaluates to the identity
  auto k = FieldSpec::perfection(3);
  MatrixGroup g = counterexample_group(k, "1");
  Relator r{{{0, 1}, {1, 2}}, "g1 g2^2"};
  EXPECT_EQ(g.evaluate_word(r), FMatrix::identity(k, 3));
}

TEST(Smallness, RankTwoForNonIdentity) {
  auto k = FieldSpec::perfection(3);
  MatrixGroup g = counterexample_group(k, "t");
  FMatrix id = FMatrix::identity(k, 3);
  for (int i = 1; i < 9; ++i) EXPECT_EQ((id - g.elements[i]).rank(), 2);
}

TEST(Smallness, A3IsSmall) {
  auto k = FieldSpec::prime_field(3);
  MatrixGroup a3 = cyclic_permutation_group(k, 3);
  auto rep = pseudoreflection_and_smallness(a3);
  EXPECT_TRUE(rep.pseudoreflections.empty());
  EXPECT_TRUE(rep.small);
  FMatrix id = FMatrix::identity(k, 3);
  for (int i = 1; i < 3; ++i) EXPECT_EQ((id - a3.elements[i]).rank(), 2);
}

TEST(Smallness, TranspositionIsPseudoreflectionFreeCheck) {
  // a transposition matrix over F_3 has rank(1 - g) = 1: detected
  auto k = FieldSpec::prime_field(3);
  FMatrix swap(k, 2, 2);
  swap.at(0, 1) = FieldElement::one(k);
  swap.at(1, 0) = FieldElement::one(k);
  MatrixGroup g = generate_group(k, 2, {swap});
  auto rep = pseudoreflection_and_smallness(g);
  EXPECT_EQ(rep.pseudoreflections.size(), 1u);
  EXPECT_FALSE(rep.small);
}

TEST(Twist, CounterexampleGenerators) {
  auto k = FieldSpec::perfection(3);
  MatrixGroup g = counterexample_group(k, "t");
  MatrixGroup tw = twist_representation(g, 1);
  FieldElement t13 = FieldElement::t(k).pth_root();
  // the twisted tau is I + t^(1/3) N
  FMatrix expected = matrix_of(k, {{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}});
  expected.at(0, 1) = t13;
  expected.at(1, 2) = t13;
  bool found = false;
  for (const auto& m : tw.elements)
    if (m == expected) found = true;
  EXPECT_TRUE(found);
  // e = 0 is the identity twist
  EXPECT_EQ(twist_representation(g, 0).elements, g.elements);
  // permutation matrices are fixed by any twist
  auto f3 = FieldSpec::prime_field(3);
  MatrixGroup a3 = cyclic_permutation_group(f3, 3);
  EXPECT_EQ(twist_representation(a3, 2).elements, a3.elements);
}

TEST(Twist, PreservesMultiplicationTable) {
  auto k = FieldSpec::perfection(3);
  MatrixGroup g = counterexample_group(k, "t");
  MatrixGroup tw = twist_representation(g, 1);
  ASSERT_EQ(tw.order(), g.order());
  for (int i = 0; i < g.order(); ++i)
    for (int j = 0; j < g.order(); ++j)
      EXPECT_EQ(tw.product_index(i, j), g.product_index(i, j));
}

TEST(Twist, Functoriality) {
  // twisting by e then e' equals twisting by e + e'
  std::mt19937_64 rng(2718281);
  auto k = FieldSpec::perfection(3);
  FieldElement t = FieldElement::t(k);
  std::uniform_int_distribution<int> coef(0, 2), pick(0, 4);
  for (int iter = 0; iter < 10; ++iter) {
    // random upper-unitriangular generators (always invertible, finite group)
    auto rand_entry = [&]() {
      FieldElement c = FieldElement::from_int(k, coef(rng));
      if (pick(rng) == 0) c = c * t;
      return c;
    };
    FMatrix m1 = FMatrix::identity(k, 3), m2 = FMatrix::identity(k, 3);
    m1.at(0, 1) = rand_entry();
    m1.at(1, 2) = rand_entry();
    m1.at(0, 2) = rand_entry();
    m2.at(0, 1) = rand_entry();
    m2.at(1, 2) = rand_entry();
    m2.at(0, 2) = rand_entry();
    MatrixGroup g = generate_group(k, 3, {m1, m2}, 100000);
    int e1 = 1 + (iter % 2), e2 = 1 + (iter % 3);
    MatrixGroup a = twist_representation(twist_representation(g, e1), e2);
    MatrixGroup b = twist_representation(g, e1 + e2);
    EXPECT_EQ(a.elements, b.elements);
  }
}

TEST(DetectMonomial, ReconstructionInvariant) {
  // monomial data reproduces each matrix exactly
  auto k = FieldSpec::extension(2, 2);
  FieldElement w = FieldElement::generator(k);
  FMatrix m(k, 2, 2);
  m.at(0, 1) = w;  // x2 -> w x1
  m.at(1, 0) = FieldElement::one(k);
  MatrixGroup g = generate_group(k, 2, {m});
  auto det = detect_monomial(g);
  ASSERT_TRUE(det.ok());
  for (size_t idx = 0; idx < g.elements.size(); ++idx) {
    const auto& elem = det.structure->per_element[idx];
    FMatrix rebuilt(k, 2, 2);
    for (int j = 0; j < 2; ++j) rebuilt.at(elem.perm[j], j) = elem.scalars[j];
    EXPECT_EQ(rebuilt, g.elements[idx]);
  }
}

}  // namespace
