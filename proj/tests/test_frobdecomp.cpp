#include "frobsplit/frobdecomp.hpp"

#include <gtest/gtest.h>

#include "frobsplit/parse.hpp"

using namespace frobsplit;

namespace {

MatrixGroup cyclic_permutation_group(const FieldSpecPtr& k, int n) {
  FMatrix g(k, n, n);
  for (int j = 0; j < n; ++j) g.at((j + 1) % n, j) = FieldElement::one(k);
  return generate_group(k, n, {g});
}

MatrixGroup a3_group() { return cyclic_permutation_group(FieldSpec::prime_field(3), 3); }
MatrixGroup z4_group() { return cyclic_permutation_group(FieldSpec::prime_field(2), 4); }

MatrixGroup veronese_group() {
  auto k = FieldSpec::extension(2, 2);
  FMatrix m(k, 2, 2);
  m.at(0, 0) = FieldElement::generator(k);
  m.at(1, 1) = FieldElement::generator(k);
  return generate_group(k, 2, {m});
}

TEST(EnumerateBasis, CountsAndOrder) {
  FracBasis b = enumerate_basis(1, 2, 1);
  ASSERT_EQ(b.monomials.size(), 2u);
  EXPECT_EQ(b.monomials[0], (ExpVec{0}));
  EXPECT_EQ(b.monomials[1], (ExpVec{1}));
  EXPECT_EQ(enumerate_basis(3, 3, 1).monomials.size(), 27u);
  EXPECT_EQ(enumerate_basis(4, 2, 1).monomials.size(), 16u);
  // lex order with x1 most significant
  FracBasis b2 = enumerate_basis(2, 2, 1);
  EXPECT_EQ(b2.monomials, (std::vector<ExpVec>{{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
}

TEST(OrbitStabilizer, IdentityOrbit) {
  MatrixGroup g = a3_group();
  MonomialStructure ms = require_monomial(g);
  OrbitSummand s = orbit_and_stabilizer(g, ms, {0, 0, 0}, 1);
  EXPECT_EQ(s.orbit.size(), 1u);
  EXPECT_EQ(s.stabilizer.size(), 3u);
  for (const auto& c : s.character) EXPECT_TRUE(c.is_one());
  EXPECT_EQ(s.shift, Rational(0));
  EXPECT_EQ(s.identified_name, "S^G");
}

TEST(OrbitStabilizer, A3DiagonalFixed) {
  MatrixGroup g = a3_group();
  MonomialStructure ms = require_monomial(g);
  OrbitSummand s = orbit_and_stabilizer(g, ms, {1, 1, 1}, 1);
  EXPECT_EQ(s.orbit.size(), 1u);
  EXPECT_EQ(s.stabilizer.size(), 3u);
  EXPECT_EQ(s.shift, Rational(1));
  EXPECT_EQ(s.identified_name, "S^G");
}

TEST(OrbitStabilizer, Z4HalfTurnStabilizer) {
  MatrixGroup g = z4_group();
  MonomialStructure ms = require_monomial(g);
  // (x1 x3)^(1/2): stabilized exactly by the half turn
  OrbitSummand s = orbit_and_stabilizer(g, ms, {1, 0, 1, 0}, 1);
  EXPECT_EQ(s.orbit.size(), 2u);
  EXPECT_EQ(s.stabilizer.size(), 2u);
  for (const auto& c : s.character) EXPECT_TRUE(c.is_one());
  EXPECT_EQ(s.identified_name, "S^H");
  // m * |H| = |G|
  EXPECT_EQ(s.orbit.size() * s.stabilizer.size(), 4u);
}

TEST(OrbitStabilizer, CharacterIsHomomorphism) {
  MatrixGroup g = veronese_group();
  MonomialStructure ms = require_monomial(g);
  for (const ExpVec& mu : enumerate_basis(2, 2, 2).monomials) {
    OrbitSummand s = orbit_and_stabilizer(g, ms, mu, 2);
    ASSERT_EQ(s.stabilizer.size(), 3u);  // scalars fix every line
    // chi(id) = 1 and chi(h1 h2) = chi(h1) chi(h2)
    std::map<int, FieldElement> chi;
    for (size_t i = 0; i < s.stabilizer.size(); ++i) chi.emplace(s.stabilizer[i], s.character[i]);
    EXPECT_TRUE(chi.at(0).is_one());
    for (int h1 : s.stabilizer)
      for (int h2 : s.stabilizer) {
        int prod = g.product_index(h1, h2);
        EXPECT_EQ(chi.at(prod), chi.at(h1) * chi.at(h2));
      }
    // the stabilizer scalar acts exactly by chi on mu
    for (size_t i = 0; i < s.stabilizer.size(); ++i) {
      const auto& elem = ms.per_element[s.stabilizer[i]];
      EXPECT_EQ(monomial_apply(elem, mu), mu);
      EXPECT_EQ(monomial_scalar(elem, mu, 2), s.character[i]);
    }
  }
}

TEST(Decompose, A3MatchesPaper) {
  MatrixGroup g = a3_group();
  MonomialStructure ms = require_monomial(g);
  // q = 3: (S^G)^3 + S^8
  DecompositionReport r1 = decompose(g, ms, 1);
  ASSERT_EQ(r1.classes.size(), 2u);
  const ClassEntry* sg = r1.find_named("S^G");
  const ClassEntry* s = r1.find_named("S");
  ASSERT_NE(sg, nullptr);
  ASSERT_NE(s, nullptr);
  EXPECT_EQ(sg->multiplicity, 3);
  EXPECT_EQ(s->multiplicity, 8);
  EXPECT_EQ(sg->shifts, (std::vector<Rational>{Rational(0), Rational(1), Rational(2)}));
  EXPECT_TRUE(r1.rank_ok);
  EXPECT_EQ(r1.rank_expected, 27);

  DecompositionReport r2 = decompose(g, ms, 2);
  EXPECT_EQ(r2.find_named("S^G")->multiplicity, 9);
  EXPECT_EQ(r2.find_named("S")->multiplicity, 240);
  EXPECT_TRUE(r2.rank_ok);
}

TEST(Decompose, Z4MatchesPaper) {
  MatrixGroup g = z4_group();
  MonomialStructure ms = require_monomial(g);
  DecompositionReport r1 = decompose(g, ms, 1);
  ASSERT_EQ(r1.classes.size(), 3u);
  EXPECT_EQ(r1.find_named("S^G")->multiplicity, 2);
  EXPECT_EQ(r1.find_named("S^H")->multiplicity, 1);
  EXPECT_EQ(r1.find_named("S")->multiplicity, 3);
  EXPECT_TRUE(r1.rank_ok);

  DecompositionReport r2 = decompose(g, ms, 2);
  EXPECT_EQ(r2.find_named("S^G")->multiplicity, 4);
  EXPECT_EQ(r2.find_named("S^H")->multiplicity, 6);
  EXPECT_EQ(r2.find_named("S")->multiplicity, 60);
}

TEST(Decompose, VeroneseCongruenceClasses) {
  MatrixGroup g = veronese_group();
  MonomialStructure ms = require_monomial(g);
  for (int e = 1; e <= 3; ++e) {
    DecompositionReport r = decompose(g, ms, e);
    long long q = ipow(2, e);
    // brute-force counts by lambda1 + lambda2 mod 3
    std::map<int, long long> expected;
    for (long long l1 = 0; l1 < q; ++l1)
      for (long long l2 = 0; l2 < q; ++l2) expected[static_cast<int>((l1 + l2) % 3)]++;
    ASSERT_EQ(r.classes.size(), 3u) << e;
    std::multiset<long long> got, want;
    for (const auto& c : r.classes) got.insert(c.multiplicity);
    for (const auto& [res, count] : expected) want.insert(count);
    EXPECT_EQ(got, want) << e;
    // the congruence-zero class is the invariant-ring class
    const ClassEntry* sg = r.find_named("S^G");
    ASSERT_NE(sg, nullptr);
    EXPECT_EQ(sg->multiplicity, expected[0]);
  }
  // e = 1 counts are 1, 2, 1
  DecompositionReport r1 = decompose(g, ms, 1);
  EXPECT_EQ(r1.find_named("S^G")->multiplicity, 1);
}

TEST(Decompose, TrivialGroup) {
  auto k = FieldSpec::prime_field(3);
  MatrixGroup g = generate_group(k, 2, {FMatrix::identity(k, 2)});
  MonomialStructure ms = require_monomial(g);
  DecompositionReport r = decompose(g, ms, 1);
  ASSERT_EQ(r.classes.size(), 1u);
  EXPECT_EQ(r.classes[0].name, "S");
  EXPECT_EQ(r.classes[0].multiplicity, 9);
  // shifts are all basis degrees
  EXPECT_EQ(r.classes[0].shifts.front(), Rational(0));
  EXPECT_EQ(r.classes[0].shifts.back(), Rational(4, 3));
}

TEST(Decompose, NonMonomialRefused) {
  auto k = FieldSpec::perfection(3);
  FMatrix s = FMatrix::identity(k, 3);
  s.at(0, 1) = FieldElement::one(k);
  s.at(1, 2) = FieldElement::one(k);
  MatrixGroup g = generate_group(k, 3, {s});
  EXPECT_THROW(decompose(g, 1), FrobError);
}

TEST(Decompose, OrbitPartitionAndRankConservation) {
  MatrixGroup g = z4_group();
  MonomialStructure ms = require_monomial(g);
  for (int e = 1; e <= 2; ++e) {
    DecompositionReport r = decompose(g, ms, e);
    EXPECT_TRUE(r.rank_ok);
    long long q = ipow(2, e);
    EXPECT_EQ(r.rank_expected, q * q * q * q);
    long long total_orbits = 0;
    for (const auto& c : r.classes) total_orbits += c.multiplicity;
    long long shift_count = 0;
    for (const auto& c : r.classes) shift_count += static_cast<long long>(c.shifts.size());
    EXPECT_EQ(shift_count, total_orbits);
  }
}

// the graded Hilbert check: summand dimensions reproduce the dimension of
// the invariants of the full graded piece
TEST(Decompose, HilbertFunctionConsistency) {
  struct Case {
    MatrixGroup g;
    int e;
  };
  std::vector<Case> cases;
  cases.push_back({a3_group(), 1});
  cases.push_back({z4_group(), 1});
  cases.push_back({veronese_group(), 1});
  for (auto& [g, e] : cases) {
    MonomialStructure ms = require_monomial(g);
    int n = g.n, p = g.spec->p;
    long long q = ipow(p, e);
    // collect orbit data
    std::set<ExpVec> visited;
    std::vector<OrbitSummand> orbits;
    for (const ExpVec& mu : enumerate_basis(n, p, e).monomials) {
      if (visited.count(mu)) continue;
      OrbitSummand s = orbit_and_stabilizer(g, ms, mu, e);
      for (const auto& v : s.orbit) visited.insert(v);
      orbits.push_back(std::move(s));
    }
    auto gen_idx = detail::generator_indices(g);
    for (long long T = 0; T <= 2 * q; ++T) {
      Rational d(T, q);
      // direct: G-invariants of the full graded piece of S^{1/q}
      auto full = graded_piece(p, n, e, d);
      long long direct = full.empty() ? 0 : static_cast<long long>(detail::invariant_space(g, ms, gen_idx, full, e).size());
      // summands: H-invariants of (S mu)_d over orbit representatives
      long long summed = 0;
      for (const auto& s : orbits) {
        Rational j = d - s.shift;
        if (j < 0 || !is_integer(j)) continue;
        std::vector<ExpVec> basis;
        for (const ExpVec& a : graded_piece(p, n, 0, j)) {
          ExpVec v(n);
          for (int i = 0; i < n; ++i) v[i] = static_cast<int>(q) * a[i] + s.representative[i];
          basis.push_back(std::move(v));
        }
        summed += static_cast<long long>(detail::invariant_space(g, ms, s.stabilizer, basis, e).size());
      }
      EXPECT_EQ(direct, summed) << "degree " << to_string(d);
    }
  }
}

TEST(PermMap, A3AllRepresentatives) {
  MatrixGroup g = a3_group();
  MonomialStructure ms = require_monomial(g);
  std::set<ExpVec> visited;
  for (const ExpVec& mu : enumerate_basis(3, 3, 1).monomials) {
    if (visited.count(mu)) continue;
    OrbitSummand s = orbit_and_stabilizer(g, ms, mu, 1);
    for (const auto& v : s.orbit) visited.insert(v);
    PermMapReport rep = verify_perm_map(g, ms, mu, 1, Rational(2));
    EXPECT_TRUE(rep.ok) << "mu = (" << mu[0] << "," << mu[1] << "," << mu[2] << ")";
    EXPECT_FALSE(rep.degrees.empty());
  }
}

TEST(PermMap, Z4HalfTurnRepresentative) {
  MatrixGroup g = z4_group();
  MonomialStructure ms = require_monomial(g);
  PermMapReport rep = verify_perm_map(g, ms, {1, 0, 1, 0}, 1, Rational(2));
  EXPECT_TRUE(rep.ok);
  for (const auto& c : rep.degrees) EXPECT_EQ(c.dim_source, c.dim_target);
}

TEST(PermMap, IdentityRepresentative) {
  MatrixGroup g = z4_group();
  MonomialStructure ms = require_monomial(g);
  PermMapReport rep = verify_perm_map(g, ms, {0, 0, 0, 0}, 1, Rational(2));
  EXPECT_TRUE(rep.ok);
}

TEST(SplitWitness, MonomialBuiltins) {
  {
    MatrixGroup g = a3_group();
    MonomialStructure ms = require_monomial(g);
    SplitWitnessReport rep = fpure_split_witness(g, ms, 1, Rational(2));
    EXPECT_TRUE(rep.ok);
    EXPECT_GT(rep.invariants_checked, 0);
    EXPECT_GT(rep.linearity_samples, 0);
  }
  {
    MatrixGroup g = z4_group();
    MonomialStructure ms = require_monomial(g);
    EXPECT_TRUE(fpure_split_witness(g, ms, 2, Rational(2)).ok);
  }
  {
    MatrixGroup g = veronese_group();
    MonomialStructure ms = require_monomial(g);
    EXPECT_TRUE(fpure_split_witness(g, ms, 1, Rational(2)).ok);
  }
  {
    // trivial group: the classical Frobenius splitting of a polynomial ring
    auto k = FieldSpec::prime_field(2);
    MatrixGroup g = generate_group(k, 2, {FMatrix::identity(k, 2)});
    MonomialStructure ms = require_monomial(g);
    EXPECT_TRUE(fpure_split_witness(g, ms, 1, Rational(2)).ok);
  }
}

TEST(Signature, A3FreeClassRatios) {
  MatrixGroup g = a3_group();
  MonomialStructure ms = require_monomial(g);
  SignatureTable table = empirical_signature(g, ms, 1, 3);
  // free-class ratio is (q^3 - q) / (3 q^3), approaching 1/3
  std::map<int, Rational> free_ratio;
  for (const auto& row : table.rows)
    if (row.free_class) free_ratio[row.e] = row.ratio;
  for (int e = 1; e <= 3; ++e) {
    long long q = ipow(3, e);
    EXPECT_EQ(free_ratio.at(e), Rational((q * q * q - q) / 3, q * q * q)) << e;
  }
  EXPECT_LT(free_ratio.at(3) - Rational(1, 3), Rational(0));
  EXPECT_LT(Rational(1, 3) - free_ratio.at(3), Rational(1, 100));
}

TEST(Signature, TrivialGroupSingleClass) {
  auto k = FieldSpec::prime_field(2);
  MatrixGroup g = generate_group(k, 1, {FMatrix::identity(k, 1)});
  MonomialStructure ms = require_monomial(g);
  SignatureTable table = empirical_signature(g, ms, 1, 2);
  for (const auto& row : table.rows) EXPECT_EQ(row.ratio, Rational(1));
}

TEST(Decompose, DeterministicAcrossRuns) {
  MatrixGroup g = z4_group();
  MonomialStructure ms = require_monomial(g);
  DecompositionReport a = decompose(g, ms, 2), b = decompose(g, ms, 2);
  ASSERT_EQ(a.classes.size(), b.classes.size());
  for (size_t i = 0; i < a.classes.size(); ++i) {
    EXPECT_EQ(a.classes[i].label, b.classes[i].label);
    EXPECT_EQ(a.classes[i].multiplicity, b.classes[i].multiplicity);
    EXPECT_EQ(a.classes[i].shifts, b.classes[i].shifts);
  }
}

}  // namespace
