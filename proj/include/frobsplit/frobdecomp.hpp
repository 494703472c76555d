#ifndef FROBSPLIT_FROBDECOMP_HPP
#define FROBSPLIT_FROBDECOMP_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "frobsplit/group.hpp"
#include "frobsplit/linalg.hpp"
#include "frobsplit/poly.hpp"

namespace frobsplit {

// Decomposition of the q-th root ring of S = k[x1..xn] under a monomial
// group action: the S-basis B_e of fractional monomials splits into orbits
// of scalar-lines; each orbit contributes one summand class determined by
// the line stabilizer and its character.

/// the q^n fractional monomials x^(lambda/q), 0 <= lambda_i <= q-1, lex order
struct FracBasis {
  int n = 0, p = 0, e = 0;
  std::vector<ExpVec> monomials;

  long long q() const { return ipow(p, e); }
};

inline FracBasis enumerate_basis(int n, int p, int e) {
  FracBasis b;
  b.n = n;
  b.p = p;
  b.e = e;
  long long q = b.q();
  ExpVec cur(n, 0);
  for (;;) {
    b.monomials.push_back(cur);
    int i = n - 1;
    while (i >= 0 && ++cur[i] == q) cur[i--] = 0;
    if (i < 0) break;
  }
  return b;
}

/// g applied to the exponent vector of a fractional monomial
inline ExpVec monomial_apply(const MonomialElement& g, const ExpVec& lambda) {
  ExpVec out(lambda.size());
  for (size_t j = 0; j < lambda.size(); ++j) out[g.perm[j]] = lambda[j];
  return out;
}

/// the scalar by which g acts on x^(lambda/p^e): the p^e-th root of the
/// product of the level-0 scalars (the action on roots is the unique
/// extension of the level-0 action over a perfect field)
inline FieldElement monomial_scalar(const MonomialElement& g, const ExpVec& lambda, int e) {
  FieldElement s = FieldElement::one(g.scalars.at(0).spec());
  for (size_t j = 0; j < lambda.size(); ++j)
    if (lambda[j] != 0) s = s * g.scalars[j].pow(lambda[j]);
  return s.pth_root_iter(e);
}

struct OrbitSummand {
  ExpVec representative;               // lex-least exponent vector in the orbit
  int e = 0;
  std::vector<ExpVec> orbit;           // sorted lex
  std::vector<int> stabilizer;         // element indices, ascending
  std::vector<FieldElement> character; // aligned with stabilizer
  Rational shift;                      // deg mu
  std::string class_label;             // canonical (H, chi) label up to conjugacy
  std::optional<std::string> identified_name;  // "S^G", "S^H", "S" where applicable
};

namespace detail {

struct CanonicalLabel {
  std::string key;
  std::vector<int> stabilizer;
  std::vector<std::string> character;
};

/// canonical form of (H, chi) under conjugation: for every g, transport the
/// pair along h -> g h g^-1 and keep the lexicographically least rendering
inline CanonicalLabel canonical_label(const MatrixGroup& g, const std::vector<int>& stab,
                                      const std::vector<FieldElement>& chi) {
  CanonicalLabel best;
  for (int c = 0; c < g.order(); ++c) {
    int cinv = g.inverse_index(c);
    std::vector<std::pair<int, std::string>> rows;
    rows.reserve(stab.size());
    for (size_t i = 0; i < stab.size(); ++i) {
      int conj = g.product_index(g.product_index(c, stab[i]), cinv);
      rows.emplace_back(conj, chi[i].to_string());
    }
    std::sort(rows.begin(), rows.end());
    std::string key = "o" + std::to_string(stab.size()) + "[";
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i) key += ",";
      key += std::to_string(rows[i].first) + ":" + rows[i].second;
    }
    key += "]";
    if (best.key.empty() || key < best.key) {
      best.key = std::move(key);
      best.stabilizer.clear();
      best.character.clear();
      for (auto& [idx, val] : rows) {
        best.stabilizer.push_back(idx);
        best.character.push_back(val);
      }
    }
  }
  return best;
}

inline bool is_prime_power_of(long long order, int p) {
  while (order % p == 0) order /= p;
  return order == 1;
}

inline bool generators_unipotent(const MatrixGroup& g) {
  FMatrix id = FMatrix::identity(g.spec, g.n);
  for (const auto& m : g.generators) {
    if ((m - id).pow(g.n).rank() != 0) return false;
  }
  return true;
}

}  // namespace detail

inline OrbitSummand orbit_and_stabilizer(const MatrixGroup& g, const MonomialStructure& ms, const ExpVec& mu,
                                         int e) {
  OrbitSummand s;
  s.e = e;
  std::set<ExpVec> orbit;
  bool chi_trivial = true;
  for (int idx = 0; idx < g.order(); ++idx) {
    const MonomialElement& elem = ms.per_element[idx];
    ExpVec target = monomial_apply(elem, mu);
    if (target == mu) {
      s.stabilizer.push_back(idx);
      FieldElement scalar = monomial_scalar(elem, mu, e);
      if (!scalar.is_one()) chi_trivial = false;
      s.character.push_back(std::move(scalar));
    }
    orbit.insert(std::move(target));
  }
  s.orbit.assign(orbit.begin(), orbit.end());
  s.representative = s.orbit.front();
  if (static_cast<long long>(s.orbit.size()) * static_cast<long long>(s.stabilizer.size()) != g.order())
    throw FrobError("orbit-stabilizer mismatch (internal)");
  s.shift = Rational(exp_total(mu), ipow(g.spec->p, e));

  auto label = detail::canonical_label(g, s.stabilizer, s.character);
  s.class_label = label.key;
  // identified names for the worked patterns
  long long h = static_cast<long long>(s.stabilizer.size());
  if (g.order() == 1) {
    s.identified_name = "S";
  } else if (chi_trivial && h == g.order()) {
    s.identified_name = "S^G";
  } else if (h == 1) {
    // free orbit: identified with S when kG is local (p-group) acting
    // unipotently over the prime field
    if (detail::is_prime_power_of(g.order(), g.spec->p) && g.spec->is_prime_field() &&
        detail::generators_unipotent(g))
      s.identified_name = "S";
  } else if (chi_trivial) {
    s.identified_name = "S^H";
  }
  return s;
}

struct ClassEntry {
  std::string label;
  std::optional<std::string> name;
  long long stabilizer_order = 0;
  std::vector<int> stabilizer;          // canonical conjugate, element indices
  std::vector<std::string> character;   // aligned values
  long long multiplicity = 0;
  std::vector<Rational> shifts;         // sorted ascending
  long long orbit_size = 0;
};

struct DecompositionReport {
  int p = 0, e = 0, n = 0;
  long long order = 0;
  std::vector<ClassEntry> classes;  // sorted by label
  long long rank_sum = 0;
  long long rank_expected = 0;
  bool rank_ok = false;

  const ClassEntry* find_named(const std::string& name) const {
    for (const auto& c : classes)
      if (c.name == name) return &c;
    return nullptr;
  }
};

inline DecompositionReport decompose(const MatrixGroup& g, const MonomialStructure& ms, int e) {
  DecompositionReport rep;
  rep.p = g.spec->p;
  rep.e = e;
  rep.n = g.n;
  rep.order = g.order();
  FracBasis basis = enumerate_basis(g.n, rep.p, e);
  long long qn = static_cast<long long>(basis.monomials.size());
  rep.rank_expected = qn;

  std::set<ExpVec> visited;
  std::map<std::string, ClassEntry> classes;
  for (const ExpVec& mu : basis.monomials) {
    if (visited.count(mu)) continue;
    OrbitSummand s = orbit_and_stabilizer(g, ms, mu, e);
    for (const auto& v : s.orbit) visited.insert(v);
    rep.rank_sum += static_cast<long long>(s.orbit.size());
    auto [it, inserted] = classes.try_emplace(s.class_label);
    ClassEntry& entry = it->second;
    if (inserted) {
      entry.label = s.class_label;
      entry.name = s.identified_name;
      entry.stabilizer_order = static_cast<long long>(s.stabilizer.size());
      auto canon = detail::canonical_label(g, s.stabilizer, s.character);
      entry.stabilizer = canon.stabilizer;
      entry.character = canon.character;
      entry.orbit_size = static_cast<long long>(s.orbit.size());
    }
    entry.multiplicity += 1;
    entry.shifts.push_back(s.shift);
  }
  for (auto& [key, entry] : classes) {
    std::sort(entry.shifts.begin(), entry.shifts.end());
    rep.classes.push_back(std::move(entry));
  }
  rep.rank_ok = rep.rank_sum == rep.rank_expected;
  return rep;
}

inline MonomialStructure require_monomial(const MatrixGroup& g) {
  auto det = detect_monomial(g);
  if (!det.ok()) throw FrobError("group is not monomial in the standard basis: " + det.refusal());
  return std::move(*det.structure);
}

inline DecompositionReport decompose(const MatrixGroup& g, int e) {
  MonomialStructure ms = require_monomial(g);
  return decompose(g, ms, e);
}

// ---------------------------------------------------------------------------
// exact linear algebra on graded pieces

namespace detail {

/// matrix of the action of a monomial element on a span of fractional
/// monomials (the span must be closed under the element)
inline FMatrix action_matrix(const MonomialElement& g, const std::vector<ExpVec>& basis,
                             const std::map<ExpVec, int>& index, int e) {
  const FieldSpecPtr& k = g.scalars.at(0).spec();
  FMatrix m(k, static_cast<int>(basis.size()), static_cast<int>(basis.size()));
  for (size_t j = 0; j < basis.size(); ++j) {
    ExpVec target = monomial_apply(g, basis[j]);
    auto it = index.find(target);
    if (it == index.end()) throw FrobError("basis not closed under the group action (internal)");
    m.at(it->second, static_cast<int>(j)) = monomial_scalar(g, basis[j], e);
  }
  return m;
}

/// basis of the joint fixed space of the given element indices
inline std::vector<std::vector<FieldElement>> invariant_space(const MatrixGroup& g, const MonomialStructure& ms,
                                                              const std::vector<int>& element_indices,
                                                              const std::vector<ExpVec>& basis, int e) {
  const FieldSpecPtr& k = g.spec;
  std::map<ExpVec, int> index;
  for (size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], static_cast<int>(i));
  if (basis.empty()) return {};
  std::vector<FMatrix> stacked;
  FMatrix id = FMatrix::identity(k, static_cast<int>(basis.size()));
  for (int idx : element_indices) {
    if (idx == 0) continue;  // identity contributes nothing
    stacked.push_back(action_matrix(ms.per_element[idx], basis, index, e) - id);
  }
  if (stacked.empty()) {
    std::vector<std::vector<FieldElement>> all;
    for (size_t i = 0; i < basis.size(); ++i) {
      std::vector<FieldElement> v(basis.size(), FieldElement::zero(k));
      v[i] = FieldElement::one(k);
      all.push_back(std::move(v));
    }
    return all;
  }
  return vstack(stacked).kernel_basis();
}

/// indices of the group generators in the element table
inline std::vector<int> generator_indices(const MatrixGroup& g) {
  std::vector<int> out;
  for (const auto& gen : g.generators) {
    int idx = g.index_of(gen);
    if (idx < 0) throw FrobError("generator missing from table (internal)");
    out.push_back(idx);
  }
  return out;
}

}  // namespace detail

struct PermMapDegreeCheck {
  Rational degree;
  int dim_source = 0;  // H-invariants of (S mu)_d
  int dim_target = 0;  // G-invariants of (S gamma_mu)_d
  bool bijective = false;
};

struct PermMapReport {
  ExpVec mu;
  std::vector<PermMapDegreeCheck> degrees;
  bool ok = false;
};

/// Checks that summing over coset representatives maps the H-invariants of
/// S*mu isomorphically onto the G-invariants of S*gamma_mu, degree by degree
/// up to the bound. An exact kernel computation on both sides; failure would
/// indicate an implementation bug, not a mathematical possibility.
inline PermMapReport verify_perm_map(const MatrixGroup& g, const MonomialStructure& ms, const ExpVec& mu, int e,
                                     const Rational& max_degree) {
  PermMapReport rep;
  rep.mu = mu;
  const FieldSpecPtr& k = g.spec;
  int n = g.n, p = k->p;
  long long q = ipow(p, e);
  OrbitSummand s = orbit_and_stabilizer(g, ms, mu, e);

  // coset representatives in table order; the identity comes first
  std::vector<int> reps;
  std::set<ExpVec> seen;
  for (int idx = 0; idx < g.order(); ++idx) {
    ExpVec target = monomial_apply(ms.per_element[idx], mu);
    if (seen.insert(target).second) reps.push_back(idx);
  }

  Rational mu_deg = s.shift;
  rep.ok = true;
  for (long long j = 0;; ++j) {
    Rational d = mu_deg + Rational(j);
    if (d > max_degree) break;
    // source: {x^a mu : |a| = j}, as level-e vectors q*a + mu
    std::vector<ExpVec> small_basis;
    for (const ExpVec& a : graded_piece(p, n, 0, Rational(j))) {
      ExpVec v(n);
      for (int i = 0; i < n; ++i) v[i] = static_cast<int>(q) * a[i] + mu[i];
      small_basis.push_back(std::move(v));
    }
    // target: same integer parts over every orbit line
    std::vector<ExpVec> big_basis;
    for (const ExpVec& lam : s.orbit)
      for (const ExpVec& a : graded_piece(p, n, 0, Rational(j))) {
        ExpVec v(n);
        for (int i = 0; i < n; ++i) v[i] = static_cast<int>(q) * a[i] + lam[i];
        big_basis.push_back(std::move(v));
      }
    std::sort(big_basis.begin(), big_basis.end());
    std::map<ExpVec, int> big_index;
    for (size_t i = 0; i < big_basis.size(); ++i) big_index.emplace(big_basis[i], static_cast<int>(i));

    auto h_inv = detail::invariant_space(g, ms, s.stabilizer, small_basis, e);
    auto g_inv = detail::invariant_space(g, ms, detail::generator_indices(g), big_basis, e);

    // the summed coset action, as a big x small matrix
    FMatrix phi(k, static_cast<int>(big_basis.size()), static_cast<int>(small_basis.size()));
    for (size_t col = 0; col < small_basis.size(); ++col) {
      for (int r : reps) {
        ExpVec target = monomial_apply(ms.per_element[r], small_basis[col]);
        auto it = big_index.find(target);
        if (it == big_index.end()) throw FrobError("coset image escaped the orbit block (internal)");
        FieldElement c = monomial_scalar(ms.per_element[r], small_basis[col], e);
        phi.at(it->second, static_cast<int>(col)) = phi.at(it->second, static_cast<int>(col)) + c;
      }
    }

    // images of the H-invariant basis
    FMatrix images(k, static_cast<int>(big_basis.size()), static_cast<int>(h_inv.size()));
    for (size_t v = 0; v < h_inv.size(); ++v) {
      auto img = phi.apply(h_inv[v]);
      for (size_t r = 0; r < img.size(); ++r) images.at(static_cast<int>(r), static_cast<int>(v)) = img[r];
    }
    // check images are G-invariant: append them to the G-invariant span and
    // confirm the rank does not grow
    FMatrix span(k, static_cast<int>(big_basis.size()), static_cast<int>(g_inv.size() + h_inv.size()));
    for (size_t v = 0; v < g_inv.size(); ++v)
      for (size_t r = 0; r < big_basis.size(); ++r)
        span.at(static_cast<int>(r), static_cast<int>(v)) = g_inv[v][r];
    for (size_t v = 0; v < h_inv.size(); ++v)
      for (size_t r = 0; r < big_basis.size(); ++r)
        span.at(static_cast<int>(r), static_cast<int>(g_inv.size() + v)) = images.at(static_cast<int>(r), static_cast<int>(v));

    PermMapDegreeCheck check;
    check.degree = d;
    check.dim_source = static_cast<int>(h_inv.size());
    check.dim_target = static_cast<int>(g_inv.size());
    int image_rank = images.rank();
    bool invariant_images = span.rank() == static_cast<int>(g_inv.size());
    check.bijective = invariant_images && image_rank == check.dim_source && check.dim_source == check.dim_target;
    rep.ok = rep.ok && check.bijective;
    rep.degrees.push_back(check);
  }
  return rep;
}

struct SplitWitnessReport {
  int e = 0;
  Rational max_degree;
  int invariants_checked = 0;
  int linearity_samples = 0;
  bool projection_fixes_one = false;
  bool images_invariant = false;
  bool linear_over_invariants = false;
  bool ok = false;
};

namespace detail {

/// the projection onto the mu = 1 summand: keep the terms whose exponents
/// are all divisible by q, i.e. the integer-exponent part
inline FracPolynomial integer_part(const FracPolynomial& f, int e) {
  FracPolynomial out(f.spec(), f.nvars());
  long long q = ipow(f.spec()->p, e);
  if (f.level() == 0) return f;  // already integral
  long long lift = q / ipow(f.spec()->p, f.level());
  for (const auto& [ev, c] : f.terms()) {
    ExpVec scaled = ev;
    bool integral = true;
    for (int& x : scaled) {
      long long v = static_cast<long long>(x) * lift;
      if (v % q != 0) {
        integral = false;
        break;
      }
      x = static_cast<int>(v / q);
    }
    if (integral) out.add_term(scaled, c, 0);
  }
  return out;
}

inline FracPolynomial from_coords(const FieldSpecPtr& k, int n, const std::vector<ExpVec>& basis,
                                  const std::vector<FieldElement>& coords, int e) {
  FracPolynomial f(k, n);
  for (size_t i = 0; i < basis.size(); ++i) f.add_term(basis[i], coords[i], e);
  return f;
}

inline std::vector<std::vector<FieldElement>> substitution_matrix_list(const MatrixGroup& g, int which) {
  std::vector<std::vector<FieldElement>> m(g.n, std::vector<FieldElement>(g.n, FieldElement::zero(g.spec)));
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) m[i][j] = g.generators[which].at(i, j);
  return m;
}

}  // namespace detail

/// Exhibits the splitting of the invariant ring off its q-th root ring for a
/// monomial action: the coordinate projection onto the mu = 1 orbit summand
/// sends 1 to 1, carries invariants to invariants, and is linear over the
/// invariant ring. Verified on the full invariant spaces up to max_degree.
inline SplitWitnessReport fpure_split_witness(const MatrixGroup& g, const MonomialStructure& ms, int e,
                                              const Rational& max_degree) {
  SplitWitnessReport rep;
  rep.e = e;
  rep.max_degree = max_degree;
  const FieldSpecPtr& k = g.spec;
  int n = g.n, p = k->p;
  long long q = ipow(p, e);
  auto gen_idx = detail::generator_indices(g);

  // projection fixes 1
  FracPolynomial one = FracPolynomial::one(k, n);
  rep.projection_fixes_one = detail::integer_part(one, e) == one;

  std::vector<std::vector<std::vector<FieldElement>>> gens_as_matrices;
  for (size_t w = 0; w < g.generators.size(); ++w)
    gens_as_matrices.push_back(detail::substitution_matrix_list(g, static_cast<int>(w)));

  auto is_invariant0 = [&](const FracPolynomial& f) {
    for (const auto& m : gens_as_matrices)
      if (!(f.substitute(m) == f)) return false;
    return true;
  };

  // invariants of the root ring degree by degree
  rep.images_invariant = true;
  rep.linear_over_invariants = true;
  std::vector<FracPolynomial> sample_invariants0;  // level-0 invariants for linearity sampling
  for (long long T = 0; Rational(T, q) <= max_degree; ++T) {
    Rational d(T, q);
    auto basis = graded_piece(p, n, e, d);
    if (basis.empty()) continue;
    auto inv = detail::invariant_space(g, ms, gen_idx, basis, e);
    for (const auto& coords : inv) {
      FracPolynomial z = detail::from_coords(k, n, basis, coords, e);
      FracPolynomial pz = detail::integer_part(z, e);
      ++rep.invariants_checked;
      if (!pz.is_zero() && !is_invariant0(pz)) rep.images_invariant = false;
      if (T % q == 0 && z.level() == 0) sample_invariants0.push_back(z);
    }
  }
  // linearity over the invariant ring on sampled pairs
  for (const auto& a : sample_invariants0) {
    for (long long T = 0; T <= q && Rational(T, q) <= max_degree; ++T) {
      auto basis = graded_piece(p, n, e, Rational(T, q));
      if (basis.empty()) continue;
      auto inv = detail::invariant_space(g, ms, gen_idx, basis, e);
      for (const auto& coords : inv) {
        FracPolynomial z = detail::from_coords(k, n, basis, coords, e);
        FracPolynomial lhs = detail::integer_part(a * z, e);
        FracPolynomial rhs = a * detail::integer_part(z, e);
        ++rep.linearity_samples;
        if (!(lhs == rhs)) rep.linear_over_invariants = false;
      }
    }
  }
  rep.ok = rep.projection_fixes_one && rep.images_invariant && rep.linear_over_invariants;
  return rep;
}

struct SignatureRow {
  int e = 0;
  std::string label;
  std::optional<std::string> name;
  long long multiplicity = 0;
  Rational ratio;               // multiplicity / q^n
  bool free_class = false;
  std::optional<Rational> gap;  // |ratio - 1/|G|| for the free class
};

struct SignatureTable {
  std::vector<SignatureRow> rows;
};

/// empirical generalized-signature ratios: multiplicity of each summand
/// class over q^n, with the free-orbit class compared against 1/|G|
inline SignatureTable empirical_signature(const MatrixGroup& g, const MonomialStructure& ms, int e_lo, int e_hi) {
  SignatureTable table;
  for (int e = e_lo; e <= e_hi; ++e) {
    DecompositionReport rep = decompose(g, ms, e);
    for (const auto& cls : rep.classes) {
      SignatureRow row;
      row.e = e;
      row.label = cls.label;
      row.name = cls.name;
      row.multiplicity = cls.multiplicity;
      row.ratio = Rational(cls.multiplicity, rep.rank_expected);
      row.free_class = cls.stabilizer_order == 1 && g.order() > 1;
      if (row.free_class) {
        Rational target(1, g.order());
        row.gap = row.ratio > target ? row.ratio - target : target - row.ratio;
      }
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

}  // namespace frobsplit

#endif  // FROBSPLIT_FROBDECOMP_HPP
