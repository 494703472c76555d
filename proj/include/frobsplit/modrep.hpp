#ifndef FROBSPLIT_MODREP_HPP
#define FROBSPLIT_MODREP_HPP

#include <optional>
#include <string>
#include <vector>

#include "frobsplit/group.hpp"
#include "frobsplit/linalg.hpp"
#include "frobsplit/rational.hpp"

namespace frobsplit {

// Finite-dimensional modules over kG = k[a,b]/(a^3, b^3), presented by the
// commuting order-3 unipotent matrices for the two group generators. The
// coefficient field is the perfection of F_3(t).

/// monomial basis a^i b^j of k[a,b]/(a^3,b^3) in graded-lex order with a < b
inline const std::vector<std::pair<int, int>>& kg_monomials() {
  static const std::vector<std::pair<int, int>> basis = {
      {0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}, {2, 1}, {1, 2}, {2, 2}};
  return basis;
}

class KGModule {
 public:
  KGModule(FMatrix rho_sigma, FMatrix rho_tau, std::optional<Rational> degree = std::nullopt)
      : sigma_(std::move(rho_sigma)), tau_(std::move(rho_tau)), degree_(degree) {
    validate();
  }

  const FMatrix& rho_sigma() const { return sigma_; }
  const FMatrix& rho_tau() const { return tau_; }
  FMatrix a() const { return sigma_ - FMatrix::identity(spec(), dimension()); }
  FMatrix b() const { return tau_ - FMatrix::identity(spec(), dimension()); }
  int dimension() const { return sigma_.rows(); }
  const FieldSpecPtr& spec() const { return sigma_.spec(); }
  const std::optional<Rational>& degree_tag() const { return degree_; }

  /// direct sum, used by tests for socle additivity
  friend KGModule direct_sum(const KGModule& x, const KGModule& y) {
    int n = x.dimension(), m = y.dimension();
    FMatrix s(x.spec(), n + m, n + m), t(x.spec(), n + m, n + m);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        s.at(i, j) = x.sigma_.at(i, j);
        t.at(i, j) = x.tau_.at(i, j);
      }
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        s.at(n + i, n + j) = y.sigma_.at(i, j);
        t.at(n + i, n + j) = y.tau_.at(i, j);
      }
    return KGModule(std::move(s), std::move(t));
  }

 private:
  void validate() const {
    if (spec()->p != 3) throw FrobError("kG-modules require characteristic 3");
    if (sigma_.rows() != sigma_.cols() || tau_.rows() != tau_.cols() || sigma_.rows() != tau_.rows())
      throw FrobError("kG-module matrices must be square of equal size");
    FMatrix id = FMatrix::identity(spec(), dimension());
    if (!(sigma_.pow(3) == id) || !(tau_.pow(3) == id))
      throw FrobError("kG-module matrices must have order dividing 3");
    if (!(sigma_ * tau_ == tau_ * sigma_)) throw FrobError("kG-module matrices must commute");
  }

  FMatrix sigma_, tau_;
  std::optional<Rational> degree_;
};

/// V(alpha): k^3 with sigma -> I + N and tau -> I + alpha N
inline KGModule build_V(const FieldElement& alpha) {
  const FieldSpecPtr& k = alpha.spec();
  if (!k->is_perfection() || k->p != 3)
    throw FrobError("V(alpha) lives over the perfection of F_3(t)");
  FMatrix s = FMatrix::identity(k, 3), t = FMatrix::identity(k, 3);
  s.at(0, 1) = FieldElement::one(k);
  s.at(1, 2) = FieldElement::one(k);
  t.at(0, 1) = alpha;
  t.at(1, 2) = alpha;
  return KGModule(std::move(s), std::move(t));
}

/// Annihilator of a module inside k[a,b]/(a^3,b^3), as the canonical reduced
/// row-echelon basis of the annihilator subspace in the 9-dim monomial basis.
/// Ideal equality is subspace equality of the normal forms.
struct AnnihilatorIdeal {
  FMatrix basis;  // RREF rows, 9 columns in kg_monomials() order

  bool operator==(const AnnihilatorIdeal& o) const { return basis == o.basis; }
  bool operator!=(const AnnihilatorIdeal& o) const { return !(*this == o); }

  int dimension() const { return basis.rows(); }

  /// when the ideal contains a unique line in span{a, b}, returns the alpha
  /// with b - alpha a in the ideal (the printable principal generator)
  std::optional<FieldElement> linear_generator_alpha() const {
    std::optional<FieldElement> found;
    for (int r = 0; r < basis.rows(); ++r) {
      bool linear = true;
      for (int c = 0; c < 9; ++c) {
        if (c == 1 || c == 2) continue;
        if (!basis.at(r, c).is_zero()) linear = false;
      }
      if (!linear) continue;
      const FieldElement& ca = basis.at(r, 1);
      const FieldElement& cb = basis.at(r, 2);
      if (cb.is_zero()) continue;  // a multiple of a alone: not of the b - alpha a shape
      if (found) return std::nullopt;
      found = -(ca / cb);
    }
    return found;
  }

  std::string to_string() const {
    std::string out;
    for (int r = 0; r < basis.rows(); ++r) {
      std::string row;
      for (int c = 8; c >= 0; --c) {
        const FieldElement& v = basis.at(r, c);
        if (v.is_zero()) continue;
        auto [i, j] = kg_monomials()[c];
        std::string mono;
        for (int k = 0; k < i; ++k) mono += mono.empty() ? "a" : "*a";
        for (int k = 0; k < j; ++k) mono += mono.empty() ? "b" : "*b";
        std::string cs = v.to_string();
        bool parens = cs.find('+') != std::string::npos || cs.find('/') != std::string::npos;
        std::string term = mono.empty() ? cs : (v.is_one() ? mono : (parens ? "(" + cs + ")" : cs) + "*" + mono);
        row += row.empty() ? term : " + " + term;
      }
      if (row.empty()) row = "0";
      out += out.empty() ? row : "; " + row;
    }
    return "(" + out + ")";
  }
};

inline AnnihilatorIdeal annihilator(const KGModule& m) {
  const FieldSpecPtr& k = m.spec();
  int d = m.dimension();
  FMatrix a = m.a(), b = m.b();
  // precompute powers
  std::vector<FMatrix> apow = {FMatrix::identity(k, d), a, a * a};
  std::vector<FMatrix> bpow = {FMatrix::identity(k, d), b, b * b};
  // columns: the 9 monomial actions flattened to d^2 coordinates
  FMatrix sys(k, d * d, 9);
  for (int c = 0; c < 9; ++c) {
    auto [i, j] = kg_monomials()[c];
    FMatrix act = apow[i] * bpow[j];
    for (int r = 0; r < d; ++r)
      for (int s = 0; s < d; ++s) sys.at(r * d + s, c) = act.at(r, s);
  }
  auto kernel = sys.kernel_basis();
  FMatrix rows(k, static_cast<int>(kernel.size()), 9);
  for (size_t r = 0; r < kernel.size(); ++r)
    for (int c = 0; c < 9; ++c) rows.at(static_cast<int>(r), c) = kernel[r][c];
  rows.rref();
  return AnnihilatorIdeal{std::move(rows)};
}

/// normal form of the principal ideal (b - alpha a), for oracle comparisons
inline AnnihilatorIdeal principal_ideal_normal_form(const FieldElement& alpha) {
  const FieldSpecPtr& k = alpha.spec();
  // multiply the generator by all 9 monomials inside k[a,b]/(a^3,b^3)
  auto mono_index = [](int i, int j) -> int {
    const auto& basis = kg_monomials();
    for (size_t c = 0; c < basis.size(); ++c)
      if (basis[c] == std::make_pair(i, j)) return static_cast<int>(c);
    return -1;
  };
  FMatrix rows(k, 9, 9);
  for (int c = 0; c < 9; ++c) {
    auto [i, j] = kg_monomials()[c];
    // (b - alpha a) * a^i b^j = a^i b^(j+1) - alpha a^(i+1) b^j, truncating cubes
    if (j + 1 <= 2) rows.at(c, mono_index(i, j + 1)) = FieldElement::one(k);
    if (i + 1 <= 2) rows.at(c, mono_index(i + 1, j)) = -alpha;
  }
  rows.rref();
  // drop zero rows
  int nonzero = 0;
  for (int r = 0; r < 9; ++r) {
    bool z = true;
    for (int c = 0; c < 9; ++c)
      if (!rows.at(r, c).is_zero()) z = false;
    if (!z) ++nonzero;
  }
  FMatrix trimmed(k, nonzero, 9);
  for (int r = 0; r < nonzero; ++r)
    for (int c = 0; c < 9; ++c) trimmed.at(r, c) = rows.at(r, c);
  return AnnihilatorIdeal{std::move(trimmed)};
}

/// dimension of {v : av = 0 = bv}; 1 certifies indecomposability since kG is
/// artinian local
inline int socle_dim(const KGModule& m) {
  FMatrix stacked = vstack({m.a(), m.b()});
  return m.dimension() - stacked.rank();
}

/// entrywise 3^e-th roots via the group-level twist
inline KGModule twist_module(const KGModule& m, int e) {
  std::optional<Rational> deg = m.degree_tag();
  if (deg) deg = *deg / Rational(ipow(3, e));
  return KGModule(m.rho_sigma().transform_entries(&FieldElement::pth_root_iter, e),
                  m.rho_tau().transform_entries(&FieldElement::pth_root_iter, e), deg);
}

/// the order-9 counterexample group over the perfection of F_3(t)
inline MatrixGroup counterexample_group() {
  auto k = FieldSpec::perfection(3);
  FieldElement one = FieldElement::one(k), t = FieldElement::t(k);
  FMatrix s = FMatrix::identity(k, 3), tau = FMatrix::identity(k, 3);
  s.at(0, 1) = one;
  s.at(1, 2) = one;
  tau.at(0, 1) = t;
  tau.at(1, 2) = t;
  GroupPresentation pres;
  pres.relators = {Relator{{{0, 3}}, "g1^3"},
                   Relator{{{1, 3}}, "g2^3"},
                   Relator{{{0, 1}, {1, 1}, {0, -1}, {1, -1}}, "g1 g2 g1^-1 g2^-1"}};
  pres.abstract_order = 9;
  return generate_group(k, 3, {s, tau}, default_group_cap(), pres);
}

/// The degree-(1/3^e) component of the e-th root ring of k[x1,x2,x3] as a
/// G-module: the span of the e-th root variables, acted on through the
/// entrywise-rooted matrices. Computed via the group twist rather than the
/// closed form, so the two routes can be compared in tests.
inline KGModule lowest_degree_component(int e) {
  MatrixGroup g = counterexample_group();
  MatrixGroup tw = twist_representation(g, e);
  return KGModule(tw.generators[0], tw.generators[1], Rational(1, ipow(3, e)));
}

struct Witness {
  int e = 0;
  Rational shift;          // degree 1/3^e of the lowest component
  AnnihilatorIdeal ann;
  int socle = 0;
  std::optional<FieldElement> alpha;  // the printable b - alpha a generator
};

struct WitnessTable {
  std::vector<Witness> witnesses;
  bool pairwise_distinct = false;
  bool all_indecomposable = false;
};

/// annihilator witnesses for e = 0..E; distinct normal forms certify that the
/// lowest-degree summands are pairwise nonisomorphic
inline WitnessTable distinct_witnesses(int E) {
  WitnessTable table;
  for (int e = 0; e <= E; ++e) {
    KGModule m = lowest_degree_component(e);
    Witness w;
    w.e = e;
    w.shift = Rational(1, ipow(3, e));
    w.ann = annihilator(m);
    w.socle = socle_dim(m);
    w.alpha = w.ann.linear_generator_alpha();
    table.witnesses.push_back(std::move(w));
  }
  table.pairwise_distinct = true;
  for (size_t i = 0; i < table.witnesses.size(); ++i)
    for (size_t j = i + 1; j < table.witnesses.size(); ++j)
      if (table.witnesses[i].ann == table.witnesses[j].ann) table.pairwise_distinct = false;
  table.all_indecomposable = true;
  for (const auto& w : table.witnesses)
    if (w.socle != 1) table.all_indecomposable = false;
  return table;
}

}  // namespace frobsplit

#endif  // FROBSPLIT_MODREP_HPP
