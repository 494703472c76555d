#ifndef FROBSPLIT_FSING_HPP
#define FROBSPLIT_FSING_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "frobsplit/group.hpp"
#include "frobsplit/linalg.hpp"
#include "frobsplit/modrep.hpp"
#include "frobsplit/moore.hpp"
#include "frobsplit/poly.hpp"

namespace frobsplit {

/// f is fixed by every generator of the group
inline bool verify_invariance(const FracPolynomial& f, const MatrixGroup& g) {
  if (f.level() != 0) throw FrobError("verify_invariance expects a level-0 polynomial");
  for (const auto& gen : g.generators) {
    std::vector<std::vector<FieldElement>> m(g.n, std::vector<FieldElement>(g.n, FieldElement::zero(g.spec)));
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j) m[i][j] = gen.at(i, j);
    if (!(f.substitute(m) == f)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// graded subrings and membership by exact linear algebra

/// A graded subring of a polynomial ring, given by homogeneous generators
/// with their weights. Monomials in the generators of a fixed weighted
/// degree are enumerated and expanded on demand, with caching.
class GradedSubring {
 public:
  GradedSubring(std::vector<FracPolynomial> gens, std::vector<long long> weights)
      : gens_(std::move(gens)), weights_(std::move(weights)) {
    if (gens_.empty() || gens_.size() != weights_.size()) throw FrobError("bad subring generators");
    for (size_t i = 0; i < gens_.size(); ++i) {
      if (!gens_[i].is_homogeneous() || gens_[i].level() != 0)
        throw FrobError("subring generators must be homogeneous of level 0");
      if (!gens_[i].is_zero() && gens_[i].degree() != Rational(weights_[i]))
        throw FrobError("subring generator degree does not match its weight");
    }
    powers_.resize(gens_.size());
    for (size_t i = 0; i < gens_.size(); ++i)
      powers_[i] = {FracPolynomial::one(spec(), nvars()), gens_[i]};
  }

  const FieldSpecPtr& spec() const { return gens_[0].spec(); }
  int nvars() const { return gens_[0].nvars(); }
  size_t ngens() const { return gens_.size(); }
  const FracPolynomial& gen(size_t i) const { return gens_[i]; }
  long long weight(size_t i) const { return weights_[i]; }

  struct GenMonomial {
    std::vector<int> exponents;  // over the generators
    FracPolynomial expansion;    // in the ambient ring
  };

  /// all monomials in the generators of exact weighted degree d
  const std::vector<GenMonomial>& monomials_of_degree(long long d) {
    auto it = cache_.find(d);
    if (it != cache_.end()) return it->second;
    std::vector<GenMonomial> out;
    std::vector<int> cur(gens_.size(), 0);
    enumerate(d, 0, cur, out);
    return cache_.emplace(d, std::move(out)).first->second;
  }

  FracPolynomial expand(const std::vector<int>& exponents) {
    FracPolynomial acc = FracPolynomial::one(spec(), nvars());
    for (size_t i = 0; i < gens_.size(); ++i)
      if (exponents[i] > 0) acc = acc * power(i, exponents[i]);
    return acc;
  }

 private:
  const FracPolynomial& power(size_t i, int k) {
    auto& cache = powers_[i];
    while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * cache[1]);
    return cache[k];
  }

  void enumerate(long long remaining, size_t idx, std::vector<int>& cur, std::vector<GenMonomial>& out) {
    if (idx == gens_.size()) {
      if (remaining == 0) out.push_back({cur, expand(cur)});
      return;
    }
    long long w = weights_[idx];
    for (int k = 0; static_cast<long long>(k) * w <= remaining; ++k) {
      cur[idx] = k;
      enumerate(remaining - k * w, idx + 1, cur, out);
      if (w == 0) break;
    }
    cur[idx] = 0;
  }

  std::vector<FracPolynomial> gens_;
  std::vector<long long> weights_;
  std::vector<std::vector<FracPolynomial>> powers_;
  std::map<long long, std::vector<GenMonomial>> cache_;
};

struct CertificateTerm {
  size_t ideal_gen = 0;            // index into the ideal generators
  std::vector<int> exponents;      // monomial in the subring generators
  FieldElement coefficient;
};

struct MembershipResult {
  bool member = false;
  std::vector<CertificateTerm> certificate;

  /// re-expand the certificate; used to confirm certificates exactly
  FracPolynomial expand(GradedSubring& ring, const std::vector<FracPolynomial>& ideal_gens) const {
    FracPolynomial acc = FracPolynomial::zero(ring.spec(), ring.nvars());
    for (const auto& term : certificate)
      acc = acc + term.coefficient * (ideal_gens[term.ideal_gen] * ring.expand(term.exponents));
    return acc;
  }
};

/// Is f in the ideal generated by ideal_gens over the subring, in its exact
/// homogeneous degree? Solved by exact linear algebra on the span of
/// {g * m : g ideal generator, m subring monomial of complementary degree}.
/// With ideal_gens = {1} this is graded subring membership.
inline MembershipResult ideal_membership(const FracPolynomial& f, GradedSubring& ring,
                                         const std::vector<FracPolynomial>& ideal_gens) {
  MembershipResult out;
  if (f.is_zero()) {
    out.member = true;
    return out;
  }
  if (!f.is_homogeneous() || f.level() != 0) throw FrobError("membership requires a homogeneous level-0 polynomial");
  Rational d = f.degree();
  if (!is_integer(d)) return out;

  struct Column {
    size_t gen;
    const GradedSubring::GenMonomial* mono;
    FracPolynomial expansion;
  };
  std::vector<Column> columns;
  for (size_t gi = 0; gi < ideal_gens.size(); ++gi) {
    const FracPolynomial& g = ideal_gens[gi];
    if (g.is_zero()) continue;
    if (!g.is_homogeneous() || g.level() != 0) throw FrobError("ideal generators must be homogeneous of level 0");
    Rational rem = d - g.degree();
    if (!is_integer(rem) || rem < 0) continue;
    for (const auto& m : ring.monomials_of_degree(rem.numerator()))
      columns.push_back({gi, &m, g * m.expansion});
  }
  if (columns.empty()) return out;

  // row space: every ambient monomial appearing anywhere
  std::map<ExpVec, int, GrlexLess> row_index;
  auto note_rows = [&](const FracPolynomial& q) {
    for (const auto& [e, c] : q.terms())
      row_index.emplace(e, 0);
  };
  for (const auto& col : columns) note_rows(col.expansion);
  note_rows(f);
  int r = 0;
  for (auto& [e, idx] : row_index) idx = r++;

  const FieldSpecPtr& k = ring.spec();
  FMatrix sys(k, r, static_cast<int>(columns.size()));
  for (size_t c = 0; c < columns.size(); ++c)
    for (const auto& [e, coef] : columns[c].expansion.terms()) sys.at(row_index.at(e), static_cast<int>(c)) = coef;
  std::vector<FieldElement> rhs(r, FieldElement::zero(k));
  for (const auto& [e, coef] : f.terms()) rhs[row_index.at(e)] = coef;

  auto sol = sys.solve(rhs);
  if (!sol) return out;
  out.member = true;
  for (size_t c = 0; c < columns.size(); ++c) {
    if ((*sol)[c].is_zero()) continue;
    out.certificate.push_back({columns[c].gen, columns[c].mono->exponents, (*sol)[c]});
  }
  return out;
}

inline MembershipResult subring_membership(const FracPolynomial& f, GradedSubring& ring) {
  std::vector<FracPolynomial> unit = {FracPolynomial::one(ring.spec(), ring.nvars())};
  return ideal_membership(f, ring, unit);
}

// ---------------------------------------------------------------------------
// Fedder-style F-purity for graded hypersurfaces

struct HypersurfacePresentation {
  FieldSpecPtr spec;
  std::vector<std::string> varnames;
  std::vector<long long> weights;
  FracPolynomial f;

  int nvars() const { return static_cast<int>(varnames.size()); }

  Rational weighted_degree_of(const ExpVec& e) const {
    long long acc = 0;
    for (size_t i = 0; i < e.size(); ++i) acc += e[i] * weights[i];
    return Rational(acc);
  }

  bool is_weighted_homogeneous() const {
    std::optional<Rational> d;
    for (const auto& [e, c] : f.terms()) {
      Rational w = weighted_degree_of(e);
      if (d && *d != w) return false;
      d = w;
    }
    return true;
  }

  Rational degree() const {
    if (f.is_zero()) return Rational(0);
    return weighted_degree_of(f.terms().begin()->first);
  }
};

struct FedderResult {
  bool f_pure = false;
  // when F-pure: a monomial of F^(p-1) outside the Frobenius power of the
  // maximal ideal (all exponents < p)
  std::optional<ExpVec> witness_monomial;
};

/// A graded hypersurface R = P/(F) is F-pure at the homogeneous maximal
/// ideal iff F^(p-1) does not lie in (y1^p, ..., ym^p), and a polynomial
/// lies in that monomial ideal iff each of its monomials has some exponent
/// at least p.
inline FedderResult fedder_test(const HypersurfacePresentation& h) {
  if (!h.is_weighted_homogeneous()) throw FrobError("fedder_test: F is not homogeneous for the given weights");
  if (h.f.level() != 0) throw FrobError("fedder_test: F must have integer exponents");
  int p = h.spec->p;
  FracPolynomial power = h.f.pow(p - 1);
  FedderResult out;
  for (const auto& [e, c] : power.terms()) {
    bool in_ideal = false;
    for (int x : e)
      if (x >= p) in_ideal = true;
    if (!in_ideal) {
      out.f_pure = true;
      out.witness_monomial = e;
      return out;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// the order-p^3 example: orbit products, identity, sandwich

/// the three commuting 4x4 generators over F_p
inline MatrixGroup section5_group(int p) {
  auto k = FieldSpec::prime_field(p);
  FieldElement one = FieldElement::one(k);
  FMatrix g1 = FMatrix::identity(k, 4), g2 = FMatrix::identity(k, 4), g3 = FMatrix::identity(k, 4);
  g1.at(0, 2) = one;  // x3 -> x1 + x3
  g1.at(1, 3) = one;  // x4 -> x2 + x4
  g2.at(0, 3) = one;  // x4 -> x1 + x4
  g3.at(1, 2) = one;  // x3 -> x2 + x3
  return generate_group(k, 4, {g1, g2, g3});
}

struct OrbitProducts {
  FracPolynomial u, v, t, w;           // Moore-quotient forms and the direct invariant
  FracPolynomial u_brute, v_brute;     // products over the brute-force orbits
  bool agree = false;
};

/// u and v both as Moore-determinant quotients and as explicit products over
/// the orbit linear forms; t built directly
inline OrbitProducts orbit_products(int p) {
  auto k = FieldSpec::prime_field(p);
  auto var = [&](int j) { return FracPolynomial::variable(k, 4, j); };
  FracPolynomial x1 = var(0), x2 = var(1), x3 = var(2), x4 = var(3);

  OrbitProducts out{FracPolynomial::zero(k, 4), FracPolynomial::zero(k, 4), FracPolynomial::zero(k, 4),
                    FracPolynomial::zero(k, 4), FracPolynomial::zero(k, 4), FracPolynomial::zero(k, 4)};
  FracPolynomial d2 = moore_determinant({x1, x2}, 2);
  out.w = d2;
  auto qu = divide_exact(moore_determinant({x1, x2, x3}, 3), d2);
  auto qv = divide_exact(moore_determinant({x1, x2, x4}, 3), d2);
  if (!qu || !qv) throw FrobError("Moore quotient is not exact (internal)");
  out.u = *qu;
  out.v = *qv;

  out.u_brute = FracPolynomial::one(k, 4);
  out.v_brute = FracPolynomial::one(k, 4);
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b) {
      FieldElement ca = FieldElement::from_int(k, a), cb = FieldElement::from_int(k, b);
      out.u_brute = out.u_brute * (x3 + ca * x1 + cb * x2);
      out.v_brute = out.v_brute * (x4 + ca * x1 + cb * x2);
    }

  FracPolynomial t = x1 * x4.pow(p) - x1.pow(p) * x4 + x2 * x3.pow(p) - x2.pow(p) * x3;
  out.t = t;
  out.agree = out.u == out.u_brute && out.v == out.v_brute;
  return out;
}

struct IdentityReport {
  bool determinant_identity = false;
  bool identity51 = false;
  bool ok() const { return determinant_identity && identity51; }
};

/// the displayed three-determinant identity and its rearrangement
/// t^p - v x1^p - u x2^p = t (x1 x2^p - x1^p x2)^(p-1), both exact
inline IdentityReport verify_identity_51(int p) {
  auto k = FieldSpec::prime_field(p);
  auto var = [&](int j) { return FracPolynomial::variable(k, 4, j); };
  FracPolynomial x1 = var(0), x2 = var(1), x3 = var(2), x4 = var(3);
  FracPolynomial d2 = moore_determinant({x1, x2}, 2);
  FracPolynomial m3u = moore_determinant({x1, x2, x3}, 3);
  FracPolynomial m3v = moore_determinant({x1, x2, x4}, 3);
  FracPolynomial d14 = moore_determinant({x1, x4}, 2);
  FracPolynomial d23 = moore_determinant({x2, x3}, 2);
  FracPolynomial t = d14 + d23;

  IdentityReport rep;
  FracPolynomial lhs = d2 * t.pow(p) - x1.pow(p) * m3v - x2.pow(p) * m3u;
  FracPolynomial rhs = d2.pow(p) * t;
  rep.determinant_identity = lhs == rhs;

  auto qu = divide_exact(m3u, d2), qv = divide_exact(m3v, d2);
  if (!qu || !qv) return rep;
  FracPolynomial lhs51 = t.frobenius_power(1) - *qv * x1.pow(p) - *qu * x2.pow(p);
  FracPolynomial rhs51 = t * d2.pow(p - 1);
  rep.identity51 = lhs51 == rhs51;
  return rep;
}

/// the candidate invariant-ring generators x1, x2, t, u, v as a graded
/// subring of F_p[x1..x4], weights (1, 1, p+1, p^2, p^2)
inline GradedSubring section5_candidate_ring(const OrbitProducts& prods, int p) {
  auto k = prods.t.spec();
  return GradedSubring({FracPolynomial::variable(k, 4, 0), FracPolynomial::variable(k, 4, 1), prods.t, prods.u,
                        prods.v},
                       {1, 1, p + 1, static_cast<long long>(p) * p, static_cast<long long>(p) * p});
}

/// the presentation hypersurface F = T^p - V X1^p - U X2^p - T (X1 X2^p - X1^p X2)^(p-1)
inline HypersurfacePresentation section5_presentation(int p) {
  auto k = FieldSpec::prime_field(p);
  HypersurfacePresentation h;
  h.spec = k;
  h.varnames = {"X1", "X2", "T", "U", "V"};
  h.weights = {1, 1, p + 1, static_cast<long long>(p) * p, static_cast<long long>(p) * p};
  auto var = [&](int j) { return FracPolynomial::variable(k, 5, j); };
  FracPolynomial X1 = var(0), X2 = var(1), T = var(2), U = var(3), V = var(4);
  FracPolynomial w = X1 * X2.pow(p) - X1.pow(p) * X2;
  h.f = T.pow(p) - V * X1.pow(p) - U * X2.pow(p) - T * w.pow(p - 1);
  return h;
}

struct SandwichReport {
  int p = 0;
  bool split_remainder_zero = false;
  bool u_tilde_invariant = false, v_tilde_invariant = false;
  bool key_identity = false;  // t^p = v~ x1^p + u~ x2^p
  bool powers_in_A = false;   // g^p in A for every generator g of the candidate ring
  int jacobian_rank = 0;
  bool jacobian_conclusive = false;   // full rank would certify independence
  bool integral_chain = false;        // monic equations exhibit S module-finite over A
  bool membership_cross_checked = false;  // independent linear-algebra route (small p)
  bool ok = false;
};

/// Verifies A = F_p[x1, x2, u~, v~] sits under the invariant ring with
/// p-th powers landing back in A:
///   (i)  u~ = u + t B', v~ = v + t A' are invariant,
///   (ii) t^p = v~ x1^p + u~ x2^p exactly,
///   (iii) p-th powers of x1, x2, t, u, v lie in A (explicit identities,
///         plus an independent graded-membership solve for small p),
///   (iv) independence of (x1, x2, u~, v~): the Jacobian is reported, and
///        since d(t^p) = 0 forces the Jacobian to be singular in
///        characteristic p, a module-finiteness certificate (monic
///        equations for x3, x4, t over A) settles independence instead.
inline SandwichReport sandwich_check(int p) {
  SandwichReport rep;
  rep.p = p;
  auto k = FieldSpec::prime_field(p);
  OrbitProducts prods = orbit_products(p);
  if (!prods.agree) throw FrobError("orbit products disagree (internal)");
  MatrixGroup g = section5_group(p);

  auto var = [&](int j) { return FracPolynomial::variable(k, 4, j); };
  FracPolynomial x1 = var(0), x2 = var(1), x3 = var(2), x4 = var(3);
  FracPolynomial x1p = x1.pow(p), x2p = x2.pow(p);

  DivideSplit split = poly_divide_split(prods.w.pow(p - 1), p);
  rep.split_remainder_zero = split.remainder.is_zero();
  FracPolynomial u_tilde = prods.u + prods.t * split.b;
  FracPolynomial v_tilde = prods.v + prods.t * split.a;

  rep.u_tilde_invariant = verify_invariance(u_tilde, g);
  rep.v_tilde_invariant = verify_invariance(v_tilde, g);

  FracPolynomial tp = prods.t.frobenius_power(1);
  rep.key_identity = tp == v_tilde * x1p + u_tilde * x2p;

  // (iii) p-th powers of the candidate generators, via explicit identities:
  //   u = u~ - t B'  =>  u^p = u~^p - t^p B'^p,  with t^p expanded by (ii)
  FracPolynomial bp = split.b.frobenius_power(1), ap = split.a.frobenius_power(1);
  bool up_ok = prods.u.frobenius_power(1) == u_tilde.frobenius_power(1) - tp * bp;
  bool vp_ok = prods.v.frobenius_power(1) == v_tilde.frobenius_power(1) - tp * ap;
  rep.powers_in_A = rep.key_identity && up_ok && vp_ok;

  if (p <= 3) {
    // independent route: solve the graded membership in A outright
    GradedSubring A({x1, x2, u_tilde, v_tilde},
                    {1, 1, static_cast<long long>(p) * p, static_cast<long long>(p) * p});
    bool all = true;
    for (const FracPolynomial& gen : {prods.t, prods.u, prods.v}) {
      MembershipResult m = subring_membership(gen.frobenius_power(1), A);
      if (!m.member) all = false;
    }
    rep.membership_cross_checked = all;
    rep.powers_in_A = rep.powers_in_A && all;
  }

  // (iv) Jacobian of (x1, x2, u~, v~) with respect to x1..x4
  PolyMatrix jac;
  jac.entries.resize(4);
  std::vector<FracPolynomial> funcs = {x1, x2, u_tilde, v_tilde};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) jac.entries[i].push_back(funcs[i].derivative(j));
  FracPolynomial det = poly_determinant(jac);
  if (!det.is_zero()) {
    rep.jacobian_rank = 4;
    rep.jacobian_conclusive = true;
  } else {
    // rank 3 iff some 3x3 minor is nonzero; rows 0,1 are unit vectors, so
    // check the 2x2 minors of the (u~, v~) block against (x3, x4)
    bool minor3 = false;
    for (int i : {2, 3})
      for (int j : {2, 3})
        if (!funcs[i].derivative(j).is_zero()) minor3 = true;
    rep.jacobian_rank = minor3 ? 3 : 2;
    rep.jacobian_conclusive = false;
  }

  // module-finiteness certificate: u is monic additive of degree p^2 in x3
  // (exponents 1, p, p^2, leading coefficient 1) and likewise v in x4, so
  // x3, x4 are integral over A[t, u, v]; with t^p, u, v expressed over A
  // (checks above), S is module-finite over A and the four generators of A
  // are algebraically independent by dimension count.
  auto monic_additive_in = [&](const FracPolynomial& f, int varidx) {
    std::map<int, FracPolynomial> by_exp;
    for (const auto& [e, c] : f.terms()) {
      ExpVec rest = e;
      int d = e[varidx];
      rest[varidx] = 0;
      auto it = by_exp.find(d);
      if (it == by_exp.end()) it = by_exp.emplace(d, FracPolynomial::zero(k, 4)).first;
      it->second.add_term(rest, c, 0);
    }
    long long p2 = static_cast<long long>(p) * p;
    for (const auto& [d, coeff] : by_exp) {
      if (d != 1 && d != p && d != p2) return false;
      // coefficients besides the leading one must avoid x3, x4
      if (d != p2) {
        for (const auto& [e, c] : coeff.terms())
          if (e[2] != 0 || e[3] != 0) return false;
      }
    }
    auto lead = by_exp.find(static_cast<int>(p2));
    return lead != by_exp.end() && lead->second == FracPolynomial::one(k, 4);
  };
  rep.integral_chain = monic_additive_in(prods.u, 2) && monic_additive_in(prods.v, 3) && rep.key_identity;

  rep.ok = rep.split_remainder_zero && rep.u_tilde_invariant && rep.v_tilde_invariant && rep.key_identity &&
           rep.powers_in_A && (rep.jacobian_conclusive || rep.integral_chain);
  return rep;
}

// ---------------------------------------------------------------------------
// the presentation of the order-9 counterexample invariant ring

namespace detail {

/// substitute polynomials for the variables of outer
inline FracPolynomial compose(const FracPolynomial& outer, const std::vector<FracPolynomial>& inner) {
  const FieldSpecPtr& k = inner.at(0).spec();
  int n = inner[0].nvars();
  std::vector<std::vector<FracPolynomial>> powers(inner.size());
  for (size_t i = 0; i < inner.size(); ++i) powers[i] = {FracPolynomial::one(k, n), inner[i]};
  auto power_of = [&](size_t i, int e) -> const FracPolynomial& {
    auto& cache = powers[i];
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * cache[1]);
    return cache[e];
  };
  if (outer.level() != 0) throw FrobError("compose expects integer exponents");
  FracPolynomial acc = FracPolynomial::zero(k, n);
  for (const auto& [e, c] : outer.terms()) {
    FracPolynomial term = FracPolynomial::constant(k, n, c);
    for (size_t i = 0; i < inner.size(); ++i)
      if (e[i] > 0) term = term * power_of(i, e[i]);
    acc = acc + term;
  }
  return acc;
}

}  // namespace detail

/// the stated generators and relation of the counterexample invariant ring,
/// read from a data file so a transcription slip is fixable without rebuild
struct PresentationData {
  FieldSpecPtr spec;                     // perfection of F_3(t)
  FracPolynomial f3, f5;                 // in x1, x2, x3
  std::vector<FracPolynomial> f9_forms;  // the nine linear forms whose product is f9
  FracPolynomial relation;               // in the symbols f1, f3, f5, f9
};

struct PresentationReport {
  bool generators_invariant = false;     // f1, f3, f5, f9 fixed by both group generators
  bool f9_matches_orbit = false;         // the listed forms multiply to the orbit product of x3
  bool relation_vanishes = false;        // the displayed relation expands to zero
  bool weights_match = false;            // degrees 1, 3, 5, 9 and relation degree 15
  Rational relation_degree;
  Rational a_invariant;                  // relation degree minus the weight sum
  bool not_f_pure = false;               // Fedder on the presentation hypersurface

  bool ok() const {
    return generators_invariant && f9_matches_orbit && relation_vanishes && weights_match &&
           a_invariant == Rational(-3) && not_f_pure;
  }
};

inline PresentationReport verify_presentation_remark(const PresentationData& data) {
  PresentationReport rep;
  const FieldSpecPtr& k = data.spec;
  MatrixGroup g = counterexample_group();

  FracPolynomial f1 = FracPolynomial::variable(k, 3, 0);
  FracPolynomial f9 = FracPolynomial::one(k, 3);
  for (const auto& form : data.f9_forms) f9 = f9 * form;

  rep.generators_invariant = verify_invariance(f1, g) && verify_invariance(data.f3, g) &&
                             verify_invariance(data.f5, g) && verify_invariance(f9, g);

  // the orbit of x3: distinct images under the 9 group elements
  FracPolynomial x3 = FracPolynomial::variable(k, 3, 2);
  std::set<std::string> seen;
  FracPolynomial orbit_product = FracPolynomial::one(k, 3);
  auto names = default_varnames(3);
  for (const auto& elem : g.elements) {
    std::vector<std::vector<FieldElement>> m(3, std::vector<FieldElement>(3, FieldElement::zero(k)));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m[i][j] = elem.at(i, j);
    FracPolynomial image = x3.substitute(m);
    if (seen.insert(image.to_string(names)).second) orbit_product = orbit_product * image;
  }
  rep.f9_matches_orbit = seen.size() == 9 && f9 == orbit_product;

  rep.weights_match = data.f3.is_homogeneous() && data.f3.degree() == Rational(3) &&
                      data.f5.is_homogeneous() && data.f5.degree() == Rational(5) &&
                      f9.is_homogeneous() && f9.degree() == Rational(9);

  HypersurfacePresentation pres;
  pres.spec = k;
  pres.varnames = {"f1", "f3", "f5", "f9"};
  pres.weights = {1, 3, 5, 9};
  pres.f = data.relation;
  rep.weights_match = rep.weights_match && pres.is_weighted_homogeneous();
  rep.relation_degree = pres.degree();
  rep.a_invariant = rep.relation_degree - Rational(1 + 3 + 5 + 9);

  FracPolynomial expanded = detail::compose(data.relation, {f1, data.f3, data.f5, f9});
  rep.relation_vanishes = expanded.is_zero();

  rep.not_f_pure = !fedder_test(pres).f_pure;
  return rep;
}

}  // namespace frobsplit

#endif  // FROBSPLIT_FSING_HPP
