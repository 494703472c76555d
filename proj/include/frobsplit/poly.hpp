#ifndef FROBSPLIT_POLY_HPP
#define FROBSPLIT_POLY_HPP

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "frobsplit/field.hpp"
#include "frobsplit/rational.hpp"

namespace frobsplit {

/// Worker count used by heavy polynomial products; results are independent
/// of its value (partial products merge by exact coefficient addition).
inline int& worker_count() {
  static int n = 1;
  return n;
}

using ExpVec = std::vector<int>;

inline long long exp_total(const ExpVec& a) { return std::accumulate(a.begin(), a.end(), 0LL); }

/// graded lexicographic order, x1 most significant
struct GrlexLess {
  bool operator()(const ExpVec& a, const ExpVec& b) const {
    long long da = exp_total(a), db = exp_total(b);
    if (da != db) return da < db;
    return a < b;
  }
};

/// A monomial x1^(e1/p^level) ... xn^(en/p^level).
struct FracMonomial {
  ExpVec exponents;
  int level = 0;

  Rational degree(int p) const { return Rational(exp_total(exponents), ipow(p, level)); }

  /// canonical level: divide through by p while possible
  void canonicalize(int p) {
    auto divisible = [&] {
      for (int e : exponents)
        if (e % p != 0) return false;
      return true;
    };
    while (level > 0 && divisible()) {
      for (int& e : exponents) e /= p;
      --level;
    }
  }
};

/// Sparse polynomial with exponents in (1/p^e) Z_{>=0} over a shared field.
/// All stored monomials share one level; zero coefficients are never stored;
/// the level is canonical (minimal).
class FracPolynomial {
 public:
  using TermMap = std::map<ExpVec, FieldElement, GrlexLess>;

  FracPolynomial() = default;
  FracPolynomial(FieldSpecPtr spec, int nvars) : spec_(std::move(spec)), nvars_(nvars) {}

  static FracPolynomial zero(const FieldSpecPtr& spec, int nvars) { return FracPolynomial(spec, nvars); }

  static FracPolynomial constant(const FieldSpecPtr& spec, int nvars, const FieldElement& c) {
    FracPolynomial f(spec, nvars);
    f.add_term(ExpVec(nvars, 0), c, 0);
    return f;
  }

  static FracPolynomial one(const FieldSpecPtr& spec, int nvars) {
    return constant(spec, nvars, FieldElement::one(spec));
  }

  static FracPolynomial variable(const FieldSpecPtr& spec, int nvars, int j) {
    assert(j >= 0 && j < nvars);
    FracPolynomial f(spec, nvars);
    ExpVec e(nvars, 0);
    e[j] = 1;
    f.add_term(e, FieldElement::one(spec), 0);
    return f;
  }

  static FracPolynomial monomial(const FieldSpecPtr& spec, int nvars, const FieldElement& c, ExpVec e, int level) {
    FracPolynomial f(spec, nvars);
    f.add_term(std::move(e), c, level);
    return f;
  }

  const FieldSpecPtr& spec() const { return spec_; }
  int nvars() const { return nvars_; }
  int level() const { return level_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  /// add c * x^(e / p^lvl); lifts levels as needed and renormalizes
  void add_term(ExpVec e, const FieldElement& c, int lvl) {
    assert(static_cast<int>(e.size()) == nvars_);
    if (c.is_zero()) return;
    if (lvl > level_) lift_to_level(lvl);
    if (lvl < level_) {
      long long k = ipow(spec_->p, level_ - lvl);
      for (int& x : e) x = static_cast<int>(x * k);
    }
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(std::move(e), c);
    } else {
      it->second = it->second + c;
      if (it->second.is_zero()) terms_.erase(it);
    }
    reduce_level();
  }

  void lift_to_level(int lvl) {
    if (lvl <= level_) return;
    long long k = ipow(spec_->p, lvl - level_);
    TermMap lifted;
    for (auto& [e, c] : terms_) {
      ExpVec e2 = e;
      for (int& x : e2) x = static_cast<int>(x * k);
      lifted.emplace(std::move(e2), c);
    }
    terms_ = std::move(lifted);
    level_ = lvl;
  }

  friend FracPolynomial operator+(const FracPolynomial& a, const FracPolynomial& b) {
    check_compatible(a, b);
    FracPolynomial r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, c, b.level_);
    return r;
  }

  friend FracPolynomial operator-(const FracPolynomial& a, const FracPolynomial& b) {
    check_compatible(a, b);
    FracPolynomial r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, -c, b.level_);
    return r;
  }

  FracPolynomial operator-() const {
    FracPolynomial r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }

  friend FracPolynomial operator*(const FracPolynomial& a, const FracPolynomial& b);

  friend FracPolynomial operator*(const FieldElement& c, const FracPolynomial& a) {
    FracPolynomial r(a.spec_, a.nvars_);
    r.level_ = a.level_;
    if (c.is_zero()) return r;
    for (const auto& [e, coef] : a.terms_) {
      FieldElement prod = c * coef;
      if (!prod.is_zero()) r.terms_.emplace(e, prod);
    }
    r.reduce_level();
    return r;
  }

  FracPolynomial pow(long long k) const {
    if (k < 0) throw FrobError("negative power of a polynomial");
    FracPolynomial result = one(spec_, nvars_), base = *this;
    while (k > 0) {
      if (k & 1LL) result = result * base;
      if (k >>= 1) base = base * base;
    }
    return result;
  }

  bool operator==(const FracPolynomial& o) const {
    return nvars_ == o.nvars_ && level_ == o.level_ && terms_ == o.terms_;
  }
  bool operator!=(const FracPolynomial& o) const { return !(*this == o); }

  /// total degree of the highest term, as an exact rational; 0 for the zero polynomial
  Rational degree() const {
    if (terms_.empty()) return Rational(0);
    return Rational(exp_total(terms_.rbegin()->first), ipow(spec_->p, level_));
  }

  /// distinct monomial degrees present
  std::set<Rational> degrees() const {
    std::set<Rational> out;
    long long q = ipow(spec_->p, level_);
    for (const auto& [e, c] : terms_) out.insert(Rational(exp_total(e), q));
    return out;
  }

  bool is_homogeneous() const { return degrees().size() <= 1; }

  /// coefficient of the monomial e at the polynomial's own level
  FieldElement coefficient(const ExpVec& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? FieldElement::zero(spec_) : it->second;
  }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && exp_total(terms_.begin()->first) == 0);
  }

  FieldElement constant_value() const {
    if (terms_.empty()) return FieldElement::zero(spec_);
    if (!is_constant()) throw FrobError("polynomial is not constant");
    return terms_.begin()->second;
  }

  /// h with h^(p^e) = f: exponents stay put while the level rises; coefficients
  /// take p^e-th roots. Always possible over these perfect fields.
  FracPolynomial frobenius_root(int e) const {
    FracPolynomial r(spec_, nvars_);
    r.level_ = level_ + e;
    for (const auto& [ev, c] : terms_) r.terms_.emplace(ev, c.pth_root_iter(e));
    r.reduce_level();
    return r;
  }

  /// f^(p^e), the inverse of frobenius_root
  FracPolynomial frobenius_power(int e) const {
    FracPolynomial r(spec_, nvars_);
    int drop = std::min(e, level_);
    r.level_ = level_ - drop;
    long long stretch = ipow(spec_->p, e - drop);
    for (const auto& [ev, c] : terms_) {
      ExpVec e2 = ev;
      for (int& x : e2) x = static_cast<int>(x * stretch);
      r.terms_.emplace(std::move(e2), c.pth_power_iter(e));
    }
    r.reduce_level();
    return r;
  }

  /// partial derivative in variable j (level 0 only)
  FracPolynomial derivative(int j) const {
    if (level_ != 0) throw FrobError("derivative requires an integer-exponent polynomial");
    FracPolynomial r(spec_, nvars_);
    for (const auto& [e, c] : terms_) {
      if (e[j] == 0) continue;
      FieldElement coef = FieldElement::from_int(spec_, e[j]) * c;
      if (coef.is_zero()) continue;
      ExpVec e2 = e;
      --e2[j];
      r.terms_.emplace(std::move(e2), coef);
    }
    return r;
  }

  /// substitute x_j -> sum_i m[i][j] x_i (column convention); requires level 0
  FracPolynomial substitute(const std::vector<std::vector<FieldElement>>& m) const {
    if (level_ != 0) throw FrobError("substitute requires level 0; apply frobenius_root first");
    return substitute_roots(m);
  }

  /// same substitution applied to the p^level-th root variables y_j = x_j^(1/p^level)
  FracPolynomial substitute_roots(const std::vector<std::vector<FieldElement>>& m) const {
    assert(static_cast<int>(m.size()) == nvars_);
    // columns of m as linear forms, with power caches
    std::vector<std::vector<FracPolynomial>> powers(nvars_);
    for (int j = 0; j < nvars_; ++j) {
      FracPolynomial lin(spec_, nvars_);
      for (int i = 0; i < nvars_; ++i) lin.add_term(unit_exp(i), m[i][j], 0);
      powers[j] = {one(spec_, nvars_), std::move(lin)};
    }
    auto power_of = [&](int j, int k) -> const FracPolynomial& {
      auto& cache = powers[j];
      while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * cache[1]);
      return cache[k];
    };
    FracPolynomial out(spec_, nvars_);
    out.level_ = level_;
    for (const auto& [e, c] : terms_) {
      FracPolynomial term = constant(spec_, nvars_, c);
      for (int j = 0; j < nvars_; ++j)
        if (e[j] > 0) term = term * power_of(j, e[j]);
      // term has level 0 exponents standing for root variables; merge at our level
      for (const auto& [te, tc] : term.terms_) {
        auto it = out.terms_.find(te);
        if (it == out.terms_.end()) {
          out.terms_.emplace(te, tc);
        } else {
          it->second = it->second + tc;
          if (it->second.is_zero()) out.terms_.erase(it);
        }
      }
    }
    out.reduce_level();
    return out;
  }

  std::string to_string(const std::vector<std::string>& varnames) const;

 private:
  ExpVec unit_exp(int i) const {
    ExpVec e(nvars_, 0);
    e[i] = 1;
    return e;
  }

  static void check_compatible(const FracPolynomial& a, const FracPolynomial& b) {
    if (a.nvars_ != b.nvars_) throw FrobError("polynomial variable count mismatch");
    if (!a.spec_ || !b.spec_ || !(*a.spec_ == *b.spec_)) throw FrobError("mixed field specs");
  }

  void reduce_level() {
    int p = spec_->p;
    auto divisible = [&] {
      for (const auto& [e, c] : terms_)
        for (int x : e)
          if (x % p != 0) return false;
      return true;
    };
    while (level_ > 0 && divisible()) {
      TermMap down;
      for (auto& [e, c] : terms_) {
        ExpVec e2 = e;
        for (int& x : e2) x /= p;
        down.emplace(std::move(e2), c);
      }
      terms_ = std::move(down);
      --level_;
    }
    if (terms_.empty()) level_ = 0;
  }

  FieldSpecPtr spec_;
  int nvars_ = 0;
  int level_ = 0;
  TermMap terms_;
};

inline FracPolynomial operator*(const FracPolynomial& a, const FracPolynomial& b) {
  FracPolynomial::check_compatible(a, b);
  FracPolynomial r(a.spec_, a.nvars_);
  if (a.is_zero() || b.is_zero()) return r;
  int lvl = std::max(a.level_, b.level_);
  FracPolynomial x = a, y = b;
  x.lift_to_level(lvl);
  y.lift_to_level(lvl);
  r.level_ = lvl;

  auto multiply_range = [&](FracPolynomial::TermMap::const_iterator first,
                            FracPolynomial::TermMap::const_iterator last,
                            FracPolynomial::TermMap& out) {
    for (auto it = first; it != last; ++it) {
      for (const auto& [eb, cb] : y.terms_) {
        FieldElement c = it->second * cb;
        if (c.is_zero()) continue;
        ExpVec e = it->first;
        for (int k = 0; k < r.nvars_; ++k) e[k] += eb[k];
        auto pos = out.find(e);
        if (pos == out.end()) {
          out.emplace(std::move(e), c);
        } else {
          pos->second = pos->second + c;
          if (pos->second.is_zero()) out.erase(pos);
        }
      }
    }
  };

  size_t pairs = x.terms_.size() * y.terms_.size();
  int workers = worker_count();
  if (workers > 1 && pairs >= (1u << 16) && x.terms_.size() >= static_cast<size_t>(workers)) {
    // split the left factor into contiguous blocks; merge block results in
    // block order (exact addition makes the result order-independent anyway)
    std::vector<FracPolynomial::TermMap> partial(workers);
    std::vector<FracPolynomial::TermMap::const_iterator> bounds;
    size_t per = x.terms_.size() / workers, extra = x.terms_.size() % workers;
    auto it = x.terms_.begin();
    bounds.push_back(it);
    for (int w = 0; w < workers; ++w) {
      size_t count = per + (static_cast<size_t>(w) < extra ? 1 : 0);
      std::advance(it, count);
      bounds.push_back(it);
    }
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] { multiply_range(bounds[w], bounds[w + 1], partial[w]); });
    for (auto& th : pool) th.join();
    for (int w = 0; w < workers; ++w) {
      for (auto& [e, c] : partial[w]) {
        auto pos = r.terms_.find(e);
        if (pos == r.terms_.end()) {
          r.terms_.emplace(e, c);
        } else {
          pos->second = pos->second + c;
          if (pos->second.is_zero()) r.terms_.erase(pos);
        }
      }
    }
  } else {
    multiply_range(x.terms_.begin(), x.terms_.end(), r.terms_);
  }
  r.reduce_level();
  return r;
}

/// exact quotient f / g, or nullopt when g does not divide f
inline std::optional<FracPolynomial> divide_exact(const FracPolynomial& f, const FracPolynomial& g) {
  if (g.is_zero()) throw FrobError("division by the zero polynomial");
  if (f.is_zero()) return FracPolynomial::zero(f.spec(), f.nvars());
  int lvl = std::max(f.level(), g.level());
  FracPolynomial rem = f, div = g;
  rem.lift_to_level(lvl);
  div.lift_to_level(lvl);
  FracPolynomial quot(f.spec(), f.nvars());
  const auto& dlead = *div.terms().rbegin();
  while (!rem.is_zero()) {
    const auto& rlead = *rem.terms().rbegin();
    ExpVec e(f.nvars());
    for (int i = 0; i < f.nvars(); ++i) {
      e[i] = rlead.first[i] - dlead.first[i];
      if (e[i] < 0) return std::nullopt;
    }
    FieldElement c = rlead.second / dlead.second;
    FracPolynomial t = FracPolynomial::monomial(f.spec(), f.nvars(), c, e, lvl);
    quot = quot + t;
    rem = rem - t * div;
  }
  return quot;
}

/// monomial basis of the degree-d piece of S^(1/p^level) in n variables,
/// in lex order; empty when d * p^level is not a nonnegative integer
inline std::vector<ExpVec> graded_piece(int p, int nvars, int level, const Rational& d) {
  Rational scaled = d * Rational(ipow(p, level));
  std::vector<ExpVec> out;
  if (!is_integer(scaled) || scaled < 0) return out;
  long long total = scaled.numerator();
  ExpVec cur(nvars, 0);
  // enumerate compositions of total into nvars parts, lex order on (e1,...,en)
  std::function<void(int, long long)> rec = [&](int idx, long long remaining) {
    if (idx == nvars - 1) {
      cur[idx] = static_cast<int>(remaining);
      out.push_back(cur);
      return;
    }
    for (long long v = 0; v <= remaining; ++v) {
      cur[idx] = static_cast<int>(v);
      rec(idx + 1, remaining - v);
    }
  };
  if (nvars == 0) {
    if (total == 0) out.push_back({});
    return out;
  }
  rec(0, total);
  return out;
}

struct DivideSplit {
  FracPolynomial a, b, remainder;  // f = a * x1^p + b * x2^p + remainder
};

/// greedy split of f into multiples of x1^p and x2^p (x1 first); the
/// remainder contains no monomial divisible by either p-th power
inline DivideSplit poly_divide_split(const FracPolynomial& f, int p) {
  if (f.level() != 0) throw FrobError("poly_divide_split requires level 0");
  if (f.nvars() < 2) throw FrobError("poly_divide_split needs at least two variables");
  DivideSplit out{FracPolynomial::zero(f.spec(), f.nvars()), FracPolynomial::zero(f.spec(), f.nvars()),
                  FracPolynomial::zero(f.spec(), f.nvars())};
  for (const auto& [e, c] : f.terms()) {
    ExpVec e2 = e;
    if (e[0] >= p) {
      e2[0] -= p;
      out.a.add_term(std::move(e2), c, 0);
    } else if (e[1] >= p) {
      e2[1] -= p;
      out.b.add_term(std::move(e2), c, 0);
    } else {
      out.remainder.add_term(std::move(e2), c, 0);
    }
  }
  return out;
}

inline std::vector<std::string> default_varnames(int n) {
  std::vector<std::string> v;
  v.reserve(n);
  for (int i = 1; i <= n; ++i) v.push_back("x" + std::to_string(i));
  return v;
}

inline std::string FracPolynomial::to_string(const std::vector<std::string>& varnames) const {
  if (terms_.empty()) return "0";
  assert(static_cast<int>(varnames.size()) == nvars_);
  long long q = ipow(spec_->p, level_);
  std::string out;
  // highest term first
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string mono;
    for (int j = 0; j < nvars_; ++j) {
      if (e[j] == 0) continue;
      if (!mono.empty()) mono += "*";
      long long num = e[j], den = q;
      long long g = std::gcd(num, den);
      num /= g;
      den /= g;
      mono += varnames[j];
      if (den == 1) {
        if (num != 1) mono += "^" + std::to_string(num);
      } else {
        mono += "^(" + std::to_string(num) + "/" + std::to_string(den) + ")";
      }
    }
    std::string cs = c.to_string();
    bool needs_parens = cs.find('+') != std::string::npos || cs.find('-') != std::string::npos ||
                        cs.find('/') != std::string::npos;
    std::string term;
    if (mono.empty()) {
      term = needs_parens ? "(" + cs + ")" : cs;
    } else if (c.is_one()) {
      term = mono;
    } else {
      term = (needs_parens ? "(" + cs + ")" : cs) + "*" + mono;
    }
    if (!out.empty()) out += " + ";
    out += term;
  }
  return out;
}

}  // namespace frobsplit

#endif  // FROBSPLIT_POLY_HPP
