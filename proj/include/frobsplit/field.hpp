#ifndef FROBSPLIT_FIELD_HPP
#define FROBSPLIT_FIELD_HPP

#include <algorithm>
#include <cassert>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <tuple>
#include <vector>

#include "frobsplit/fp.hpp"
#include "frobsplit/rational.hpp"

namespace frobsplit {

struct FieldSpec;
using FieldSpecPtr = std::shared_ptr<const FieldSpec>;

/// Description of a coefficient field: a prime field F_p, a small extension
/// F_{p^n} with a fixed minimal polynomial for the generator w, or the
/// perfection F_p(t)^{1/p^infinity} of the rational function field F_p(t).
struct FieldSpec {
  int p = 0;
  int n = 1;
  bool transcendental = false;
  detail::Upoly modulus;  // minimal polynomial of w (monic, degree n); extensions only

  static FieldSpecPtr prime_field(int p);
  static FieldSpecPtr extension(int p, int n);
  static FieldSpecPtr perfection(int p);

  bool is_prime_field() const { return n == 1 && !transcendental; }
  bool is_extension() const { return n > 1; }
  bool is_perfection() const { return transcendental; }

  bool operator==(const FieldSpec& o) const {
    return p == o.p && n == o.n && transcendental == o.transcendental && modulus == o.modulus;
  }

  std::string describe() const;
};

namespace detail {

inline bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Known (Conway) minimal polynomials, little-endian; covers the fields the
// built-in examples use. Anything else falls back to a deterministic search
// for the first monic primitive polynomial in lexicographic coefficient
// order. The chosen modulus is echoed in report headers.
inline Upoly minimal_polynomial(int p, int n) {
  static const std::map<std::pair<int, int>, Upoly> kConway = {
      {{2, 2}, {1, 1, 1}},     // w^2 + w + 1
      {{2, 3}, {1, 1, 0, 1}},  // w^3 + w + 1
      {{2, 4}, {1, 0, 0, 1, 1}},
      {{3, 2}, {2, 2, 1}},     // w^2 + 2w + 2
      {{3, 3}, {1, 2, 0, 1}},  // w^3 + 2w + 1
      {{5, 2}, {2, 4, 1}},
      {{7, 2}, {3, 6, 1}},
  };
  auto it = kConway.find({p, n});
  if (it != kConway.end()) return it->second;
  // deterministic fallback: least coefficient vector (c_0, ..., c_{n-1})
  // giving a primitive monic polynomial
  Upoly f(n + 1, 0);
  f[n] = 1;
  std::vector<int> c(n, 0);
  for (;;) {
    for (int i = 0; i < n; ++i) f[i] = c[i];
    if (f[0] != 0 && up_is_irreducible(f, p) && up_is_primitive(f, p)) return f;
    int i = 0;
    while (i < n && ++c[i] == p) c[i++] = 0;
    if (i == n) throw FrobError("no primitive polynomial found (internal)");
  }
}

}  // namespace detail

inline FieldSpecPtr FieldSpec::prime_field(int p) {
  if (!detail::is_prime(p)) throw FrobError("characteristic must be prime, got " + std::to_string(p));
  auto s = std::make_shared<FieldSpec>();
  s->p = p;
  return s;
}

inline FieldSpecPtr FieldSpec::extension(int p, int n) {
  if (!detail::is_prime(p)) throw FrobError("characteristic must be prime, got " + std::to_string(p));
  if (n < 1) throw FrobError("extension degree must be positive");
  if (n == 1) return prime_field(p);
  auto s = std::make_shared<FieldSpec>();
  s->p = p;
  s->n = n;
  s->modulus = detail::minimal_polynomial(p, n);
  return s;
}

inline FieldSpecPtr FieldSpec::perfection(int p) {
  if (!detail::is_prime(p)) throw FrobError("characteristic must be prime, got " + std::to_string(p));
  auto s = std::make_shared<FieldSpec>();
  s->p = p;
  s->transcendental = true;
  return s;
}

/// Exact element of F_p, F_{p^n}, or the perfection of F_p(t).
///
/// Extension elements are coordinate vectors in the power basis of w.
/// Perfection elements are reduced fractions num/den in F_p[s] with s
/// standing for t^{1/p^level}; the level is minimal, i.e. num/den is not a
/// rational function in s^p whenever level > 0, so equality is structural.
class FieldElement {
 public:
  FieldElement() = default;

  static FieldElement zero(const FieldSpecPtr& spec) { return FieldElement(spec, {}, {1}, 0); }
  static FieldElement one(const FieldSpecPtr& spec) { return FieldElement(spec, {1}, {1}, 0); }

  static FieldElement from_int(const FieldSpecPtr& spec, long long v) {
    int c = detail::mod_norm(v, spec->p);
    if (c == 0) return zero(spec);
    return FieldElement(spec, {c}, {1}, 0);
  }

  /// the extension generator w
  static FieldElement generator(const FieldSpecPtr& spec) {
    if (!spec->is_extension()) throw FrobError("generator w only exists in extension fields");
    return FieldElement(spec, {0, 1}, {1}, 0);
  }

  /// the transcendental t
  static FieldElement t(const FieldSpecPtr& spec) {
    if (!spec->is_perfection()) throw FrobError("t only exists over the perfection of F_p(t)");
    return FieldElement(spec, {0, 1}, {1}, 0);
  }

  const FieldSpecPtr& spec() const { return spec_; }
  bool valid() const { return spec_ != nullptr; }
  bool is_zero() const { return num_.empty(); }
  bool is_one() const { return level_ == 0 && num_ == detail::Upoly{1} && den_ == detail::Upoly{1}; }
  int level() const { return level_; }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    check_same(a, b);
    int p = a.spec_->p;
    if (a.spec_->is_perfection()) {
      auto [x, y, lvl] = align(a, b);
      // x.num/x.den + y.num/y.den
      detail::Upoly num = detail::up_add(detail::up_mul(x.num_, y.den_, p), detail::up_mul(y.num_, x.den_, p), p);
      detail::Upoly den = detail::up_mul(x.den_, y.den_, p);
      return make_perfection(a.spec_, std::move(num), std::move(den), lvl);
    }
    return FieldElement(a.spec_, detail::up_add(a.num_, b.num_, p), {1}, 0);
  }

  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) { return a + (-b); }

  FieldElement operator-() const {
    if (!valid() || is_zero()) return *this;
    return FieldElement(spec_, detail::up_scale(num_, spec_->p - 1, spec_->p), den_, level_);
  }

  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    check_same(a, b);
    int p = a.spec_->p;
    if (a.is_zero() || b.is_zero()) return zero(a.spec_);
    if (a.spec_->is_perfection()) {
      auto [x, y, lvl] = align(a, b);
      return make_perfection(a.spec_, detail::up_mul(x.num_, y.num_, p), detail::up_mul(x.den_, y.den_, p), lvl);
    }
    detail::Upoly prod = detail::up_mul(a.num_, b.num_, p);
    if (a.spec_->is_extension()) prod = detail::up_mod(prod, a.spec_->modulus, p);
    return FieldElement(a.spec_, std::move(prod), {1}, 0);
  }

  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }

  FieldElement inverse() const {
    if (is_zero()) throw FrobError("division by zero");
    int p = spec_->p;
    if (spec_->is_perfection()) return make_perfection(spec_, den_, num_, level_);
    if (spec_->is_prime_field()) return FieldElement(spec_, {detail::mod_inv(num_[0], p)}, {1}, 0);
    // extension: extended Euclid in F_p[w] mod the minimal polynomial
    detail::Upoly r0 = spec_->modulus, r1 = num_, s0 = {}, s1 = {1};
    while (!r1.empty()) {
      auto [q, r2] = detail::up_divmod(r0, r1, p);
      detail::Upoly s2 = detail::up_sub(s0, detail::up_mul(q, s1, p), p);
      r0 = std::move(r1);
      r1 = std::move(r2);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    // r0 = gcd (a nonzero constant since modulus is irreducible)
    detail::Upoly inv = detail::up_scale(s0, detail::mod_inv(r0[0], p), p);
    return FieldElement(spec_, detail::up_mod(inv, spec_->modulus, p), {1}, 0);
  }

  FieldElement pow(long long e) const {
    if (e < 0) return inverse().pow(-e);
    FieldElement result = one(spec_), base = *this;
    unsigned long long k = static_cast<unsigned long long>(e);
    while (k > 0) {
      if (k & 1ULL) result = result * base;
      base = base * base;
      k >>= 1;
    }
    return result;
  }

  /// the unique p-th root (the field is perfect by construction)
  FieldElement pth_root() const {
    int p = spec_->p;
    if (spec_->is_perfection()) {
      if (is_zero()) return *this;
      return make_perfection(spec_, num_, den_, level_ + 1);
    }
    if (spec_->is_prime_field()) return *this;  // Fermat
    // a^(p^(n-1)) in F_{p^n}
    unsigned long long e = 1;
    for (int i = 0; i + 1 < spec_->n; ++i) e *= static_cast<unsigned long long>(p);
    return pow(static_cast<long long>(e));
  }

  FieldElement pth_power() const {
    int p = spec_->p;
    if (spec_->is_perfection()) {
      if (is_zero()) return *this;
      if (level_ > 0) return FieldElement(spec_, num_, den_, level_ - 1);
      // r(t)^p = num(t^p)/den(t^p)
      return make_perfection(spec_, detail::up_stretch(num_, p), detail::up_stretch(den_, p), 0);
    }
    return pow(p);
  }

  FieldElement pth_root_iter(int e) const {
    FieldElement r = *this;
    for (int i = 0; i < e; ++i) r = r.pth_root();
    return r;
  }

  FieldElement pth_power_iter(int e) const {
    FieldElement r = *this;
    for (int i = 0; i < e; ++i) r = r.pth_power();
    return r;
  }

  bool operator==(const FieldElement& o) const {
    return spec_same(o) && level_ == o.level_ && num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  /// deterministic total order (for canonical labels and table sorting)
  bool operator<(const FieldElement& o) const {
    return std::tie(level_, num_, den_) < std::tie(o.level_, o.num_, o.den_);
  }

  std::string to_string() const;

  /// value in [0, p) for prime-field elements
  int prime_value() const {
    assert(spec_->is_prime_field());
    return num_.empty() ? 0 : num_[0];
  }

 private:
  FieldElement(const FieldSpecPtr& spec, detail::Upoly num, detail::Upoly den, int level)
      : spec_(spec), num_(std::move(num)), den_(std::move(den)), level_(level) {
    detail::up_trim(num_);
  }

  bool spec_same(const FieldElement& o) const {
    return spec_ == o.spec_ || (spec_ && o.spec_ && *spec_ == *o.spec_);
  }

  static void check_same(const FieldElement& a, const FieldElement& b) {
    if (!a.valid() || !b.valid()) throw FrobError("uninitialized field element");
    if (!a.spec_same(b)) throw FrobError("mixed field specs");
  }

  // lift a perfection element to a common level and normalize the result
  static std::tuple<FieldElement, FieldElement, int> align(const FieldElement& a, const FieldElement& b) {
    int lvl = std::max(a.level_, b.level_);
    return {a.lifted(lvl), b.lifted(lvl), lvl};
  }

  FieldElement lifted(int lvl) const {
    if (lvl == level_) return *this;
    long long k = ipow(spec_->p, lvl - level_);
    return FieldElement(spec_, detail::up_stretch(num_, k), detail::up_stretch(den_, k), lvl);
  }

  static FieldElement make_perfection(const FieldSpecPtr& spec, detail::Upoly num, detail::Upoly den, int level) {
    int p = spec->p;
    detail::up_trim(num);
    detail::up_trim(den);
    if (den.empty()) throw FrobError("division by zero");
    if (num.empty()) return zero(spec);
    detail::Upoly g = detail::up_gcd(num, den, p);
    if (detail::up_deg(g) > 0) {
      num = detail::up_divmod(num, g, p).first;
      den = detail::up_divmod(den, g, p).first;
    }
    if (den.back() != 1) {
      int inv = detail::mod_inv(den.back(), p);
      num = detail::up_scale(num, inv, p);
      den = detail::up_scale(den, inv, p);
    }
    while (level > 0 && detail::up_exponents_divisible(num, p) && detail::up_exponents_divisible(den, p)) {
      num = detail::up_compress(num, p);
      den = detail::up_compress(den, p);
      --level;
    }
    return FieldElement(spec, std::move(num), std::move(den), level);
  }

  FieldSpecPtr spec_;
  detail::Upoly num_;      // prime/extension: coordinates; perfection: numerator
  detail::Upoly den_ = {};  // perfection: monic denominator; {1} when trivial
  int level_ = 0;          // perfection only
};

namespace detail {

// print a polynomial in F_p[s] with s = t^(1/p^level)
inline std::string perfection_poly_string(const Upoly& f, int p, int level, int* term_count) {
  if (f.empty()) {
    *term_count = 1;
    return "0";
  }
  long long q = 1;
  for (int i = 0; i < level; ++i) q *= p;
  std::string out;
  int count = 0;
  for (int i = up_deg(f); i >= 0; --i) {
    if (f[i] == 0) continue;
    if (!out.empty()) out += "+";
    ++count;
    std::string mono;
    if (i > 0) {
      long long num = i, den = q;
      long long g = std::gcd(num, den);
      num /= g;
      den /= g;
      if (den == 1) {
        mono = num == 1 ? "t" : "t^" + std::to_string(num);
      } else {
        mono = "t^(" + std::to_string(num) + "/" + std::to_string(den) + ")";
      }
    }
    if (mono.empty()) {
      out += std::to_string(f[i]);
    } else if (f[i] == 1) {
      out += mono;
    } else {
      out += std::to_string(f[i]) + "*" + mono;
    }
  }
  *term_count = count;
  return out;
}

}  // namespace detail

inline std::string FieldElement::to_string() const {
  if (!valid()) return "<invalid>";
  if (is_zero()) return "0";
  if (spec_->is_prime_field()) return std::to_string(num_[0]);
  if (spec_->is_extension()) {
    std::string out;
    for (int i = detail::up_deg(num_); i >= 0; --i) {
      if (num_[i] == 0) continue;
      if (!out.empty()) out += "+";
      std::string mono = i == 0 ? "" : (i == 1 ? "w" : "w^" + std::to_string(i));
      if (mono.empty())
        out += std::to_string(num_[i]);
      else if (num_[i] == 1)
        out += mono;
      else
        out += std::to_string(num_[i]) + "*" + mono;
    }
    return out;
  }
  int nt = 0, dt = 0;
  std::string ns = detail::perfection_poly_string(num_, spec_->p, level_, &nt);
  if (den_ == detail::Upoly{1}) return ns;
  std::string ds = detail::perfection_poly_string(den_, spec_->p, level_, &dt);
  if (nt > 1) ns = "(" + ns + ")";
  if (dt > 1) ds = "(" + ds + ")";
  return ns + "/" + ds;
}

inline std::string FieldSpec::describe() const {
  if (transcendental) return "perfection of F_" + std::to_string(p) + "(t)";
  if (n == 1) return "F_" + std::to_string(p);
  std::string mod;
  for (int i = n; i >= 0; --i) {
    if (modulus[i] == 0) continue;
    if (!mod.empty()) mod += "+";
    std::string mono = i == 0 ? "" : (i == 1 ? "w" : "w^" + std::to_string(i));
    if (mono.empty())
      mod += std::to_string(modulus[i]);
    else if (modulus[i] == 1)
      mod += mono;
    else
      mod += std::to_string(modulus[i]) + "*" + mono;
  }
  return "F_" + std::to_string(ipow(p, n)) + " = F_" + std::to_string(p) + "[w]/(" + mod + ")";
}

}  // namespace frobsplit

#endif  // FROBSPLIT_FIELD_HPP
