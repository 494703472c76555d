#ifndef FROBSPLIT_FP_HPP
#define FROBSPLIT_FP_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace frobsplit {

// Library-wide error type for user-facing failures (bad input, violated
// preconditions, caps).
class FrobError : public std::runtime_error {
 public:
  explicit FrobError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

// Arithmetic mod a prime p, and dense univariate polynomials over F_p as
// little-endian coefficient vectors. These are internal helpers backing both
// extension-field elements (coordinates mod the minimal polynomial) and
// elements of the perfection of F_p(t) (rational functions in t^{1/p^e}).

inline int mod_norm(long long v, int p) {
  long long r = v % p;
  if (r < 0) r += p;
  return static_cast<int>(r);
}

inline int mod_add(int a, int b, int p) { return mod_norm(static_cast<long long>(a) + b, p); }
inline int mod_sub(int a, int b, int p) { return mod_norm(static_cast<long long>(a) - b, p); }
inline int mod_mul(int a, int b, int p) { return mod_norm(static_cast<long long>(a) * b, p); }

inline int mod_inv(int a, int p) {
  // extended Euclid; p prime, a != 0 mod p
  int t = 0, newt = 1, r = p, newr = mod_norm(a, p);
  if (newr == 0) throw FrobError("division by zero in F_" + std::to_string(p));
  while (newr != 0) {
    int q = r / newr;
    int tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  return mod_norm(t, p);
}

inline int mod_pow(int a, unsigned long long e, int p) {
  long long result = 1, base = mod_norm(a, p);
  while (e > 0) {
    if (e & 1ULL) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<int>(result);
}

using Upoly = std::vector<int>;  // little-endian, coefficients in [0, p)

inline void up_trim(Upoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline bool up_is_zero(const Upoly& f) { return f.empty(); }

inline int up_deg(const Upoly& f) { return static_cast<int>(f.size()) - 1; }  // -1 for zero

inline Upoly up_add(const Upoly& a, const Upoly& b, int p) {
  Upoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = mod_add(r[i], b[i], p);
  up_trim(r);
  return r;
}

inline Upoly up_sub(const Upoly& a, const Upoly& b, int p) {
  Upoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = mod_sub(r[i], b[i], p);
  up_trim(r);
  return r;
}

inline Upoly up_scale(const Upoly& a, int c, int p) {
  c = mod_norm(c, p);
  if (c == 0) return {};
  Upoly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = mod_mul(a[i], c, p);
  up_trim(r);
  return r;
}

inline Upoly up_mul(const Upoly& a, const Upoly& b, int p) {
  if (a.empty() || b.empty()) return {};
  Upoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = mod_norm(r[i + j] + static_cast<long long>(a[i]) * b[j], p);
  }
  up_trim(r);
  return r;
}

// quotient and remainder; b nonzero
inline std::pair<Upoly, Upoly> up_divmod(const Upoly& a, const Upoly& b, int p) {
  if (b.empty()) throw FrobError("polynomial division by zero");
  Upoly rem = a, quot;
  int db = up_deg(b);
  int lead_inv = mod_inv(b.back(), p);
  while (up_deg(rem) >= db) {
    int k = up_deg(rem) - db;
    int c = mod_mul(rem.back(), lead_inv, p);
    if (static_cast<int>(quot.size()) < k + 1) quot.resize(k + 1, 0);
    quot[k] = mod_add(quot[k], c, p);
    for (int i = 0; i <= db; ++i)
      rem[i + k] = mod_sub(rem[i + k], mod_mul(c, b[i], p), p);
    up_trim(rem);
  }
  up_trim(quot);
  return {quot, rem};
}

inline Upoly up_gcd(Upoly a, Upoly b, int p) {
  while (!b.empty()) {
    Upoly r = up_divmod(a, b, p).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty() && a.back() != 1) a = up_scale(a, mod_inv(a.back(), p), p);  // monic
  return a;
}

inline Upoly up_mod(const Upoly& a, const Upoly& m, int p) { return up_divmod(a, m, p).second; }

inline Upoly up_powmod(Upoly base, unsigned long long e, const Upoly& m, int p) {
  Upoly result{1};
  base = up_mod(base, m, p);
  while (e > 0) {
    if (e & 1ULL) result = up_mod(up_mul(result, base, p), m, p);
    base = up_mod(up_mul(base, base, p), m, p);
    e >>= 1;
  }
  return result;
}

// substitute x -> x^k (stretch exponents)
inline Upoly up_stretch(const Upoly& a, long long k) {
  if (a.empty()) return {};
  Upoly r(static_cast<size_t>((a.size() - 1) * k + 1), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i * k] = a[i];
  return r;
}

// true if every exponent with a nonzero coefficient is divisible by k
inline bool up_exponents_divisible(const Upoly& a, int k) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && i % k != 0) return false;
  return true;
}

// inverse of up_stretch for divisible exponents
inline Upoly up_compress(const Upoly& a, int k) {
  if (a.empty()) return {};
  Upoly r((a.size() - 1) / k + 1, 0);
  for (size_t i = 0; i < a.size(); i += k) r[i / k] = a[i];
  up_trim(r);
  return r;
}

inline bool up_is_irreducible(const Upoly& f, int p) {
  // Rabin: x^(p^n) = x mod f, and gcd(x^(p^(n/ell)) - x, f) = 1 for prime ell | n
  int n = up_deg(f);
  if (n <= 0) return false;
  Upoly x{0, 1};
  Upoly xp = up_powmod(x, static_cast<unsigned long long>(p), f, p);
  // iterate Frobenius to get x^(p^k) mod f
  std::vector<Upoly> frob(n + 1);
  frob[0] = up_mod(x, f, p);
  for (int k = 1; k <= n; ++k) {
    // compose: apply Frobenius once = raise to p-th power mod f
    frob[k] = up_powmod(frob[k - 1], static_cast<unsigned long long>(p), f, p);
  }
  if (up_sub(frob[n], frob[0], p) != Upoly{}) return false;
  for (int ell = 2; ell <= n; ++ell) {
    if (n % ell != 0) continue;
    bool prime = true;
    for (int d = 2; d * d <= ell; ++d)
      if (ell % d == 0) prime = false;
    if (!prime) continue;
    Upoly g = up_gcd(up_sub(frob[n / ell], frob[0], p), f, p);
    if (up_deg(g) != 0) return false;
  }
  return true;
}

inline bool up_is_primitive(const Upoly& f, int p) {
  // order of x mod f equals p^n - 1
  int n = up_deg(f);
  unsigned long long q1 = 1;
  for (int i = 0; i < n; ++i) q1 *= static_cast<unsigned long long>(p);
  q1 -= 1;
  // factor q1 by trial division (tiny fields only)
  unsigned long long m = q1;
  std::vector<unsigned long long> primes;
  for (unsigned long long d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      primes.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) primes.push_back(m);
  Upoly x{0, 1};
  if (up_powmod(x, q1, f, p) != Upoly{1}) return false;
  for (unsigned long long ell : primes)
    if (up_powmod(x, q1 / ell, f, p) == Upoly{1}) return false;
  return true;
}

}  // namespace detail
}  // namespace frobsplit

#endif  // FROBSPLIT_FP_HPP
