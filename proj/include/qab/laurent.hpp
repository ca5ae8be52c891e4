/**
 * @file laurent.hpp
 * @brief Exact Laurent polynomial arithmetic over Z[q,q^-1].
 *
 * LaurentPoly is the scalar workhorse of the library: a sparse map from
 * integer exponents to arbitrary-precision integer coefficients, kept in
 * canonical form (no stored zero coefficients).  All arithmetic is exact;
 * there is no floating point anywhere in the library.
 */
#ifndef QAB_LAURENT_HH
#define QAB_LAURENT_HH

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qab {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// Raised when a structural invariant of the library fails.  Carries the
/// name of the violated invariant; the CLI maps this to exit code 3.
class InternalError : public std::runtime_error {
 public:
  explicit InternalError(const std::string& what) : std::runtime_error(what) {}
};

class LaurentPoly {
 public:
  LaurentPoly() = default;

  /// Constant polynomial.
  explicit LaurentPoly(const BigInt& c) {
    if (c != 0) coeffs_[0] = c;
  }
  explicit LaurentPoly(long long c) : LaurentPoly(BigInt(c)) {}

  /// c * q^e
  static LaurentPoly term(const BigInt& c, int e) {
    LaurentPoly p;
    if (c != 0) p.coeffs_[e] = c;
    return p;
  }
  static LaurentPoly q_power(int e) { return term(1, e); }
  static LaurentPoly one() { return LaurentPoly(BigInt(1)); }

  bool is_zero() const { return coeffs_.empty(); }
  bool is_one() const {
    return coeffs_.size() == 1 && coeffs_.begin()->first == 0 &&
           coeffs_.begin()->second == 1;
  }

  BigInt coeff(int e) const {
    auto it = coeffs_.find(e);
    return it == coeffs_.end() ? BigInt(0) : it->second;
  }

  /// Lowest/highest stored exponent; requires a nonzero polynomial.
  int min_exp() const {
    if (is_zero()) throw InternalError("LaurentPoly::min_exp on zero");
    return coeffs_.begin()->first;
  }
  int max_exp() const {
    if (is_zero()) throw InternalError("LaurentPoly::max_exp on zero");
    return coeffs_.rbegin()->first;
  }

  const std::map<int, BigInt>& coeffs() const { return coeffs_; }

  void add_term(int e, const BigInt& c) {
    if (c == 0) return;
    auto it = coeffs_.find(e);
    if (it == coeffs_.end()) {
      coeffs_.emplace(e, c);
    } else {
      it->second += c;
      if (it->second == 0) coeffs_.erase(it);
    }
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.coeffs_) add_term(e, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.coeffs_) add_term(e, -c);
    return *this;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator-(const LaurentPoly& a) {
    LaurentPoly r;
    for (const auto& [e, c] : a.coeffs_) r.coeffs_[e] = -c;
    return r;
  }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (const auto& [ea, ca] : a.coeffs_)
      for (const auto& [eb, cb] : b.coeffs_) r.add_term(ea + eb, ca * cb);
    return r;
  }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  LaurentPoly& operator*=(const BigInt& c) {
    if (c == 0) {
      coeffs_.clear();
      return *this;
    }
    for (auto& [e, v] : coeffs_) v *= c;
    return *this;
  }
  friend LaurentPoly operator*(LaurentPoly a, const BigInt& c) { return a *= c; }

  /// Multiply by q^k (exponent shift).
  LaurentPoly shifted(int k) const {
    LaurentPoly r;
    for (const auto& [e, c] : coeffs_) r.coeffs_[e + k] = c;
    return r;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) {
    return !(a == b);
  }
  friend bool operator<(const LaurentPoly& a, const LaurentPoly& b) {
    return a.coeffs_ < b.coeffs_;
  }

  /// Bar involution: q -> q^-1, i.e. exponent reversal.
  LaurentPoly bar() const {
    LaurentPoly r;
    for (const auto& [e, c] : coeffs_) r.coeffs_[-e] = c;
    return r;
  }
  bool is_bar_invariant() const { return *this == bar(); }

  /// True iff every exponent is >= 1 (vacuously true for zero).
  bool has_only_positive_exps() const {
    return is_zero() || min_exp() >= 1;
  }

  /// Value at q = 1 (sum of coefficients).
  BigInt eval_at_one() const {
    BigInt s = 0;
    for (const auto& [e, c] : coeffs_) s += c;
    return s;
  }

  LaurentPoly pow(int n) const {
    if (n < 0) throw InternalError("LaurentPoly::pow negative");
    LaurentPoly r = one();
    LaurentPoly b = *this;
    while (n > 0) {
      if (n & 1) r *= b;
      b *= b;
      n >>= 1;
    }
    return r;
  }

  /// Compact text form, exponents ascending: "-1*q^-2 + 3 + q^5".
  std::string str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : coeffs_) {
      BigInt a = c;
      if (first) {
        if (a < 0) {
          os << "-";
          a = -a;
        }
      } else {
        os << (a < 0 ? " - " : " + ");
        if (a < 0) a = -a;
      }
      if (a != 1 || e == 0) os << a.str();
      if (e != 0) {
        if (a != 1) os << "*";
        os << "q";
        if (e != 1) os << "^" << e;
      }
      first = false;
    }
    return os.str();
  }

  /// Stable key for memoization maps.
  std::string key() const {
    std::ostringstream os;
    for (const auto& [e, c] : coeffs_) os << e << ":" << c.str() << ";";
    return os.str();
  }

 private:
  std::map<int, BigInt> coeffs_;  // no zero values stored
};

/// Quantum integer [n] = (q^n - q^-n)/(q - q^-1) = q^{n-1} + q^{n-3} + ... + q^{1-n}.
inline LaurentPoly qint(int n) {
  if (n == 0) return LaurentPoly();
  if (n < 0) return -qint(-n);
  LaurentPoly r;
  for (int j = 0; j < n; ++j) r.add_term(n - 1 - 2 * j, 1);
  return r;
}

/// Quantum factorial [m]! = [1][2]...[m], [0]! = 1.
inline LaurentPoly qfact(int m) {
  if (m < 0) throw InternalError("qfact of negative integer");
  LaurentPoly r = LaurentPoly::one();
  for (int i = 1; i <= m; ++i) r *= qint(i);
  return r;
}

/**
 * Unique decomposition a = p + r with r bar-invariant and p supported on
 * strictly positive exponents.  Concretely r_n = a_{-|n|}.  This is the
 * entrywise splitting behind the H = PQ factorization step.
 */
inline std::pair<LaurentPoly, LaurentPoly> split_bar(const LaurentPoly& a) {
  LaurentPoly r;
  for (const auto& [e, c] : a.coeffs()) {
    if (e < 0) {
      r.add_term(e, c);
      r.add_term(-e, c);
    } else if (e == 0) {
      r.add_term(0, c);
    }
  }
  LaurentPoly p = a - r;
  return {p, r};
}

// ---- dense Z[q] helpers (internal; used by RatFn canonicalization) ----

namespace detail {

/// Dense polynomial in q with integer coefficients, ascending, no trailing zeros.
using ZPoly = std::vector<BigInt>;

inline void zp_trim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int zp_deg(const ZPoly& p) { return static_cast<int>(p.size()) - 1; }

inline BigInt zp_content(const ZPoly& p) {
  BigInt g = 0;
  for (const auto& c : p) g = boost::multiprecision::gcd(g, c);
  return g;  // 0 for the zero polynomial
}

inline ZPoly zp_scale_div(const ZPoly& p, const BigInt& d) {
  ZPoly r(p.size());
  for (size_t i = 0; i < p.size(); ++i) {
    BigInt quo = p[i] / d;
    if (quo * d != p[i]) throw InternalError("inexact integer division in ZPoly");
    r[i] = quo;
  }
  return r;
}

inline ZPoly zp_mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  zp_trim(r);
  return r;
}

/// Exact division a / b; requires the quotient to lie in Z[q].
inline ZPoly zp_div_exact(ZPoly a, const ZPoly& b) {
  if (b.empty()) throw InternalError("ZPoly division by zero");
  ZPoly quo(a.size() > b.size() - 1 ? a.size() - b.size() + 1 : 0);
  zp_trim(a);
  while (zp_deg(a) >= zp_deg(b) && !a.empty()) {
    int k = zp_deg(a) - zp_deg(b);
    BigInt c = a.back() / b.back();
    if (c * b.back() != a.back())
      throw InternalError("inexact leading division in ZPoly");
    quo[k] = c;
    for (size_t i = 0; i < b.size(); ++i) a[k + i] -= c * b[i];
    zp_trim(a);
  }
  if (!a.empty()) throw InternalError("inexact polynomial division");
  zp_trim(quo);
  return quo;
}

/// Pseudo-remainder of a by b (deg a >= deg b), for the primitive PRS:
/// repeat a := lc(b)*a - lc(a)*q^(deg a - deg b)*b until deg a < deg b.
inline ZPoly zp_prem(ZPoly a, const ZPoly& b) {
  const BigInt lb = b.back();
  while (!a.empty() && zp_deg(a) >= zp_deg(b)) {
    int k = zp_deg(a) - zp_deg(b);
    BigInt la = a.back();
    for (auto& c : a) c *= lb;
    for (size_t i = 0; i < b.size(); ++i) a[k + i] -= la * b[i];
    zp_trim(a);
  }
  return a;
}

/// Gcd in Z[q], primitive with positive leading coefficient.
inline ZPoly zp_gcd_primitive(ZPoly a, ZPoly b) {
  zp_trim(a);
  zp_trim(b);
  if (a.empty()) std::swap(a, b);
  if (b.empty()) {
    if (a.empty()) return {};
    a = zp_scale_div(a, zp_content(a));
    if (a.back() < 0)
      for (auto& c : a) c = -c;
    return a;
  }
  a = zp_scale_div(a, zp_content(a));
  b = zp_scale_div(b, zp_content(b));
  if (zp_deg(a) < zp_deg(b)) std::swap(a, b);
  while (!b.empty()) {
    ZPoly r = zp_prem(a, b);
    zp_trim(r);
    if (!r.empty()) r = zp_scale_div(r, zp_content(r));
    a = std::move(b);
    b = std::move(r);
  }
  if (a.back() < 0)
    for (auto& c : a) c = -c;
  return a;
}

/// Split a nonzero LaurentPoly as q^shift * P with P in Z[q], P(0) != 0.
inline std::pair<int, ZPoly> laurent_to_zp(const LaurentPoly& p) {
  int v = p.min_exp();
  ZPoly z(p.max_exp() - v + 1);
  for (const auto& [e, c] : p.coeffs()) z[e - v] = c;
  return {v, z};
}

inline LaurentPoly zp_to_laurent(const ZPoly& z, int shift) {
  LaurentPoly r;
  for (size_t i = 0; i < z.size(); ++i)
    if (z[i] != 0) r.add_term(static_cast<int>(i) + shift, z[i]);
  return r;
}

}  // namespace detail

/// Exact quotient a/b in Z[q,q^-1] if it exists.
inline std::optional<LaurentPoly> laurent_div_exact(const LaurentPoly& a,
                                                    const LaurentPoly& b) {
  if (b.is_zero()) throw InternalError("laurent_div_exact by zero");
  if (a.is_zero()) return LaurentPoly();
  auto [va, pa] = detail::laurent_to_zp(a);
  auto [vb, pb] = detail::laurent_to_zp(b);
  try {
    detail::ZPoly q = detail::zp_div_exact(pa, pb);
    return detail::zp_to_laurent(q, va - vb);
  } catch (const InternalError&) {
    return std::nullopt;
  }
}

}  // namespace qab

#endif  // QAB_LAURENT_HH
