/**
 * @file ratfn.hpp
 * @brief The fraction field Q(q) over Z[q,q^-1], and power-series expansion
 *        at q = 0 with exact rational coefficients.
 *
 * A RatFn is stored in a canonical reduced form so that equality is
 * structural: the denominator lies in Z[q] with nonzero constant term and
 * positive leading coefficient, and numerator/denominator share no integer
 * content and no polynomial factor.
 */
#ifndef QAB_RATFN_HH
#define QAB_RATFN_HH

#include "qab/laurent.hpp"

namespace qab {

class RatFn {
 public:
  RatFn() : num_(), den_(LaurentPoly::one()) {}
  RatFn(const LaurentPoly& p) : num_(p), den_(LaurentPoly::one()) {}  // NOLINT
  explicit RatFn(long long c) : RatFn(LaurentPoly(c)) {}

  RatFn(const LaurentPoly& num, const LaurentPoly& den) : num_(num), den_(den) {
    if (den_.is_zero()) throw InternalError("RatFn with zero denominator");
    canonicalize();
  }

  static RatFn one() { return RatFn(LaurentPoly::one()); }

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }

  friend bool operator==(const RatFn& a, const RatFn& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFn& a, const RatFn& b) { return !(a == b); }

  friend RatFn operator+(const RatFn& a, const RatFn& b) {
    return RatFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFn operator-(const RatFn& a, const RatFn& b) {
    return RatFn(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFn operator-(const RatFn& a) {
    RatFn r = a;
    r.num_ = -r.num_;
    return r;
  }
  friend RatFn operator*(const RatFn& a, const RatFn& b) {
    return RatFn(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFn operator/(const RatFn& a, const RatFn& b) {
    if (b.is_zero()) throw InternalError("RatFn division by zero");
    return RatFn(a.num_ * b.den_, a.den_ * b.num_);
  }
  RatFn& operator+=(const RatFn& o) { return *this = *this + o; }
  RatFn& operator-=(const RatFn& o) { return *this = *this - o; }
  RatFn& operator*=(const RatFn& o) { return *this = *this * o; }
  RatFn& operator/=(const RatFn& o) { return *this = *this / o; }

  RatFn inverse() const {
    if (is_zero()) throw InternalError("RatFn inverse of zero");
    return RatFn(den_, num_);
  }

  /// Bar involution extended to Q(q).
  RatFn bar() const { return RatFn(num_.bar(), den_.bar()); }
  bool is_bar_invariant() const { return *this == bar(); }

  /// Exact conversion to Z[q,q^-1] when the denominator divides out.
  std::optional<LaurentPoly> as_laurent() const {
    if (den_.is_one()) return num_;
    return laurent_div_exact(num_, den_);
  }

  std::string str() const {
    if (den_.is_one()) return num_.str();
    return "(" + num_.str() + ") / (" + den_.str() + ")";
  }

 private:
  void canonicalize() {
    if (num_.is_zero()) {
      den_ = LaurentPoly::one();
      return;
    }
    auto [vn, zn] = detail::laurent_to_zp(num_);
    auto [vd, zd] = detail::laurent_to_zp(den_);
    BigInt ic = boost::multiprecision::gcd(detail::zp_content(zn),
                                           detail::zp_content(zd));
    if (ic != 1) {
      zn = detail::zp_scale_div(zn, ic);
      zd = detail::zp_scale_div(zd, ic);
    }
    detail::ZPoly g = detail::zp_gcd_primitive(zn, zd);
    if (detail::zp_deg(g) > 0) {
      zn = detail::zp_div_exact(zn, g);
      zd = detail::zp_div_exact(zd, g);
    }
    if (zd.back() < 0) {
      for (auto& c : zn) c = -c;
      for (auto& c : zd) c = -c;
    }
    num_ = detail::zp_to_laurent(zn, vn - vd);
    den_ = detail::zp_to_laurent(zd, 0);
  }

  LaurentPoly num_;
  LaurentPoly den_;  // in Z[q], nonzero constant term, positive leading coeff
};

/**
 * Truncated power-series expansion at q = 0: coeffs[k] is the coefficient
 * of q^(valuation + k), exact rationals, valid through q^order.
 */
struct TruncSeries {
  int valuation = 0;
  int order = 0;
  std::vector<BigRat> coeffs;  // size order - valuation + 1 (empty if zero)

  bool is_zero() const { return coeffs.empty(); }

  BigRat coeff(int k) const {
    if (is_zero() || k < valuation || k > order) return BigRat(0);
    return coeffs[static_cast<size_t>(k - valuation)];
  }

  /// All coefficients through the order are integers.
  bool is_integral() const {
    for (const auto& c : coeffs)
      if (boost::multiprecision::denominator(c) != 1) return false;
    return true;
  }

  /// Membership in q*Z[[q]] up to the expansion order.
  bool in_q_zseries() const {
    if (is_zero()) return true;
    return valuation >= 1 && is_integral();
  }

  /// Membership in 1 + q*Z[[q]] up to the expansion order.
  bool in_one_plus_q_zseries() const {
    if (is_zero()) return false;
    return valuation >= 0 && coeff(0) == 1 && is_integral();
  }
};

/**
 * Expand f as a series at q = 0 through q^order.  Poles at q = 0 are handled
 * by factoring out q^valuation; the denominator's unit constant term then
 * drives the standard division recurrence.
 */
inline TruncSeries expand(const RatFn& f, int order) {
  TruncSeries s;
  s.order = order;
  if (f.is_zero()) return s;
  auto [vn, zn] = detail::laurent_to_zp(f.num());
  auto [vd, zd] = detail::laurent_to_zp(f.den());
  int val = vn - vd;
  if (val > order) {
    // nothing representable within the window; report the valuation anyway
    s.valuation = val;
    return s;
  }
  int len = order - val + 1;
  std::vector<BigRat> out(static_cast<size_t>(len));
  BigRat d0(zd[0]);
  for (int k = 0; k < len; ++k) {
    BigRat acc = k < static_cast<int>(zn.size()) ? BigRat(zn[k]) : BigRat(0);
    int jmax = std::min<int>(k, detail::zp_deg(zd));
    for (int j = 1; j <= jmax; ++j) acc -= BigRat(zd[j]) * out[k - j];
    out[k] = acc / d0;
  }
  // normalize: drop leading zero coefficients so valuation is sharp
  int lead = 0;
  while (lead < len && out[lead] == 0) ++lead;
  if (lead == len) return s;  // zero through the order (cannot happen for f != 0 unless window too small)
  s.valuation = val + lead;
  s.coeffs.assign(out.begin() + lead, out.end());
  return s;
}

}  // namespace qab

#endif  // QAB_RATFN_HH
