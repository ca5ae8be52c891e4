/**
 * @file decompose.hpp
 * @brief The block decomposition Lambda = tH D H, H = P Q over the
 *        ~-classes of a weight fiber, and the derived canonical-basis
 *        transition matrices.
 *
 * Conventions.  Indices are sorted ascending by the fiber's total order and
 * H, P, Q are block lower unitriangular with identity diagonal blocks; D is
 * block diagonal.  With identity diagonal blocks the within-class
 * symmetric-function transition (a unitriangular integer Kostka matrix) is
 * absorbed into D; that correction matrix is computed separately, and the
 * almost-orthonormality verification conjugates by it so the canonical Gram
 * is tested in its proper normalization.
 */
#ifndef QAB_DECOMPOSE_HH
#define QAB_DECOMPOSE_HH

#include "qab/realization.hpp"

namespace qab {

/// An H entry failed Laurent-polynomial membership: the order or block
/// structure upstream is wrong.
class NotInA : public InternalError {
 public:
  explicit NotInA(const std::string& what) : InternalError(what) {}
};

using Classes = std::vector<std::pair<size_t, size_t>>;

namespace detail {

inline Matrix<LaurentPoly> to_laurent_checked(const Matrix<RatFn>& m, const char* what) {
  Matrix<LaurentPoly> r(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) {
      auto l = m.at(i, j).as_laurent();
      if (!l)
        throw NotInA(std::string(what) + " entry (" + std::to_string(i) + "," +
                     std::to_string(j) + ") is not a Laurent polynomial");
      r.at(i, j) = *l;
    }
  return r;
}

}  // namespace detail

struct HDPair {
  Matrix<LaurentPoly> H;  // block lower unitriangular
  Matrix<RatFn> D;        // block diagonal
};

/**
 * Lambda = tH D H.  Classes are processed in descending total order; at
 * class I every contribution from classes above is already known:
 *   D_I  = Lambda_II - sum_{K>I} tH_KI D_K H_KI,
 *   H_IJ = D_I^{-1} (Lambda_IJ - sum_{K>I} tH_KI D_K H_KJ)   for J < I.
 */
inline HDPair hd_decompose(const Matrix<RatFn>& lambda, const Classes& classes) {
  size_t n = lambda.rows();
  size_t nc = classes.size();
  Matrix<RatFn> h(n, n), dmat(n, n);
  for (size_t i = 0; i < n; ++i) h.at(i, i) = RatFn::one();

  for (size_t ci = nc; ci-- > 0;) {
    auto I = classes[ci];
    Matrix<RatFn> di = detail::block(lambda, I, I);
    for (size_t ck = ci + 1; ck < nc; ++ck) {
      auto K = classes[ck];
      Matrix<RatFn> hki = detail::block(h, K, I);
      Matrix<RatFn> corr = hki.transpose() * detail::block(dmat, K, K) * hki;
      for (size_t a = 0; a < di.rows(); ++a)
        for (size_t b = 0; b < di.cols(); ++b) di.at(a, b) -= corr.at(a, b);
    }
    detail::set_block(dmat, I, I, di);
    for (size_t cj = ci; cj-- > 0;) {
      auto J = classes[cj];
      Matrix<RatFn> rhs = detail::block(lambda, I, J);
      for (size_t ck = ci + 1; ck < nc; ++ck) {
        auto K = classes[ck];
        Matrix<RatFn> corr = detail::block(h, K, I).transpose() *
                             detail::block(dmat, K, K) * detail::block(h, K, J);
        for (size_t a = 0; a < rhs.rows(); ++a)
          for (size_t b = 0; b < rhs.cols(); ++b) rhs.at(a, b) -= corr.at(a, b);
      }
      detail::set_block(h, I, J, detail::solve(di, rhs));
    }
  }
  return {detail::to_laurent_checked(h, "H"), dmat};
}

/**
 * Same decomposition by eager Schur-complement updates (a second, independent
 * elimination schedule; the result must coincide by uniqueness).
 */
inline HDPair hd_decompose_schur(const Matrix<RatFn>& lambda, const Classes& classes) {
  size_t n = lambda.rows();
  size_t nc = classes.size();
  Matrix<RatFn> work = lambda;
  Matrix<RatFn> h(n, n), dmat(n, n);
  for (size_t i = 0; i < n; ++i) h.at(i, i) = RatFn::one();
  for (size_t ck = nc; ck-- > 0;) {
    auto K = classes[ck];
    Matrix<RatFn> dk = detail::block(work, K, K);
    detail::set_block(dmat, K, K, dk);
    for (size_t cj = 0; cj < ck; ++cj) {
      auto J = classes[cj];
      detail::set_block(h, K, J, detail::solve(dk, detail::block(work, K, J)));
    }
    for (size_t ci = 0; ci < ck; ++ci)
      for (size_t cj = 0; cj <= ci; ++cj) {
        auto I = classes[ci];
        auto J = classes[cj];
        Matrix<RatFn> corr = detail::block(h, K, I).transpose() * dk * detail::block(h, K, J);
        for (size_t a = 0; a < corr.rows(); ++a)
          for (size_t b = 0; b < corr.cols(); ++b) {
            work.at(I.first + a, J.first + b) -= corr.at(a, b);
            if (ci != cj) work.at(J.first + b, I.first + a) -= corr.at(a, b);
          }
      }
  }
  return {detail::to_laurent_checked(h, "H"), dmat};
}

struct PQPair {
  Matrix<LaurentPoly> P;  // off-diagonal entries in qZ[q]
  Matrix<LaurentPoly> Q;  // bar-invariant entries
};

/**
 * H = P Q with P strictly-positive-exponent off the diagonal and Q
 * bar-invariant, by increasing block distance:
 *   residual R = H_IJ - sum_{J<K<I} P_IK Q_KJ, then split each entry of R
 *   into its bar-invariant part (-> Q) and the rest (-> P).
 */
inline PQPair pq_split(const Matrix<LaurentPoly>& h, const Classes& classes) {
  size_t n = h.rows();
  size_t nc = classes.size();
  Matrix<LaurentPoly> p(n, n), q(n, n);
  for (size_t i = 0; i < n; ++i) p.at(i, i) = q.at(i, i) = LaurentPoly::one();
  for (size_t dist = 1; dist < nc; ++dist)
    for (size_t ci = dist; ci < nc; ++ci) {
      size_t cj = ci - dist;
      auto I = classes[ci];
      auto J = classes[cj];
      for (size_t r = I.first; r < I.second; ++r)
        for (size_t c = J.first; c < J.second; ++c) {
          LaurentPoly res = h.at(r, c);
          for (size_t ck = cj + 1; ck < ci; ++ck) {
            auto K = classes[ck];
            for (size_t m = K.first; m < K.second; ++m) res -= p.at(r, m) * q.at(m, c);
          }
          auto [pp, rr] = split_bar(res);
          p.at(r, c) = pp;
          q.at(r, c) = rr;
        }
    }
  return {p, q};
}

/// Column-sweep variant of the PQ split (second schedule; identical result).
inline PQPair pq_split_columns(const Matrix<LaurentPoly>& h, const Classes& classes) {
  size_t n = h.rows();
  size_t nc = classes.size();
  Matrix<LaurentPoly> p(n, n), q(n, n);
  for (size_t i = 0; i < n; ++i) p.at(i, i) = q.at(i, i) = LaurentPoly::one();
  for (size_t cj = nc; cj-- > 0;)
    for (size_t ci = cj + 1; ci < nc; ++ci) {
      auto I = classes[ci];
      auto J = classes[cj];
      for (size_t r = I.first; r < I.second; ++r)
        for (size_t c = J.first; c < J.second; ++c) {
          LaurentPoly res = h.at(r, c);
          for (size_t ck = cj + 1; ck < ci; ++ck) {
            auto K = classes[ck];
            for (size_t m = K.first; m < K.second; ++m) res -= p.at(r, m) * q.at(m, c);
          }
          auto [pp, rr] = split_bar(res);
          p.at(r, c) = pp;
          q.at(r, c) = rr;
        }
    }
  return {p, q};
}

/// Inverse of a lower unitriangular Laurent matrix (exact, stays in A).
inline Matrix<LaurentPoly> invert_unitriangular(const Matrix<LaurentPoly>& m) {
  size_t n = m.rows();
  Matrix<LaurentPoly> x(n, n);
  for (size_t i = 0; i < n; ++i) x.at(i, i) = LaurentPoly::one();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j <= i; ++j) {
      if (i == j) continue;
      LaurentPoly acc;  // X(i,j) = -sum_{j<=k<i} M(i,k) X(k,j)
      for (size_t k = j; k < i; ++k) acc += m.at(i, k) * x.at(k, j);
      x.at(i, j) = -acc;
    }
  return x;
}

/**
 * Within-class transition from Schur-type to complete-type imaginary parts:
 * block diagonal, entry (row kappa, col lambda) = prod_i K_{kappa^(i), lambda^(i)}.
 * Conjugating the solver's P, D by this matrix restores the canonical-basis
 * normalization of the Gram form.
 */
inline Matrix<LaurentPoly> kostka_correction(const IndexFiber& fiber) {
  size_t n = fiber.size();
  Matrix<LaurentPoly> u(n, n);
  for (const auto& [a, b] : fiber.classes)
    for (size_t col = a; col < b; ++col)
      for (size_t row = a; row < b; ++row) {
        long long mult = 1;
        const auto& lam = fiber.indices[col].zero;
        const auto& kap = fiber.indices[row].zero;
        std::set<int> verts;
        for (const auto& [v, pa] : lam) verts.insert(v);
        for (const auto& [v, pa] : kap) verts.insert(v);
        for (int v : verts) {
          static const Partition kEmpty;
          auto itl = lam.find(v);
          auto itk = kap.find(v);
          const Partition& pl = itl == lam.end() ? kEmpty : itl->second;
          const Partition& pk = itk == kap.end() ? kEmpty : itk->second;
          mult *= kostka(pk, pl);
          if (mult == 0) break;
        }
        u.at(row, col) = LaurentPoly(mult);
      }
  return u;
}

/// Everything the canon pipeline produces for one weight fiber.
struct CanonicalDecomposition {
  GramMatrix gram;
  Matrix<LaurentPoly> H, P, Q, Qinv, U;
  Matrix<RatFn> D;
};

/// gram -> tHDH -> PQ, plus the inverse transition to the monomial basis
/// and the within-class Kostka correction.
inline CanonicalDecomposition canonical_decomposition(const Root& nu, PBWRealization& ctx,
                                                      Engine engine = Engine::dp,
                                                      unsigned jobs = 0) {
  CanonicalDecomposition out;
  out.gram = gram_matrix(nu, ctx, engine, jobs);
  HDPair hd = hd_decompose(out.gram.entries, out.gram.fiber.classes);
  out.H = std::move(hd.H);
  out.D = std::move(hd.D);
  PQPair pq = pq_split(out.H, out.gram.fiber.classes);
  out.P = std::move(pq.P);
  out.Q = std::move(pq.Q);
  out.Qinv = invert_unitriangular(out.Q);
  out.U = out.gram.within_class;
  return out;
}

/// Columns of P expand canonical basis elements in the PBW basis.
inline CanonicalDecomposition canonical_in_pbw(const Root& nu, PBWRealization& ctx,
                                               Engine engine = Engine::dp, unsigned jobs = 0) {
  return canonical_decomposition(nu, ctx, engine, jobs);
}

struct VerifyReport {
  bool ok = true;
  std::string detail;

  void fail(const std::string& msg) {
    if (ok) {
      ok = false;
      detail = msg;
    }
  }
};

/// tH D H = Lambda and P Q = H, exactly.
inline VerifyReport verify_reconstruction(const CanonicalDecomposition& dec) {
  VerifyReport rep;
  Matrix<RatFn> hr = detail::to_rat(dec.H);
  Matrix<RatFn> recon = hr.transpose() * dec.D * hr;
  if (recon != dec.gram.entries) rep.fail("tH D H != Lambda");
  Matrix<LaurentPoly> pq = dec.P * dec.Q;
  if (pq != dec.H) rep.fail("P Q != H");
  Matrix<LaurentPoly> qq = dec.Q * dec.Qinv;
  if (qq != Matrix<LaurentPoly>::identity(dec.Q.rows(), LaurentPoly::one()))
    rep.fail("Q Qinv != I");
  return rep;
}

/// Structural constraints on H, D, P, Q from the decomposition theorem.
inline VerifyReport verify_structure(const CanonicalDecomposition& dec) {
  VerifyReport rep;
  size_t n = dec.gram.fiber.size();
  auto class_of = [&](size_t i) { return dec.gram.fiber.class_of(i); };
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      size_t ci = class_of(i), cj = class_of(j);
      bool diag_block = ci == cj;
      // D strictly block diagonal
      if (!diag_block && !dec.D.at(i, j).is_zero())
        rep.fail("D has a nonzero entry off the diagonal blocks");
      // H, P, Q: identity on diagonal blocks, zero above
      for (const Matrix<LaurentPoly>* m : {&dec.H, &dec.P, &dec.Q}) {
        const LaurentPoly& e = m->at(i, j);
        if (diag_block) {
          if (i == j ? !e.is_one() : !e.is_zero())
            rep.fail("diagonal class block is not the identity");
        } else if (cj > ci && !e.is_zero()) {
          rep.fail("nonzero entry above the block diagonal");
        }
      }
      if (!dec.P.at(i, j).is_zero() && i != j && !dec.P.at(i, j).has_only_positive_exps())
        rep.fail("P off-diagonal entry not in qZ[q]");
      if (!dec.Q.at(i, j).is_bar_invariant()) rep.fail("Q entry not bar-invariant");
    }
  return rep;
}

/**
 * Almost orthonormality of the canonical basis: the Gram form
 * U^-t (tP D P) U^-1 expanded through q^order must be Id + q * (integer
 * series), entrywise.
 */
inline VerifyReport verify_almost_orthonormal(const CanonicalDecomposition& dec, int order) {
  VerifyReport rep;
  Matrix<RatFn> pr = detail::to_rat(dec.P);
  Matrix<RatFn> uinv = detail::solve(detail::to_rat(dec.U),
                                     Matrix<RatFn>::identity(dec.U.rows(), RatFn::one()));
  Matrix<RatFn> gb = uinv.transpose() * pr.transpose() * dec.D * pr * uinv;
  for (size_t i = 0; i < gb.rows(); ++i)
    for (size_t j = 0; j < gb.cols(); ++j) {
      TruncSeries s = expand(gb.at(i, j), order);
      bool good = i == j ? s.in_one_plus_q_zseries() : s.in_q_zseries();
      if (!good) {
        rep.fail("canonical Gram entry (" + std::to_string(i) + "," + std::to_string(j) +
                 ") = " + gb.at(i, j).str() + " violates almost orthonormality");
        return rep;
      }
    }
  return rep;
}

/// Product form of the diagonal: for singleton classes the D entry must be
/// prod over the real support of prod_{d<=c} 1/(1-q^{2d}); larger class
/// blocks must be symmetric and nonsingular.
inline VerifyReport verify_prop32_diagonal(const CanonicalDecomposition& dec) {
  VerifyReport rep;
  const auto& fiber = dec.gram.fiber;
  for (const auto& [a, b] : fiber.classes) {
    if (b - a == 1) {
      const PBWIndex& c = fiber.indices[a];
      RatFn expected = RatFn::one();
      auto factor = [&](int mult) {
        for (int d = 1; d <= mult; ++d) {
          LaurentPoly den;
          den.add_term(0, 1);
          den.add_term(2 * d, -1);
          expected = expected / RatFn(den);
        }
      };
      for (const auto& [k, mult] : c.plus) factor(mult);
      for (const auto& [k, mult] : c.minus) factor(mult);
      if (dec.D.at(a, a) != expected)
        rep.fail("singleton class D entry " + dec.D.at(a, a).str() +
                 " differs from the product form " + expected.str());
    } else {
      for (size_t i = a; i < b; ++i)
        for (size_t j = i + 1; j < b; ++j)
          if (dec.D.at(i, j) != dec.D.at(j, i)) rep.fail("class block of D not symmetric");
      // nonsingular: Gaussian elimination must not hit a zero column
      Matrix<RatFn> blk = detail::block(dec.D, {a, b}, {a, b});
      try {
        detail::solve(blk, Matrix<RatFn>::identity(b - a, RatFn::one()));
      } catch (const SingularBlock&) {
        rep.fail("class block of D is singular");
      }
    }
  }
  return rep;
}

}  // namespace qab

#endif  // QAB_DECOMPOSE_HH
