#pragma once

// R-matrices for the colored Jones polynomial (R_J) and Kashaev's invariant
// (R_K) at s = exp(pi i / N), the gauge matrices W and D relating them, the
// enhancement data mu, and the identity checks tying them together.
//
// Products written X1 X2 ... Xk in the literature this module follows apply
// X1 first (lower indices are inputs and contraction runs left to right).  In
// terms of Operator::then that is X1.then(X2)...then(Xk); on dense matrices
// (rows = outputs) it is M_k ... M_2 M_1.

#include <memory>
#include <string>
#include <vector>

#include "qjk/operator.hpp"
#include "qjk/qarith.hpp"
#include "qjk/report.hpp"

namespace qjk {

enum class OperatorKind { Jones, Kashaev };
// ClosedAsPrinted uses the lambda constant exactly as published, which differs
// from the consistent one by (-1)^{N+1}.
enum class KashaevMode { Formula, Closed, ClosedAsPrinted };

std::string_view to_string(OperatorKind kind);
OperatorKind parse_operator_kind(std::string_view text);

// (R_J)_{kl}^{ij} = sum_n delta_{l,i+n} delta_{k,j-n} (s-s^-1)^n/[n]! [i+n]!/[i]! [N-1+n-j]!/[N-1-j]!
//                   * s^{2(i-(N-1)/2)(j-(N-1)/2) - n(i-j) - n(n+1)/2}
template <class Real>
Operator<Real> build_R_jones(const RootSystem<Real>& sys);

// W_j^i = s^{2ij}, D_j^i = delta_{ij} s^{(N-1)i}; `power` raises D to an integer power.
template <class Real>
Operator<Real> build_W(const RootSystem<Real>& sys);
template <class Real>
Operator<Real> build_W_inverse(const RootSystem<Real>& sys);
template <class Real>
Operator<Real> build_D(const RootSystem<Real>& sys, int power = 1);

// (W (x) W)(id (x) D) M (id (x) D^-1)(W^-1 (x) W^-1), evaluated factor by factor
// in O(N^5).
template <class Real>
Operator<Real> conjugate_gauge(const RootSystem<Real>& sys, const Operator<Real>& m);

// Same product formed from explicit N^2 x N^2 Kronecker matrices. Independent
// of conjugate_gauge; intended for cross-checks at small N.
template <class Real>
Operator<Real> conjugate_gauge_explicit(const RootSystem<Real>& sys, const Operator<Real>& m);

// Four-case closed form of the conjugated Jones matrix, with prefactor
// rho(a,b,c,d) = s^{-N^2/2+1/2+c+d-2b+(a-d)(c-b)} [N-1]! (s-s^-1)^{2(N-1)} / N^2.
template <class Real>
Operator<Real> closed_form_tilde(const RootSystem<Real>& sys);

template <class Real>
Complex<Real> rho_prefactor(const RootSystem<Real>& sys, int a, int b, int c, int d);
template <class Real>
Complex<Real> lambda_prefactor(const RootSystem<Real>& sys, int a, int b, int c, int d, bool as_printed = false);

// Which of the four index orderings (a,b,c,d) falls in: 1..4, or 0 for none.
//   1: d >= b > a >= c   2: b > a >= c >= d   3: c >= d >= b > a   4: a >= c >= d >= b
int ordering_case(int a, int b, int c, int d);

// Kashaev's matrix, either from the theta/res/Pochhammer formula or from the
// four-case closed form with prefactor lambda.
template <class Real>
Operator<Real> build_R_kashaev(const RootSystem<Real>& sys, KashaevMode mode = KashaevMode::Formula);

// mu_J = diag(s^{2i-N+1});  mu_K = -s * (cyclic shift v_j -> v_{j+1 mod N}).
template <class Real>
Operator<Real> build_mu(const RootSystem<Real>& sys, OperatorKind kind);

// s^{(N+1)(N-3)/2}: R_K = s^{-(N+1)(N-3)/2} conjugate_gauge(R_J).
template <class Real>
Complex<Real> gauge_constant(const RootSystem<Real>& sys);

// Inverse of an arity-2 operator that is block diagonal with respect to the
// charge (k + l) mod `modulus` of its basis pairs (modulus 0 means exact
// charge k + l).  Each block is inverted densely.  Throws IntegrityError if the
// operator mixes sectors.
template <class Real>
Operator<Real> invert_by_charge_sectors(const Operator<Real>& r, int modulus);

// R_K is not block diagonal in any charge; it is invariant under the diagonal
// shift (a, b) -> (a+1, b+1) mod N.  translation_defect measures the largest
// violation of that symmetry.
template <class Real>
double translation_defect(const Operator<Real>& r);

// Inverse of a shift-invariant arity-2 operator, one N x N block per Fourier
// momentum.  Throws IntegrityError if the operator is not shift invariant.
template <class Real>
Operator<Real> invert_translation_invariant(const RootSystem<Real>& sys, const Operator<Real>& r);

// R_K^-1[(a,b) -> (c,d)] = conj(R_K[(-b,-a) -> (-d,-c)]), indices mod N.  Exact
// and well conditioned at every N; make_enhanced uses it.
template <class Real>
Operator<Real> kashaev_inverse_closed(const Operator<Real>& r_kashaev);

// Inverse of R_K obtained by gauge-conjugating the sector inverse of R_J.
template <class Real>
Operator<Real> kashaev_inverse_from_jones(const RootSystem<Real>& sys, const Operator<Real>& r_jones_inverse);

// (R (x) id)(id (x) R)(R (x) id) versus (id (x) R)(R (x) id)(id (x) R), evaluated
// by sparse propagation of every basis vector of (C^N)^{(x)3}.
template <class Real>
CheckReport check_ybe(const Operator<Real>& r, const Tolerance& tol = {});

// (id (x) D) R_J (id (x) D^-1) = (D^-1 (x) id) R_J (D (x) id) and (D (x) D) R_J = R_J (D (x) D).
template <class Real>
std::vector<CheckReport> check_gauge_through(const RootSystem<Real>& sys, const Operator<Real>& r_jones,
                                             const Tolerance& tol = {});

// W D mu_J D^-1 W^-1 = mu_K.
template <class Real>
CheckReport check_mu_conjugation(const RootSystem<Real>& sys, const Tolerance& tol = {});

// rho/lambda = s^{(N+1)(N-3)/2} and prod 2 sin(k pi/N) = N.
template <class Real>
std::vector<CheckReport> constant_identity_check(const RootSystem<Real>& sys, const Tolerance& tol = {});

template <class Real>
struct EnhancedYB {
  std::shared_ptr<const RootSystem<Real>> system;
  OperatorKind kind;
  Operator<Real> r;
  Operator<Real> r_inverse;
  Operator<Real> mu;
  Complex<Real> alpha;
  Complex<Real> beta;
  std::vector<CheckReport> axioms;  // as verified at construction

  int n() const { return system->n(); }
};

// Twist scalar alpha: s^{(N^2-1)/2} for Jones, -s for Kashaev.
template <class Real>
Complex<Real> enhancement_alpha(const RootSystem<Real>& sys, OperatorKind kind);

// R R^-1 = id, (mu (x) mu) R = R (mu (x) mu), Sp_2(R^{+-1}(id (x) mu)) = alpha^{+-1} beta id.
template <class Real>
std::vector<CheckReport> check_enhancement(const Operator<Real>& r, const Operator<Real>& r_inverse,
                                           const Operator<Real>& mu, Complex<Real> alpha, Complex<Real> beta,
                                           const Tolerance& tol = {});

// Builds the enhanced operator and verifies every axiom; throws IntegrityError
// naming the failed axiom otherwise.
template <class Real>
EnhancedYB<Real> make_enhanced(std::shared_ptr<const RootSystem<Real>> sys, OperatorKind kind,
                               const Tolerance& tol = {});

}  // namespace qjk
