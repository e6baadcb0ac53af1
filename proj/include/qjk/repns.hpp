#pragma once

// The two N-dimensional representations E and F(p) of U_q(sl2) at
// s = exp(pi i / N):
//   E:    X e_i = [i+1] e_{i+1},  Y e_i = [i] e_{i-1},  K e_i = s^{i-(N-1)/2} e_i
//   F(p): X f_i = sqrt([2p-i+1][i]) f_{i-1},  Y f_i = sqrt([2p-i][i+1]) f_{i+1},
//         K f_i = s^{p-i} f_i

#include <optional>
#include <string>
#include <vector>

#include "qjk/operator.hpp"
#include "qjk/qarith.hpp"
#include "qjk/report.hpp"

namespace qjk {

template <class Real>
struct RepTriple {
  Operator<Real> x, y, k;
  std::string label;
  std::optional<double> p;  // F(p) only
};

template <class Real>
RepTriple<Real> build_E(const RootSystem<Real>& sys);

// Principal square roots; a radicand below -1e-12 is a DomainError.
template <class Real>
RepTriple<Real> build_F(const RootSystem<Real>& sys, Real p);

// KX = s XK, KY = s^-1 YK, XY - YX = (K^2 - K^-2)/(s - s^-1).
template <class Real>
std::vector<CheckReport> relations_check(const RootSystem<Real>& sys, const RepTriple<Real>& rep,
                                         const Tolerance& tol = {});

// X <-> Y, K -> K^-1.  K must be diagonal.
template <class Real>
RepTriple<Real> cartan_transform(const RepTriple<Real>& rep);

// Max entrywise deviation between the Cartan transform of F(p) and E.
template <class Real>
CheckReport cartan_check(const RootSystem<Real>& sys, Real p, const Tolerance& tol = {});

template <class Real>
CheckReport cartan_check(const RootSystem<Real>& sys, const Tolerance& tol = {}) {
  return cartan_check(sys, static_cast<Real>(sys.n() - 1) / 2, tol);
}

}  // namespace qjk
