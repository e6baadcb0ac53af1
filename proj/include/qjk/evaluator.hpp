#pragma once

// (1,1)-tangle invariants T_{S,1}(xi) of braid closures.
//
// For a braid xi on n strands with operator b_S(xi) (first letter applied
// first) the N x N endomorphism
//   T[i'][i] = sum_{j} < i', j | b_S(xi) (id (x) mu^{(x)(n-1)}) | i, j >
// is a scalar multiple of the identity; T_{S,1}(xi) = alpha^{-w} beta^{-n} times
// that scalar.

#include <string>
#include <utility>
#include <vector>

#include "qjk/braid.hpp"
#include "qjk/report.hpp"
#include "qjk/rmatrix.hpp"

namespace qjk {

enum class InputSet {
  All,    // every first-strand input i; the full endomorphism
  Probe,  // only i in {0, N-1}; enough for the scalar and a scalarness spot check
};

enum class Strategy {
  MeetInMiddle,  // first half forwards, second half backwards, then a dot product
  Forward,       // whole word forwards, read every output (cross-check path)
};

struct EvalOptions {
  int threads = 1;
  InputSet inputs = InputSet::All;
  Strategy strategy = Strategy::MeetInMiddle;
  // Skip output rows i' that cannot be reached because the operator conserves
  // the exact charge (Jones only).
  bool prune = true;
  // Throw IntegrityError when the endomorphism is not scalar within tolerance.
  bool enforce_scalar = true;
  Tolerance tol{};
};

template <class Real>
struct TangleValue {
  Complex<Real> scalar;  // normalized invariant
  Complex<Real> raw;     // mean of the evaluated diagonal, before alpha^-w beta^-n
  // max(off-diagonal magnitude, diagonal spread) / max(1, |raw|)
  double scalarness_deviation = 0.0;
  int n = 0;
  OperatorKind kind = OperatorKind::Jones;
  std::string word;
  int writhe = 0;
  int components = 1;
  std::vector<int> inputs;                  // first-strand inputs evaluated
  std::vector<Complex<Real>> endomorphism;  // N x N, index out * N + in
};

// Sparse vector on (C^N)^{(x)n}: (flat index, amplitude), sorted by index.
template <class Real>
using SparseState = std::vector<std::pair<std::size_t, Complex<Real>>>;

template <class Real>
SparseState<Real> braid_operator_apply(const EnhancedYB<Real>& s, const BraidWord& w, const SparseState<Real>& state);

template <class Real>
TangleValue<Real> one_one_invariant(const EnhancedYB<Real>& s, const BraidWord& w, const EvalOptions& options = {});

// alpha^{-w} beta^{-n} Sp_1(...Sp_n(b_S(xi) mu^{(x)n})).  Zero for both S_J and
// S_K since Sp_1(mu) = 0.
template <class Real>
Complex<Real> closed_trace_invariant(const EnhancedYB<Real>& s, const BraidWord& w, const EvalOptions& options = {});

// T_{S_J,1} versus T_{S_K,1}: deviation |J - K| with magnitude |J|.
template <class Real>
CheckReport agreement_check(const EnhancedYB<Real>& jones, const EnhancedYB<Real>& kashaev, const BraidWord& w,
                            const EvalOptions& options = {});

// Alternative words with the same closure: rotations, conjugates by each
// generator, and positive/negative stabilizations.
std::vector<std::pair<std::string, BraidWord>> markov_variants(const BraidWord& w);

}  // namespace qjk
