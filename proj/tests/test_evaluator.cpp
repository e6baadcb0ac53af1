#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <map>
#include <memory>

#include "oracles/alexander.hpp"
#include "oracles/jones.hpp"
#include "qjk/evaluator.hpp"

using qjk::BraidWord;
using qjk::EvalOptions;
using qjk::OperatorKind;
using qjk::RootSystem;
using qjk::parse_braid;
using C = std::complex<double>;

namespace {

using Enhanced = qjk::EnhancedYB<double>;

// Operators are costly to build; share them across tests.
const Enhanced& enhanced(int n, OperatorKind kind) {
  static std::map<std::pair<int, OperatorKind>, std::unique_ptr<Enhanced>> cache;
  auto& slot = cache[{n, kind}];
  if (!slot) {
    slot = std::make_unique<Enhanced>(qjk::make_enhanced(std::make_shared<const RootSystem<double>>(n), kind));
  }
  return *slot;
}

C invariant(int n, OperatorKind kind, const BraidWord& w, EvalOptions options = {}) {
  return qjk::one_one_invariant(enhanced(n, kind), w, options).scalar;
}

const std::map<std::string, std::string> kCorpus = {
    {"3_1", "2: 1 1 1"},          {"4_1", "3: 1 -2 1 -2"},         {"5_2", "3: 1 1 1 2 -1 2"},
    {"6_1", "4: 1 1 2 -1 -3 2 -3"}, {"granny", "3: 1 1 1 2 2 2"},
};

constexpr OperatorKind kKinds[] = {OperatorKind::Jones, OperatorKind::Kashaev};

}  // namespace

TEST(Evaluator, UnknotIsOne) {
  for (int n = 2; n <= 12; ++n) {
    for (const auto kind : kKinds) {
      for (const char* word : {"1:", "2: 1", "2: -1", "3: 1 2", "3: -2 1"}) {
        EXPECT_LT(std::abs(invariant(n, kind, parse_braid(word)) - 1.0), 1e-9 * n) << word << " N=" << n;
      }
    }
  }
}

TEST(Evaluator, DeterminantsAtNTwo) {
  for (const auto& [name, word] : kCorpus) {
    const auto w = parse_braid(word);
    const double det = static_cast<double>(oracle::knot_determinant(w));
    for (const auto kind : kKinds) {
      EXPECT_NEAR(std::abs(invariant(2, kind, w)), det, 1e-6) << name;
    }
  }
}

TEST(Evaluator, FigureEightMatchesClosedFormula) {
  const auto w = parse_braid("3: 1 -2 1 -2");
  for (int n = 2; n <= 16; ++n) {
    const double expected = static_cast<double>(oracle::figure_eight(n));
    for (const auto kind : kKinds) {
      // The Jones basis loses about |R_J|^2 to cancellation; double holds up to N = 8.
      if (kind == OperatorKind::Jones && n > 8) continue;
      const C value = invariant(n, kind, w);
      EXPECT_NEAR(value.real(), expected, 1e-9 * expected) << n;
      EXPECT_NEAR(value.imag(), 0.0, 1e-9 * expected) << n;
    }
  }
  EXPECT_NEAR(invariant(3, OperatorKind::Jones, w).real(), 13.0, 1e-10);
  EXPECT_NEAR(invariant(5, OperatorKind::Jones, w).real(), 50.47213595499958, 1e-9);
}

TEST(Evaluator, FigureEightJonesExtendedPrecision) {
  const auto w = parse_braid("3: 1 -2 1 -2");
  for (int n : {10, 12}) {
    const auto s = qjk::make_enhanced(std::make_shared<const RootSystem<long double>>(n), OperatorKind::Jones);
    const auto value = qjk::one_one_invariant(s, w);
    const long double expected = oracle::figure_eight(n);
    EXPECT_LT(std::abs(value.scalar - expected), 1e-9L * expected) << n;
  }
}

TEST(Evaluator, CancellationIsDetected) {
  // At N = 16 the Jones-basis contraction in double keeps only a few digits;
  // the scalarness gate must refuse it rather than return a value.
  const auto w = parse_braid("3: 1 -2 1 -2");
  EXPECT_THROW(invariant(16, OperatorKind::Jones, w), qjk::IntegrityError);
  EvalOptions lenient;
  lenient.enforce_scalar = false;
  const auto value = qjk::one_one_invariant(enhanced(16, OperatorKind::Jones), w, lenient);
  EXPECT_GT(value.scalarness_deviation, 1e-6);
}

TEST(Evaluator, TrefoilModulusMatchesClosedFormula) {
  const auto w = parse_braid("2: 1 1 1");
  for (int n = 2; n <= 16; ++n) {
    const double expected = static_cast<double>(oracle::trefoil_modulus(n));
    for (const auto kind : kKinds) {
      if (kind == OperatorKind::Jones && n > 12) continue;
      EXPECT_NEAR(std::abs(invariant(n, kind, w)), expected, 1e-9 * expected) << n;
    }
  }
}

TEST(Evaluator, JonesAndKashaevAgree) {
  for (int n = 2; n <= 7; ++n) {
    for (const auto& [name, word] : kCorpus) {
      const auto w = parse_braid(word);
      const auto report = qjk::agreement_check(enhanced(n, OperatorKind::Jones), enhanced(n, OperatorKind::Kashaev), w);
      EXPECT_LT(report.max_deviation, 1e-8 * std::max(1.0, report.magnitude)) << name << " N=" << n;
    }
  }
}

TEST(Evaluator, EndomorphismIsScalar) {
  for (int n : {2, 3, 5}) {
    for (const auto kind : kKinds) {
      for (const auto& [name, word] : kCorpus) {
        const auto value = qjk::one_one_invariant(enhanced(n, kind), parse_braid(word));
        EXPECT_LT(value.scalarness_deviation, 1e-10) << name;
        EXPECT_EQ(value.inputs.size(), static_cast<std::size_t>(n));
      }
    }
  }
}

TEST(Evaluator, ClosedTraceVanishes) {
  for (const auto kind : kKinds) {
    for (int n : {2, 3, 4}) {
      for (const char* word : {"1:", "2: 1 1 1", "3: 1 -2 1 -2"}) {
        const auto w = parse_braid(word);
        EXPECT_LT(std::abs(qjk::closed_trace_invariant(enhanced(n, kind), w)), 1e-9) << word;
      }
    }
  }
}

TEST(Evaluator, MarkovInvariance) {
  for (int n = 2; n <= 5; ++n) {
    for (const auto& [name, word] : kCorpus) {
      const auto w = parse_braid(word);
      if (w.strands >= 4 && n > 4) continue;
      const C base = invariant(n, OperatorKind::Jones, w);
      const auto variants = qjk::markov_variants(w);
      EXPECT_GE(variants.size(), 5u);
      for (const auto& [label, v] : variants) {
        for (const auto kind : kKinds) {
          EXPECT_LT(std::abs(invariant(n, kind, v) - base), 1e-8 * std::max(1.0, std::abs(base)))
              << name << " " << label << " N=" << n;
        }
      }
    }
  }
}

TEST(Evaluator, ConjugateExampleWord) {
  const auto a = parse_braid("3: 2 1 -2 1 -2 -2");
  const auto b = parse_braid("3: 1 -2 1 -2");
  for (int n = 2; n <= 6; ++n) {
    EXPECT_LT(std::abs(invariant(n, OperatorKind::Kashaev, a) - invariant(n, OperatorKind::Jones, b)), 1e-8 * n * n);
  }
}

TEST(Evaluator, MirrorIsConjugate) {
  // Reversing crossing signs sends s to s^-1.
  const auto w = parse_braid("3: 1 1 1 2 -1 2");
  const auto mirror = parse_braid("3: -1 -1 -1 -2 1 -2");
  for (int n = 2; n <= 6; ++n) {
    const C a = invariant(n, OperatorKind::Jones, w);
    const C b = invariant(n, OperatorKind::Jones, mirror);
    EXPECT_LT(std::abs(a - std::conj(b)), 1e-8 * std::max(1.0, std::abs(a))) << n;
  }
}

TEST(Evaluator, Multiplicativity) {
  const auto t = parse_braid("2: 1 1 1");
  const auto e = parse_braid("3: 1 -2 1 -2");
  for (int n = 2; n <= 8; ++n) {
    const C tt = invariant(n, OperatorKind::Jones, t);
    const C granny = invariant(n, OperatorKind::Jones, qjk::connect_sum(t, t));
    EXPECT_LT(std::abs(granny - tt * tt), 1e-8 * std::norm(tt)) << n;
    const C te = invariant(n, OperatorKind::Jones, qjk::connect_sum(t, e));
    const C ee = invariant(n, OperatorKind::Jones, e);
    EXPECT_LT(std::abs(te - tt * ee), 1e-8 * std::abs(tt * ee)) << n;
  }
}

TEST(Evaluator, StrategiesAndPruningAgree) {
  for (int n = 2; n <= 6; ++n) {
    for (const auto kind : kKinds) {
      for (const auto& [name, word] : kCorpus) {
        const auto w = parse_braid(word);
        EvalOptions pruned, unpruned, forward;
        unpruned.prune = false;
        forward.strategy = qjk::Strategy::Forward;
        const auto a = qjk::one_one_invariant(enhanced(n, kind), w, pruned);
        const auto b = qjk::one_one_invariant(enhanced(n, kind), w, unpruned);
        const auto c = qjk::one_one_invariant(enhanced(n, kind), w, forward);
        const double scale = std::max(1.0, std::abs(a.scalar));
        EXPECT_LT(std::abs(a.scalar - b.scalar), 1e-10 * scale);
        EXPECT_LT(std::abs(a.scalar - c.scalar), 1e-10 * scale);
        // The forward path sees every output row; off-diagonals stay zero.
        EXPECT_LT(c.scalarness_deviation, 1e-10) << name;
      }
    }
  }
}

TEST(Evaluator, ProbeMatchesFull) {
  EvalOptions probe;
  probe.inputs = qjk::InputSet::Probe;
  for (const auto kind : kKinds) {
    for (const auto& [name, word] : kCorpus) {
      const auto w = parse_braid(word);
      const auto full = qjk::one_one_invariant(enhanced(5, kind), w);
      const auto part = qjk::one_one_invariant(enhanced(5, kind), w, probe);
      EXPECT_EQ(part.inputs, (std::vector<int>{0, 4}));
      EXPECT_LT(std::abs(full.scalar - part.scalar), 1e-10 * std::max(1.0, std::abs(full.scalar)));
    }
  }
}

TEST(Evaluator, ThreadCountDoesNotChangeBits) {
  const auto w = parse_braid("4: 1 1 2 -1 -3 2 -3");
  EvalOptions one, many;
  many.threads = 4;
  for (const auto kind : kKinds) {
    const auto a = qjk::one_one_invariant(enhanced(6, kind), w, one);
    const auto b = qjk::one_one_invariant(enhanced(6, kind), w, many);
    EXPECT_EQ(a.scalar, b.scalar);
    EXPECT_EQ(a.endomorphism, b.endomorphism);
  }
}

TEST(Evaluator, BraidOperatorApply) {
  const auto& s = enhanced(4, OperatorKind::Jones);
  const qjk::SparseState<double> basis{{5, C(1)}};
  const auto empty = qjk::braid_operator_apply(s, parse_braid("3:"), basis);
  EXPECT_EQ(empty, basis);
  const auto one = qjk::braid_operator_apply(s, parse_braid("3: 1"), basis);
  EXPECT_LE(one.size(), 4u);
  EXPECT_FALSE(one.empty());

  for (const auto kind : kKinds) {
    const auto& sk = enhanced(4, kind);
    const auto w = parse_braid("3: 1 -2 1 2 2 -1");
    const auto there = qjk::braid_operator_apply(sk, w, basis);
    const auto back = qjk::braid_operator_apply(sk, qjk::inverse(w), there);
    double worst = 0.0;
    for (const auto& [idx, v] : back) worst = std::max(worst, std::abs(v - (idx == 5 ? C(1) : C(0))));
    EXPECT_LT(worst, 1e-9);
  }
}

TEST(Evaluator, ChargeConservedByJones) {
  const auto& s = enhanced(5, OperatorKind::Jones);
  const std::size_t start = 1 * 25 + 3 * 5 + 2;
  const auto out = qjk::braid_operator_apply(s, parse_braid("3: 1 -2 1 2"), {{start, C(1)}});
  for (const auto& [idx, v] : out) EXPECT_EQ(idx / 25 + (idx / 5) % 5 + idx % 5, 6u);
}

TEST(Evaluator, RejectsMismatchedInput) {
  const auto& s = enhanced(3, OperatorKind::Jones);
  EXPECT_THROW(qjk::braid_operator_apply(s, parse_braid("2: 1"), {{9, C(1)}}), qjk::DomainError);
  BraidWord bad{2, {3}};
  EXPECT_THROW(qjk::one_one_invariant(s, bad), qjk::DomainError);
  EXPECT_THROW(qjk::agreement_check(s, s, parse_braid("2: 1")), qjk::DomainError);
}

TEST(Evaluator, ExtendedPrecisionMatchesDouble) {
  const auto ext = qjk::make_enhanced(std::make_shared<const RootSystem<long double>>(7), OperatorKind::Jones);
  const auto w = parse_braid("3: 1 1 1 2 -1 2");
  const auto a = qjk::one_one_invariant(ext, w).scalar;
  const C b = invariant(7, OperatorKind::Jones, w);
  EXPECT_LT(std::abs(C(static_cast<double>(a.real()), static_cast<double>(a.imag())) - b), 1e-10 * std::abs(b));
}
