#pragma once

// Named verification suites run over a range of N.  Each check yields one or
// more CheckReports tagged "<check>/<detail>".

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qjk/braid.hpp"
#include "qjk/common.hpp"
#include "qjk/report.hpp"

namespace qjk {

// qarith        q-Pochhammer identities and the sine product
// appendix      S and T sums (brute versus closed), the S recursion, q-Pascal
// closed-forms  four-case closed forms of the conjugated R_J and of R_K
// equivalence   R_K against the gauge-conjugated R_J
// ybe           Yang-Baxter equation for R_J and R_K
// gauge-through D moved through R_J
// mu            W D mu_J D^-1 W^-1 = mu_K
// enhancement   enhancement axioms for both operators
// constants     rho / lambda and related scalar identities
// repns         U_q(sl2) relations and the Cartan coincidence
// agreement     Jones and Kashaev invariants of a knot corpus, with scalarness
const std::vector<std::string>& check_names();

// Comma-separated names; "all" expands to every check.  Unknown names and empty
// lists throw DomainError.
std::vector<std::string> parse_check_list(std::string_view text);

// "N" or "A..B" with 2 <= A <= B.  Anything else throws DomainError.
std::pair<int, int> parse_n_range(std::string_view text);

struct VerifyOptions {
  Precision precision = Precision::Double;
  Tolerance tol{};
  int threads = 1;
  // Knots for the agreement check; empty means every entry of the default table.
  std::vector<KnotEntry> corpus;
};

std::vector<CheckReport> run_check(std::string_view name, int n, const VerifyOptions& options = {});

// Checks in the given order, each over n_min..n_max.
std::vector<CheckReport> verify_suite(const std::vector<std::string>& checks, int n_min, int n_max,
                                      const VerifyOptions& options = {});

}  // namespace qjk
