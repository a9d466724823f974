// Copyright 2026 The swipt-sched Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SWIPT_FEASIBILITY_H_
#define SWIPT_FEASIBILITY_H_

#include <optional>
#include <span>
#include <vector>

namespace swipt {

// One violated inequality of the ET-feasibility conditions.
//  condition 1: p_n <= |S_a| / N for a single user n.
//  condition 2: sum_{n in subset} p_n <= bound(L) for a subset of size L.
struct FeasibilityViolation {
  int condition = 0;
  int subset_size = 0;                  // L (1 for condition 1)
  std::vector<std::size_t> users;       // 0-based witness subset
  double lhs = 0.0;
  double rhs = 0.0;
};

struct FeasibilityReport {
  bool feasible = true;
  std::vector<FeasibilityViolation> violations;

  // Smallest L among condition-2 violations, if any.
  std::optional<int> MinViolatedSubsetSize() const;
  bool ViolatesIndividualLimit() const;
};

// Right-hand side of condition 2:
//   [C(N-1, s-1) L + C(L, s) (1 - s)] / C(N, s),  s = |S_a|.
double SubsetProbabilityBound(int n_users, int allowed_size, int subset_size);

// Sorted-prefix check. The bound depends on L only, so among all subsets of
// size L the one holding the L largest probabilities is the binding one;
// each violated L is reported once, with that subset as the witness.
// Throws DomainError for an invalid probability vector (negative or
// non-finite entries, sum off 1 by more than 1e-9, allowed_size outside 1..N).
FeasibilityReport CheckEtFeasibility(std::span<const double> p, int allowed_size);

// Enumerates every subset of every size L = |S_a|..N and reports each
// violating one. Reference oracle for CheckEtFeasibility; throws SizeError
// for N > 20.
FeasibilityReport CheckEtFeasibilityExhaustive(std::span<const double> p,
                                               int allowed_size);

inline constexpr int kExhaustiveFeasibilityMaxUsers = 20;

// Slack used when comparing a probability sum against its bound, so that the
// L = N condition (which holds with equality) survives rounding.
inline constexpr double kFeasibilitySlack = 1e-12;

}  // namespace swipt

#endif  // SWIPT_FEASIBILITY_H_
