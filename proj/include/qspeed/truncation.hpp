// Copyright 2026 The qspeed Authors
//
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

// Restriction of H to a low-energy eigenspace that carries the inputs up to
// trace distance epsilon.

#pragma once

#include <vector>

#include "qspeed/protocol.hpp"

namespace qspeed {

struct TruncationResult {
  HermitianOperator projector;
  HermitianOperator truncated_h;  // projector H projector
  double epsilon;
  std::vector<Index> kept_levels;  // eigenvector indices of H, ascending energy
  double max_distance;             // max_x 1/2 ||rho~_x - P rho~_x P||_1
};

/// Adds eigenlevels of H in ascending energy (ties by index) until
/// 1/2 ||rho~ - P rho~ P||_1 <= epsilon for every state. Keeps at least one level.
TruncationResult truncation_projector(const HermitianOperator& h, const std::vector<EmbeddedState>& states,
                                      double epsilon);

HermitianOperator truncated_hamiltonian(const TruncationResult& tr, const HermitianOperator& h);

/// |P_succ(H, t) - P_succ(P H P, t)| for the protocol's ensemble and time.
double truncation_success_gap(const Protocol& protocol, const TruncationResult& tr);

}  // namespace qspeed
