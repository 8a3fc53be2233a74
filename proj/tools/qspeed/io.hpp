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

// JSON input documents.
//
//   {
//     "schema_version": 1,
//     "hbar": 1.0,                               (optional)
//     "instances": [
//       {"id": "a", "kind": "ensemble",
//        "probabilities": [0.5, 0.5],
//        "states": [M, M],
//        "hamiltonian": M},                      (optional, dim d*N)
//       {"id": "b", "kind": "chsh",
//        "dim_a": 2, "dim_b": 2,
//        "shared_state": M,
//        "alice_povms": [[M, M], [M, M]],        ([y][a])
//        "bob_hamiltonians": [M, M]}             (or "bob_hamiltonian": M)
//     ]
//   }
//
// with M = {"dim": n, "entries": [[re, im], ...]} in row-major order.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qspeed/chsh.hpp"
#include "qspeed/states.hpp"

namespace qspeed::cli {

inline constexpr int kSchemaVersion = 1;

struct EnsembleInstance {
  std::string id;
  Ensemble ensemble;
  std::optional<HermitianOperator> hamiltonian;
};

struct ChshInstance {
  std::string id;
  ChshStrategy strategy;
};

struct InputDocument {
  std::optional<double> hbar;
  std::vector<EnsembleInstance> ensembles;
  std::vector<ChshInstance> strategies;
};

/// Throws ValidationError prefixed with the file name and JSON path.
InputDocument load_input(const std::string& path);
InputDocument parse_input(const nlohmann::json& doc, const std::string& source);

/// Raw matrix, no Hermiticity check.
ComplexMatrix parse_matrix(const nlohmann::json& node, const std::string& where);
nlohmann::json matrix_to_json(const ComplexMatrix& m);

/// Every violated invariant in the document, one line each. Empty when valid.
std::vector<std::string> validate_document(const std::string& path);

}  // namespace qspeed::cli
