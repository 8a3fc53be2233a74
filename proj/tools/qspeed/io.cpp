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

#include "io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "qspeed/errors.hpp"

namespace qspeed::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw ValidationError(where + ": " + what); }

const json& member(const json& node, const char* key, const std::string& where) {
  if (!node.is_object() || !node.contains(key)) fail(where, std::string("missing field '") + key + "'");
  return node.at(key);
}

double as_real(const json& node, const std::string& where) {
  if (!node.is_number()) fail(where, "expected a number");
  const double v = node.get<double>();
  if (!std::isfinite(v)) fail(where, "non-finite number");
  return v;
}

Index as_dim(const json& node, const std::string& where) {
  if (!node.is_number_integer() || node.get<long long>() < 1) fail(where, "expected a positive integer");
  return static_cast<Index>(node.get<long long>());
}

std::string instance_id(const json& node, std::size_t k) {
  if (node.is_object() && node.contains("id")) {
    const json& id = node.at("id");
    if (!id.is_string()) fail("instances[" + std::to_string(k) + "].id", "expected a string");
    const std::string s = id.get<std::string>();
    if (s.empty() || s.find_first_of(",\"\r\n") != std::string::npos) {
      fail("instances[" + std::to_string(k) + "].id", "must be nonempty and free of commas, quotes and newlines");
    }
    return s;
  }
  return "instance" + std::to_string(k);
}

// Runs f and rethrows any library ValidationError with a location prefix.
template <typename F>
auto located(const std::string& where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ValidationError& e) {
    fail(where, e.what());
  }
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path + ": parse error: " + e.what());
  }
}

std::string format_pos(Index i, Index j) {
  std::ostringstream os;
  os << "(" << i << ", " << j << ")";
  return os.str();
}

}  // namespace

ComplexMatrix parse_matrix(const json& node, const std::string& where) {
  const Index n = as_dim(member(node, "dim", where), where + ".dim");
  const json& entries = member(node, "entries", where);
  if (!entries.is_array()) fail(where + ".entries", "expected an array");
  if (static_cast<Index>(entries.size()) != n * n) {
    fail(where + ".entries", "expected " + std::to_string(n * n) + " entries, found " + std::to_string(entries.size()));
  }
  ComplexMatrix m(n, n);
  for (Index k = 0; k < n * n; ++k) {
    const std::string at = where + ".entries[" + std::to_string(k) + "]";
    const json& e = entries.at(static_cast<std::size_t>(k));
    if (!e.is_array() || e.size() != 2) fail(at, "expected [re, im]");
    m(k / n, k % n) = Complex(as_real(e[0], at), as_real(e[1], at));
  }
  return m;
}

json matrix_to_json(const ComplexMatrix& m) {
  json entries = json::array();
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) entries.push_back({m(i, j).real(), m(i, j).imag()});
  return {{"dim", m.rows()}, {"entries", std::move(entries)}};
}

InputDocument parse_input(const json& doc, const std::string& source) {
  const std::string root = source;
  if (!doc.is_object()) fail(root, "top level must be an object");
  const json& version = member(doc, "schema_version", root);
  if (!version.is_number_integer() || version.get<long long>() != kSchemaVersion) {
    fail(root + ": schema_version", "unsupported schema version (expected " + std::to_string(kSchemaVersion) + ")");
  }
  InputDocument out;
  if (doc.contains("hbar")) {
    out.hbar = as_real(doc.at("hbar"), root + ": hbar");
    if (*out.hbar <= 0.0) fail(root + ": hbar", "must be positive");
  }
  const json& instances = member(doc, "instances", root);
  if (!instances.is_array() || instances.empty()) fail(root + ": instances", "expected a nonempty array");

  for (std::size_t k = 0; k < instances.size(); ++k) {
    const json& node = instances[k];
    const std::string where = root + ": instances[" + std::to_string(k) + "]";
    const std::string id = located(root, [&] { return instance_id(node, k); });
    const json& kind_node = member(node, "kind", where);
    if (!kind_node.is_string()) fail(where + ".kind", "expected a string");
    const std::string kind = kind_node.get<std::string>();

    if (kind == "ensemble") {
      const json& probs = member(node, "probabilities", where);
      const json& states = member(node, "states", where);
      if (!probs.is_array() || !states.is_array() || probs.size() != states.size() || probs.empty()) {
        fail(where, "probabilities and states must be nonempty arrays of equal length");
      }
      std::vector<double> p;
      std::vector<DensityMatrix> rho;
      for (std::size_t x = 0; x < probs.size(); ++x) {
        p.push_back(as_real(probs[x], where + ".probabilities[" + std::to_string(x) + "]"));
        const std::string sw = where + ".states[" + std::to_string(x) + "]";
        const ComplexMatrix m = parse_matrix(states[x], sw);
        rho.push_back(located(sw, [&] { return DensityMatrix(m); }));
      }
      Ensemble e = located(where, [&] { return Ensemble(p, rho); });
      std::optional<HermitianOperator> h;
      if (node.contains("hamiltonian")) {
        const std::string hw = where + ".hamiltonian";
        const ComplexMatrix m = parse_matrix(node.at("hamiltonian"), hw);
        h = located(hw, [&] { return HermitianOperator(m); });
        if (h->dim() != e.encoding_dim() * e.size()) {
          fail(hw, "dimension " + std::to_string(h->dim()) + " does not match encoding (" +
                       std::to_string(e.encoding_dim()) + ") x ancilla (" + std::to_string(e.size()) + ")");
        }
      }
      out.ensembles.push_back({id, std::move(e), std::move(h)});
    } else if (kind == "chsh") {
      const Index da = as_dim(member(node, "dim_a", where), where + ".dim_a");
      const Index db = as_dim(member(node, "dim_b", where), where + ".dim_b");
      const std::string sw = where + ".shared_state";
      const ComplexMatrix sm = parse_matrix(member(node, "shared_state", where), sw);
      DensityMatrix shared = located(sw, [&] { return DensityMatrix(sm); });
      const json& povms = member(node, "alice_povms", where);
      if (!povms.is_array() || povms.size() != 2) fail(where + ".alice_povms", "expected [[A_0|0, A_1|0], [A_0|1, A_1|1]]");
      auto element = [&](std::size_t y, std::size_t a) {
        const std::string aw = where + ".alice_povms[" + std::to_string(y) + "][" + std::to_string(a) + "]";
        if (!povms[y].is_array() || povms[y].size() != 2) fail(aw, "expected two POVM elements per question");
        const ComplexMatrix m = parse_matrix(povms[y][a], aw);
        return located(aw, [&] { return HermitianOperator(m); });
      };
      AlicePovms alice{std::array<HermitianOperator, 2>{element(0, 0), element(0, 1)},
                       std::array<HermitianOperator, 2>{element(1, 0), element(1, 1)}};
      auto bob = [&](const json& m, const std::string& bw) {
        const ComplexMatrix mm = parse_matrix(m, bw);
        return located(bw, [&] { return HermitianOperator(mm); });
      };
      std::array<HermitianOperator, 2> hs{HermitianOperator::zero(2 * db), HermitianOperator::zero(2 * db)};
      if (node.contains("bob_hamiltonians")) {
        const json& list = node.at("bob_hamiltonians");
        if (!list.is_array() || list.size() != 2) fail(where + ".bob_hamiltonians", "expected two matrices");
        hs = {bob(list[0], where + ".bob_hamiltonians[0]"), bob(list[1], where + ".bob_hamiltonians[1]")};
      } else {
        const HermitianOperator h = bob(member(node, "bob_hamiltonian", where), where + ".bob_hamiltonian");
        hs = {h, h};
      }
      ChshStrategy s = located(where, [&] { return ChshStrategy(shared, da, db, alice, hs, 0.0); });
      out.strategies.push_back({id, std::move(s)});
    } else {
      fail(where + ".kind", "unknown kind '" + kind + "' (expected 'ensemble' or 'chsh')");
    }
  }
  return out;
}

InputDocument load_input(const std::string& path) { return parse_input(read_json(path), path); }

std::vector<std::string> validate_document(const std::string& path) {
  const json doc = read_json(path);
  std::vector<std::string> issues;
  auto note = [&](const std::string& where, const std::string& what) { issues.push_back(where + ": " + what); };

  // Lenient matrix reader: structural problems are recorded and yield nullopt.
  auto matrix = [&](const json& node, const std::string& where) -> std::optional<ComplexMatrix> {
    try {
      return parse_matrix(node, where);
    } catch (const ValidationError& e) {
      issues.emplace_back(e.what());
      return std::nullopt;
    }
  };
  auto check_hermitian = [&](const ComplexMatrix& m, const std::string& where) {
    Index bi = 0, bj = 0;
    double worst = 0.0;
    for (Index i = 0; i < m.rows(); ++i)
      for (Index j = 0; j < m.cols(); ++j) {
        const double d = std::abs(m(i, j) - std::conj(m(j, i)));
        if (d > worst) {
          worst = d;
          bi = i;
          bj = j;
        }
      }
    if (worst > kHermiticityTolerance) {
      std::ostringstream os;
      os << "not Hermitian at entry " << format_pos(bi, bj) << " (|M_ij - conj(M_ji)| = " << worst << ")";
      note(where, os.str());
      return false;
    }
    return true;
  };
  auto min_eigenvalue = [](const ComplexMatrix& m) {
    return HermitianOperator(ComplexMatrix(0.5 * (m + m.adjoint()))).min_eigenvalue();
  };
  auto check_state = [&](const ComplexMatrix& m, const std::string& where) {
    if (!check_hermitian(m, where)) return;
    const double tr = m.trace().real();
    if (std::abs(tr - 1.0) > kTraceTolerance) {
      std::ostringstream os;
      os << "trace " << tr << " != 1";
      note(where, os.str());
    }
    const double lo = min_eigenvalue(m);
    if (lo < -kPsdFloor) {
      std::ostringstream os;
      os << "not PSD (min eigenvalue " << lo << ")";
      note(where, os.str());
    }
  };
  auto check_hamiltonian = [&](const ComplexMatrix& m, const std::string& where) {
    if (!check_hermitian(m, where)) return;
    const double lo = min_eigenvalue(m);
    if (lo < -1e-9) {
      std::ostringstream os;
      os << "Hamiltonian not PSD (min eigenvalue " << lo << ")";
      note(where, os.str());
    }
  };

  if (!doc.is_object()) return {path + ": top level must be an object"};
  if (!doc.contains("schema_version") || !doc["schema_version"].is_number_integer() ||
      doc["schema_version"].get<long long>() != kSchemaVersion) {
    note("schema_version", "missing or unsupported (expected " + std::to_string(kSchemaVersion) + ")");
  }
  if (doc.contains("hbar") && (!doc["hbar"].is_number() || !(doc["hbar"].get<double>() > 0.0))) {
    note("hbar", "must be a positive number");
  }
  if (!doc.contains("instances") || !doc["instances"].is_array() || doc["instances"].empty()) {
    note("instances", "expected a nonempty array");
    return issues;
  }
  const json& instances = doc["instances"];
  for (std::size_t k = 0; k < instances.size(); ++k) {
    const json& node = instances[k];
    const std::string where = "instances[" + std::to_string(k) + "]";
    if (!node.is_object()) {
      note(where, "expected an object");
      continue;
    }
    try {
      instance_id(node, k);
    } catch (const ValidationError& e) {
      issues.emplace_back(e.what());
    }
    const std::string kind = node.contains("kind") && node["kind"].is_string() ? node["kind"].get<std::string>() : "";
    if (kind == "ensemble") {
      if (!node.contains("probabilities") || !node["probabilities"].is_array() || !node.contains("states") ||
          !node["states"].is_array()) {
        note(where, "needs 'probabilities' and 'states' arrays");
        continue;
      }
      const json& probs = node["probabilities"];
      const json& states = node["states"];
      if (probs.size() != states.size()) note(where, "probabilities and states differ in length");
      double sum = 0.0;
      for (std::size_t x = 0; x < probs.size(); ++x) {
        const std::string pw = where + ".probabilities[" + std::to_string(x) + "]";
        if (!probs[x].is_number()) {
          note(pw, "expected a number");
          continue;
        }
        const double p = probs[x].get<double>();
        if (p < -kProbabilityTolerance || p > 1.0 + kProbabilityTolerance) note(pw, "outside [0, 1]");
        sum += p;
      }
      if (std::abs(sum - 1.0) > kProbabilityTolerance) {
        std::ostringstream os;
        os << "probabilities sum to " << sum << ", not 1";
        note(where + ".probabilities", os.str());
      }
      Index d = -1;
      for (std::size_t x = 0; x < states.size(); ++x) {
        const std::string sw = where + ".states[" + std::to_string(x) + "]";
        if (auto m = matrix(states[x], sw)) {
          if (d < 0) d = m->rows();
          if (m->rows() != d) note(sw, "dimension differs from states[0]");
          check_state(*m, sw);
        }
      }
      if (node.contains("hamiltonian")) {
        const std::string hw = where + ".hamiltonian";
        if (auto m = matrix(node["hamiltonian"], hw)) {
          const Index expect = d * static_cast<Index>(states.size());
          if (d > 0 && m->rows() != expect) {
            note(hw, "dimension " + std::to_string(m->rows()) + " != encoding x ancilla = " + std::to_string(expect));
          }
          check_hamiltonian(*m, hw);
        }
      }
    } else if (kind == "chsh") {
      try {
        parse_input(json{{"schema_version", kSchemaVersion}, {"instances", json::array({node})}}, "");
      } catch (const ValidationError& e) {
        // Re-anchor the single-instance path onto this instance.
        std::string msg = e.what();
        const std::string anchor = ": instances[0]";
        if (msg.rfind(anchor, 0) == 0) msg = where + msg.substr(anchor.size());
        issues.push_back(std::move(msg));
      }
    } else {
      note(where + ".kind", "missing or unknown (expected 'ensemble' or 'chsh')");
    }
  }
  return issues;
}

}  // namespace qspeed::cli
