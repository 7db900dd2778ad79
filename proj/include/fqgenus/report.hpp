// Copyright 2026 the fqgenus authors
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

#ifndef FQGENUS_REPORT_HPP
#define FQGENUS_REPORT_HPP

#include <json.hpp>

#include "fqgenus/kummer.hpp"
#include "fqgenus/signs.hpp"

namespace fqgenus {

using nlohmann::json;

// Exit codes: 0 ok, 1 parse error, 2 unsupported shape or rejected
// precondition (including interval-only results), 3 invariant violation.
inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 1;
inline constexpr int kExitUnsupported = 2;
inline constexpr int kExitInvariant = 3;

struct RunConfig {
  std::uint64_t q = 5;
  std::string field_modulus;  // optional, for nonprime q (polynomial in g)

  std::string n_text;                    // modulus polynomial
  std::vector<std::string> chi_specs;    // dual exponent vectors, comma separated
  std::vector<std::string> radical_specs;  // "m:radicand" character specs
  bool full_dual = false;

  int m = 2;
  std::string gamma_text = "1";
  std::string d_text;

  // oracle bounds
  std::uint64_t max_phi = 200;
  std::vector<std::uint64_t> oracle_qs = {2, 3, 5};
  int samples_per_modulus = 3;
  unsigned long duality_max_order = 256;
  bool fault_inject = false;

  std::uint64_t seed = 12345;
  int jobs = 1;

  FqFieldPtr make_field() const;
};

struct Report {
  json payload;
  int exit_code = kExitOk;
};

json field_to_json(const CyclotomicField& e);
json character_to_json(const DirichletCharacter& chi);
json ramification_to_json(const RamificationReport& rep);
json genus_result_to_json(const GenusResult& res);

Report cmd_unitgroup(const RunConfig& cfg);
Report cmd_char(const RunConfig& cfg);
Report cmd_extgenus(const RunConfig& cfg);
Report cmd_kummer(const RunConfig& cfg);
Report cmd_oracle(const RunConfig& cfg);
Report cmd_paper_examples(const RunConfig& cfg);

/// Wraps command execution: exceptions become exit codes, the payload is
/// checked to round-trip through the serializer.
Report run_command(const std::string& name, const RunConfig& cfg);

// ---------------------------------------------------------------------------
// Brute-force oracle sweeps (shared between the oracle command and the
// acceptance suite)

struct SweepStats {
  std::uint64_t instances = 0;
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  std::string first_failure;
  double elapsed_seconds = 0;

  void merge(const SweepStats& o);
  json to_json() const;
};

/// All monic moduli (degree >= 1) with euler phi <= max_phi, canonical order.
std::vector<Poly> moduli_with_phi_up_to(const FqFieldPtr& f, std::uint64_t max_phi);

/// Criterion: invariant factors from SNF match brute-force enumeration and
/// encode/decode round-trips on every unit.
SweepStats sweep_unit_group_structure(const std::vector<std::uint64_t>& qs,
                                      std::uint64_t max_phi, int jobs);

/// Criterion: prod_P chi_P = chi pointwise on all units, for every character
/// of every swept group; also exercises the CRT element decomposition.
SweepStats sweep_character_components(const std::vector<std::uint64_t>& qs,
                                      std::uint64_t max_phi, int jobs, bool fault_inject = false);

/// Criterion: extended genus maximality and e_P preservation for all cyclic
/// X plus seeded random non-cyclic X; includes idempotence, containment and
/// the genus e_infinity checks.
SweepStats sweep_extended_genus(const std::vector<std::uint64_t>& qs, std::uint64_t max_phi,
                                std::uint64_t seed, int samples_per_modulus, int jobs);

/// Ann(Ann(S)) = S and |S| |Ann(S)| = |G| over every subgroup of every
/// abelian group of order <= max_order.
SweepStats sweep_duality(unsigned long max_order, int jobs);

/// Sign layer checks: multiplicativity, the local Kummer homomorphism and
/// norm compatibility, and the Sig divisibility law.
SweepStats sweep_signs(std::uint64_t seed);

}  // namespace fqgenus

#endif  // FQGENUS_REPORT_HPP
