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

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "fqgenus/report.hpp"

using namespace fqgenus;

int main(int argc, char** argv) {
  CLI::App app{"genus and extended genus fields of abelian extensions of F_q(T)"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string json_path;
  std::string qs_text = "2,3,5";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--q", cfg.q, "field size q = p^s (prime power)");
    sub->add_option("--field-modulus", cfg.field_modulus,
                    "irreducible modulus for nonprime q, as a polynomial in g");
    sub->add_option("--json", json_path, "also write the report to this path");
    sub->add_option("--seed", cfg.seed, "seed for randomized sweeps");
    sub->add_option("--jobs", cfg.jobs, "parallel jobs for oracle sweeps");
  };

  auto* unitgroup = app.add_subcommand("unitgroup", "structure of (F_q[T]/N)^*");
  unitgroup->add_option("--N", cfg.n_text, "modulus polynomial")->required();
  add_common(unitgroup);

  auto* chr = app.add_subcommand("char", "inspect a Dirichlet character");
  chr->add_option("--N", cfg.n_text, "modulus polynomial");
  chr->add_option("--chi", cfg.chi_specs, "dual exponent vector, comma separated");
  chr->add_option("--radical", cfg.radical_specs,
                  "character of a radical, as m:radicand (e.g. 4:(T+1)/T)");
  add_common(chr);

  auto* extgenus = app.add_subcommand("extgenus", "E, genus and extended genus of a cyclotomic field");
  extgenus->add_option("--N", cfg.n_text, "modulus polynomial")->required();
  extgenus->add_option("--chi", cfg.chi_specs, "character generator (repeatable)");
  extgenus->add_option("--radical", cfg.radical_specs, "radical character generator (repeatable)");
  extgenus->add_flag("--full-dual", cfg.full_dual, "use the full dual group");
  add_common(extgenus);

  auto* kummer = app.add_subcommand("kummer", "genus pipeline for K = k((gamma D)^(1/m))");
  kummer->add_option("--m", cfg.m, "radical exponent (l or l^2, m | q-1)")->required();
  kummer->add_option("--gamma", cfg.gamma_text, "unit gamma (field literal)")->required();
  kummer->add_option("--D", cfg.d_text, "monic radicand polynomial")->required();
  add_common(kummer);

  auto* oracle = app.add_subcommand("oracle", "run the exhaustive brute-force sweeps");
  oracle->add_option("--max-phi", cfg.max_phi, "bound on euler phi of swept moduli");
  oracle->add_option("--qs", qs_text, "comma separated field sizes to sweep");
  oracle->add_option("--samples", cfg.samples_per_modulus,
                     "random non-cyclic character groups per modulus");
  oracle->add_option("--duality-max", cfg.duality_max_order,
                     "largest abstract group order in the duality sweep");
  oracle->add_flag("--fault-inject", cfg.fault_inject,
                   "corrupt one character to demonstrate counterexample reporting");
  add_common(oracle);

  auto* examples = app.add_subcommand("paper-examples",
                                      "run the two built-in worked instances and diff them "
                                      "against the expected descriptors");
  examples->add_option("--gamma", cfg.gamma_text,
                       "override the sign constant of the first instance");
  add_common(examples);

  cfg.gamma_text = "";

  CLI11_PARSE(app, argc, argv);

  // parse the oracle qs list
  cfg.oracle_qs.clear();
  std::string cur;
  for (char ch : qs_text + ",") {
    if (ch == ',') {
      if (!cur.empty()) cfg.oracle_qs.push_back(std::stoull(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (cfg.gamma_text.empty() && kummer->parsed()) cfg.gamma_text = "1";

  std::string name = app.get_subcommands().front()->get_name();
  Report rep = run_command(name, cfg);

  std::cout << rep.payload.dump(2) << std::endl;
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    out << rep.payload.dump(2) << std::endl;
  }
  return rep.exit_code;
}
