// Copyright 2026 The mpx Authors. All Rights Reserved.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Writes the synthetic symptom CSV used by the end-to-end fixture tests.
//
// Rows mimic the public case line-list: an id, a free-text "Symptoms" cell
// with mixed separators, spacing and capitalization, and a "Status" column.
// About two thirds of the labelled rows are confirmed cases. A few rows carry
// statuses that ingestion drops. Output depends only on --seed.

#include <array>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mpx/csv.hpp"
#include "mpx/random.hpp"

namespace {

struct SymptomProfile {
  const char* name;
  double p_confirmed;
  double p_discarded;
};

// Confirmed cases lean on skin and lymph findings, discarded ones on
// respiratory and nonspecific complaints.
constexpr std::array<SymptomProfile, 45> kProfiles{{
    {"rash", 0.66, 0.08},
    {"skin lesions", 0.32, 0.04},
    {"headache", 0.28, 0.30},
    {"ulcerative lesions", 0.12, 0.02},
    {"oral and genital ulcers", 0.10, 0.02},
    {"fever", 0.55, 0.35},
    {"perianal papules", 0.06, 0.01},
    {"inguinal adenopathy", 0.10, 0.02},
    {"genital ulcer lesions", 0.12, 0.01},
    {"pustules", 0.20, 0.02},
    {"cough", 0.05, 0.40},
    {"blisters", 0.14, 0.04},
    {"erythema with vesicles and papules", 0.05, 0.01},
    {"difficulty breathing", 0.02, 0.15},
    {"severe anemia", 0.02, 0.05},
    {"fatigue", 0.18, 0.30},
    {"muscle pain", 0.15, 0.20},
    {"dysphagia", 0.04, 0.06},
    {"decreased physical strength", 0.03, 0.06},
    {"outbreak on the skin", 0.06, 0.02},
    {"hands", 0.05, 0.02},
    {"chest", 0.04, 0.06},
    {"chills", 0.12, 0.15},
    {"general weakness", 0.06, 0.12},
    {"general discomfort", 0.05, 0.10},
    {"adenomegaly", 0.07, 0.02},
    {"myalgia", 0.14, 0.15},
    {"itch", 0.08, 0.06},
    {"papules", 0.14, 0.03},
    {"swollen lymph nodes", 0.40, 0.05},
    {"mild symptoms", 0.04, 0.08},
    {"sore throat", 0.06, 0.38},
    {"malaise", 0.08, 0.10},
    {"asthenia", 0.07, 0.08},
    {"characteristic symptoms of monkeypox", 0.08, 0.01},
    {"diarrhea", 0.03, 0.22},
    {"pain urinating", 0.04, 0.02},
    {"ulcers", 0.12, 0.03},
    {"loss of appetite", 0.04, 0.10},
    {"vesicles", 0.15, 0.02},
    {"lymphadenopathy", 0.25, 0.05},
    {"myalgias", 0.05, 0.05},
    {"postules", 0.04, 0.01},
    {"encephalitis", 0.01, 0.02},
    {"symptoms compatible with monkeypox", 0.07, 0.01},
}};

std::string style(std::string token, mpx::Rng& rng) {
  switch (rng.uniform_index(6)) {
    case 0: token[0] = static_cast<char>(token[0] - 'a' + 'A'); break;
    case 1: token = "  " + token; break;
    case 2: token += " "; break;
    default: break;
  }
  return token;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate the synthetic symptom fixture CSV"};
  std::uint64_t seed = 2022;
  int rows = 210;
  std::string out_path;
  app.add_option("--seed", seed, "generator seed");
  app.add_option("--rows", rows, "number of rows");
  app.add_option("--out", out_path, "output CSV path")->required();
  CLI11_PARSE(app, argc, argv);

  mpx::Rng rng(seed);
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) {
    std::cerr << "cannot open " << out_path << "\n";
    return 1;
  }
  out << mpx::csv::format_row({"ID", "Status", "Country", "Symptoms"}) << "\n";
  const std::array<const char*, 4> countries{"Spain", "Germany", "Brazil", "Peru"};
  for (int i = 0; i < rows; ++i) {
    const double roll = rng.uniform01();
    std::string status;
    if (roll < 0.05) status = "suspected";
    else if (roll < 0.70) status = "confirmed";
    else status = "discarded";
    const bool confirmed = status == "confirmed";

    std::vector<std::string> tokens;
    for (const SymptomProfile& p : kProfiles) {
      const double prob = confirmed ? p.p_confirmed : p.p_discarded;
      if (rng.uniform01() < prob) tokens.push_back(style(p.name, rng));
    }
    std::string symptoms;
    for (std::size_t t = 0; t < tokens.size(); ++t) {
      if (t) symptoms += rng.uniform_index(3) == 0 ? "; " : ", ";
      symptoms += tokens[t];
    }
    const std::string id = "N" + std::to_string(1000 + i);
    out << mpx::csv::format_row({id, status, countries[rng.uniform_index(countries.size())], symptoms})
        << "\n";
  }
  return 0;
}
