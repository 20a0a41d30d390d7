// Copyright 2026 The seqcfr Authors.
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

#pragma once

#include <ostream>
#include <span>

#include "json.hpp"
#include "seqcfr/tfsdp.hpp"

namespace seqcfr {

// Behavioral probability of every non-empty sequence: x[(j,a)] / x[p_j],
// uniform where the parent sequence has zero mass.
inline std::vector<double> BehavioralFromSequenceForm(const Tfsdp& t, std::span<const double> x) {
  std::vector<double> b(t.num_nonempty_sequences());
  for (int j = 0; j < t.num_decisions(); ++j) {
    const double parent = x[t.parent_sequence[j]];
    for (int a = 0; a < t.num_actions[j]; ++a) {
      const int s = t.sequence(j, a);
      b[s - 1] = parent > 0.0 ? x[s] / parent : 1.0 / t.num_actions[j];
    }
  }
  return b;
}

// One JSON object per line: {"player":p,"sequence":"<infoset>/<action>",
// "probability":b}, player 1 first, sequences in index order.
inline void WriteStrategy(std::ostream& os, const Tfsdp& t1, std::span<const double> x1,
                          const Tfsdp& t2, std::span<const double> x2) {
  using Json = nlohmann::ordered_json;
  for (const auto& [t, x] : {std::pair{&t1, x1}, std::pair{&t2, x2}}) {
    const auto b = BehavioralFromSequenceForm(*t, x);
    for (int s = 1; s < t->num_sequences(); ++s) {
      os << Json{{"player", t->player}, {"sequence", t->sequence_label[s]},
                 {"probability", b[s - 1]}}
                .dump()
         << '\n';
    }
  }
}

}  // namespace seqcfr
