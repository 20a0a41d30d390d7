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

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace seqcfr {

enum class Variant { kCfr, kCfrPlus, kDcfr, kPcfr, kPcfrPlus };
enum class UpdateMode { kSimultaneous, kAlternating };

inline const char* VariantName(Variant v) {
  switch (v) {
    case Variant::kCfr:
      return "cfr";
    case Variant::kCfrPlus:
      return "cfr+";
    case Variant::kDcfr:
      return "dcfr";
    case Variant::kPcfr:
      return "pcfr";
    case Variant::kPcfrPlus:
      return "pcfr+";
  }
  return "?";
}

inline std::optional<Variant> ParseVariant(std::string_view s) {
  for (Variant v : {Variant::kCfr, Variant::kCfrPlus, Variant::kDcfr, Variant::kPcfr,
                    Variant::kPcfrPlus}) {
    if (s == VariantName(v)) return v;
  }
  return std::nullopt;
}

inline const char* UpdateModeName(UpdateMode m) {
  return m == UpdateMode::kSimultaneous ? "sim" : "alt";
}

inline bool IsPredictive(Variant v) { return v == Variant::kPcfr || v == Variant::kPcfrPlus; }
inline bool FloorsRegrets(Variant v) { return v == Variant::kCfrPlus || v == Variant::kPcfrPlus; }

struct SolverConfig {
  Variant variant = Variant::kCfr;
  // Discount exponents for DCFR. +inf for alpha keeps positive regrets
  // intact and -inf for beta zeroes negative ones at every iteration.
  double alpha = 1.5;
  double beta = 0.0;
  // Iteration t contributes with weight t^gamma to the average strategy.
  double gamma = 0.0;
  UpdateMode mode = UpdateMode::kSimultaneous;

  // Per-variant defaults: CFR and PCFR average uniformly with simultaneous
  // updates, CFR+ weighs linearly, DCFR(1.5, 0) and PCFR+ quadratically, all
  // three alternating.
  static SolverConfig Defaults(Variant v) {
    SolverConfig c;
    c.variant = v;
    switch (v) {
      case Variant::kCfr:
      case Variant::kPcfr:
        c.gamma = 0.0;
        c.mode = UpdateMode::kSimultaneous;
        break;
      case Variant::kCfrPlus:
        c.gamma = 1.0;
        c.mode = UpdateMode::kAlternating;
        break;
      case Variant::kDcfr:
      case Variant::kPcfrPlus:
        c.gamma = 2.0;
        c.mode = UpdateMode::kAlternating;
        break;
    }
    return c;
  }

  void Validate() const {
    if (std::isnan(alpha) || std::isnan(beta)) throw std::invalid_argument("DCFR exponents must not be NaN");
    if (variant == Variant::kDcfr && (alpha == -std::numeric_limits<double>::infinity() ||
                                      beta == std::numeric_limits<double>::infinity())) {
      throw std::invalid_argument("DCFR exponents: alpha may only be +inf, beta only -inf");
    }
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw std::invalid_argument("gamma must be finite and >= 0");
  }
};

// t^e / (t^e + 1) evaluated as 1 / (1 + t^-e), which cannot overflow. An
// infinite exponent gives the t > 1 limit at every t: 1 for +inf, 0 for -inf.
inline double DiscountFactor(int64_t t, double exponent) {
  if (std::isinf(exponent)) return exponent > 0 ? 1.0 : 0.0;
  return 1.0 / (1.0 + std::pow(static_cast<double>(t), -exponent));
}

// Weight t^gamma of iteration t in the average strategy.
inline double AveragingWeight(int64_t t, double gamma) {
  return gamma == 0.0 ? 1.0 : std::pow(static_cast<double>(t), gamma);
}

}  // namespace seqcfr
