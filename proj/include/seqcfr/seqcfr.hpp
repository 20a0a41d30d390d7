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

#include "seqcfr/backend.hpp"
#include "seqcfr/bench.hpp"
#include "seqcfr/config.hpp"
#include "seqcfr/errors.hpp"
#include "seqcfr/game.hpp"
#include "seqcfr/game_io.hpp"
#include "seqcfr/games.hpp"
#include "seqcfr/metrics.hpp"
#include "seqcfr/operators.hpp"
#include "seqcfr/oracle.hpp"
#include "seqcfr/solver.hpp"
#include "seqcfr/sparse.hpp"
#include "seqcfr/strategy_io.hpp"
#include "seqcfr/tfsdp.hpp"
