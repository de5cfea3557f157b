// Copyright 2026 The mwu_lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MWU_LAB_MWU_LAB_HPP
#define MWU_LAB_MWU_LAB_HPP

#include "mwu_lab/acceptance.hpp"
#include "mwu_lab/analysis.hpp"
#include "mwu_lab/baum_eagon.hpp"
#include "mwu_lab/builtin_games.hpp"
#include "mwu_lab/cli_support.hpp"
#include "mwu_lab/dynamics.hpp"
#include "mwu_lab/error.hpp"
#include "mwu_lab/game.hpp"
#include "mwu_lab/game_io.hpp"
#include "mwu_lab/onedim.hpp"
#include "mwu_lab/polynomial.hpp"
#include "mwu_lab/report_io.hpp"

#endif  // MWU_LAB_MWU_LAB_HPP
