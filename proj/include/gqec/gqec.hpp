// Copyright 2026 The graded-qec Authors
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

#pragma once

#include "gqec/code_search.hpp"
#include "gqec/codes.hpp"
#include "gqec/examples.hpp"
#include "gqec/graded_algebra.hpp"
#include "gqec/noise_sim.hpp"
#include "gqec/operator.hpp"
#include "gqec/operator_space.hpp"
#include "gqec/pauli.hpp"
#include "gqec/simplex.hpp"
#include "gqec/structure.hpp"
#include "gqec/tolerances.hpp"
