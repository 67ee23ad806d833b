// Copyright 2026 The cartesian-topk Authors
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

/** \file cartesian_topk.hpp
 *  \brief Umbrella header.
 */

#pragma once

#include "cartesian_topk/bench.hpp"
#include "cartesian_topk/loh.hpp"
#include "cartesian_topk/pairwise.hpp"
#include "cartesian_topk/score.hpp"
#include "cartesian_topk/select.hpp"
#include "cartesian_topk/selectors.hpp"
#include "cartesian_topk/soft_heap.hpp"
