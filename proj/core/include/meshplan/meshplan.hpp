// Copyright 2026 The meshplan Authors
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

#ifndef MESHPLAN_MESHPLAN_HPP
#define MESHPLAN_MESHPLAN_HPP

#include "meshplan/archive.hpp"
#include "meshplan/constraints.hpp"
#include "meshplan/construct.hpp"
#include "meshplan/errors.hpp"
#include "meshplan/flow.hpp"
#include "meshplan/instance.hpp"
#include "meshplan/mopso.hpp"
#include "meshplan/objectives.hpp"
#include "meshplan/oracle.hpp"
#include "meshplan/rng.hpp"
#include "meshplan/solution.hpp"

#endif  // MESHPLAN_MESHPLAN_HPP
