// Copyright 2026 The pstnet Authors
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

#include "pstnet/characters.hpp"
#include "pstnet/dynamics.hpp"
#include "pstnet/errors.hpp"
#include "pstnet/fock.hpp"
#include "pstnet/group.hpp"
#include "pstnet/linalg.hpp"
#include "pstnet/numeric.hpp"
#include "pstnet/pipeline.hpp"
#include "pstnet/plan_io.hpp"
#include "pstnet/scheme.hpp"
#include "pstnet/solver.hpp"
