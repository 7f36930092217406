// Copyright 2026 The vcl Authors
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

/// \file
/// Umbrella header.

#pragma once

#include "vcl/equations.hpp"
#include "vcl/finitegroups.hpp"
#include "vcl/hypgeom.hpp"
#include "vcl/integer.hpp"
#include "vcl/oracles.hpp"
#include "vcl/parallel.hpp"
#include "vcl/presentations.hpp"
#include "vcl/quasimorphisms.hpp"
#include "vcl/subgroups.hpp"
#include "vcl/testwords.hpp"
#include "vcl/words.hpp"
