// Copyright 2026 The blfq-vqe Authors
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

#include "blfq/basis.hpp"
#include "blfq/errors.hpp"
#include "blfq/hamiltonian.hpp"
#include "blfq/observable.hpp"
#include "blfq/observables.hpp"
#include "blfq/optimize.hpp"
#include "blfq/pauli.hpp"
#include "blfq/quadrature.hpp"
#include "blfq/simulator.hpp"
#include "blfq/talmi_moshinsky.hpp"
#include "blfq/vqe.hpp"
