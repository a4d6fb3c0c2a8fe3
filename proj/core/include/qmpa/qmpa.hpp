// Copyright 2026 The qmpa authors
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

#ifndef QMPA_QMPA_HPP_
#define QMPA_QMPA_HPP_

#include "qmpa/asymptotics.hpp"
#include "qmpa/duality.hpp"
#include "qmpa/gibbs.hpp"
#include "qmpa/model.hpp"
#include "qmpa/monotone.hpp"
#include "qmpa/operator_algebra.hpp"
#include "qmpa/random.hpp"
#include "qmpa/spectral.hpp"
#include "qmpa/structure.hpp"
#include "qmpa/superoperator.hpp"
#include "qmpa/tstate.hpp"
#include "qmpa/types.hpp"

#endif  // QMPA_QMPA_HPP_
