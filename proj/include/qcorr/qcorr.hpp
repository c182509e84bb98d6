// Copyright 2026 The qcorr Authors
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

#ifndef QCORR_QCORR_HPP
#define QCORR_QCORR_HPP

#include "qcorr/correlations.hpp"
#include "qcorr/errors.hpp"
#include "qcorr/expsim.hpp"
#include "qcorr/linalg.hpp"
#include "qcorr/measurement.hpp"
#include "qcorr/oracle.hpp"
#include "qcorr/states.hpp"
#include "qcorr/tables.hpp"
#include "qcorr/tolerances.hpp"
#include "qcorr/verify.hpp"

#endif  // QCORR_QCORR_HPP
