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

#ifndef QCORR_TOLERANCES_HPP
#define QCORR_TOLERANCES_HPP

namespace qcorr::tol {

inline constexpr double kHermitian = 1e-12;
inline constexpr double kPsd = 1e-10;
inline constexpr double kTrace = 1e-10;
inline constexpr double kEigen = 1e-12;
inline constexpr double kBlochNorm = 1e-10;
inline constexpr double kUnitDirection = 1e-12;
inline constexpr double kZeroProbability = 1e-12;
inline constexpr double kAngleMatch = 1e-9;

}  // namespace qcorr::tol

#endif  // QCORR_TOLERANCES_HPP
