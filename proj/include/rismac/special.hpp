/*
   Copyright 2026 The rismac Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cmath>

namespace rismac {

// Thin wrappers over the C library, which evaluates erfc directly (no
// 1 - erf cancellation) and is accurate to a few ulp over the whole line.

inline double erf(double x) noexcept { return std::erf(x); }

inline double erfc(double x) noexcept { return std::erfc(x); }

}  // namespace rismac
