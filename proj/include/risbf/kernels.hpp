// Copyright 2026 The risbf Authors
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

#ifndef RISBF_KERNELS_HPP_
#define RISBF_KERNELS_HPP_

// Batched evaluation kernels with a scalar reference implementation and an
// AVX2/FMA variant chosen once at runtime. Setting RISBF_FORCE_SCALAR in the
// environment pins the scalar path.

#include "risbf/kernel_primitives.hpp"
#include "risbf/types.hpp"

namespace risbf::kernels {

enum class Isa { kScalar, kAvx2 };

const char* IsaName(Isa isa);
/// Variant used by the dispatching entry points below.
Isa ActiveIsa();
/// Whether the AVX2 variant was compiled in and the CPU supports it.
bool Avx2Available();

HermitianFormFn HermitianFormKernel(Isa isa);
SurrogateFn SurrogateKernel(Isa isa);

/// Re(x_b^H A x_b) for every column x_b of `samples`.
RVec HermitianForms(const CMat& a, const CMat& samples, Isa isa = ActiveIsa());

/// d'Rd - quartic (d'Sd)^2 for every column d of the 3 x K `points`.
RVec SurrogateValues(const Mat3& r, const Mat3& s, double quartic,
                     const RMat& points, Isa isa = ActiveIsa());

}  // namespace risbf::kernels

#endif  // RISBF_KERNELS_HPP_
