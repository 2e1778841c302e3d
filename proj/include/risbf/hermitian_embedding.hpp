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

#ifndef RISBF_HERMITIAN_EMBEDDING_HPP_
#define RISBF_HERMITIAN_EMBEDDING_HPP_

#include "risbf/types.hpp"

namespace risbf {

/// Real symmetric image [[Re A, -Im A], [Im A, Re A]] of a Hermitian matrix.
/// trace(Embed(A) Embed(B)) == 2 * Re trace(A B). Throws std::invalid_argument
/// when A deviates from Hermitian by more than 1e-10 (relative to max |a_ij|).
RMat EmbedHermitian(const CMat& a);

/// Inverse of EmbedHermitian. Averages the two copies of each part, which
/// projects an arbitrary symmetric matrix onto the embedded subspace.
CMat ExtractHermitian(const RMat& x);

}  // namespace risbf

#endif  // RISBF_HERMITIAN_EMBEDDING_HPP_
