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

#ifndef RISBF_KERNEL_PRIMITIVES_HPP_
#define RISBF_KERNEL_PRIMITIVES_HPP_

// Plain-array kernel entry points. This header stays free of Eigen so the
// AVX2 translation unit compiles no shared inline code.

namespace risbf::kernels {

// Raw layouts: `a_re`/`a_im` are row-major n x n; samples are element-major,
// so element i of sample b lives at x[i * batch + b].
using HermitianFormFn = void (*)(const double* a_re, const double* a_im, int n,
                                 const double* x_re, const double* x_im,
                                 int batch, double* out);
// r and s are row-major 3 x 3; out[k] = d'Rd - quartic (d'Sd)^2.
using SurrogateFn = void (*)(const double* r, const double* s, double quartic,
                             const double* dx, const double* dy,
                             const double* dz, int count, double* out);

namespace scalar {
void HermitianForm(const double* a_re, const double* a_im, int n,
                   const double* x_re, const double* x_im, int batch,
                   double* out);
void Surrogate(const double* r, const double* s, double quartic,
               const double* dx, const double* dy, const double* dz, int count,
               double* out);
}  // namespace scalar

namespace avx2 {
void HermitianForm(const double* a_re, const double* a_im, int n,
                   const double* x_re, const double* x_im, int batch,
                   double* out);
void Surrogate(const double* r, const double* s, double quartic,
               const double* dx, const double* dy, const double* dz, int count,
               double* out);
}  // namespace avx2

}  // namespace risbf::kernels

#endif  // RISBF_KERNEL_PRIMITIVES_HPP_
