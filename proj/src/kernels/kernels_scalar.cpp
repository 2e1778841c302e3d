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

#include "risbf/kernel_primitives.hpp"

namespace risbf::kernels::scalar {

void HermitianForm(const double* a_re, const double* a_im, int n,
                   const double* x_re, const double* x_im, int batch,
                   double* out) {
  for (int b = 0; b < batch; ++b) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      double yr = 0.0;
      double yi = 0.0;
      for (int j = 0; j < n; ++j) {
        const double ar = a_re[i * n + j];
        const double ai = a_im[i * n + j];
        const double xr = x_re[j * batch + b];
        const double xi = x_im[j * batch + b];
        yr += ar * xr - ai * xi;
        yi += ar * xi + ai * xr;
      }
      acc += x_re[i * batch + b] * yr + x_im[i * batch + b] * yi;
    }
    out[b] = acc;
  }
}

void Surrogate(const double* r, const double* s, double quartic,
               const double* dx, const double* dy, const double* dz, int count,
               double* out) {
  for (int k = 0; k < count; ++k) {
    const double v[3] = {dx[k], dy[k], dz[k]};
    double qr = 0.0;
    double qs = 0.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        qr += v[i] * r[3 * i + j] * v[j];
        qs += v[i] * s[3 * i + j] * v[j];
      }
    }
    out[k] = qr - quartic * qs * qs;
  }
}

}  // namespace risbf::kernels::scalar
