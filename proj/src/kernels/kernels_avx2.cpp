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

#include <immintrin.h>

#include <vector>

#include "risbf/kernel_primitives.hpp"

namespace risbf::kernels::avx2 {

void HermitianForm(const double* a_re, const double* a_im, int n,
                   const double* x_re, const double* x_im, int batch,
                   double* out) {
  const int vec_end = batch - batch % 4;
  for (int b = 0; b < vec_end; b += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (int i = 0; i < n; ++i) {
      __m256d yr = _mm256_setzero_pd();
      __m256d yi = _mm256_setzero_pd();
      for (int j = 0; j < n; ++j) {
        const __m256d ar = _mm256_set1_pd(a_re[i * n + j]);
        const __m256d ai = _mm256_set1_pd(a_im[i * n + j]);
        const __m256d xr = _mm256_loadu_pd(x_re + j * batch + b);
        const __m256d xi = _mm256_loadu_pd(x_im + j * batch + b);
        yr = _mm256_fmadd_pd(ar, xr, yr);
        yr = _mm256_fnmadd_pd(ai, xi, yr);
        yi = _mm256_fmadd_pd(ar, xi, yi);
        yi = _mm256_fmadd_pd(ai, xr, yi);
      }
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(x_re + i * batch + b), yr, acc);
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(x_im + i * batch + b), yi, acc);
    }
    _mm256_storeu_pd(out + b, acc);
  }
  if (vec_end < batch) {
    // Tail samples: compact them into a small batch for the scalar path.
    const int tail = batch - vec_end;
    std::vector<double> xr(static_cast<size_t>(n) * tail);
    std::vector<double> xi(static_cast<size_t>(n) * tail);
    for (int i = 0; i < n; ++i) {
      for (int t = 0; t < tail; ++t) {
        xr[i * tail + t] = x_re[i * batch + vec_end + t];
        xi[i * tail + t] = x_im[i * batch + vec_end + t];
      }
    }
    scalar::HermitianForm(a_re, a_im, n, xr.data(), xi.data(), tail, out + vec_end);
  }
}

void Surrogate(const double* r, const double* s, double quartic,
               const double* dx, const double* dy, const double* dz, int count,
               double* out) {
  const int vec_end = count - count % 4;
  const __m256d c = _mm256_set1_pd(quartic);
  for (int k = 0; k < vec_end; k += 4) {
    const __m256d v[3] = {_mm256_loadu_pd(dx + k), _mm256_loadu_pd(dy + k),
                          _mm256_loadu_pd(dz + k)};
    __m256d qr = _mm256_setzero_pd();
    __m256d qs = _mm256_setzero_pd();
    for (int i = 0; i < 3; ++i) {
      __m256d rr = _mm256_setzero_pd();
      __m256d ss = _mm256_setzero_pd();
      for (int j = 0; j < 3; ++j) {
        rr = _mm256_fmadd_pd(_mm256_set1_pd(r[3 * i + j]), v[j], rr);
        ss = _mm256_fmadd_pd(_mm256_set1_pd(s[3 * i + j]), v[j], ss);
      }
      qr = _mm256_fmadd_pd(v[i], rr, qr);
      qs = _mm256_fmadd_pd(v[i], ss, qs);
    }
    _mm256_storeu_pd(out + k, _mm256_fnmadd_pd(c, _mm256_mul_pd(qs, qs), qr));
  }
  scalar::Surrogate(r, s, quartic, dx + vec_end, dy + vec_end, dz + vec_end,
                    count - vec_end, out + vec_end);
}

}  // namespace risbf::kernels::avx2
