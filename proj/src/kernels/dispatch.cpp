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

#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "risbf/kernels.hpp"

namespace risbf::kernels {

const char* IsaName(Isa isa) { return isa == Isa::kAvx2 ? "avx2" : "scalar"; }

bool Avx2Available() {
#if defined(RISBF_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported =
      __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported;
#else
  return false;
#endif
}

Isa ActiveIsa() {
  static const Isa isa = [] {
    if (std::getenv("RISBF_FORCE_SCALAR") != nullptr) return Isa::kScalar;
    return Avx2Available() ? Isa::kAvx2 : Isa::kScalar;
  }();
  return isa;
}

HermitianFormFn HermitianFormKernel(Isa isa) {
#if defined(RISBF_HAVE_AVX2_TU)
  if (isa == Isa::kAvx2 && Avx2Available()) return &avx2::HermitianForm;
#endif
  (void)isa;
  return &scalar::HermitianForm;
}

SurrogateFn SurrogateKernel(Isa isa) {
#if defined(RISBF_HAVE_AVX2_TU)
  if (isa == Isa::kAvx2 && Avx2Available()) return &avx2::Surrogate;
#endif
  (void)isa;
  return &scalar::Surrogate;
}

RVec HermitianForms(const CMat& a, const CMat& samples, Isa isa) {
  if (a.rows() != a.cols() || a.rows() != samples.rows()) {
    throw std::invalid_argument("form matrix and samples disagree in size");
  }
  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const RowMajor a_re = a.real();
  const RowMajor a_im = a.imag();
  const RowMajor x_re = samples.real();
  const RowMajor x_im = samples.imag();
  RVec out(samples.cols());
  HermitianFormKernel(isa)(a_re.data(), a_im.data(), static_cast<int>(a.rows()),
                           x_re.data(), x_im.data(),
                           static_cast<int>(samples.cols()), out.data());
  return out;
}

RVec SurrogateValues(const Mat3& r, const Mat3& s, double quartic,
                     const RMat& points, Isa isa) {
  if (points.rows() != 3) throw std::invalid_argument("points must be 3 x K");
  using RowMajor3 = Eigen::Matrix<double, 3, 3, Eigen::RowMajor>;
  const RowMajor3 rr = r;
  const RowMajor3 ss = s;
  const RVec dx = points.row(0).transpose();
  const RVec dy = points.row(1).transpose();
  const RVec dz = points.row(2).transpose();
  RVec out(points.cols());
  SurrogateKernel(isa)(rr.data(), ss.data(), quartic, dx.data(), dy.data(),
                       dz.data(), static_cast<int>(points.cols()), out.data());
  return out;
}

}  // namespace risbf::kernels
