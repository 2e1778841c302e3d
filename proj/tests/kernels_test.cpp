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

#include "risbf/kernels.hpp"

#include <random>

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace risbf::kernels {
namespace {

RVec ReferenceForms(const CMat& a, const CMat& x) {
  RVec out(x.cols());
  for (Eigen::Index b = 0; b < x.cols(); ++b) out(b) = x.col(b).dot(a * x.col(b)).real();
  return out;
}

TEST(Kernels, ScalarHermitianFormMatchesEigen) {
  std::mt19937_64 rng(1);
  for (int n : {1, 3, 8}) {
    for (int batch : {1, 5, 17}) {
      const CMat a = testing::RandomHermitian(n, rng);
      const CMat x = testing::RandomComplex(n, batch, rng);
      const RVec got = HermitianForms(a, x, Isa::kScalar);
      EXPECT_LT((got - ReferenceForms(a, x)).norm(), 1e-12 * (1 + got.norm()));
    }
  }
}

TEST(Kernels, Avx2HermitianFormMatchesScalar) {
  if (!Avx2Available()) GTEST_SKIP() << "AVX2 variant unavailable on this host";
  std::mt19937_64 rng(2);
  for (int n : {1, 2, 7, 16, 37}) {
    for (int batch : {1, 3, 4, 9, 64, 203}) {
      const CMat a = testing::RandomHermitian(n, rng);
      const CMat x = testing::RandomComplex(n, batch, rng);
      const RVec s = HermitianForms(a, x, Isa::kScalar);
      const RVec v = HermitianForms(a, x, Isa::kAvx2);
      EXPECT_LT((s - v).cwiseAbs().maxCoeff(), 1e-12 * (1 + s.cwiseAbs().maxCoeff()))
          << "n=" << n << " batch=" << batch;
    }
  }
}

TEST(Kernels, SurrogateScalarMatchesDirect) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  Mat3 r, s;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      r(i, j) = g(rng);
      s(i, j) = g(rng);
    }
  }
  r = 0.5 * (r + r.transpose()).eval();
  s = 0.5 * (s + s.transpose()).eval();
  RMat pts(3, 11);
  for (int k = 0; k < 11; ++k) pts.col(k) = Vec3(g(rng), g(rng), g(rng));
  const RVec got = SurrogateValues(r, s, 0.7, pts, Isa::kScalar);
  for (int k = 0; k < 11; ++k) {
    const Vec3 d = pts.col(k);
    const double q = d.dot(s * d);
    EXPECT_NEAR(got(k), d.dot(r * d) - 0.7 * q * q, 1e-12);
  }
}

TEST(Kernels, Avx2SurrogateMatchesScalar) {
  if (!Avx2Available()) GTEST_SKIP() << "AVX2 variant unavailable on this host";
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  Mat3 r = Mat3::Random(), s = Mat3::Random();
  r = 0.5 * (r + r.transpose()).eval();
  s = 0.5 * (s + s.transpose()).eval();
  for (int count : {1, 3, 4, 5, 100, 1001}) {
    RMat pts(3, count);
    for (int k = 0; k < count; ++k) pts.col(k) = Vec3(g(rng), g(rng), g(rng));
    const RVec a = SurrogateValues(r, s, 1.3, pts, Isa::kScalar);
    const RVec b = SurrogateValues(r, s, 1.3, pts, Isa::kAvx2);
    EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-12 * (1 + a.cwiseAbs().maxCoeff())) << count;
  }
}

TEST(Kernels, DispatchReportsKnownIsa) {
  const Isa isa = ActiveIsa();
  EXPECT_TRUE(isa == Isa::kScalar || isa == Isa::kAvx2);
  EXPECT_EQ(ActiveIsa(), isa);
  if (isa == Isa::kAvx2) EXPECT_TRUE(Avx2Available());
  EXPECT_STREQ(IsaName(Isa::kScalar), "scalar");
  EXPECT_NE(HermitianFormKernel(Isa::kScalar), nullptr);
  EXPECT_NE(SurrogateKernel(Isa::kScalar), nullptr);
}

}  // namespace
}  // namespace risbf::kernels
