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

#include "risbf/hermitian_embedding.hpp"

#include <algorithm>
#include <stdexcept>

namespace risbf {

RMat EmbedHermitian(const CMat& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("matrix must be square");
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if (a.size() > 0 && (a - a.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw std::invalid_argument("matrix is not Hermitian");
  }
  const Eigen::Index n = a.rows();
  RMat out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = a.real();
  out.bottomRightCorner(n, n) = a.real();
  out.topRightCorner(n, n) = -a.imag();
  out.bottomLeftCorner(n, n) = a.imag();
  return out;
}

CMat ExtractHermitian(const RMat& x) {
  if (x.rows() != x.cols() || x.rows() % 2 != 0) {
    throw std::invalid_argument("embedded matrix must be square of even size");
  }
  const Eigen::Index n = x.rows() / 2;
  const RMat re = 0.5 * (x.topLeftCorner(n, n) + x.bottomRightCorner(n, n));
  const RMat im = 0.5 * (x.bottomLeftCorner(n, n) - x.topRightCorner(n, n));
  CMat out(n, n);
  out.real() = 0.5 * (re + re.transpose());
  out.imag() = 0.5 * (im - im.transpose());
  return out;
}

}  // namespace risbf
