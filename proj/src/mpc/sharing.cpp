// Copyright 2026 The Trio Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "trio/mpc/sharing.hpp"

#include "trio/errors.hpp"

namespace trio::mpc {

SharePair share(const RingTensor& x, crypto::PrfTape& tape) {
  RingTensor x0 = tape.tensor(x.shape());
  RingTensor x1(x.shape());
  for (std::int64_t i = 0; i < x.size(); ++i) x1[i] = x[i] - x0[i];
  return {std::move(x0), std::move(x1)};
}

RingTensor reconstruct(const RingTensor& x0, const RingTensor& x1) {
  if (x0.shape() != x1.shape()) {
    throw ShapeError("share shapes " + shape_str(x0.shape()) + " and " + shape_str(x1.shape()) +
                     " differ");
  }
  RingTensor out(x0.shape());
  for (std::int64_t i = 0; i < x0.size(); ++i) out[i] = x0[i] + x1[i];
  return out;
}

}  // namespace trio::mpc
