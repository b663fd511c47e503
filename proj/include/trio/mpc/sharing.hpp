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

#pragma once

#include <utility>

#include "trio/crypto/prf.hpp"
#include "trio/tensor.hpp"

namespace trio::mpc {

using SharePair = std::pair<RingTensor, RingTensor>;

// x0 is drawn from the tape, x1 = x - x0 mod 2^64.
SharePair share(const RingTensor& x, crypto::PrfTape& tape);

RingTensor reconstruct(const RingTensor& x0, const RingTensor& x1);

}  // namespace trio::mpc
