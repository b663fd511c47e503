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

#include <array>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

#include "trio/net/config.hpp"
#include "trio/net/party_context.hpp"

namespace trio::net {

// Listens, connects to lower-numbered parties, accepts higher-numbered ones,
// and verifies the magic/version/party-id handshake on every link. Throws
// TimeoutError naming the party that never showed up.
PartyContext connect_mesh(const PartyConfig& cfg);

// Three contexts joined by in-memory pipes, for tests and in-process runs.
std::array<PartyContext, 3> memory_mesh(ProtocolFlags flags = {}, std::uint64_t seed = 1,
                                        std::vector<int> output_recipients = {0, 1});

// Runs fn(ctx) for the three parties on three threads and returns their
// results in party order. The first exception thrown by any party is
// rethrown after all threads have joined.
template <typename Fn>
auto run_parties(std::array<PartyContext, 3>& ctxs, Fn fn) {
  using R = std::invoke_result_t<Fn, PartyContext&>;
  std::array<std::exception_ptr, 3> errors;
  if constexpr (std::is_void_v<R>) {
    std::vector<std::thread> threads;
    for (int i = 0; i < 3; ++i) {
      threads.emplace_back([&, i] {
        try {
          fn(ctxs[i]);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  } else {
    std::array<R, 3> results{};
    std::vector<std::thread> threads;
    for (int i = 0; i < 3; ++i) {
      threads.emplace_back([&, i] {
        try {
          results[i] = fn(ctxs[i]);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
    return results;
  }
}

}  // namespace trio::net
