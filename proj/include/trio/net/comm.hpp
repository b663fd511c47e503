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

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "trio/net/frame.hpp"

namespace trio::net {

struct CommEntry {
  int from = 0;
  int to = 0;
  std::uint16_t tag = 0;
  std::uint64_t bytes = 0;     // header + payload
  std::uint64_t elements = 0;  // ring elements only
  std::uint64_t frames = 0;

  bool operator==(const CommEntry&) const = default;
};

// One party's view of the traffic it sent and received, per (sender,
// receiver, phase).
struct CommReport {
  int party = 0;
  std::vector<CommEntry> entries;

  // Sum over entries whose sender is this party and that satisfy `pred`.
  std::uint64_t sent_elements(const std::function<bool(const CommEntry&)>& pred = {}) const;
  std::uint64_t sent_bytes(const std::function<bool(const CommEntry&)>& pred = {}) const;
  std::uint64_t recv_elements() const;

  nlohmann::json to_json() const;
  static CommReport from_json(const nlohmann::json& j);

  bool operator==(const CommReport&) const = default;
};

// Element count that all three parties sent under the given phases. Each
// message is counted once, at its sender.
std::uint64_t total_sent_elements(const std::vector<CommReport>& reports,
                                  std::initializer_list<Phase> phases);
std::uint64_t total_sent_elements(const std::vector<CommReport>& reports);

// Elements sent by `from` to anyone, summed over all phases.
std::uint64_t egress_elements(const std::vector<CommReport>& reports, int from);

// Sender-side and receiver-side counters agree for every pair and phase.
// Returns a description of the first disagreement, or an empty string.
std::string check_counter_symmetry(const std::vector<CommReport>& reports);

// Empty string if every frame delivered to party 2 used an allowed tag.
std::string audit_helper_ingress(const CommReport& helper_report);

// Element-wise difference (after - before) of two snapshots of one party.
CommReport diff(const CommReport& after, const CommReport& before);

// Thread-safe accumulator behind a CommReport.
class CommCounter {
 public:
  explicit CommCounter(int party) : party_(party) {}
  CommCounter(CommCounter&& o) noexcept;
  CommCounter& operator=(CommCounter&& o) noexcept;

  void record(int from, int to, Phase phase, std::uint64_t bytes, std::uint64_t elements);
  CommReport snapshot() const;
  void reset();

 private:
  int party_;
  mutable std::mutex mu_;
  std::map<std::tuple<int, int, std::uint16_t>, CommEntry> entries_;
};

}  // namespace trio::net
