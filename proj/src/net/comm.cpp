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

#include "trio/net/comm.hpp"

#include <algorithm>

namespace trio::net {

std::uint64_t CommReport::sent_elements(const std::function<bool(const CommEntry&)>& pred) const {
  std::uint64_t total = 0;
  for (const auto& e : entries) {
    if (e.from == party && (!pred || pred(e))) total += e.elements;
  }
  return total;
}

std::uint64_t CommReport::sent_bytes(const std::function<bool(const CommEntry&)>& pred) const {
  std::uint64_t total = 0;
  for (const auto& e : entries) {
    if (e.from == party && (!pred || pred(e))) total += e.bytes;
  }
  return total;
}

std::uint64_t CommReport::recv_elements() const {
  std::uint64_t total = 0;
  for (const auto& e : entries) {
    if (e.to == party) total += e.elements;
  }
  return total;
}

nlohmann::json CommReport::to_json() const {
  nlohmann::json j;
  j["party"] = party;
  j["entries"] = nlohmann::json::array();
  std::uint64_t sent_b = 0, sent_e = 0, recv_b = 0, recv_e = 0;
  for (const auto& e : entries) {
    const auto phase = phase_from_tag(e.tag);
    j["entries"].push_back({{"from", e.from},
                            {"to", e.to},
                            {"tag", e.tag},
                            {"phase", phase ? std::string(phase_name(*phase)) : "unknown"},
                            {"bytes", e.bytes},
                            {"elements", e.elements},
                            {"frames", e.frames}});
    if (e.from == party) {
      sent_b += e.bytes;
      sent_e += e.elements;
    } else {
      recv_b += e.bytes;
      recv_e += e.elements;
    }
  }
  j["totals"] = {{"sent_bytes", sent_b},
                 {"sent_elements", sent_e},
                 {"recv_bytes", recv_b},
                 {"recv_elements", recv_e}};
  return j;
}

CommReport CommReport::from_json(const nlohmann::json& j) {
  CommReport r;
  r.party = j.at("party").get<int>();
  for (const auto& je : j.at("entries")) {
    CommEntry e;
    e.from = je.at("from").get<int>();
    e.to = je.at("to").get<int>();
    e.tag = je.at("tag").get<std::uint16_t>();
    e.bytes = je.at("bytes").get<std::uint64_t>();
    e.elements = je.at("elements").get<std::uint64_t>();
    e.frames = je.value("frames", std::uint64_t{0});
    r.entries.push_back(e);
  }
  return r;
}

std::uint64_t total_sent_elements(const std::vector<CommReport>& reports,
                                  std::initializer_list<Phase> phases) {
  std::uint64_t total = 0;
  for (const auto& r : reports) {
    total += r.sent_elements([&](const CommEntry& e) {
      return std::any_of(phases.begin(), phases.end(),
                         [&](Phase p) { return static_cast<std::uint16_t>(p) == e.tag; });
    });
  }
  return total;
}

std::uint64_t total_sent_elements(const std::vector<CommReport>& reports) {
  std::uint64_t total = 0;
  for (const auto& r : reports) total += r.sent_elements();
  return total;
}

std::uint64_t egress_elements(const std::vector<CommReport>& reports, int from) {
  std::uint64_t total = 0;
  for (const auto& r : reports) {
    if (r.party == from) total += r.sent_elements();
  }
  return total;
}

std::string check_counter_symmetry(const std::vector<CommReport>& reports) {
  using Key = std::tuple<int, int, std::uint16_t>;
  std::map<Key, CommEntry> sent, received;
  for (const auto& r : reports) {
    for (const auto& e : r.entries) {
      auto& dst = e.from == r.party ? sent : received;
      dst[{e.from, e.to, e.tag}] = e;
    }
  }
  for (const auto& [key, s] : sent) {
    auto it = received.find(key);
    const bool ok = it != received.end() && it->second.bytes == s.bytes &&
                    it->second.elements == s.elements && it->second.frames == s.frames;
    if (!ok) {
      return "P" + std::to_string(s.from) + "->P" + std::to_string(s.to) + " tag " +
             std::to_string(s.tag) + ": sent " + std::to_string(s.bytes) + " bytes, received " +
             (it == received.end() ? std::string("nothing") : std::to_string(it->second.bytes));
    }
  }
  for (const auto& [key, r] : received) {
    if (!sent.count(key)) {
      return "P" + std::to_string(r.to) + " received tag " + std::to_string(r.tag) +
             " traffic that P" + std::to_string(r.from) + " never reported sending";
    }
  }
  return {};
}

std::string audit_helper_ingress(const CommReport& helper_report) {
  for (const auto& e : helper_report.entries) {
    if (e.to != 2) continue;
    const auto phase = phase_from_tag(e.tag);
    if (!phase || !allowed_into_helper(*phase)) {
      return "P" + std::to_string(e.from) + " sent " + std::to_string(e.elements) +
             " elements to the helper under tag " + std::to_string(e.tag);
    }
  }
  return {};
}

CommReport diff(const CommReport& after, const CommReport& before) {
  CommReport out;
  out.party = after.party;
  for (const auto& a : after.entries) {
    CommEntry d = a;
    for (const auto& b : before.entries) {
      if (b.from == a.from && b.to == a.to && b.tag == a.tag) {
        d.bytes -= b.bytes;
        d.elements -= b.elements;
        d.frames -= b.frames;
      }
    }
    if (d.frames) out.entries.push_back(d);
  }
  return out;
}

CommCounter::CommCounter(CommCounter&& o) noexcept : party_(o.party_) {
  std::lock_guard lock(o.mu_);
  entries_ = std::move(o.entries_);
}

CommCounter& CommCounter::operator=(CommCounter&& o) noexcept {
  if (this != &o) {
    std::scoped_lock lock(mu_, o.mu_);
    party_ = o.party_;
    entries_ = std::move(o.entries_);
  }
  return *this;
}

void CommCounter::record(int from, int to, Phase phase, std::uint64_t bytes,
                         std::uint64_t elements) {
  std::lock_guard lock(mu_);
  const auto tag = static_cast<std::uint16_t>(phase);
  auto& e = entries_[{from, to, tag}];
  e.from = from;
  e.to = to;
  e.tag = tag;
  e.bytes += bytes;
  e.elements += elements;
  e.frames += 1;
}

CommReport CommCounter::snapshot() const {
  std::lock_guard lock(mu_);
  CommReport r;
  r.party = party_;
  for (const auto& [key, e] : entries_) r.entries.push_back(e);
  return r;
}

void CommCounter::reset() {
  std::lock_guard lock(mu_);
  entries_.clear();
}

}  // namespace trio::net
