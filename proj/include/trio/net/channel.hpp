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

#include <chrono>
#include <cstdint>
#include <memory>
#include <span>
#include <utility>

namespace trio::net {

// A reliable, ordered, bidirectional byte stream between two parties.
// Reads and writes may proceed concurrently with each other, but two writers
// (or two readers) must not.
class Channel {
 public:
  virtual ~Channel() = default;
  virtual void write(std::span<const std::uint8_t> bytes) = 0;
  virtual void read(std::span<std::uint8_t> bytes) = 0;
  // True when a write of this size cannot block waiting for the peer to read.
  virtual bool write_never_blocks(std::size_t bytes) const = 0;
};

// Unbounded in-process pipe, for running all three parties as threads.
std::pair<std::unique_ptr<Channel>, std::unique_ptr<Channel>> memory_pipe(
    std::chrono::milliseconds read_timeout = std::chrono::milliseconds(60000));

// Takes ownership of a connected TCP socket.
std::unique_ptr<Channel> socket_channel(int fd, std::chrono::milliseconds read_timeout);

}  // namespace trio::net
