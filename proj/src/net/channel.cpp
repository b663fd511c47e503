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

#include "trio/net/channel.hpp"

#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <condition_variable>
#include <cstring>
#include <deque>
#include <mutex>

#include "trio/errors.hpp"

namespace trio::net {

namespace {

struct PipeState {
  std::mutex mu;
  std::condition_variable cv;
  std::deque<std::uint8_t> queue[2];  // queue[i]: bytes readable by end i
  bool closed[2] = {false, false};
};

class MemoryChannel final : public Channel {
 public:
  MemoryChannel(std::shared_ptr<PipeState> state, int end, std::chrono::milliseconds timeout)
      : state_(std::move(state)), end_(end), timeout_(timeout) {}

  ~MemoryChannel() override {
    std::lock_guard lock(state_->mu);
    state_->closed[end_] = true;
    state_->cv.notify_all();
  }

  void write(std::span<const std::uint8_t> bytes) override {
    std::lock_guard lock(state_->mu);
    if (state_->closed[1 - end_]) throw NetworkError("connection reset: peer closed the pipe");
    auto& q = state_->queue[1 - end_];
    q.insert(q.end(), bytes.begin(), bytes.end());
    state_->cv.notify_all();
  }

  void read(std::span<std::uint8_t> bytes) override {
    std::unique_lock lock(state_->mu);
    auto& q = state_->queue[end_];
    const bool ready = state_->cv.wait_for(lock, timeout_, [&] {
      return q.size() >= bytes.size() || state_->closed[1 - end_];
    });
    if (q.size() < bytes.size()) {
      if (!ready) throw TimeoutError("timed out reading from in-memory peer");
      throw NetworkError("connection reset: peer closed the pipe");
    }
    std::copy_n(q.begin(), bytes.size(), bytes.begin());
    q.erase(q.begin(), q.begin() + static_cast<std::ptrdiff_t>(bytes.size()));
  }

  bool write_never_blocks(std::size_t) const override { return true; }

 private:
  std::shared_ptr<PipeState> state_;
  int end_;
  std::chrono::milliseconds timeout_;
};

class SocketChannel final : public Channel {
 public:
  SocketChannel(int fd, std::chrono::milliseconds timeout) : fd_(fd), timeout_(timeout) {}
  ~SocketChannel() override { ::close(fd_); }

  void write(std::span<const std::uint8_t> bytes) override {
    std::size_t done = 0;
    while (done < bytes.size()) {
      const auto n = ::send(fd_, bytes.data() + done, bytes.size() - done, MSG_NOSIGNAL);
      if (n < 0) {
        if (errno == EINTR) continue;
        throw NetworkError(std::string("send failed: ") + std::strerror(errno));
      }
      done += static_cast<std::size_t>(n);
    }
  }

  void read(std::span<std::uint8_t> bytes) override {
    std::size_t done = 0;
    while (done < bytes.size()) {
      pollfd pfd{fd_, POLLIN, 0};
      const int ready = ::poll(&pfd, 1, static_cast<int>(timeout_.count()));
      if (ready == 0) throw TimeoutError("timed out waiting for peer data");
      if (ready < 0) {
        if (errno == EINTR) continue;
        throw NetworkError(std::string("poll failed: ") + std::strerror(errno));
      }
      const auto n = ::recv(fd_, bytes.data() + done, bytes.size() - done, 0);
      if (n == 0) throw NetworkError("connection reset: peer closed the socket");
      if (n < 0) {
        if (errno == EINTR) continue;
        throw NetworkError(std::string("recv failed: ") + std::strerror(errno));
      }
      done += static_cast<std::size_t>(n);
    }
  }

  // Kernel socket buffers comfortably absorb this much without a reader.
  bool write_never_blocks(std::size_t bytes) const override { return bytes <= 32 * 1024; }

 private:
  int fd_;
  std::chrono::milliseconds timeout_;
};

}  // namespace

std::pair<std::unique_ptr<Channel>, std::unique_ptr<Channel>> memory_pipe(
    std::chrono::milliseconds read_timeout) {
  auto state = std::make_shared<PipeState>();
  return {std::make_unique<MemoryChannel>(state, 0, read_timeout),
          std::make_unique<MemoryChannel>(state, 1, read_timeout)};
}

std::unique_ptr<Channel> socket_channel(int fd, std::chrono::milliseconds read_timeout) {
  return std::make_unique<SocketChannel>(fd, read_timeout);
}

}  // namespace trio::net
