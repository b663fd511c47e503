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

#include "trio/net/mesh.hpp"

#include <arpa/inet.h>
#include <fcntl.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <utility>

#include "trio/errors.hpp"

namespace trio::net {

namespace {

using Clock = std::chrono::steady_clock;

class Fd {
 public:
  explicit Fd(int fd = -1) : fd_(fd) {}
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  Fd(Fd&& o) noexcept : fd_(std::exchange(o.fd_, -1)) {}
  Fd& operator=(Fd&& o) noexcept {
    reset();
    fd_ = std::exchange(o.fd_, -1);
    return *this;
  }
  ~Fd() { reset(); }
  int get() const { return fd_; }
  int release() { return std::exchange(fd_, -1); }
  void reset() {
    if (fd_ >= 0) ::close(fd_);
    fd_ = -1;
  }

 private:
  int fd_;
};

std::string sys_error(const std::string& what) { return what + ": " + std::strerror(errno); }

sockaddr_in resolve(const Endpoint& ep) {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  const int rc = ::getaddrinfo(ep.host.c_str(), nullptr, &hints, &res);
  if (rc != 0 || res == nullptr) {
    throw NetworkError("cannot resolve " + ep.host + ": " + ::gai_strerror(rc));
  }
  sockaddr_in addr = *reinterpret_cast<sockaddr_in*>(res->ai_addr);
  ::freeaddrinfo(res);
  addr.sin_port = htons(ep.port);
  return addr;
}

void set_nodelay(int fd) {
  int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
}

std::array<std::uint8_t, kHandshakeBytes> hello(int party) {
  std::array<std::uint8_t, kHandshakeBytes> h{};
  std::memcpy(h.data(), kWireMagic.data(), 4);
  h[4] = kWireVersion;
  h[5] = static_cast<std::uint8_t>(party);
  return h;
}

// Returns the party id announced in a handshake.
int check_hello(const std::array<std::uint8_t, kHandshakeBytes>& h) {
  if (std::memcmp(h.data(), kWireMagic.data(), 4) != 0) {
    throw ProtocolError("handshake: bad magic from peer");
  }
  if (h[4] != kWireVersion) {
    throw ProtocolError("handshake: peer speaks wire version " + std::to_string(h[4]) +
                        ", expected " + std::to_string(kWireVersion));
  }
  if (h[5] > 2) throw ProtocolError("handshake: bad party id " + std::to_string(h[5]));
  return h[5];
}

Fd listen_on(const Endpoint& ep) {
  Fd fd(::socket(AF_INET, SOCK_STREAM, 0));
  if (fd.get() < 0) throw NetworkError(sys_error("socket"));
  int one = 1;
  ::setsockopt(fd.get(), SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr = resolve(ep);
  if (::bind(fd.get(), reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
    throw NetworkError(sys_error("bind " + ep.str()));
  }
  if (::listen(fd.get(), 8) != 0) throw NetworkError(sys_error("listen " + ep.str()));
  return fd;
}

std::chrono::milliseconds remaining(Clock::time_point deadline) {
  const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
  return std::max(left, std::chrono::milliseconds(0));
}

void send_hello(int fd, int party) {
  const auto h = hello(party);
  std::size_t done = 0;
  while (done < h.size()) {
    const auto n = ::send(fd, h.data() + done, h.size() - done, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw NetworkError(sys_error("handshake send"));
    }
    done += static_cast<std::size_t>(n);
  }
}

// Returns false when the deadline passes first.
bool recv_hello(int fd, std::array<std::uint8_t, kHandshakeBytes>& h, Clock::time_point deadline) {
  std::size_t done = 0;
  while (done < h.size()) {
    pollfd pfd{fd, POLLIN, 0};
    const int ready = ::poll(&pfd, 1, static_cast<int>(remaining(deadline).count()));
    if (ready == 0) return false;
    if (ready < 0) {
      if (errno == EINTR) continue;
      throw NetworkError(sys_error("poll"));
    }
    const auto n = ::recv(fd, h.data() + done, h.size() - done, 0);
    if (n == 0) throw NetworkError("connection reset during handshake");
    if (n < 0) {
      if (errno == EINTR) continue;
      throw NetworkError(sys_error("handshake recv"));
    }
    done += static_cast<std::size_t>(n);
  }
  return true;
}

Fd connect_to(int peer, const Endpoint& ep, Clock::time_point deadline) {
  const sockaddr_in addr = resolve(ep);
  while (true) {
    Fd fd(::socket(AF_INET, SOCK_STREAM, 0));
    if (fd.get() < 0) throw NetworkError(sys_error("socket"));
    if (::connect(fd.get(), reinterpret_cast<const sockaddr*>(&addr), sizeof(addr)) == 0) {
      return fd;
    }
    if (errno != ECONNREFUSED && errno != ECONNRESET && errno != ETIMEDOUT && errno != EINTR) {
      throw NetworkError(sys_error("connect to party " + std::to_string(peer) + " at " + ep.str()));
    }
    if (Clock::now() >= deadline) {
      throw TimeoutError("timed out connecting to party " + std::to_string(peer) + " at " +
                         ep.str());
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
  }
}

}  // namespace

PartyContext connect_mesh(const PartyConfig& cfg) {
  cfg.validate();
  const int me = cfg.party;
  const auto deadline = Clock::now() + cfg.timeout;
  std::array<Fd, 3> fds;

  Fd listener;
  if (me < 2) listener = listen_on(cfg.listen);

  for (int j = 0; j < me; ++j) {
    Fd fd = connect_to(j, *cfg.peers[j], deadline);
    send_hello(fd.get(), me);
    std::array<std::uint8_t, kHandshakeBytes> reply{};
    if (!recv_hello(fd.get(), reply, deadline)) {
      throw TimeoutError("timed out waiting for handshake from party " + std::to_string(j));
    }
    if (check_hello(reply) != j) {
      throw ProtocolError("handshake: expected party " + std::to_string(j) + " at " +
                          cfg.peers[j]->str() + ", found party " + std::to_string(reply[5]));
    }
    fds[j] = std::move(fd);
  }

  auto missing = [&] {
    for (int j = me + 1; j < 3; ++j) {
      if (fds[j].get() < 0) return j;
    }
    return -1;
  };
  while (missing() >= 0) {
    pollfd pfd{listener.get(), POLLIN, 0};
    const int ready = ::poll(&pfd, 1, static_cast<int>(remaining(deadline).count()));
    if (ready < 0) {
      if (errno == EINTR) continue;
      throw NetworkError(sys_error("poll"));
    }
    if (ready == 0) {
      throw TimeoutError("timed out waiting for party " + std::to_string(missing()) +
                         " to connect");
    }
    Fd fd(::accept(listener.get(), nullptr, nullptr));
    if (fd.get() < 0) {
      if (errno == EINTR || errno == ECONNABORTED) continue;
      throw NetworkError(sys_error("accept"));
    }
    std::array<std::uint8_t, kHandshakeBytes> h{};
    if (!recv_hello(fd.get(), h, deadline)) {
      throw TimeoutError("timed out waiting for party " + std::to_string(missing()) +
                         " to connect");
    }
    const int peer = check_hello(h);
    if (peer <= me) {
      throw ProtocolError("handshake: party " + std::to_string(peer) +
                          " connected but should be dialled by party " + std::to_string(me));
    }
    if (fds[peer].get() >= 0) {
      throw ProtocolError("handshake: party " + std::to_string(peer) + " connected twice");
    }
    send_hello(fd.get(), me);
    fds[peer] = std::move(fd);
  }

  std::array<std::unique_ptr<Channel>, 3> channels;
  for (int j = 0; j < 3; ++j) {
    if (j == me) continue;
    set_nodelay(fds[j].get());
    channels[j] = socket_channel(fds[j].release(), cfg.timeout);
  }
  return PartyContext(me, std::move(channels), cfg.keys, cfg.flags, cfg.seed,
                      cfg.output_recipients);
}

std::array<PartyContext, 3> memory_mesh(ProtocolFlags flags, std::uint64_t seed,
                                        std::vector<int> output_recipients) {
  std::array<std::array<std::unique_ptr<Channel>, 3>, 3> ch;
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) {
      auto [x, y] = memory_pipe();
      ch[a][b] = std::move(x);
      ch[b][a] = std::move(y);
    }
  }
  const auto cfgs = local_configs(0, seed);
  auto make = [&](int p) {
    return PartyContext(p, std::move(ch[p]), cfgs[p].keys, flags, seed, output_recipients);
  };
  return {make(0), make(1), make(2)};
}

}  // namespace trio::net
