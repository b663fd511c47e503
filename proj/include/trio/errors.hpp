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

#include <stdexcept>
#include <string>

namespace trio {

// Base of every error raised by the toolchain. The CLI maps each subclass to
// a distinct exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed containers, dangling ids, unsupported ops.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ScaleMismatchError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A fixed-point value left the |x| < 2^62 guard band.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// Desynchronised transcript, stream reuse, bad handshake.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

class NetworkError : public ProtocolError {
 public:
  using ProtocolError::ProtocolError;
};

class TimeoutError : public NetworkError {
 public:
  using NetworkError::NetworkError;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace trio
