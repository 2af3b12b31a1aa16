// Copyright 2026 The MPMH Authors
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

#ifndef MPMH_ERROR_HPP_
#define MPMH_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace mpmh {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid numeric input (non-positive distance, zero frame length, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Inconsistent configuration: missing rate-table entry, bad scenario field.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A scheduler could not produce a schedule, or a schedule failed validation.
class ScheduleError : public Error {
 public:
  using Error::Error;
};

// Packet accounting found a schedule it cannot execute.
class AccountingError : public Error {
 public:
  using Error::Error;
};

}  // namespace mpmh

#endif  // MPMH_ERROR_HPP_
