/* Copyright 2026 The polygibbs Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef POLYGIBBS_ERROR_HPP_
#define POLYGIBBS_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace polygibbs {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent configuration input.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A model violates one of the structural conditions on its potentials.
class ConditionError : public Error {
 public:
  using Error::Error;
};

// Quadrature, root finding or the sup search failed to converge.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Corrupt or missing run data.
class DataError : public Error {
 public:
  using Error::Error;
};

}  // namespace polygibbs

#endif  // POLYGIBBS_ERROR_HPP_
