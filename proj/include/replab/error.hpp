// Copyright 2026 The replab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef REPLAB_ERROR_HPP
#define REPLAB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace replab {

enum class ErrorKind {
    Argument,     // malformed input or violated precondition
    Resource,     // memory budget or enumeration cap exceeded
    Unsupported,  // outside the implemented regime (e.g. Weingarten with d < m)
    Validation,   // a domain invariant failed on construction
    Internal,     // two independent computations disagree
};

const char *error_kind_name(ErrorKind kind);

/// Base exception for every failure raised by the library. The C API maps
/// `kind()` onto its status codes.
class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &message);
    ErrorKind kind() const noexcept { return kind_; }

   private:
    ErrorKind kind_;
};

class ArgumentError : public Error {
   public:
    explicit ArgumentError(const std::string &m) : Error(ErrorKind::Argument, m) {}
};

class ResourceError : public Error {
   public:
    explicit ResourceError(const std::string &m) : Error(ErrorKind::Resource, m) {}
};

class UnsupportedRegimeError : public Error {
   public:
    explicit UnsupportedRegimeError(const std::string &m) : Error(ErrorKind::Unsupported, m) {}
};

/// Carries the residual that made validation fail, when one exists.
class ValidationError : public Error {
   public:
    ValidationError(const std::string &m, double residual = 0.0)
        : Error(ErrorKind::Validation, m), residual_(residual) {}
    double residual() const noexcept { return residual_; }

   private:
    double residual_;
};

class InternalError : public Error {
   public:
    explicit InternalError(const std::string &m) : Error(ErrorKind::Internal, m) {}
};

}  // namespace replab

#endif  // REPLAB_ERROR_HPP
