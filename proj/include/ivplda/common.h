// include/ivplda/common.h

// Copyright 2026  The ivplda Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef IVPLDA_COMMON_H_
#define IVPLDA_COMMON_H_

#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace ivplda {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Base class for every error raised by the toolkit.  The message is a
/// single line suitable for printing as a command diagnostic.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition (dimensions, counts, ids).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Malformed or truncated file contents.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// File could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// A factorization or solve failed even after regularization.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Builds a message from stream-insertable parts, e.g.
//   throw InvalidArgument(Concat("dim ", a, " != ", b));
template <typename... Parts>
std::string Concat(const Parts &...parts) {
  std::ostringstream os;
  (os << ... << parts);
  return os.str();
}

/// Warnings go through a process-wide sink (stderr by default).  Tests
/// replace it to capture messages.
using WarningSink = std::function<void(std::string_view)>;
void SetWarningSink(WarningSink sink);
void Warn(std::string_view message);

bool AllFinite(const Eigen::Ref<const Matrix> &m);

}  // namespace ivplda

#endif  // IVPLDA_COMMON_H_
