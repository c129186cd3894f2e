// core/error.h

// Copyright 2026 diarkit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DIARKIT_CORE_ERROR_H_
#define DIARKIT_CORE_ERROR_H_

#include <stdexcept>
#include <string>

namespace diarkit {

// Error categories mirrored one-to-one by the C API status codes and the
// CLI exit codes.
enum class ErrorCode {
  kInvalidArgument,
  kNotFound,   // missing file or missing record
  kParse,      // malformed input file
  kNumeric,    // singular matrices, degenerate data, non-finite values
  kIo,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &msg)
      : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace diarkit

#endif  // DIARKIT_CORE_ERROR_H_
