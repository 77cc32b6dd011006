// Copyright 2026 The EHM Authors
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

#ifndef EHM_ERROR_HPP_
#define EHM_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace ehm {

enum class ErrorCode {
  kInvalidArgument = 1,
  kDomain = 2,        // argument outside a function's domain (MGF, zeta)
  kPrecondition = 3,  // drift sign or regime requirement not met
  kNoRoot = 4,        // cumulant root undefined or not bracketable
  kAmbiguous = 5,     // several closed classes in a Markov chain
  kIo = 6,
  kFormat = 7,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void Fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void Require(bool ok, ErrorCode code, const std::string& what) {
  if (!ok) Fail(code, what);
}

}  // namespace ehm

#endif  // EHM_ERROR_HPP_
