// Copyright 2026 The rqite Authors
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

#include "rqite/error.hpp"

namespace rqite {

const char* error_code_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::Parse: return "parse_error";
    case ErrorCode::CapExceeded: return "cap_exceeded";
    case ErrorCode::Domain: return "domain_error";
    case ErrorCode::NotApplicable: return "not_applicable";
    case ErrorCode::DegenerateOverlap: return "degenerate_overlap";
    case ErrorCode::ScanExhausted: return "scan_exhausted";
    case ErrorCode::Io: return "io_error";
    case ErrorCode::Internal: return "internal_error";
  }
  return "internal_error";
}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace rqite
