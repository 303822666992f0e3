/*
 * Copyright 2026 The lpkeet Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef LPKEET_STATUS_H_
#define LPKEET_STATUS_H_

#include <optional>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace lpkeet {

// Library-specific failure categories. Every error returned by lpkeet carries
// one of these as a status payload, on top of the canonical absl code.
enum class ErrorKind {
  kInvalidDegree,
  kParameterOverflow,
  kInvalidParams,
  kNotInitialized,
  kParamsMismatch,
  kNotInvertible,
  kInternal,
  kWidthTooSmall,
  kCovarianceNotPD,
  kTagNotInvertible,
  kInvalidMessage,
  kRejectSignature,
  kRejectHash,
  kGenerationFailed,
  kRankError,
  kMalformed,
};

absl::string_view ErrorKindName(ErrorKind kind);

absl::Status MakeError(ErrorKind kind, absl::string_view message);

// Returns the ErrorKind attached by MakeError, or nullopt for foreign or OK
// statuses.
std::optional<ErrorKind> GetErrorKind(const absl::Status& status);

inline bool HasErrorKind(const absl::Status& status, ErrorKind kind) {
  return GetErrorKind(status) == kind;
}

}  // namespace lpkeet

#define LPKEET_STATUS_CONCAT_INNER_(x, y) x##y
#define LPKEET_STATUS_CONCAT_(x, y) LPKEET_STATUS_CONCAT_INNER_(x, y)

#define LPKEET_RETURN_IF_ERROR(expr)          \
  do {                                        \
    absl::Status lpkeet_status_ = (expr);     \
    if (!lpkeet_status_.ok()) return lpkeet_status_; \
  } while (false)

#define LPKEET_ASSIGN_OR_RETURN_IMPL_(tmp, lhs, expr) \
  auto tmp = (expr);                                  \
  if (!tmp.ok()) return tmp.status();                 \
  lhs = std::move(tmp).value()

#define LPKEET_ASSIGN_OR_RETURN(lhs, expr) \
  LPKEET_ASSIGN_OR_RETURN_IMPL_(           \
      LPKEET_STATUS_CONCAT_(lpkeet_statusor_, __LINE__), lhs, expr)

#endif  // LPKEET_STATUS_H_
