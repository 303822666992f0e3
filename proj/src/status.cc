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

#include "lpkeet/status.h"

#include <array>
#include <string>

#include "absl/strings/cord.h"
#include "absl/strings/str_cat.h"

namespace lpkeet {

namespace {

constexpr absl::string_view kPayloadUrl = "type.lpkeet/ErrorKind";

struct KindEntry {
  ErrorKind kind;
  absl::string_view name;
  absl::StatusCode code;
};

constexpr std::array<KindEntry, 16> kKinds = {{
    {ErrorKind::kInvalidDegree, "InvalidDegree",
     absl::StatusCode::kInvalidArgument},
    {ErrorKind::kParameterOverflow, "ParameterOverflow",
     absl::StatusCode::kOutOfRange},
    {ErrorKind::kInvalidParams, "InvalidParams",
     absl::StatusCode::kInvalidArgument},
    {ErrorKind::kNotInitialized, "NotInitialized",
     absl::StatusCode::kFailedPrecondition},
    {ErrorKind::kParamsMismatch, "ParamsMismatch",
     absl::StatusCode::kInvalidArgument},
    {ErrorKind::kNotInvertible, "NotInvertible",
     absl::StatusCode::kInvalidArgument},
    {ErrorKind::kInternal, "InternalError", absl::StatusCode::kInternal},
    {ErrorKind::kWidthTooSmall, "WidthTooSmall",
     absl::StatusCode::kInvalidArgument},
    {ErrorKind::kCovarianceNotPD, "CovarianceNotPD",
     absl::StatusCode::kFailedPrecondition},
    {ErrorKind::kTagNotInvertible, "TagNotInvertible",
     absl::StatusCode::kInvalidArgument},
    {ErrorKind::kInvalidMessage, "InvalidMessage",
     absl::StatusCode::kInvalidArgument},
    {ErrorKind::kRejectSignature, "RejectSignature",
     absl::StatusCode::kPermissionDenied},
    {ErrorKind::kRejectHash, "RejectHash", absl::StatusCode::kPermissionDenied},
    {ErrorKind::kGenerationFailed, "GenerationFailed",
     absl::StatusCode::kInternal},
    {ErrorKind::kRankError, "RankError", absl::StatusCode::kInvalidArgument},
    {ErrorKind::kMalformed, "Malformed", absl::StatusCode::kDataLoss},
}};

const KindEntry& Entry(ErrorKind kind) {
  for (const auto& e : kKinds) {
    if (e.kind == kind) return e;
  }
  return kKinds[6];
}

}  // namespace

absl::string_view ErrorKindName(ErrorKind kind) { return Entry(kind).name; }

absl::Status MakeError(ErrorKind kind, absl::string_view message) {
  const KindEntry& e = Entry(kind);
  absl::Status status(e.code, absl::StrCat(e.name, ": ", message));
  status.SetPayload(kPayloadUrl, absl::Cord(e.name));
  return status;
}

std::optional<ErrorKind> GetErrorKind(const absl::Status& status) {
  if (status.ok()) return std::nullopt;
  absl::optional<absl::Cord> payload = status.GetPayload(kPayloadUrl);
  if (!payload.has_value()) return std::nullopt;
  const std::string name(*payload);
  for (const auto& e : kKinds) {
    if (e.name == name) return e.kind;
  }
  return std::nullopt;
}

}  // namespace lpkeet
