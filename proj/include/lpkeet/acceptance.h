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

// End-to-end acceptance suite. Shared by the acceptance test binary and the
// CLI's selftest command.

#ifndef LPKEET_ACCEPTANCE_H_
#define LPKEET_ACCEPTANCE_H_

#include <functional>
#include <string>
#include <vector>

#include "lpkeet/params.h"

namespace lpkeet {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0;
  double limit_seconds = 0;  // 0 means no time limit
  std::string detail;
};

struct AcceptanceOptions {
  // Profile for the scheme-level criteria. Component checks run at fixed
  // sizes regardless.
  Profile profile = Profile::kToy;
  // Empty runs every criterion.
  std::vector<int> only;
};

// One line, e.g. "PASS  [1] ring correctness ... (4.1 s / 60 s)".
std::string FormatResult(const CriterionResult& r);

// Runs the criteria in order, reporting each as it finishes.
std::vector<CriterionResult> RunAcceptance(
    const AcceptanceOptions& options,
    const std::function<void(const CriterionResult&)>& on_result = {});

}  // namespace lpkeet

#endif  // LPKEET_ACCEPTANCE_H_
