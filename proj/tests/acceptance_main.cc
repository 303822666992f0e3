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

// Prints one PASS/FAIL line per acceptance criterion. Optional arguments
// select criteria by number.

#include <cstdlib>
#include <iostream>

#include "lpkeet/acceptance.h"

int main(int argc, char** argv) {
  lpkeet::AcceptanceOptions options;
  for (int i = 1; i < argc; ++i) options.only.push_back(std::atoi(argv[i]));
  bool all = true;
  lpkeet::RunAcceptance(options, [&](const lpkeet::CriterionResult& r) {
    std::cout << lpkeet::FormatResult(r) << std::endl;
    all &= r.pass;
  });
  return all ? 0 : 1;
}
