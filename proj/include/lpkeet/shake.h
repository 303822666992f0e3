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

#ifndef LPKEET_SHAKE_H_
#define LPKEET_SHAKE_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace lpkeet {

// Incremental SHAKE-256 (FIPS 202). Absorb any number of times, then squeeze
// any number of times; the first Squeeze call pads and switches phase.
class Shake256 {
 public:
  static constexpr size_t kRateBytes = 136;

  Shake256() = default;

  void Absorb(std::span<const uint8_t> data);
  void Squeeze(std::span<uint8_t> out);

  // Squeezes one little-endian 64-bit word.
  uint64_t SqueezeWord();

 private:
  void Finalize();

  std::array<uint64_t, 25> state_{};
  size_t pos_ = 0;
  bool squeezing_ = false;
};

std::vector<uint8_t> Shake256Digest(std::span<const uint8_t> input,
                                    size_t out_len);

void KeccakF1600(std::array<uint64_t, 25>& state);

}  // namespace lpkeet

#endif  // LPKEET_SHAKE_H_
