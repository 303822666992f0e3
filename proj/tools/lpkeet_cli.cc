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

// lpkeet: key generation, encryption, decryption, trapdoor export and
// equality testing over framed files.
//
// Exit codes: 0 success or EQUAL, 1 NOT-EQUAL or decryption rejected,
// 2 malformed input or usage error.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "absl/strings/ascii.h"
#include "absl/strings/escaping.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "lpkeet/acceptance.h"
#include "lpkeet/serialize.h"
#include "lpkeet/status.h"

namespace lpkeet {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitReject = 1;
constexpr int kExitMalformed = 2;

constexpr uint32_t kLambda = 128;

// Carries an exit code up to main.
struct Exit {
  int code;
};

[[noreturn]] void Die(int code, const std::string& msg) {
  std::cerr << "lpkeet: " << msg << "\n";
  throw Exit{code};
}

[[noreturn]] void Die(const absl::Status& s) {
  const auto kind = GetErrorKind(s);
  const bool reject = kind == ErrorKind::kRejectSignature || kind == ErrorKind::kRejectHash;
  Die(reject ? kExitReject : kExitMalformed, std::string(s.message()));
}

template <typename T>
T Unwrap(absl::StatusOr<T> v) {
  if (!v.ok()) Die(v.status());
  return *std::move(v);
}

std::vector<uint8_t> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Die(kExitMalformed, absl::StrCat("cannot read ", path));
  return std::vector<uint8_t>(std::istreambuf_iterator<char>(in), {});
}

void WriteFile(const std::string& path, const std::vector<uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) Die(kExitMalformed, absl::StrCat("cannot write ", path));
}

Rng MakeRng(const std::string& seed_hex) {
  if (seed_hex.empty()) return Rng::FromEntropy();
  return Unwrap(Rng::FromHexSeed(seed_hex));
}

// A scheme instance rebuilt from the parameters embedded in a file.
using AnyScheme = std::variant<RingPkeet, IntPkeet>;

AnyScheme SchemeOf(const std::vector<uint8_t>& bytes, ObjectKind expect,
                   const std::string& path) {
  FrameInfo info = Unwrap(InspectFrame(bytes));
  if (info.kind != expect) {
    Die(kExitMalformed, absl::StrCat(path, " holds a ", KindName(info.kind), ", expected a ",
                                     KindName(expect)));
  }
  if (auto* p = std::get_if<ParamsRing>(&info.params)) return Unwrap(RingPkeet::Create(*p));
  return Unwrap(IntPkeet::Create(std::get<ParamsInt>(info.params)));
}

size_t Capacity(const AnyScheme& s) {
  if (auto* r = std::get_if<RingPkeet>(&s)) return r->params().n;
  return std::get<IntPkeet>(s).params().t_msg;
}

// Message bytes read as a big-endian integer; bit i of the result is bit i
// of that integer. Shorter inputs are therefore left-padded with zeros.
std::vector<uint8_t> BytesToBits(const std::string& bytes, size_t capacity) {
  std::vector<uint8_t> bits(capacity, 0);
  const size_t n = bytes.size();
  for (size_t i = 0; i < n; ++i) {
    const uint8_t byte = static_cast<uint8_t>(bytes[n - 1 - i]);
    for (int b = 0; b < 8; ++b) {
      if (((byte >> b) & 1) == 0) continue;
      const size_t pos = 8 * i + b;
      if (pos >= capacity) {
        Die(kExitMalformed, absl::StrCat("message exceeds the capacity of ", capacity, " bits (",
                                         (capacity + 7) / 8, " bytes)"));
      }
      bits[pos] = 1;
    }
  }
  return bits;
}

std::string BitsToHex(const std::vector<uint8_t>& bits) {
  const size_t width = (bits.size() + 7) / 8;
  std::string bytes(width, '\0');
  for (size_t pos = 0; pos < bits.size(); ++pos) {
    if (bits[pos]) bytes[width - 1 - pos / 8] |= static_cast<char>(1 << (pos % 8));
  }
  return absl::BytesToHexString(bytes);
}

std::vector<uint8_t> RingBits(const RingElement& m) {
  return std::vector<uint8_t>(m.coeffs().begin(), m.coeffs().end());
}

struct KeygenArgs {
  std::string scheme = "ring";
  std::string profile = "toy";
  uint32_t n = 0;
  std::string seed;
  std::string out;
};

int Keygen(const KeygenArgs& a) {
  const Profile profile = Unwrap(ParseProfile(a.profile));
  Rng rng = MakeRng(a.seed);
  std::vector<uint8_t> pk, sk;
  if (a.scheme == "ring") {
    const ParamsRing p = Unwrap(DeriveRingParams(kLambda, a.n ? a.n : 256, profile));
    const RingPkeet scheme = Unwrap(RingPkeet::Create(p));
    auto keys = Unwrap(scheme.Setup(rng));
    pk = EncodeRingPk(p, keys.first);
    sk = EncodeRingSk(p, keys.second);
  } else {
    const ParamsInt p = Unwrap(DeriveIntParams(kLambda, a.n ? a.n : 32, profile));
    const IntPkeet scheme = Unwrap(IntPkeet::Create(p));
    auto keys = Unwrap(scheme.Setup(rng));
    pk = EncodeIntPk(p, keys.first);
    sk = EncodeIntSk(p, keys.second);
  }
  std::error_code ec;
  std::filesystem::create_directories(a.out, ec);
  if (ec) Die(kExitMalformed, absl::StrCat("cannot create ", a.out, ": ", ec.message()));
  const std::filesystem::path dir(a.out);
  WriteFile((dir / "pk.lpkt").string(), pk);
  WriteFile((dir / "sk.lpkt").string(), sk);
  return kExitOk;
}

struct EncryptArgs {
  std::string pk;
  std::string message;
  std::string hex;
  std::string seed;
  std::string out;
};

int Encrypt(const EncryptArgs& a) {
  const auto pk_bytes = ReadFile(a.pk);
  const AnyScheme any = SchemeOf(pk_bytes, ObjectKind::kPublicKey, a.pk);
  std::string raw = a.message;
  if (!a.hex.empty()) {
    const bool valid = a.hex.size() % 2 == 0 &&
                       std::all_of(a.hex.begin(), a.hex.end(),
                                   [](char c) { return absl::ascii_isxdigit(c); });
    if (!valid) Die(kExitMalformed, "--hex is not valid hex");
    raw = absl::HexStringToBytes(a.hex);
  }
  const std::vector<uint8_t> bits = BytesToBits(raw, Capacity(any));
  Rng rng = MakeRng(a.seed);
  if (auto* s = std::get_if<RingPkeet>(&any)) {
    const PkRing pk = Unwrap(DecodeRingPk(*s, pk_bytes));
    const RingElement msg = Unwrap(EncodeMessage(s->ring(), bits));
    WriteFile(a.out, EncodeRingCt(s->params(), Unwrap(s->Encrypt(pk, msg, rng))));
  } else {
    const IntPkeet& si = std::get<IntPkeet>(any);
    const PkInt pk = Unwrap(DecodeIntPk(si, pk_bytes));
    WriteFile(a.out, EncodeIntCt(si.params(), Unwrap(si.Encrypt(pk, bits, rng))));
  }
  return kExitOk;
}

struct KeyArgs {
  std::string pk;
  std::string sk;
  std::string ct;
  std::string seed;
  std::string out;
};

int Decrypt(const KeyArgs& a) {
  const auto pk_bytes = ReadFile(a.pk);
  const auto sk_bytes = ReadFile(a.sk);
  const auto ct_bytes = ReadFile(a.ct);
  const AnyScheme any = SchemeOf(pk_bytes, ObjectKind::kPublicKey, a.pk);
  Rng rng = MakeRng(a.seed);
  std::vector<uint8_t> bits;
  if (auto* s = std::get_if<RingPkeet>(&any)) {
    const PkRing pk = Unwrap(DecodeRingPk(*s, pk_bytes));
    const SkRing sk = Unwrap(DecodeRingSk(*s, sk_bytes));
    const CtRing ct = Unwrap(DecodeRingCt(*s, ct_bytes));
    bits = RingBits(Unwrap(s->Decrypt(pk, sk, ct, rng)));
  } else {
    const IntPkeet& si = std::get<IntPkeet>(any);
    const PkInt pk = Unwrap(DecodeIntPk(si, pk_bytes));
    const SkInt sk = Unwrap(DecodeIntSk(si, pk, sk_bytes));
    const CtInt ct = Unwrap(DecodeIntCt(si, ct_bytes));
    bits = Unwrap(si.Decrypt(pk, sk, ct, rng));
  }
  std::cout << BitsToHex(bits) << "\n";
  return kExitOk;
}

int Trapdoor(const KeyArgs& a) {
  const auto pk_bytes = ReadFile(a.pk);
  const auto sk_bytes = ReadFile(a.sk);
  const AnyScheme any = SchemeOf(pk_bytes, ObjectKind::kPublicKey, a.pk);
  if (auto* s = std::get_if<RingPkeet>(&any)) {
    const PkRing pk = Unwrap(DecodeRingPk(*s, pk_bytes));
    const SkRing sk = Unwrap(DecodeRingSk(*s, sk_bytes));
    WriteFile(a.out, EncodeRingToken(s->params(), s->Trapdoor(pk, sk)));
  } else {
    const IntPkeet& si = std::get<IntPkeet>(any);
    const PkInt pk = Unwrap(DecodeIntPk(si, pk_bytes));
    const SkInt sk = Unwrap(DecodeIntSk(si, pk, sk_bytes));
    WriteFile(a.out, EncodeIntToken(si.params(), si.Trapdoor(pk, sk)));
  }
  return kExitOk;
}

struct TestArgs {
  std::string td_i, ct_i, td_j, ct_j;
  std::string seed;
};

int Test(const TestArgs& a) {
  const auto td_i = ReadFile(a.td_i);
  const auto ct_i = ReadFile(a.ct_i);
  const auto td_j = ReadFile(a.td_j);
  const auto ct_j = ReadFile(a.ct_j);
  const AnyScheme any = SchemeOf(td_i, ObjectKind::kToken, a.td_i);
  Rng rng = MakeRng(a.seed);
  bool equal = false;
  if (auto* s = std::get_if<RingPkeet>(&any)) {
    equal = Unwrap(s->Test(Unwrap(DecodeRingToken(*s, td_i)), Unwrap(DecodeRingCt(*s, ct_i)),
                           Unwrap(DecodeRingToken(*s, td_j)), Unwrap(DecodeRingCt(*s, ct_j)),
                           rng));
  } else {
    const IntPkeet& si = std::get<IntPkeet>(any);
    equal = Unwrap(si.Test(Unwrap(DecodeIntToken(si, td_i)), Unwrap(DecodeIntCt(si, ct_i)),
                           Unwrap(DecodeIntToken(si, td_j)), Unwrap(DecodeIntCt(si, ct_j)),
                           rng));
  }
  std::cout << (equal ? "EQUAL" : "NOT-EQUAL") << "\n";
  return equal ? kExitOk : kExitReject;
}

struct SelftestArgs {
  std::string profile = "toy";
  std::string only;
};

int Selftest(const SelftestArgs& a) {
  AcceptanceOptions options;
  options.profile = Unwrap(ParseProfile(a.profile));
  for (absl::string_view id : absl::StrSplit(a.only, ',', absl::SkipEmpty())) {
    int v = 0;
    if (!absl::SimpleAtoi(id, &v)) Die(kExitMalformed, "--only takes criterion numbers");
    options.only.push_back(v);
  }
  bool all = true;
  RunAcceptance(options, [&](const CriterionResult& r) {
    std::cout << FormatResult(r) << std::endl;
    all &= r.pass;
  });
  return all ? kExitOk : kExitReject;
}

int Main(int argc, char** argv) {
  CLI::App app{"Lattice public key encryption with equality test"};
  app.require_subcommand(1);

  KeygenArgs kg;
  auto* keygen = app.add_subcommand("keygen", "Generate pk.lpkt and sk.lpkt");
  keygen->add_option("--scheme", kg.scheme, "ring or int")
      ->check(CLI::IsMember({"ring", "int"}))
      ->capture_default_str();
  keygen->add_option("--profile", kg.profile, "strict or toy (toy is NOT secure)")
      ->check(CLI::IsMember({"strict", "toy"}))
      ->capture_default_str();
  keygen->add_option("--n", kg.n, "Dimension (default 256 ring, 32 int)");
  keygen->add_option("--seed", kg.seed, "32-byte hex seed (default: system entropy)");
  keygen->add_option("--out", kg.out, "Output directory")->required();

  EncryptArgs en;
  auto* encrypt = app.add_subcommand("encrypt", "Encrypt a message under a public key");
  encrypt->add_option("--pk", en.pk)->required();
  auto* msg = encrypt->add_option("--message", en.message, "Message as raw bytes");
  auto* hex = encrypt->add_option("--hex", en.hex, "Message as hex");
  msg->excludes(hex);
  encrypt->add_option("--seed", en.seed);
  encrypt->add_option("--out", en.out)->required();

  KeyArgs de;
  auto* decrypt = app.add_subcommand("decrypt", "Decrypt; prints the message as hex");
  decrypt->add_option("--pk", de.pk)->required();
  decrypt->add_option("--sk", de.sk)->required();
  decrypt->add_option("--ct", de.ct)->required();
  decrypt->add_option("--seed", de.seed);

  KeyArgs td;
  auto* trapdoor = app.add_subcommand("trapdoor", "Export an equality-test token");
  trapdoor->add_option("--pk", td.pk)->required();
  trapdoor->add_option("--sk", td.sk)->required();
  trapdoor->add_option("--out", td.out)->required();

  TestArgs te;
  auto* test = app.add_subcommand("test", "Test whether two ciphertexts hold the same message");
  test->add_option("--td-i", te.td_i)->required();
  test->add_option("--ct-i", te.ct_i)->required();
  test->add_option("--td-j", te.td_j)->required();
  test->add_option("--ct-j", te.ct_j)->required();
  test->add_option("--seed", te.seed);

  SelftestArgs st;
  auto* selftest = app.add_subcommand("selftest", "Run the acceptance suite");
  selftest->add_option("--profile", st.profile)
      ->check(CLI::IsMember({"strict", "toy"}))
      ->capture_default_str();
  selftest->add_option("--only", st.only, "Comma-separated criterion numbers");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitMalformed;
  }

  try {
    if (*keygen) return Keygen(kg);
    if (*encrypt) return Encrypt(en);
    if (*decrypt) return Decrypt(de);
    if (*trapdoor) return Trapdoor(td);
    if (*test) return Test(te);
    if (*selftest) return Selftest(st);
  } catch (const Exit& e) {
    return e.code;
  }
  return kExitMalformed;
}

}  // namespace
}  // namespace lpkeet

int main(int argc, char** argv) { return lpkeet::Main(argc, argv); }
