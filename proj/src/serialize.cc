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

#include "lpkeet/serialize.h"

#include <cstring>

#include "absl/strings/str_cat.h"
#include "lpkeet/modarith.h"
#include "lpkeet/status.h"

namespace lpkeet {

namespace {

constexpr char kMagic[4] = {'L', 'P', 'K', 'T'};

class Writer {
 public:
  void U8(uint8_t v) { out_.push_back(v); }
  void U32(uint32_t v) { Le(v, 4); }
  void U64(uint64_t v) { Le(v, 8); }
  void I64(int64_t v) { Le(static_cast<uint64_t>(v), 8); }
  void Raw(std::span<const uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }
  void Text(const std::string& s) {
    U32(static_cast<uint32_t>(s.size()));
    out_.insert(out_.end(), s.begin(), s.end());
  }

  void Element(const RingElement& e) {
    for (uint64_t c : e.coeffs()) U64(c);
  }
  void Elements(const std::vector<RingElement>& v) {
    U32(static_cast<uint32_t>(v.size()));
    for (const RingElement& e : v) Element(e);
  }
  void Trapdoor(const RingTrapdoor& t) {
    U32(2);
    U32(static_cast<uint32_t>(t.t[0].size()));
    for (const auto& row : t.t) {
      for (const RingElement& e : row) {
        for (int64_t c : e.Centered()) I64(c);
      }
    }
    Element(t.tag);
  }
  void Matrix(const IntMatrix& m) {
    U32(static_cast<uint32_t>(m.rows()));
    U32(static_cast<uint32_t>(m.cols()));
    for (uint64_t v : m.data()) U64(v);
  }
  void Gadget(const IntTrapdoor& t) {
    U32(t.rows);
    U32(t.cols);
    for (int8_t v : t.r) I64(v);
  }
  void Residues(const std::vector<uint64_t>& v) {
    U32(static_cast<uint32_t>(v.size()));
    for (uint64_t x : v) U64(x);
  }

  std::vector<uint8_t> Take() { return std::move(out_); }

 private:
  void Le(uint64_t v, int bytes) {
    for (int i = 0; i < bytes; ++i) out_.push_back(static_cast<uint8_t>(v >> (8 * i)));
  }
  std::vector<uint8_t> out_;
};

// Reads with sticky failure; callers check status() once at the end.
class Reader {
 public:
  explicit Reader(std::span<const uint8_t> in) : in_(in) {}

  uint8_t U8() { return static_cast<uint8_t>(Le(1)); }
  uint32_t U32() { return static_cast<uint32_t>(Le(4)); }
  uint64_t U64() { return Le(8); }
  int64_t I64() { return static_cast<int64_t>(Le(8)); }
  std::span<const uint8_t> Raw(size_t n) {
    if (!Need(n)) return {};
    auto out = in_.subspan(pos_, n);
    pos_ += n;
    return out;
  }
  std::string Text() {
    const uint32_t len = U32();
    auto raw = Raw(len);
    return std::string(raw.begin(), raw.end());
  }

  RingElement Element(const RingPtr& ctx) {
    std::vector<uint64_t> c(ctx->n());
    for (uint64_t& v : c) {
      v = U64();
      if (v >= ctx->q()) Fail("ring coefficient out of range");
    }
    return RingElement(ctx, std::move(c));
  }
  std::vector<RingElement> Elements(const RingPtr& ctx, size_t expect) {
    const uint32_t len = U32();
    std::vector<RingElement> out;
    if (len != expect) {
      Fail(absl::StrCat("expected ", expect, " ring elements, found ", len));
      return out;
    }
    for (uint32_t i = 0; i < len && ok(); ++i) out.push_back(Element(ctx));
    return out;
  }
  RingTrapdoor Trapdoor(const RingPtr& ctx, uint32_t k) {
    RingTrapdoor t;
    if (U32() != 2 || U32() != k) {
      Fail("trapdoor shape mismatch");
      return t;
    }
    const uint64_t q = ctx->q();
    std::vector<int64_t> coeffs(ctx->n());
    for (auto& row : t.t) {
      for (uint32_t j = 0; j < k && ok(); ++j) {
        for (int64_t& c : coeffs) {
          c = I64();
          const int64_t half = static_cast<int64_t>(q / 2);
          if (c > half || c < -half || CenteredLift(ReduceSigned(c, q), q) != c) {
            Fail("trapdoor coefficient is not a centred residue");
          }
        }
        row.push_back(RingElement::FromSigned(ctx, coeffs));
      }
    }
    t.tag = Element(ctx);
    return t;
  }
  IntMatrix Matrix(size_t rows, size_t cols, uint64_t q) {
    if (U32() != rows || U32() != cols) {
      Fail(absl::StrCat("expected a ", rows, " x ", cols, " matrix"));
      return IntMatrix();
    }
    IntMatrix m(rows, cols, q);
    for (uint64_t& v : m.mutable_data()) {
      v = U64();
      if (v >= q) Fail("matrix entry out of range");
      if (!ok()) break;
    }
    return m;
  }
  IntTrapdoor Gadget(size_t rows, size_t cols) {
    IntTrapdoor t;
    t.rows = U32();
    t.cols = U32();
    if (t.rows != rows || t.cols != cols) {
      Fail("gadget trapdoor shape mismatch");
      return t;
    }
    t.r.resize(rows * cols);
    for (int8_t& v : t.r) {
      const int64_t x = I64();
      if (x < -1 || x > 1) Fail("gadget trapdoor entry outside {-1,0,1}");
      v = static_cast<int8_t>(x);
      if (!ok()) break;
    }
    return t;
  }
  std::vector<uint64_t> Residues(size_t expect, uint64_t q) {
    const uint32_t len = U32();
    std::vector<uint64_t> out;
    if (len != expect) {
      Fail(absl::StrCat("expected ", expect, " residues, found ", len));
      return out;
    }
    out.resize(len);
    for (uint64_t& v : out) {
      v = U64();
      if (v >= q) Fail("residue out of range");
      if (!ok()) break;
    }
    return out;
  }

  bool ok() const { return error_.empty(); }
  void Fail(std::string msg) {
    if (error_.empty()) error_ = std::move(msg);
  }
  absl::Status Finish() const {
    if (!ok()) return MakeError(ErrorKind::kMalformed, error_);
    if (pos_ != in_.size()) {
      return MakeError(ErrorKind::kMalformed,
                       absl::StrCat(in_.size() - pos_, " trailing bytes after payload"));
    }
    return absl::OkStatus();
  }

 private:
  bool Need(size_t n) {
    if (!ok()) return false;
    if (in_.size() - pos_ < n) {
      Fail("truncated input");
      return false;
    }
    return true;
  }
  uint64_t Le(int bytes) {
    if (!Need(bytes)) return 0;
    uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) v |= static_cast<uint64_t>(in_[pos_ + i]) << (8 * i);
    pos_ += bytes;
    return v;
  }

  std::span<const uint8_t> in_;
  size_t pos_ = 0;
  std::string error_;
};

template <typename P>
Writer Begin(const P& params) {
  Writer w;
  w.Text(CanonicalText(params));
  return w;
}

std::vector<uint8_t> Frame(Scheme scheme, ObjectKind kind, uint64_t digest,
                           std::vector<uint8_t> payload) {
  Writer w;
  w.Raw(std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(kMagic), 4));
  w.U8(kFrameVersion);
  w.U8(static_cast<uint8_t>(scheme));
  w.U8(static_cast<uint8_t>(kind));
  w.U64(digest);
  w.U64(payload.size());
  w.Raw(payload);
  return w.Take();
}

std::vector<uint8_t> FrameRing(const ParamsRing& p, ObjectKind kind, Writer w) {
  return Frame(Scheme::kRing, kind, ParamsDigest(p), w.Take());
}

std::vector<uint8_t> FrameInt(const ParamsInt& p, ObjectKind kind, Writer w) {
  return Frame(Scheme::kInt, kind, ParamsDigest(p), w.Take());
}

// Validates the frame and returns a reader positioned after the params text.
absl::StatusOr<Reader> OpenPayload(std::span<const uint8_t> bytes, Scheme scheme,
                                   ObjectKind kind, uint64_t digest) {
  LPKEET_ASSIGN_OR_RETURN(const FrameInfo info, InspectFrame(bytes));
  if (info.scheme != scheme || info.kind != kind) {
    return MakeError(ErrorKind::kMalformed,
                     absl::StrCat("expected a ", SchemeName(scheme), " ", KindName(kind),
                                  " file, found ", SchemeName(info.scheme), " ",
                                  KindName(info.kind)));
  }
  if (info.digest != digest) {
    return MakeError(ErrorKind::kParamsMismatch, "file was made under different parameters");
  }
  Reader r(bytes.subspan(kFrameHeaderBytes));
  r.Text();
  return r;
}

}  // namespace

absl::string_view SchemeName(Scheme s) {
  switch (s) {
    case Scheme::kRing:
      return "ring";
    case Scheme::kInt:
      return "int";
  }
  return "unknown";
}

absl::string_view KindName(ObjectKind k) {
  switch (k) {
    case ObjectKind::kPublicKey:
      return "public-key";
    case ObjectKind::kSecretKey:
      return "secret-key";
    case ObjectKind::kCiphertext:
      return "ciphertext";
    case ObjectKind::kToken:
      return "trapdoor";
    case ObjectKind::kParams:
      return "params";
  }
  return "unknown";
}

absl::StatusOr<FrameInfo> InspectFrame(std::span<const uint8_t> bytes) {
  Reader r(bytes);
  auto magic = r.Raw(4);
  const uint8_t version = r.U8();
  const uint8_t scheme = r.U8();
  const uint8_t kind = r.U8();
  const uint64_t digest = r.U64();
  const uint64_t length = r.U64();
  if (!r.ok() || std::memcmp(magic.data(), kMagic, 4) != 0) {
    return MakeError(ErrorKind::kMalformed, "not an LPKT file");
  }
  if (version != kFrameVersion) {
    return MakeError(ErrorKind::kMalformed, absl::StrCat("unsupported frame version ", version));
  }
  if (scheme < 1 || scheme > 2 || kind < 1 || kind > 5) {
    return MakeError(ErrorKind::kMalformed, "unknown scheme or object kind");
  }
  if (length != bytes.size() - kFrameHeaderBytes) {
    return MakeError(ErrorKind::kMalformed, "payload length does not match the file size");
  }
  FrameInfo info{static_cast<Scheme>(scheme), static_cast<ObjectKind>(kind), digest, {}};
  const std::string text = r.Text();
  if (!r.ok()) return MakeError(ErrorKind::kMalformed, "truncated params text");
  uint64_t actual = 0;
  if (info.scheme == Scheme::kRing) {
    LPKEET_ASSIGN_OR_RETURN(ParamsRing p, ParseRingParams(text));
    actual = ParamsDigest(p);
    info.params = p;
  } else {
    LPKEET_ASSIGN_OR_RETURN(ParamsInt p, ParseIntParams(text));
    actual = ParamsDigest(p);
    info.params = p;
  }
  if (actual != digest) {
    return MakeError(ErrorKind::kMalformed, "frame digest does not match the embedded params");
  }
  if (info.kind == ObjectKind::kParams) LPKEET_RETURN_IF_ERROR(r.Finish());
  return info;
}

std::vector<uint8_t> EncodeParams(const ParamsRing& p) {
  return FrameRing(p, ObjectKind::kParams, Begin(p));
}

std::vector<uint8_t> EncodeParams(const ParamsInt& p) {
  return FrameInt(p, ObjectKind::kParams, Begin(p));
}

std::vector<uint8_t> EncodeRingPk(const ParamsRing& p, const PkRing& pk) {
  Writer w = Begin(p);
  w.Elements(pk.a);
  w.Elements(pk.b);
  w.Element(pk.u);
  return FrameRing(p, ObjectKind::kPublicKey, std::move(w));
}

std::vector<uint8_t> EncodeRingSk(const ParamsRing& p, const SkRing& sk) {
  Writer w = Begin(p);
  w.Trapdoor(sk.ta);
  w.Trapdoor(sk.tb);
  return FrameRing(p, ObjectKind::kSecretKey, std::move(w));
}

std::vector<uint8_t> EncodeRingCt(const ParamsRing& p, const CtRing& ct) {
  Writer w = Begin(p);
  w.Elements(ct.sig);
  w.Element(ct.v.v[0]);
  w.Element(ct.v.v[1]);
  w.Element(ct.ct1);
  w.Element(ct.ct2);
  w.Elements(ct.ct3);
  w.Elements(ct.ct4);
  return FrameRing(p, ObjectKind::kCiphertext, std::move(w));
}

std::vector<uint8_t> EncodeRingToken(const ParamsRing& p, const TokenRing& td) {
  Writer w = Begin(p);
  w.Trapdoor(td.tb);
  w.Elements(td.b);
  w.Element(td.u);
  return FrameRing(p, ObjectKind::kToken, std::move(w));
}

absl::StatusOr<PkRing> DecodeRingPk(const RingPkeet& scheme, std::span<const uint8_t> bytes) {
  const ParamsRing& p = scheme.params();
  LPKEET_ASSIGN_OR_RETURN(Reader r, OpenPayload(bytes, Scheme::kRing, ObjectKind::kPublicKey,
                                                ParamsDigest(p)));
  PkRing pk;
  pk.a = r.Elements(scheme.ring(), p.m);
  pk.b = r.Elements(scheme.ring(), p.m);
  pk.u = r.Element(scheme.ring());
  LPKEET_RETURN_IF_ERROR(r.Finish());
  return pk;
}

absl::StatusOr<SkRing> DecodeRingSk(const RingPkeet& scheme, std::span<const uint8_t> bytes) {
  const ParamsRing& p = scheme.params();
  LPKEET_ASSIGN_OR_RETURN(Reader r, OpenPayload(bytes, Scheme::kRing, ObjectKind::kSecretKey,
                                                ParamsDigest(p)));
  SkRing sk;
  sk.ta = r.Trapdoor(scheme.ring(), p.k);
  sk.tb = r.Trapdoor(scheme.ring(), p.k);
  LPKEET_RETURN_IF_ERROR(r.Finish());
  LPKEET_RETURN_IF_ERROR(scheme.AttachSamplers(sk));
  return sk;
}

absl::StatusOr<CtRing> DecodeRingCt(const RingPkeet& scheme, std::span<const uint8_t> bytes) {
  const ParamsRing& p = scheme.params();
  LPKEET_ASSIGN_OR_RETURN(Reader r, OpenPayload(bytes, Scheme::kRing, ObjectKind::kCiphertext,
                                                ParamsDigest(p)));
  CtRing ct;
  ct.sig = r.Elements(scheme.ring(), p.base_len);
  ct.v.v[0] = r.Element(scheme.ring());
  ct.v.v[1] = r.Element(scheme.ring());
  ct.ct1 = r.Element(scheme.ring());
  ct.ct2 = r.Element(scheme.ring());
  ct.ct3 = r.Elements(scheme.ring(), p.m);
  ct.ct4 = r.Elements(scheme.ring(), p.m);
  LPKEET_RETURN_IF_ERROR(r.Finish());
  return ct;
}

absl::StatusOr<TokenRing> DecodeRingToken(const RingPkeet& scheme,
                                          std::span<const uint8_t> bytes) {
  const ParamsRing& p = scheme.params();
  LPKEET_ASSIGN_OR_RETURN(Reader r, OpenPayload(bytes, Scheme::kRing, ObjectKind::kToken,
                                                ParamsDigest(p)));
  TokenRing td;
  td.tb = r.Trapdoor(scheme.ring(), p.k);
  td.b = r.Elements(scheme.ring(), p.m);
  td.u = r.Element(scheme.ring());
  LPKEET_RETURN_IF_ERROR(r.Finish());
  LPKEET_RETURN_IF_ERROR(scheme.AttachSampler(td));
  return td;
}

std::vector<uint8_t> EncodeIntPk(const ParamsInt& p, const PkInt& pk) {
  Writer w = Begin(p);
  w.Matrix(pk.a);
  w.Matrix(pk.a_prime);
  w.U32(static_cast<uint32_t>(pk.a_i.size()));
  for (const IntMatrix& m : pk.a_i) w.Matrix(m);
  w.Matrix(pk.b);
  w.Matrix(pk.u);
  return FrameInt(p, ObjectKind::kPublicKey, std::move(w));
}

std::vector<uint8_t> EncodeIntSk(const ParamsInt& p, const SkInt& sk) {
  Writer w = Begin(p);
  w.Gadget(sk.ta);
  w.Gadget(sk.ta_prime);
  return FrameInt(p, ObjectKind::kSecretKey, std::move(w));
}

std::vector<uint8_t> EncodeIntCt(const ParamsInt& p, const CtInt& ct) {
  Writer w = Begin(p);
  w.Residues(ct.c1);
  w.Residues(ct.c2);
  w.Residues(ct.c3);
  w.Residues(ct.c4);
  w.Residues(ct.u);
  w.Matrix(ct.d);
  return FrameInt(p, ObjectKind::kCiphertext, std::move(w));
}

std::vector<uint8_t> EncodeIntToken(const ParamsInt& p, const TokenInt& td) {
  Writer w = Begin(p);
  w.Gadget(td.ta_prime);
  w.Matrix(td.a_prime);
  w.U32(static_cast<uint32_t>(td.a_i.size()));
  for (const IntMatrix& m : td.a_i) w.Matrix(m);
  w.Matrix(td.b);
  w.Matrix(td.u);
  return FrameInt(p, ObjectKind::kToken, std::move(w));
}

namespace {

std::vector<IntMatrix> ReadExtensions(Reader& r, const ParamsInt& p) {
  std::vector<IntMatrix> out;
  if (r.U32() != p.l) {
    r.Fail("extension matrix count mismatch");
    return out;
  }
  for (uint32_t i = 0; i < p.l && r.ok(); ++i) out.push_back(r.Matrix(p.n, p.m, p.q));
  return out;
}

size_t GadgetRows(const ParamsInt& p) { return p.m - size_t{p.n} * p.k; }

}  // namespace

absl::StatusOr<PkInt> DecodeIntPk(const IntPkeet& scheme, std::span<const uint8_t> bytes) {
  const ParamsInt& p = scheme.params();
  LPKEET_ASSIGN_OR_RETURN(Reader r, OpenPayload(bytes, Scheme::kInt, ObjectKind::kPublicKey,
                                                scheme.digest()));
  PkInt pk;
  pk.a = r.Matrix(p.n, p.m, p.q);
  pk.a_prime = r.Matrix(p.n, p.m, p.q);
  pk.a_i = ReadExtensions(r, p);
  pk.b = r.Matrix(p.n, p.m, p.q);
  pk.u = r.Matrix(p.n, p.t_msg, p.q);
  LPKEET_RETURN_IF_ERROR(r.Finish());
  return pk;
}

absl::StatusOr<SkInt> DecodeIntSk(const IntPkeet& scheme, const PkInt& pk,
                                  std::span<const uint8_t> bytes) {
  const ParamsInt& p = scheme.params();
  LPKEET_ASSIGN_OR_RETURN(Reader r, OpenPayload(bytes, Scheme::kInt, ObjectKind::kSecretKey,
                                                scheme.digest()));
  SkInt sk;
  sk.ta = r.Gadget(GadgetRows(p), size_t{p.n} * p.k);
  sk.ta_prime = r.Gadget(GadgetRows(p), size_t{p.n} * p.k);
  LPKEET_RETURN_IF_ERROR(r.Finish());
  LPKEET_RETURN_IF_ERROR(scheme.AttachBases(pk, sk));
  return sk;
}

absl::StatusOr<CtInt> DecodeIntCt(const IntPkeet& scheme, std::span<const uint8_t> bytes) {
  const ParamsInt& p = scheme.params();
  LPKEET_ASSIGN_OR_RETURN(Reader r, OpenPayload(bytes, Scheme::kInt, ObjectKind::kCiphertext,
                                                scheme.digest()));
  CtInt ct;
  ct.c1 = r.Residues(p.t_msg, p.q);
  ct.c2 = r.Residues(p.t_msg, p.q);
  ct.c3 = r.Residues(2 * size_t{p.m}, p.q);
  ct.c4 = r.Residues(2 * size_t{p.m}, p.q);
  ct.u = r.Residues(p.m, p.q);
  ct.d = r.Matrix(p.n, p.k_sig, p.q);
  LPKEET_RETURN_IF_ERROR(r.Finish());
  return ct;
}

absl::StatusOr<TokenInt> DecodeIntToken(const IntPkeet& scheme, std::span<const uint8_t> bytes) {
  const ParamsInt& p = scheme.params();
  LPKEET_ASSIGN_OR_RETURN(Reader r, OpenPayload(bytes, Scheme::kInt, ObjectKind::kToken,
                                                scheme.digest()));
  TokenInt td;
  td.ta_prime = r.Gadget(GadgetRows(p), size_t{p.n} * p.k);
  td.a_prime = r.Matrix(p.n, p.m, p.q);
  td.a_i = ReadExtensions(r, p);
  td.b = r.Matrix(p.n, p.m, p.q);
  td.u = r.Matrix(p.n, p.t_msg, p.q);
  LPKEET_RETURN_IF_ERROR(r.Finish());
  LPKEET_RETURN_IF_ERROR(scheme.AttachBasis(td));
  return td;
}

}  // namespace lpkeet
