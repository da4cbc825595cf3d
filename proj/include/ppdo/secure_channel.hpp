#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <iomanip>
#include <limits>
#include <memory>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <openssl/evp.h>
#include <openssl/rand.h>

#include "ppdo/error.hpp"
#include "ppdo/rng.hpp"

namespace ppdo {

using Bytes = std::vector<std::uint8_t>;

enum class PayloadKind : std::uint8_t { kY = 'Y', kS = 'S', kW = 'W' };

inline char kind_char(PayloadKind k) { return static_cast<char>(k); }

/// One weighted message a_{li}(k) * {y_i, s_i, w_i}(k) from sender i to receiver l.
struct PlainPayload {
  std::uint32_t sender = 0;
  std::uint32_t receiver = 0;
  std::uint32_t k = 0;
  PayloadKind kind = PayloadKind::kW;
  std::vector<double> data;

  friend bool operator==(const PlainPayload& a, const PlainPayload& b) {
    if (a.sender != b.sender || a.receiver != b.receiver || a.k != b.k || a.kind != b.kind ||
        a.data.size() != b.data.size())
      return false;
    // bit-exact, so NaN payloads and signed zeros compare as sent
    return a.data.empty() || std::memcmp(a.data.data(), b.data.data(), a.data.size() * sizeof(double)) == 0;
  }
};

inline constexpr std::array<std::uint8_t, 4> kPayloadMagic{'P', 'P', 'D', 'O'};
inline constexpr std::uint8_t kPayloadVersion = 1;
inline constexpr std::size_t kPayloadHeaderSize = 4 + 1 + 4 + 4 + 4 + 1 + 2;
inline constexpr std::size_t kNonceSize = 12;
inline constexpr std::size_t kTagSize = 16;
inline constexpr std::size_t kKeySize = 32;
inline constexpr std::size_t kEnvelopeHeaderSize = 4 + 4 + 4 + 1;

namespace detail {

inline void put_u16(Bytes& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}
inline void put_u32(Bytes& out, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
}
inline void put_u64(Bytes& out, std::uint64_t v) {
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
}
inline std::uint64_t get_le(std::span<const std::uint8_t> in, std::size_t at, int width) {
  std::uint64_t v = 0;
  for (int b = 0; b < width; ++b) v |= static_cast<std::uint64_t>(in[at + static_cast<std::size_t>(b)]) << (8 * b);
  return v;
}

inline bool valid_kind(std::uint8_t k) { return k == 'Y' || k == 'S' || k == 'W'; }

}  // namespace detail

/// Canonical body: "PPDO" | version 1 | sender u32 | receiver u32 | k u32 |
/// kind u8 | count u16 | count * binary64, all little-endian.
inline Bytes encode_payload(const PlainPayload& p) {
  if (p.data.size() > std::numeric_limits<std::uint16_t>::max())
    throw ParameterError("payload carries more than 65535 entries");
  if (p.kind == PayloadKind::kW && p.data.size() != 1) throw ParameterError("a W payload carries exactly one entry");
  Bytes out;
  out.reserve(kPayloadHeaderSize + 8 * p.data.size());
  out.insert(out.end(), kPayloadMagic.begin(), kPayloadMagic.end());
  out.push_back(kPayloadVersion);
  detail::put_u32(out, p.sender);
  detail::put_u32(out, p.receiver);
  detail::put_u32(out, p.k);
  out.push_back(static_cast<std::uint8_t>(p.kind));
  detail::put_u16(out, static_cast<std::uint16_t>(p.data.size()));
  for (double x : p.data) detail::put_u64(out, std::bit_cast<std::uint64_t>(x));
  return out;
}

inline PlainPayload decode_payload(std::span<const std::uint8_t> in) {
  if (in.size() < kPayloadHeaderSize) throw DecodeError("payload shorter than its header");
  if (!std::equal(kPayloadMagic.begin(), kPayloadMagic.end(), in.begin())) throw DecodeError("bad payload magic");
  if (in[4] != kPayloadVersion) throw DecodeError("unsupported payload version");
  PlainPayload p;
  p.sender = static_cast<std::uint32_t>(detail::get_le(in, 5, 4));
  p.receiver = static_cast<std::uint32_t>(detail::get_le(in, 9, 4));
  p.k = static_cast<std::uint32_t>(detail::get_le(in, 13, 4));
  if (!detail::valid_kind(in[17])) throw DecodeError("unknown payload kind");
  p.kind = static_cast<PayloadKind>(in[17]);
  const auto count = static_cast<std::size_t>(detail::get_le(in, 18, 2));
  if (in.size() != kPayloadHeaderSize + 8 * count) throw DecodeError("payload length does not match entry count");
  if (p.kind == PayloadKind::kW && count != 1) throw DecodeError("a W payload carries exactly one entry");
  p.data.resize(count);
  for (std::size_t e = 0; e < count; ++e)
    p.data[e] = std::bit_cast<double>(detail::get_le(in, kPayloadHeaderSize + 8 * e, 8));
  return p;
}

/// Pre-shared 256-bit AES key.
class SharedKey {
 public:
  explicit SharedKey(std::span<const std::uint8_t> bytes) {
    if (bytes.size() != kKeySize) throw ParameterError("AES-256 key must be exactly 32 bytes");
    std::copy(bytes.begin(), bytes.end(), bytes_.begin());
  }

  static SharedKey random() {
    std::array<std::uint8_t, kKeySize> b{};
    if (RAND_bytes(b.data(), static_cast<int>(b.size())) != 1) throw Error("RAND_bytes failed");
    return SharedKey(b);
  }

  // Reproducible key for simulations; real deployments provision their own.
  static SharedKey from_seed(std::uint64_t seed) {
    KeyedRng rng(seed, StreamTag::kKey, {});
    std::array<std::uint8_t, kKeySize> b{};
    for (std::size_t w = 0; w < kKeySize / 8; ++w) {
      const auto v = rng();
      for (int i = 0; i < 8; ++i) b[8 * w + static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v >> (8 * i));
    }
    return SharedKey(b);
  }

  const std::array<std::uint8_t, kKeySize>& bytes() const noexcept { return bytes_; }

 private:
  std::array<std::uint8_t, kKeySize> bytes_{};
};

using Nonce = std::array<std::uint8_t, kNonceSize>;

/// Per-sender nonce counter: 8-byte little-endian counter followed by the
/// 4-byte sender id. Owned by the sending agent, never shared.
class NonceSource {
 public:
  explicit NonceSource(std::uint32_t sender, std::uint64_t start = 0) : sender_(sender), counter_(start) {}

  Nonce next() {
    if (exhausted_) throw NonceExhausted("nonce counter for sender " + std::to_string(sender_) + " exhausted");
    Nonce n{};
    for (int b = 0; b < 8; ++b) n[static_cast<std::size_t>(b)] = static_cast<std::uint8_t>(counter_ >> (8 * b));
    for (int b = 0; b < 4; ++b) n[8 + static_cast<std::size_t>(b)] = static_cast<std::uint8_t>(sender_ >> (8 * b));
    if (counter_ == std::numeric_limits<std::uint64_t>::max())
      exhausted_ = true;
    else
      ++counter_;
    return n;
  }

  std::uint32_t sender() const noexcept { return sender_; }

 private:
  std::uint32_t sender_;
  std::uint64_t counter_;
  bool exhausted_ = false;
};

struct EnvelopeHeader {
  std::uint32_t sender = 0;
  std::uint32_t receiver = 0;
  std::uint32_t k = 0;
  PayloadKind kind = PayloadKind::kW;
  friend bool operator==(const EnvelopeHeader&, const EnvelopeHeader&) = default;
};

/// Clear header (bound as associated data), nonce, and ciphertext with the
/// 16-byte GCM tag appended.
struct CipherEnvelope {
  EnvelopeHeader header;
  Nonce nonce{};
  Bytes ciphertext;  // body || tag
};

namespace detail {

inline Bytes header_bytes(const EnvelopeHeader& h) {
  Bytes out;
  put_u32(out, h.sender);
  put_u32(out, h.receiver);
  put_u32(out, h.k);
  out.push_back(static_cast<std::uint8_t>(h.kind));
  return out;
}

struct CipherCtxDeleter {
  void operator()(EVP_CIPHER_CTX* c) const noexcept { EVP_CIPHER_CTX_free(c); }
};
using CipherCtx = std::unique_ptr<EVP_CIPHER_CTX, CipherCtxDeleter>;

inline CipherCtx new_ctx() {
  CipherCtx ctx(EVP_CIPHER_CTX_new());
  if (!ctx) throw Error("EVP_CIPHER_CTX_new failed");
  return ctx;
}

}  // namespace detail

inline CipherEnvelope encrypt(const SharedKey& key, const PlainPayload& p, NonceSource& nonces) {
  CipherEnvelope env;
  env.header = {p.sender, p.receiver, p.k, p.kind};
  env.nonce = nonces.next();
  const Bytes body = encode_payload(p);
  const Bytes aad = detail::header_bytes(env.header);

  auto ctx = detail::new_ctx();
  int len = 0;
  bool ok = EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, nullptr, nullptr) == 1 &&
            EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_IVLEN, static_cast<int>(kNonceSize), nullptr) == 1 &&
            EVP_EncryptInit_ex(ctx.get(), nullptr, nullptr, key.bytes().data(), env.nonce.data()) == 1 &&
            EVP_EncryptUpdate(ctx.get(), nullptr, &len, aad.data(), static_cast<int>(aad.size())) == 1;
  env.ciphertext.resize(body.size() + kTagSize);
  ok = ok && EVP_EncryptUpdate(ctx.get(), env.ciphertext.data(), &len, body.data(), static_cast<int>(body.size())) == 1;
  int tail = 0;
  ok = ok && EVP_EncryptFinal_ex(ctx.get(), env.ciphertext.data() + len, &tail) == 1 &&
       EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG, static_cast<int>(kTagSize),
                           env.ciphertext.data() + body.size()) == 1;
  if (!ok) throw Error("AES-256-GCM encryption failed");
  return env;
}

inline PlainPayload decrypt(const SharedKey& key, const CipherEnvelope& env) {
  if (env.ciphertext.size() < kTagSize) throw DecodeError("ciphertext shorter than its tag");
  const std::size_t body_len = env.ciphertext.size() - kTagSize;
  const Bytes aad = detail::header_bytes(env.header);
  Bytes body(body_len);
  std::array<std::uint8_t, kTagSize> tag{};
  std::copy(env.ciphertext.end() - static_cast<std::ptrdiff_t>(kTagSize), env.ciphertext.end(), tag.begin());

  auto ctx = detail::new_ctx();
  int len = 0;
  bool ok = EVP_DecryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, nullptr, nullptr) == 1 &&
            EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_IVLEN, static_cast<int>(kNonceSize), nullptr) == 1 &&
            EVP_DecryptInit_ex(ctx.get(), nullptr, nullptr, key.bytes().data(), env.nonce.data()) == 1 &&
            EVP_DecryptUpdate(ctx.get(), nullptr, &len, aad.data(), static_cast<int>(aad.size())) == 1 &&
            EVP_DecryptUpdate(ctx.get(), body.data(), &len, env.ciphertext.data(), static_cast<int>(body_len)) == 1 &&
            EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG, static_cast<int>(kTagSize), tag.data()) == 1;
  if (!ok) throw Error("AES-256-GCM setup failed");
  int tail = 0;
  if (EVP_DecryptFinal_ex(ctx.get(), body.data() + len, &tail) != 1)
    throw TamperError("authentication failed: wrong key or modified envelope");

  PlainPayload p = decode_payload(body);
  if (EnvelopeHeader{p.sender, p.receiver, p.k, p.kind} != env.header)
    throw DecodeError("envelope header disagrees with the authenticated body");
  return p;
}

// header (13 bytes) || nonce (12) || ciphertext || tag (16)
inline Bytes serialize_envelope(const CipherEnvelope& env) {
  Bytes out = detail::header_bytes(env.header);
  out.insert(out.end(), env.nonce.begin(), env.nonce.end());
  out.insert(out.end(), env.ciphertext.begin(), env.ciphertext.end());
  return out;
}

inline CipherEnvelope parse_envelope(std::span<const std::uint8_t> in) {
  if (in.size() < kEnvelopeHeaderSize + kNonceSize + kTagSize) throw DecodeError("envelope too short");
  CipherEnvelope env;
  env.header.sender = static_cast<std::uint32_t>(detail::get_le(in, 0, 4));
  env.header.receiver = static_cast<std::uint32_t>(detail::get_le(in, 4, 4));
  env.header.k = static_cast<std::uint32_t>(detail::get_le(in, 8, 4));
  if (!detail::valid_kind(in[12])) throw DecodeError("unknown envelope kind");
  env.header.kind = static_cast<PayloadKind>(in[12]);
  std::copy_n(in.begin() + kEnvelopeHeaderSize, kNonceSize, env.nonce.begin());
  env.ciphertext.assign(in.begin() + static_cast<std::ptrdiff_t>(kEnvelopeHeaderSize + kNonceSize), in.end());
  return env;
}

inline std::string to_hex(std::span<const std::uint8_t> bytes) {
  std::ostringstream os;
  os << std::hex << std::setfill('0');
  for (auto b : bytes) os << std::setw(2) << static_cast<int>(b);
  return os.str();
}

// True when some `window`-byte run of `needle` appears anywhere in `haystack`.
inline bool shares_substring(std::span<const std::uint8_t> needle, std::span<const std::uint8_t> haystack,
                             std::size_t window = 8) {
  if (needle.size() < window || haystack.size() < window) return false;
  for (std::size_t i = 0; i + window <= needle.size(); ++i) {
    auto first = needle.begin() + static_cast<std::ptrdiff_t>(i);
    if (std::search(haystack.begin(), haystack.end(), first, first + static_cast<std::ptrdiff_t>(window)) !=
        haystack.end())
      return true;
  }
  return false;
}

}  // namespace ppdo
