#include "slp/canonical.hpp"

#include <algorithm>

#include <openssl/evp.h>

#include "slp/error.hpp"

namespace slp {

void encode_sorted_values(std::span<const Int> sorted_values,
                          std::vector<std::uint8_t>& out) {
  const std::uint32_t n = static_cast<std::uint32_t>(sorted_values.size());
  out.push_back(static_cast<std::uint8_t>(n >> 24));
  out.push_back(static_cast<std::uint8_t>(n >> 16));
  out.push_back(static_cast<std::uint8_t>(n >> 8));
  out.push_back(static_cast<std::uint8_t>(n));
  for (const Int& v : sorted_values) append_length_prefixed_be(v, out);
}

namespace {

struct Sha256Ctx {
  EVP_MD_CTX* ctx = nullptr;
  Sha256Ctx() : ctx(EVP_MD_CTX_new()) {}
  ~Sha256Ctx() { EVP_MD_CTX_free(ctx); }
};

Digest128 digest_from_sha(const unsigned char* md) {
  Digest128 d;
  for (int i = 0; i < 8; ++i) d.hi = (d.hi << 8) | md[i];
  for (int i = 8; i < 16; ++i) d.lo = (d.lo << 8) | md[i];
  return d;
}

}  // namespace

Digest128 digest_bytes(std::span<const std::uint8_t> bytes) {
  thread_local Sha256Ctx tls;
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int md_len = 0;
  EVP_DigestInit_ex(tls.ctx, EVP_sha256(), nullptr);
  EVP_DigestUpdate(tls.ctx, bytes.data(), bytes.size());
  EVP_DigestFinal_ex(tls.ctx, md, &md_len);
  return digest_from_sha(md);
}

Digest128 digest_sorted_values(std::span<const Int> sorted_values) {
  thread_local std::vector<std::uint8_t> buf;
  buf.clear();
  encode_sorted_values(sorted_values, buf);
  return digest_bytes(buf);
}

Digest128 digest_spliced(std::uint32_t count, std::span<const std::uint8_t> pre,
                         std::span<const std::uint8_t> mid,
                         std::span<const std::uint8_t> post) {
  thread_local Sha256Ctx tls;
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int md_len = 0;
  const std::uint8_t header[4] = {
      static_cast<std::uint8_t>(count >> 24), static_cast<std::uint8_t>(count >> 16),
      static_cast<std::uint8_t>(count >> 8), static_cast<std::uint8_t>(count)};
  EVP_DigestInit_ex(tls.ctx, EVP_sha256(), nullptr);
  EVP_DigestUpdate(tls.ctx, header, 4);
  if (!pre.empty()) EVP_DigestUpdate(tls.ctx, pre.data(), pre.size());
  if (!mid.empty()) EVP_DigestUpdate(tls.ctx, mid.data(), mid.size());
  if (!post.empty()) EVP_DigestUpdate(tls.ctx, post.data(), post.size());
  EVP_DigestFinal_ex(tls.ctx, md, &md_len);
  return digest_from_sha(md);
}

CanonicalKey canonical_key(const Evaluation& evaluation) {
  if (!is_normalized(evaluation)) {
    throw NotNormalizedError("canonical keys are defined for normalized programs only");
  }
  CanonicalKey key;
  key.sorted_values = evaluation.values;
  std::sort(key.sorted_values.begin(), key.sorted_values.end());
  key.digest = digest_sorted_values(key.sorted_values);
  return key;
}

}  // namespace slp
