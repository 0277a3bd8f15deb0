#include "vlcp/mac.hpp"

#include <openssl/core_names.h>
#include <openssl/evp.h>
#include <openssl/params.h>

#include <memory>
#include <stdexcept>

namespace vlcp {

std::uint64_t compute_mac(const BitVec& payload, const MacKey& key) {
  const std::vector<std::uint8_t> data = payload.to_bytes();

  struct MacFree {
    void operator()(EVP_MAC* m) const { EVP_MAC_free(m); }
    void operator()(EVP_MAC_CTX* c) const { EVP_MAC_CTX_free(c); }
  };
  std::unique_ptr<EVP_MAC, MacFree> mac(EVP_MAC_fetch(nullptr, "HMAC", nullptr));
  if (!mac) throw std::runtime_error("HMAC unavailable");
  std::unique_ptr<EVP_MAC_CTX, MacFree> ctx(EVP_MAC_CTX_new(mac.get()));
  if (!ctx) throw std::runtime_error("HMAC context allocation failed");

  char digest[] = "SHA256";
  OSSL_PARAM params[] = {
      OSSL_PARAM_construct_utf8_string(OSSL_MAC_PARAM_DIGEST, digest, 0),
      OSSL_PARAM_construct_end()};
  if (EVP_MAC_init(ctx.get(), key.data(), key.size(), params) != 1 ||
      EVP_MAC_update(ctx.get(), data.data(), data.size()) != 1) {
    throw std::runtime_error("HMAC computation failed");
  }
  unsigned char out[EVP_MAX_MD_SIZE];
  std::size_t out_len = 0;
  if (EVP_MAC_final(ctx.get(), out, &out_len, sizeof(out)) != 1 || out_len < 8) {
    throw std::runtime_error("HMAC finalization failed");
  }

  std::uint64_t tag = 0;
  for (int i = 0; i < 8; ++i) tag = (tag << 8) | out[i];
  return tag;
}

MacKey parse_key_hex(const std::string& hex) {
  if (hex.size() != 32) throw std::invalid_argument("key must be 32 hex digits (128 bits)");
  BitVec bits = BitVec::from_hex(hex);
  std::vector<std::uint8_t> bytes = bits.to_bytes();
  MacKey key{};
  std::copy(bytes.begin(), bytes.end(), key.begin());
  return key;
}

std::string key_to_hex(const MacKey& key) {
  return BitVec::from_bytes(std::span<const std::uint8_t>(key.data(), key.size()),
                            key.size() * 8)
      .to_hex();
}

}  // namespace vlcp
