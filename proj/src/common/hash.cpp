// Copyright 2026 The qbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qbench/common/hash.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <memory>

#include "qbench/common/error.hpp"

namespace qbench {

ValidationError::ValidationError(std::vector<std::string> problems)
    : Error(ErrorKind::Validation,
            [&] {
              std::string msg = "validation failed";
              for (const auto& p : problems) msg += "; " + p;
              return msg;
            }()),
      problems_(std::move(problems)) {}

std::string sha256_hex(std::string_view data) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              &EVP_MD_CTX_free);
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1) {
    throw Error(ErrorKind::Execution, "sha256 computation failed");
  }
  std::string out;
  out.reserve(2 * len);
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    out += buf;
  }
  return out;
}

std::string canonical_dump(const json& value) {
  // nlohmann::json stores objects in std::map, so keys come out sorted and
  // doubles use the shortest round-trip representation.
  return value.dump(-1, ' ', false, json::error_handler_t::strict);
}

std::string content_hash(const json& value, std::size_t n) {
  return sha256_hex(canonical_dump(value)).substr(0, n);
}

}  // namespace qbench
