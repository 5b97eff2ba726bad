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

#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

namespace qbench {

using json = nlohmann::json;

/// Lower-case hex SHA-256 digest.
std::string sha256_hex(std::string_view data);

/// Key-sorted compact serialization; stable across runs and platforms.
std::string canonical_dump(const json& value);

/// First \p n hex characters of sha256(canonical_dump(value)).
std::string content_hash(const json& value, std::size_t n = 8);

}  // namespace qbench
