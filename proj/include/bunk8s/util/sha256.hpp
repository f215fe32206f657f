/*
 * Copyright (C) 2026 The bunk8s authors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <string>
#include <string_view>

namespace bunk8s::util {

/// Lowercase hex SHA-256 digest of `data`.
std::string sha256_hex(std::string_view data);

/// Digest of a file's contents. Throws std::runtime_error if unreadable.
std::string sha256_hex_file(const std::string& path);

}  // namespace bunk8s::util
