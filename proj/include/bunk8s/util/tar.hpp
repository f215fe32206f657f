/*
 * Copyright (C) 2026 The bunk8s authors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace bunk8s::util {

struct TarEntry {
  std::string path;     // relative, '/'-separated
  std::string content;  // ignored for directories
  bool is_dir = false;

  bool operator==(const TarEntry&) const = default;
};

/// Packs entries into a ustar archive. Output is canonical: entries are
/// sorted by path, metadata (mode, uid/gid, mtime) is fixed, so identical
/// entry sets produce identical bytes.
std::string tar_pack(std::vector<TarEntry> entries);

/// Unpacks a ustar/GNU archive produced by tar_pack or by `tar cf -`.
/// Hardlinks, symlinks and other special entries are skipped.
/// Throws std::runtime_error on a corrupt archive.
std::vector<TarEntry> tar_unpack(std::string_view archive);

/// True if `data` plausibly starts with a tar header (ustar magic).
bool looks_like_tar(std::string_view data);

}  // namespace bunk8s::util
