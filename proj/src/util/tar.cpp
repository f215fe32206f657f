/*
 * Copyright (C) 2026 The bunk8s authors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "bunk8s/util/tar.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>

namespace bunk8s::util {

namespace {

constexpr size_t kBlock = 512;

// ustar header field offsets/sizes.
constexpr size_t kNameOff = 0, kNameLen = 100;
constexpr size_t kModeOff = 100;
constexpr size_t kUidOff = 108, kGidOff = 116;
constexpr size_t kSizeOff = 124, kSizeLen = 12;
constexpr size_t kMtimeOff = 136;
constexpr size_t kChksumOff = 148, kChksumLen = 8;
constexpr size_t kTypeOff = 156;
constexpr size_t kMagicOff = 257;
constexpr size_t kPrefixOff = 345, kPrefixLen = 155;

void put_octal(char* field, size_t len, unsigned long long value) {
  // len-1 octal digits, NUL terminated.
  for (size_t i = len - 1; i-- > 0;) {
    field[i] = static_cast<char>('0' + (value & 7));
    value >>= 3;
  }
  field[len - 1] = '\0';
}

unsigned long long parse_octal(const char* field, size_t len) {
  unsigned long long v = 0;
  size_t i = 0;
  while (i < len && (field[i] == ' ' || field[i] == '\0')) ++i;
  for (; i < len && field[i] >= '0' && field[i] <= '7'; ++i) v = (v << 3) + (field[i] - '0');
  return v;
}

void fill_checksum(char* hdr) {
  std::memset(hdr + kChksumOff, ' ', kChksumLen);
  unsigned sum = 0;
  for (size_t i = 0; i < kBlock; ++i) sum += static_cast<unsigned char>(hdr[i]);
  // 6 octal digits, NUL, space.
  for (size_t i = 6; i-- > 0;) {
    hdr[kChksumOff + i] = static_cast<char>('0' + (sum & 7));
    sum >>= 3;
  }
  hdr[kChksumOff + 6] = '\0';
  hdr[kChksumOff + 7] = ' ';
}

std::string make_header(const std::string& path, size_t size, bool is_dir) {
  std::string name = path;
  std::string prefix;
  if (is_dir && !name.ends_with('/')) name += '/';
  if (name.size() > kNameLen) {
    // Split at a '/' so that the tail fits in name and the head in prefix.
    size_t split = name.rfind('/', kNameLen);
    if (split == std::string::npos || split == 0 || name.size() - split - 1 > kNameLen ||
        split > kPrefixLen)
      throw std::runtime_error("tar: path too long: " + path);
    prefix = name.substr(0, split);
    name = name.substr(split + 1);
  }
  std::string hdr(kBlock, '\0');
  std::memcpy(hdr.data() + kNameOff, name.data(), name.size());
  put_octal(hdr.data() + kModeOff, 8, is_dir ? 0755 : 0644);
  put_octal(hdr.data() + kUidOff, 8, 0);
  put_octal(hdr.data() + kGidOff, 8, 0);
  put_octal(hdr.data() + kSizeOff, kSizeLen, is_dir ? 0 : size);
  put_octal(hdr.data() + kMtimeOff, kSizeLen, 0);
  hdr[kTypeOff] = is_dir ? '5' : '0';
  std::memcpy(hdr.data() + kMagicOff, "ustar\00000", 8);
  std::memcpy(hdr.data() + kPrefixOff, prefix.data(), prefix.size());
  fill_checksum(hdr.data());
  return hdr;
}

std::string trimmed_field(const char* p, size_t len) {
  size_t n = 0;
  while (n < len && p[n] != '\0') ++n;
  return std::string(p, n);
}

bool is_zero_block(const char* p) {
  for (size_t i = 0; i < kBlock; ++i)
    if (p[i] != '\0') return false;
  return true;
}

}  // namespace

std::string tar_pack(std::vector<TarEntry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const TarEntry& a, const TarEntry& b) { return a.path < b.path; });
  std::string out;
  for (const auto& e : entries) {
    out += make_header(e.path, e.content.size(), e.is_dir);
    if (!e.is_dir) {
      out += e.content;
      if (size_t rem = e.content.size() % kBlock) out.append(kBlock - rem, '\0');
    }
  }
  out.append(2 * kBlock, '\0');
  return out;
}

std::vector<TarEntry> tar_unpack(std::string_view archive) {
  std::vector<TarEntry> entries;
  size_t off = 0;
  std::string pending_longname;
  while (off + kBlock <= archive.size()) {
    const char* hdr = archive.data() + off;
    if (is_zero_block(hdr)) break;  // end-of-archive marker
    if (std::memcmp(hdr + kMagicOff, "ustar", 5) != 0)
      throw std::runtime_error("tar: bad magic at offset " + std::to_string(off));
    unsigned long long size = parse_octal(hdr + kSizeOff, kSizeLen);
    char type = hdr[kTypeOff];
    size_t data_blocks = (size + kBlock - 1) / kBlock;
    if (off + kBlock + data_blocks * kBlock > archive.size())
      throw std::runtime_error("tar: truncated archive");
    std::string_view data = archive.substr(off + kBlock, size);
    off += kBlock + data_blocks * kBlock;

    if (type == 'L') {  // GNU long name: applies to the next entry
      pending_longname = std::string(data);
      while (!pending_longname.empty() && pending_longname.back() == '\0')
        pending_longname.pop_back();
      continue;
    }
    if (type == 'x' || type == 'g') continue;  // pax headers: skip

    std::string path;
    if (!pending_longname.empty()) {
      path = std::move(pending_longname);
      pending_longname.clear();
    } else {
      path = trimmed_field(hdr + kNameOff, kNameLen);
      std::string prefix = trimmed_field(hdr + kPrefixOff, kPrefixLen);
      if (!prefix.empty()) path = prefix + "/" + path;
    }
    if (path.starts_with("./")) path.erase(0, 2);
    if (type == '5' || (!path.empty() && path.back() == '/')) {
      while (!path.empty() && path.back() == '/') path.pop_back();
      if (!path.empty()) entries.push_back({path, "", true});
    } else if (type == '0' || type == '\0') {
      entries.push_back({std::move(path), std::string(data), false});
    }
    // Other entry types (links, devices, fifos) are ignored.
  }
  return entries;
}

bool looks_like_tar(std::string_view data) {
  return data.size() >= kBlock && std::memcmp(data.data() + kMagicOff, "ustar", 5) == 0;
}

}  // namespace bunk8s::util
