/*
 * Copyright (C) 2026 The bunk8s authors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bunk8s/config.hpp"

namespace bunk8s::rpc {

/// Per-container outcome. verdict is Passed iff exit_code == 0 and NotRun iff
/// exit_code is absent.
enum class Verdict { Passed, Failed, NotRun };

/// Per-pod outcome. Succeeded iff every container verdict is Passed.
enum class PodStatus { Succeeded, Failed, TimedOut, Error };

/// Reply-level outcome of DeployTestRunner.
enum class ReplyCode { Ok, ErrNamespaceMissing, ErrPodConflict, ErrCreateFailed, ErrInternal };

std::string_view to_string(Verdict v);
std::string_view to_string(PodStatus s);
std::string_view to_string(ReplyCode c);

struct ContainerResult {
  std::string container_name;
  std::optional<int> exit_code;  // absent iff the container never terminated
  std::string result_path;       // echo of the container's testResultPath
  Verdict verdict = Verdict::NotRun;

  bool operator==(const ContainerResult&) const = default;
};

struct PodResult {
  std::string pod_name;
  std::string ns;
  std::string sidecar_name;  // non-empty whenever extraction is possible
  PodStatus status = PodStatus::Error;
  std::vector<ContainerResult> containers;
  std::string message;

  bool operator==(const PodResult&) const = default;
};

struct DeployRequest {
  std::string run_id;  // opaque launcher-generated token
  config::TestRunConfig run;

  bool operator==(const DeployRequest&) const = default;
};

struct DeployReply {
  std::string run_id;  // echo of the request token
  ReplyCode code = ReplyCode::ErrInternal;
  std::vector<PodResult> pods;  // empty when code != Ok
  std::string detail;           // names the offending namespace/pod when code != Ok

  bool operator==(const DeployReply&) const = default;
};

/// Raised by the decoders: malformed JSON (offset points at the byte where
/// parsing stopped) or a value violating the message invariants (offset 0).
class DecodeError : public std::runtime_error {
 public:
  DecodeError(std::size_t offset, const std::string& reason)
      : std::runtime_error("decode error at byte " + std::to_string(offset) + ": " + reason),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// UTF-8 JSON wire form, deterministic key order. decode(encode(x)) == x.
// Encoders throw std::invalid_argument when the value violates its own
// invariants; decoders throw DecodeError.
std::string encode_request(const DeployRequest& req);
DeployRequest decode_request(std::string_view bytes);
std::string encode_reply(const DeployReply& rep);
DeployReply decode_reply(std::string_view bytes);

}  // namespace bunk8s::rpc
