/*
 * Copyright (C) 2026 The bunk8s authors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bunk8s::config {

/// Malformed YAML.
class SyntaxError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Structurally wrong document: missing required field, wrong type, or an
/// unknown key. The message names the offending path, e.g.
/// "coordinatorConfig.testRunnerPods[0].testTimeout".
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// Well-formed document whose values violate an invariant. The message names
/// the field and the violated rule.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string field, const std::string& rule)
      : std::runtime_error(field + ": " + rule), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// How the launcher reaches the coordinator.
struct LauncherConfig {
  std::string coordinator_host;        // hostname or IP of the Ingress
  std::uint16_t coordinator_port = 0;  // 1..65535
  std::optional<std::string> cert_file;  // CA bundle (PEM); existence checked at connect time

  bool operator==(const LauncherConfig&) const = default;
};

/// One test runner container inside a pod.
struct TestContainerSpec {
  std::string container_name;  // DNS-1123 label
  std::string image;
  std::vector<std::string> startup_commands;     // replaces the image entrypoint; empty = keep it
  std::vector<std::string> startup_command_args; // args for startup_commands
  std::string test_result_path;                  // absolute path inside the container

  bool operator==(const TestContainerSpec&) const = default;
};

/// One test runner pod: where it goes and what runs inside it.
struct TestRunnerPodSpec {
  std::string pod_name;   // DNS-1123 label
  std::string ns;         // DNS-1123 label
  std::chrono::seconds test_timeout{0};
  std::vector<TestContainerSpec> containers;  // non-empty, distinct names

  bool operator==(const TestRunnerPodSpec&) const = default;
};

/// The full run: every pod to deploy. (pod_name, ns) pairs are distinct.
struct TestRunConfig {
  std::vector<TestRunnerPodSpec> pods;

  bool operator==(const TestRunConfig&) const = default;
};

struct ParsedConfig {
  LauncherConfig launcher;
  TestRunConfig run;

  bool operator==(const ParsedConfig&) const = default;
};

/// Parses and validates a run-configuration document. Pure: no filesystem or
/// network access. Throws SyntaxError, SchemaError or ValidationError; never
/// returns a partially populated result.
ParsedConfig parse_config(const std::string& document);

/// Emits a canonical document that parse_config maps back to equal values.
/// Key order is fixed; absent certFile and empty command lists are omitted.
std::string render_config(const LauncherConfig& launcher, const TestRunConfig& run);

/// Invariant checks, shared with the wire decoder. Throw ValidationError.
void validate(const LauncherConfig& launcher);
void validate(const TestRunConfig& run);

/// DNS-1123 label: lowercase alphanumerics and '-', at most 63 chars,
/// starts and ends alphanumeric.
bool is_dns1123_label(std::string_view s);

}  // namespace bunk8s::config
