/*
 * Copyright (C) 2026 The bunk8s authors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "bunk8s/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <set>
#include <sstream>
#include <utility>

namespace bunk8s::config {

namespace {

// ---- schema helpers -------------------------------------------------------

void require_map(const YAML::Node& node, const std::string& path) {
  if (!node.IsDefined() || node.IsNull())
    throw SchemaError(path, "required section is missing");
  if (!node.IsMap()) throw SchemaError(path, "expected a mapping");
}

void require_keys(const YAML::Node& map, const std::string& path,
                  std::initializer_list<const char*> allowed) {
  for (const auto& kv : map) {
    std::string key;
    try {
      key = kv.first.as<std::string>();
    } catch (const YAML::Exception&) {
      throw SchemaError(path, "non-scalar key");
    }
    if (std::find_if(allowed.begin(), allowed.end(),
                     [&](const char* a) { return key == a; }) == allowed.end())
      throw SchemaError(path.empty() ? key : path + "." + key, "unknown key");
  }
}

std::string get_string(const YAML::Node& map, const std::string& path, const char* key) {
  YAML::Node n = map[key];
  if (!n.IsDefined() || n.IsNull())
    throw SchemaError(path + "." + key, "required field is missing");
  if (!n.IsScalar()) throw SchemaError(path + "." + key, "expected a string");
  return n.as<std::string>();
}

long long get_integer(const YAML::Node& map, const std::string& path, const char* key) {
  YAML::Node n = map[key];
  if (!n.IsDefined() || n.IsNull())
    throw SchemaError(path + "." + key, "required field is missing");
  if (!n.IsScalar()) throw SchemaError(path + "." + key, "expected an integer");
  try {
    return n.as<long long>();
  } catch (const YAML::Exception&) {
    throw SchemaError(path + "." + key, "expected an integer");
  }
}

std::vector<std::string> get_string_list(const YAML::Node& map, const std::string& path,
                                         const char* key) {
  YAML::Node n = map[key];
  if (!n.IsDefined() || n.IsNull()) return {};  // optional, defaults to empty
  if (!n.IsSequence()) throw SchemaError(path + "." + key, "expected a list of strings");
  std::vector<std::string> out;
  for (size_t i = 0; i < n.size(); ++i) {
    if (!n[i].IsScalar())
      throw SchemaError(path + "." + key + "[" + std::to_string(i) + "]", "expected a string");
    out.push_back(n[i].as<std::string>());
  }
  return out;
}

// ---- section parsers ------------------------------------------------------

LauncherConfig parse_launcher_section(const YAML::Node& node) {
  const std::string path = "launcherConfig";
  require_map(node, path);
  require_keys(node, path, {"coordinatorIp", "coordinatorPort", "certFile"});
  LauncherConfig lc;
  lc.coordinator_host = get_string(node, path, "coordinatorIp");
  long long port = get_integer(node, path, "coordinatorPort");
  if (port < 1 || port > 65535)
    throw ValidationError(path + ".coordinatorPort", "must be in [1, 65535]");
  lc.coordinator_port = static_cast<std::uint16_t>(port);
  if (YAML::Node cert = node["certFile"]; cert.IsDefined() && !cert.IsNull()) {
    if (!cert.IsScalar()) throw SchemaError(path + ".certFile", "expected a string");
    lc.cert_file = cert.as<std::string>();
  }
  return lc;
}

TestContainerSpec parse_container(const YAML::Node& node, const std::string& path) {
  require_map(node, path);
  require_keys(node, path, {"containerName", "image", "startupCommands", "startupCommandsArgs",
                            "testResultPath"});
  TestContainerSpec c;
  c.container_name = get_string(node, path, "containerName");
  c.image = get_string(node, path, "image");
  c.startup_commands = get_string_list(node, path, "startupCommands");
  c.startup_command_args = get_string_list(node, path, "startupCommandsArgs");
  c.test_result_path = get_string(node, path, "testResultPath");
  return c;
}

TestRunnerPodSpec parse_pod(const YAML::Node& node, const std::string& path) {
  require_map(node, path);
  require_keys(node, path, {"podName", "namespace", "testTimeout", "containers"});
  TestRunnerPodSpec p;
  p.pod_name = get_string(node, path, "podName");
  p.ns = get_string(node, path, "namespace");
  p.test_timeout = std::chrono::seconds(get_integer(node, path, "testTimeout"));
  YAML::Node containers = node["containers"];
  if (!containers.IsDefined() || containers.IsNull())
    throw SchemaError(path + ".containers", "required field is missing");
  if (!containers.IsSequence()) throw SchemaError(path + ".containers", "expected a list");
  for (size_t i = 0; i < containers.size(); ++i)
    p.containers.push_back(
        parse_container(containers[i], path + ".containers[" + std::to_string(i) + "]"));
  return p;
}

TestRunConfig parse_coordinator_section(const YAML::Node& node) {
  const std::string path = "coordinatorConfig";
  require_map(node, path);
  require_keys(node, path, {"testRunnerPods"});
  YAML::Node pods = node["testRunnerPods"];
  if (!pods.IsDefined() || pods.IsNull())
    throw SchemaError(path + ".testRunnerPods", "required field is missing");
  if (!pods.IsSequence()) throw SchemaError(path + ".testRunnerPods", "expected a list");
  TestRunConfig run;
  for (size_t i = 0; i < pods.size(); ++i)
    run.pods.push_back(parse_pod(pods[i], path + ".testRunnerPods[" + std::to_string(i) + "]"));
  return run;
}

}  // namespace

bool is_dns1123_label(std::string_view s) {
  if (s.empty() || s.size() > 63) return false;
  auto alnum = [](char c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'); };
  if (!alnum(s.front()) || !alnum(s.back())) return false;
  return std::all_of(s.begin(), s.end(), [&](char c) { return alnum(c) || c == '-'; });
}

void validate(const LauncherConfig& lc) {
  if (lc.coordinator_host.empty())
    throw ValidationError("launcherConfig.coordinatorIp", "must be non-empty");
  if (lc.coordinator_port < 1)
    throw ValidationError("launcherConfig.coordinatorPort", "must be in [1, 65535]");
  if (lc.cert_file && lc.cert_file->empty())
    throw ValidationError("launcherConfig.certFile", "must be a non-empty path when present");
}

void validate(const TestRunConfig& run) {
  if (run.pods.empty())
    throw ValidationError("coordinatorConfig.testRunnerPods", "must list at least one pod");
  std::set<std::pair<std::string, std::string>> seen;
  for (size_t i = 0; i < run.pods.size(); ++i) {
    const auto& pod = run.pods[i];
    const std::string path = "coordinatorConfig.testRunnerPods[" + std::to_string(i) + "]";
    if (!is_dns1123_label(pod.pod_name))
      throw ValidationError(path + ".podName", "must be a DNS-1123 label");
    if (!is_dns1123_label(pod.ns))
      throw ValidationError(path + ".namespace", "must be a DNS-1123 label");
    if (pod.test_timeout < std::chrono::seconds(1))
      throw ValidationError(path + ".testTimeout", "must be at least 1 second");
    if (!seen.insert({pod.pod_name, pod.ns}).second)
      throw ValidationError(path, "duplicate pod (podName \"" + pod.pod_name +
                                      "\", namespace \"" + pod.ns + "\")");
    if (pod.containers.empty())
      throw ValidationError(path + ".containers", "must list at least one container");
    std::set<std::string> names;
    for (size_t j = 0; j < pod.containers.size(); ++j) {
      const auto& c = pod.containers[j];
      const std::string cpath = path + ".containers[" + std::to_string(j) + "]";
      if (!is_dns1123_label(c.container_name))
        throw ValidationError(cpath + ".containerName", "must be a DNS-1123 label");
      if (!names.insert(c.container_name).second)
        throw ValidationError(cpath + ".containerName",
                              "duplicate container name \"" + c.container_name + "\"");
      if (c.image.empty()) throw ValidationError(cpath + ".image", "must be non-empty");
      if (c.test_result_path.empty() || c.test_result_path.front() != '/' ||
          c.test_result_path == "/")
        throw ValidationError(cpath + ".testResultPath",
                              "must be an absolute path other than \"/\"");
      if (!c.startup_command_args.empty() && c.startup_commands.empty())
        throw ValidationError(cpath + ".startupCommandsArgs",
                              "requires startupCommands to be non-empty");
    }
  }
}

ParsedConfig parse_config(const std::string& document) {
  YAML::Node root;
  try {
    root = YAML::Load(document);
  } catch (const YAML::Exception& e) {
    throw SyntaxError(std::string("malformed YAML: ") + e.what());
  }
  if (!root.IsDefined() || root.IsNull()) throw SchemaError("", "empty document");
  if (!root.IsMap()) throw SchemaError("", "document root must be a mapping");
  require_keys(root, "", {"launcherConfig", "coordinatorConfig"});
  if (!root["launcherConfig"].IsDefined())
    throw SchemaError("launcherConfig", "required section is missing");
  if (!root["coordinatorConfig"].IsDefined())
    throw SchemaError("coordinatorConfig", "required section is missing");

  ParsedConfig cfg;
  cfg.launcher = parse_launcher_section(root["launcherConfig"]);
  cfg.run = parse_coordinator_section(root["coordinatorConfig"]);
  validate(cfg.launcher);
  validate(cfg.run);
  return cfg;
}

std::string render_config(const LauncherConfig& launcher, const TestRunConfig& run) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "launcherConfig" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "coordinatorIp" << YAML::Value << launcher.coordinator_host;
  out << YAML::Key << "coordinatorPort" << YAML::Value << launcher.coordinator_port;
  if (launcher.cert_file)
    out << YAML::Key << "certFile" << YAML::Value << *launcher.cert_file;
  out << YAML::EndMap;

  out << YAML::Key << "coordinatorConfig" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "testRunnerPods" << YAML::Value << YAML::BeginSeq;
  for (const auto& pod : run.pods) {
    out << YAML::BeginMap;
    out << YAML::Key << "podName" << YAML::Value << pod.pod_name;
    out << YAML::Key << "namespace" << YAML::Value << pod.ns;
    out << YAML::Key << "testTimeout" << YAML::Value << pod.test_timeout.count();
    out << YAML::Key << "containers" << YAML::Value << YAML::BeginSeq;
    for (const auto& c : pod.containers) {
      out << YAML::BeginMap;
      out << YAML::Key << "containerName" << YAML::Value << c.container_name;
      out << YAML::Key << "image" << YAML::Value << c.image;
      if (!c.startup_commands.empty()) {
        out << YAML::Key << "startupCommands" << YAML::Value << YAML::BeginSeq;
        for (const auto& s : c.startup_commands) out << s;
        out << YAML::EndSeq;
      }
      if (!c.startup_command_args.empty()) {
        out << YAML::Key << "startupCommandsArgs" << YAML::Value << YAML::BeginSeq;
        for (const auto& s : c.startup_command_args) out << s;
        out << YAML::EndSeq;
      }
      out << YAML::Key << "testResultPath" << YAML::Value << c.test_result_path;
      out << YAML::EndMap;
    }
    out << YAML::EndSeq;
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;
  out << YAML::EndMap;
  out << YAML::EndMap;

  std::string doc = out.c_str();
  doc.push_back('\n');
  return doc;
}

}  // namespace bunk8s::config
