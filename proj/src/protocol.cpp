/*
 * Copyright (C) 2026 The bunk8s authors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "bunk8s/protocol.hpp"

#include <json.hpp>

#include <algorithm>

namespace bunk8s::rpc {

using json = nlohmann::ordered_json;

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Passed: return "PASSED";
    case Verdict::Failed: return "FAILED";
    case Verdict::NotRun: return "NOT_RUN";
  }
  return "NOT_RUN";
}

std::string_view to_string(PodStatus s) {
  switch (s) {
    case PodStatus::Succeeded: return "SUCCEEDED";
    case PodStatus::Failed: return "FAILED";
    case PodStatus::TimedOut: return "TIMED_OUT";
    case PodStatus::Error: return "ERROR";
  }
  return "ERROR";
}

std::string_view to_string(ReplyCode c) {
  switch (c) {
    case ReplyCode::Ok: return "OK";
    case ReplyCode::ErrNamespaceMissing: return "ERR_NAMESPACE_MISSING";
    case ReplyCode::ErrPodConflict: return "ERR_POD_CONFLICT";
    case ReplyCode::ErrCreateFailed: return "ERR_CREATE_FAILED";
    case ReplyCode::ErrInternal: return "ERR_INTERNAL";
  }
  return "ERR_INTERNAL";
}

namespace {

Verdict verdict_from_string(const std::string& s) {
  if (s == "PASSED") return Verdict::Passed;
  if (s == "FAILED") return Verdict::Failed;
  if (s == "NOT_RUN") return Verdict::NotRun;
  throw DecodeError(0, "unknown verdict \"" + s + "\"");
}

PodStatus status_from_string(const std::string& s) {
  if (s == "SUCCEEDED") return PodStatus::Succeeded;
  if (s == "FAILED") return PodStatus::Failed;
  if (s == "TIMED_OUT") return PodStatus::TimedOut;
  if (s == "ERROR") return PodStatus::Error;
  throw DecodeError(0, "unknown status \"" + s + "\"");
}

ReplyCode code_from_string(const std::string& s) {
  if (s == "OK") return ReplyCode::Ok;
  if (s == "ERR_NAMESPACE_MISSING") return ReplyCode::ErrNamespaceMissing;
  if (s == "ERR_POD_CONFLICT") return ReplyCode::ErrPodConflict;
  if (s == "ERR_CREATE_FAILED") return ReplyCode::ErrCreateFailed;
  if (s == "ERR_INTERNAL") return ReplyCode::ErrInternal;
  throw DecodeError(0, "unknown code \"" + s + "\"");
}

json parse_json(std::string_view bytes, const char* what) {
  try {
    return json::parse(bytes);
  } catch (const nlohmann::json::parse_error& e) {
    throw DecodeError(e.byte, std::string(what) + ": " + e.what());
  }
}

const json& member(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw DecodeError(0, path + "." + key + " is missing");
  return *it;
}

std::string get_str(const json& obj, const char* key, const std::string& path) {
  const json& v = member(obj, key, path);
  if (!v.is_string()) throw DecodeError(0, path + "." + key + " must be a string");
  return v.get<std::string>();
}

// ---- message invariant checks, shared by encode and decode ----------------

void check_container(const ContainerResult& c, const std::string& where) {
  bool passed = c.exit_code.has_value() && *c.exit_code == 0;
  if ((c.verdict == Verdict::Passed) != passed)
    throw std::invalid_argument(where + ": verdict PASSED requires exitCode 0");
  if ((c.verdict == Verdict::NotRun) != !c.exit_code.has_value())
    throw std::invalid_argument(where + ": verdict NOT_RUN requires exitCode to be absent");
  if (c.result_path.empty() || c.result_path.front() != '/')
    throw std::invalid_argument(where + ": resultPath must be absolute");
}

void check_pod(const PodResult& p, const std::string& where) {
  bool all_passed = !p.containers.empty() &&
                    std::all_of(p.containers.begin(), p.containers.end(),
                                [](const ContainerResult& c) { return c.verdict == Verdict::Passed; });
  if ((p.status == PodStatus::Succeeded) != all_passed)
    throw std::invalid_argument(where + ": status SUCCEEDED iff every verdict is PASSED");
  if (p.status == PodStatus::TimedOut &&
      std::none_of(p.containers.begin(), p.containers.end(),
                   [](const ContainerResult& c) { return c.verdict == Verdict::NotRun; }))
    throw std::invalid_argument(where + ": status TIMED_OUT requires a NOT_RUN container");
  if (p.status != PodStatus::Error && p.sidecar_name.empty())
    throw std::invalid_argument(where + ": sidecarName must be set when extraction is possible");
  for (size_t i = 0; i < p.containers.size(); ++i)
    check_container(p.containers[i], where + ".containers[" + std::to_string(i) + "]");
}

void check_reply(const DeployReply& r) {
  if (r.code == ReplyCode::Ok) {
    if (r.pods.empty()) throw std::invalid_argument("reply: code OK requires per-pod results");
  } else {
    if (!r.pods.empty()) throw std::invalid_argument("reply: pods must be empty when code != OK");
    if (r.detail.empty())
      throw std::invalid_argument("reply: detail must name the offending resource");
  }
  for (size_t i = 0; i < r.pods.size(); ++i)
    check_pod(r.pods[i], "pods[" + std::to_string(i) + "]");
}

void check_request(const DeployRequest& req) {
  if (req.run_id.empty()) throw std::invalid_argument("request: runId must be non-empty");
  config::validate(req.run);  // throws config::ValidationError
}

// ---- run config <-> JSON ---------------------------------------------------

json run_to_json(const config::TestRunConfig& run) {
  json pods = json::array();
  for (const auto& pod : run.pods) {
    json containers = json::array();
    for (const auto& c : pod.containers) {
      json jc;
      jc["containerName"] = c.container_name;
      jc["image"] = c.image;
      if (!c.startup_commands.empty()) jc["startupCommands"] = c.startup_commands;
      if (!c.startup_command_args.empty()) jc["startupCommandsArgs"] = c.startup_command_args;
      jc["testResultPath"] = c.test_result_path;
      containers.push_back(std::move(jc));
    }
    pods.push_back({{"podName", pod.pod_name},
                    {"namespace", pod.ns},
                    {"testTimeout", pod.test_timeout.count()},
                    {"containers", std::move(containers)}});
  }
  return json{{"testRunnerPods", std::move(pods)}};
}

std::vector<std::string> get_str_list(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) return {};
  if (!it->is_array()) throw DecodeError(0, path + "." + key + " must be an array");
  std::vector<std::string> out;
  for (const auto& v : *it) {
    if (!v.is_string()) throw DecodeError(0, path + "." + key + " must hold strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

config::TestRunConfig run_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) throw DecodeError(0, path + " must be an object");
  const json& pods = member(j, "testRunnerPods", path);
  if (!pods.is_array()) throw DecodeError(0, path + ".testRunnerPods must be an array");
  config::TestRunConfig run;
  for (size_t i = 0; i < pods.size(); ++i) {
    const json& jp = pods[i];
    const std::string ppath = path + ".testRunnerPods[" + std::to_string(i) + "]";
    if (!jp.is_object()) throw DecodeError(0, ppath + " must be an object");
    config::TestRunnerPodSpec pod;
    pod.pod_name = get_str(jp, "podName", ppath);
    pod.ns = get_str(jp, "namespace", ppath);
    const json& t = member(jp, "testTimeout", ppath);
    if (!t.is_number_integer()) throw DecodeError(0, ppath + ".testTimeout must be an integer");
    pod.test_timeout = std::chrono::seconds(t.get<long long>());
    const json& containers = member(jp, "containers", ppath);
    if (!containers.is_array()) throw DecodeError(0, ppath + ".containers must be an array");
    for (size_t k = 0; k < containers.size(); ++k) {
      const json& jc = containers[k];
      const std::string cpath = ppath + ".containers[" + std::to_string(k) + "]";
      if (!jc.is_object()) throw DecodeError(0, cpath + " must be an object");
      config::TestContainerSpec c;
      c.container_name = get_str(jc, "containerName", cpath);
      c.image = get_str(jc, "image", cpath);
      c.startup_commands = get_str_list(jc, "startupCommands", cpath);
      c.startup_command_args = get_str_list(jc, "startupCommandsArgs", cpath);
      c.test_result_path = get_str(jc, "testResultPath", cpath);
      pod.containers.push_back(std::move(c));
    }
    run.pods.push_back(std::move(pod));
  }
  return run;
}

}  // namespace

std::string encode_request(const DeployRequest& req) {
  check_request(req);
  json j;
  j["runId"] = req.run_id;
  j["run"] = run_to_json(req.run);
  return j.dump();
}

DeployRequest decode_request(std::string_view bytes) {
  json j = parse_json(bytes, "request");
  if (!j.is_object()) throw DecodeError(0, "request must be a JSON object");
  DeployRequest req;
  req.run_id = get_str(j, "runId", "request");
  req.run = run_from_json(member(j, "run", "request"), "request.run");
  try {
    check_request(req);
  } catch (const std::exception& e) {
    throw DecodeError(0, e.what());
  }
  return req;
}

std::string encode_reply(const DeployReply& rep) {
  check_reply(rep);
  json pods = json::array();
  for (const auto& p : rep.pods) {
    json containers = json::array();
    for (const auto& c : p.containers) {
      json jc;
      jc["containerName"] = c.container_name;
      if (c.exit_code) jc["exitCode"] = *c.exit_code;
      jc["resultPath"] = c.result_path;
      jc["verdict"] = to_string(c.verdict);
      containers.push_back(std::move(jc));
    }
    pods.push_back({{"podName", p.pod_name},
                    {"namespace", p.ns},
                    {"sidecarName", p.sidecar_name},
                    {"status", to_string(p.status)},
                    {"message", p.message},
                    {"containers", std::move(containers)}});
  }
  json j;
  j["runId"] = rep.run_id;
  j["code"] = to_string(rep.code);
  j["detail"] = rep.detail;
  j["pods"] = std::move(pods);
  return j.dump();
}

DeployReply decode_reply(std::string_view bytes) {
  json j = parse_json(bytes, "reply");
  if (!j.is_object()) throw DecodeError(0, "reply must be a JSON object");
  DeployReply rep;
  rep.run_id = get_str(j, "runId", "reply");
  rep.code = code_from_string(get_str(j, "code", "reply"));
  rep.detail = get_str(j, "detail", "reply");
  const json& pods = member(j, "pods", "reply");
  if (!pods.is_array()) throw DecodeError(0, "reply.pods must be an array");
  for (size_t i = 0; i < pods.size(); ++i) {
    const json& jp = pods[i];
    const std::string ppath = "reply.pods[" + std::to_string(i) + "]";
    if (!jp.is_object()) throw DecodeError(0, ppath + " must be an object");
    PodResult p;
    p.pod_name = get_str(jp, "podName", ppath);
    p.ns = get_str(jp, "namespace", ppath);
    p.sidecar_name = get_str(jp, "sidecarName", ppath);
    p.status = status_from_string(get_str(jp, "status", ppath));
    p.message = get_str(jp, "message", ppath);
    const json& containers = member(jp, "containers", ppath);
    if (!containers.is_array()) throw DecodeError(0, ppath + ".containers must be an array");
    for (size_t k = 0; k < containers.size(); ++k) {
      const json& jc = containers[k];
      const std::string cpath = ppath + ".containers[" + std::to_string(k) + "]";
      if (!jc.is_object()) throw DecodeError(0, cpath + " must be an object");
      ContainerResult c;
      c.container_name = get_str(jc, "containerName", cpath);
      if (auto it = jc.find("exitCode"); it != jc.end()) {
        if (!it->is_number_integer()) throw DecodeError(0, cpath + ".exitCode must be an integer");
        c.exit_code = it->get<int>();
      }
      c.result_path = get_str(jc, "resultPath", cpath);
      c.verdict = verdict_from_string(get_str(jc, "verdict", cpath));
      p.containers.push_back(std::move(c));
    }
    rep.pods.push_back(std::move(p));
  }
  try {
    check_reply(rep);  // defensive: reject inconsistent replies at decode time
  } catch (const std::exception& e) {
    throw DecodeError(0, e.what());
  }
  return rep;
}

}  // namespace bunk8s::rpc
