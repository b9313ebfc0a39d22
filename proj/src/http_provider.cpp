// Copyright 2026 The slicekit Authors
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

#include "slicekit/http_provider.hpp"

#include <cstdlib>

#include "httplib.h"
#include "json.hpp"

namespace slicekit {

std::string read_api_key(const std::string& env_var) {
  const char* value = std::getenv(env_var.c_str());
  if (value == nullptr || *value == '\0')
    throw ProviderConfigError("environment variable " + env_var +
                              " is not set; it must hold the provider API key");
  return value;
}

HttpChatProvider::HttpChatProvider(ProviderConfig config)
    : config_(std::move(config)) {
  config_.validate();
  api_key_ = read_api_key(config_.api_key_env_var);

  const std::string& url = config_.endpoint_url;
  const std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos)
    throw ProviderConfigError("endpoint_url '" + url + "' has no scheme");
  const std::string scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https")
    throw ProviderConfigError("endpoint_url scheme must be http or https");
  const std::size_t path_start = url.find('/', scheme_end + 3);
  origin_ = url.substr(0, path_start);
  path_ = path_start == std::string::npos ? "/" : url.substr(path_start);
}

std::string HttpChatProvider::chat(const ChatRequest& request) {
  nlohmann::json body = {{"model", config_.model_name},
                         {"temperature", request.temperature},
                         {"messages",
                          {{{"role", "system"}, {"content", request.system}},
                           {{"role", "user"}, {"content", request.user}}}}};

  // One client per call keeps concurrent chats independent.
  httplib::Client client(origin_);
  const auto timeout = std::chrono::milliseconds(config_.request_timeout_ms);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  client.set_bearer_token_auth(api_key_);

  auto res = client.Post(path_, body.dump(), "application/json");
  if (!res)
    throw GatewayError("request to " + config_.endpoint_url +
                       " failed: " + httplib::to_string(res.error()));
  if (res->status < 200 || res->status >= 300)
    throw GatewayError("provider returned HTTP " + std::to_string(res->status));

  const auto reply = nlohmann::json::parse(res->body, nullptr, false);
  if (reply.is_discarded()) throw GatewayError("provider reply is not JSON");
  try {
    return reply.at("choices")
        .at(0)
        .at("message")
        .at("content")
        .get<std::string>();
  } catch (const nlohmann::json::exception&) {
    throw GatewayError("provider reply lacks choices[0].message.content");
  }
}

}  // namespace slicekit
