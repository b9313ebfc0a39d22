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

#pragma once

#include <string>

#include "slicekit/llm_gateway.hpp"

namespace slicekit {

// Chat-completion client speaking the common JSON shape
// {model, temperature, messages: [{role, content}]} and reading
// choices[0].message.content from the reply. Supports http:// and https://.
class HttpChatProvider : public ChatProvider {
 public:
  // Reads the API key from config.api_key_env_var; throws ProviderConfigError
  // naming the variable when it is unset or empty.
  explicit HttpChatProvider(ProviderConfig config);

  std::string chat(const ChatRequest& request) override;

  const ProviderConfig& config() const { return config_; }

 private:
  ProviderConfig config_;
  std::string api_key_;
  std::string origin_;  // scheme://host[:port]
  std::string path_;
};

// Throws ProviderConfigError unless the environment variable is set and
// non-empty.
std::string read_api_key(const std::string& env_var);

}  // namespace slicekit
