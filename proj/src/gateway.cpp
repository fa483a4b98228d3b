//
// Project MolForge - Copyright 2026 MolForge Developers
// SPDX-License-Identifier: Apache-2.0
//

#include "molforge/gateway.hpp"

#include <cctype>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>

#include "molforge/text.hpp"

namespace molforge {

using nlohmann::json;

const char* to_string(Role role) {
  switch (role) {
    case Role::System: return "system";
    case Role::User: return "user";
    case Role::Assistant: return "assistant";
  }
  return "user";
}

Role role_from_string(const std::string& text) {
  if (text == "system") return Role::System;
  if (text == "user") return Role::User;
  if (text == "assistant") return Role::Assistant;
  throw std::invalid_argument("unknown chat role: " + text);
}

void ChatPrompt::validate() const {
  if (messages.empty()) {
    throw std::invalid_argument("chat prompt has no messages");
  }
  if (messages.front().role != Role::System) {
    throw std::invalid_argument("first chat message must be the system role");
  }
  Role expected = Role::User;
  for (std::size_t i = 1; i < messages.size(); ++i) {
    if (messages[i].role != expected) {
      throw std::invalid_argument(
          "chat roles must alternate user/assistant after the system message");
    }
    expected = expected == Role::User ? Role::Assistant : Role::User;
  }
}

// --- transports ---------------------------------------------------------

HttplibTransport::HttplibTransport(std::string base_url, std::string api_key)
    : base_url_(std::move(base_url)), api_key_(std::move(api_key)) {}

HttpResponse HttplibTransport::post(const std::string& path,
                                    const std::string& json_body) {
  httplib::Client client(base_url_);
  client.set_connection_timeout(10, 0);
  client.set_read_timeout(300, 0);
  httplib::Headers headers;
  if (!api_key_.empty()) {
    headers.emplace("Authorization", "Bearer " + api_key_);
  }
  auto result = client.Post(path, headers, json_body, "application/json");
  if (!result) {
    throw TransportError("POST " + base_url_ + path + " failed: " +
                         httplib::to_string(result.error()));
  }
  return {result->status, result->body};
}

namespace {

// Whitespace token spans with byte offsets; the mock server's tokenizer.
std::vector<std::pair<std::size_t, std::string>> whitespace_tokens(
    const std::string& text) {
  std::vector<std::pair<std::size_t, std::string>> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < text.size() &&
           !std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    tokens.emplace_back(start, text.substr(start, i - start));
  }
  return tokens;
}

json mock_chat_response(const json& request, std::uint64_t seed) {
  std::string last_user;
  for (const auto& message : request.at("messages")) {
    if (message.at("role") == "user") last_user = message.at("content");
  }
  const std::string digest =
      fnv1a64_hex(std::to_string(seed) + "\x1f" + last_user);

  // A deterministic, vaguely alignment-shaped body: salient tokens of the
  // request plus a digest so distinct inputs stay distinct.
  std::vector<std::string> tokens = tokenize_caption(last_user);
  std::ostringstream content;
  content << "Salient fragments:";
  const std::size_t take = std::min<std::size_t>(tokens.size(), 4);
  for (std::size_t i = 0; i < take; ++i) {
    content << ' ' << tokens[tokens.size() - take + i];
  }
  content << ". Implied characteristics: feature-" << digest.substr(0, 6)
          << ", feature-" << digest.substr(6, 6) << ".";

  return json{{"id", "mock-" + digest.substr(0, 12)},
              {"object", "chat.completion"},
              {"choices",
               json::array({json{{"index", 0},
                                 {"message", json{{"role", "assistant"},
                                                  {"content", content.str()}}},
                                 {"finish_reason", "stop"}}})}};
}

json mock_completion_response(const json& request, std::uint64_t seed) {
  const std::string prompt = request.at("prompt");
  const auto tokens = whitespace_tokens(prompt);
  json token_logprobs = json::array();
  json text_offset = json::array();
  json token_texts = json::array();
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    text_offset.push_back(tokens[i].first);
    token_texts.push_back(tokens[i].second);
    if (i == 0) {
      token_logprobs.push_back(nullptr);  // no context for the first token
    } else {
      const std::uint64_t h =
          fnv1a64(std::to_string(seed) + "|" + std::to_string(i) + "|" +
                  tokens[i].second);
      token_logprobs.push_back(-1.0 - static_cast<double>(h % 2000) / 1000.0);
    }
  }
  return json{{"object", "text_completion"},
              {"choices",
               json::array({json{{"index", 0},
                                 {"text", prompt},
                                 {"logprobs",
                                  json{{"token_logprobs", token_logprobs},
                                       {"text_offset", text_offset},
                                       {"tokens", token_texts}}}}})}};
}

json mock_embed_response(const json& request, std::uint64_t seed) {
  const int dim = 64;
  json vectors = json::array();
  for (const auto& smiles : request.at("smiles")) {
    std::vector<double> vec(dim, 0.0);
    const std::string text = smiles.get<std::string>();
    for (int i = 0; i < dim; ++i) {
      const std::uint64_t h =
          fnv1a64(std::to_string(seed) + ":" + std::to_string(i) + ":" + text);
      vec[i] = static_cast<double>(h % 1000) / 1000.0 - 0.5;
    }
    double norm = 0.0;
    for (double x : vec) norm += x * x;
    norm = std::sqrt(norm);
    for (double& x : vec) x /= norm;
    vectors.push_back(vec);
  }
  return json{{"vectors", vectors}, {"dimension", dim}};
}

}  // namespace

HttpResponse MockLlmTransport::post(const std::string& path,
                                    const std::string& json_body) {
  json request;
  try {
    request = json::parse(json_body);
  } catch (const json::exception& e) {
    return {400, std::string("{\"error\":\"bad json\"}")};
  }
  try {
    if (path == "/v1/chat/completions") {
      return {200, mock_chat_response(request, seed_).dump()};
    }
    if (path == "/v1/completions") {
      return {200, mock_completion_response(request, seed_).dump()};
    }
    if (path == "/embed") {
      return {200, mock_embed_response(request, seed_).dump()};
    }
  } catch (const json::exception& e) {
    return {400, std::string("{\"error\":\"bad request shape\"}")};
  }
  return {404, std::string("{\"error\":\"no such route\"}")};
}

// --- cache ---------------------------------------------------------------

ResponseCache::ResponseCache(std::string path) : path_(std::move(path)) {
  if (path_.empty()) return;
  std::ifstream in(path_);
  if (!in) return;  // fresh cache file
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json record = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (record.is_discarded() || !record.contains("key")) continue;
    Entry entry;
    entry.request = record.value("request", json());
    entry.response = record.value("response", json());
    entries_[record["key"]] = std::move(entry);  // last write wins
  }
}

std::string ResponseCache::key_of(const std::string& path,
                                  const nlohmann::json& request) {
  return fnv1a64_hex(path + "\x1f" + request.dump());
}

std::optional<json> ResponseCache::lookup(const std::string& key,
                                          const json& request) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  if (it->second.request != request) return std::nullopt;  // hash collision
  return it->second.response;
}

void ResponseCache::store(const std::string& key, const json& request,
                          const json& response) {
  std::lock_guard<std::mutex> lock(mutex_);
  entries_[key] = Entry{request, response};
  if (path_.empty()) return;
  std::ofstream out(path_, std::ios::app);
  const auto now = std::chrono::system_clock::now().time_since_epoch();
  const json record = {
      {"key", key},
      {"request", request},
      {"response", response},
      {"timestamp",
       std::chrono::duration_cast<std::chrono::milliseconds>(now).count()},
  };
  out << record.dump() << '\n';
}

std::size_t ResponseCache::size() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return entries_.size();
}

// --- client ---------------------------------------------------------------

LlmClient::LlmClient(Endpoint endpoint, std::shared_ptr<ResponseCache> cache)
    : endpoint_(std::move(endpoint)), cache_(std::move(cache)) {
  if (!endpoint_.transport) {
    throw std::invalid_argument("endpoint has no transport");
  }
  if (!cache_) cache_ = std::make_shared<ResponseCache>();
}

json LlmClient::post_cached(const std::string& path, const json& request) {
  const std::string key = ResponseCache::key_of(path, request);
  if (auto hit = cache_->lookup(key, request)) return *hit;

  const RetryPolicy& retry = endpoint_.retry;
  int delay_ms = retry.base_delay_ms;
  std::string last_error;
  for (int attempt = 0; attempt < retry.max_attempts; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(delay_ms));
      delay_ms = std::min(delay_ms * 2, retry.max_delay_ms);
    }
    HttpResponse response;
    try {
      ++network_calls_;
      response = endpoint_.transport->post(path, request.dump());
    } catch (const TransportError& e) {
      last_error = e.what();
      continue;
    }
    if (response.status == 429 || response.status >= 500) {
      last_error = "status " + std::to_string(response.status);
      continue;
    }
    if (response.status != 200) {
      throw TransportError("POST " + path + " returned status " +
                           std::to_string(response.status) + ": " +
                           response.body);
    }
    json body = json::parse(response.body, nullptr, false);
    if (body.is_discarded()) {
      throw MalformedResponse("response is not JSON: " + response.body);
    }
    cache_->store(key, request, body);
    return body;
  }
  if (last_error.find("status 429") != std::string::npos) {
    throw RateLimited("gave up after " + std::to_string(retry.max_attempts) +
                      " attempts: " + last_error);
  }
  throw TransportError("gave up after " + std::to_string(retry.max_attempts) +
                       " attempts: " + last_error);
}

std::string LlmClient::chat_complete(const ChatPrompt& prompt) {
  prompt.validate();

  json messages = json::array();
  for (const ChatMessage& message : prompt.messages) {
    messages.push_back(
        {{"role", to_string(message.role)}, {"content", message.content}});
  }
  const json request = {
      {"model", endpoint_.model},
      {"messages", messages},
      {"temperature", prompt.params.temperature},
      {"top_p", prompt.params.top_p},
      {"top_k", prompt.params.top_k},
      {"max_tokens", prompt.params.max_new_tokens},
      {"n", prompt.params.num_return_sequences},
  };

  const json body = post_cached("/v1/chat/completions", request);
  if (!body.contains("choices") || !body["choices"].is_array() ||
      body["choices"].empty()) {
    throw MalformedResponse("chat response has no choices: " + body.dump());
  }
  const json& first = body["choices"][0];
  if (!first.contains("message") || !first["message"].contains("content") ||
      !first["message"]["content"].is_string()) {
    throw MalformedResponse("chat choice has no message content");
  }
  return first["message"]["content"].get<std::string>();
}

ScoredText LlmClient::score_continuation(const std::string& condition,
                                         const std::string& continuation) {
  if (continuation.empty() ||
      continuation.find_first_not_of(" \t\r\n") == std::string::npos) {
    throw EmptyContinuation("continuation must contain non-whitespace text");
  }

  const std::string prompt = condition + continuation;
  const json request = {
      {"model", endpoint_.model}, {"prompt", prompt},   {"max_tokens", 0},
      {"echo", true},             {"logprobs", 0},
  };

  const json body = post_cached("/v1/completions", request);
  if (!body.contains("choices") || body["choices"].empty()) {
    throw MalformedResponse("completion response has no choices");
  }
  const json& choice = body["choices"][0];
  if (!choice.contains("logprobs") ||
      !choice["logprobs"].contains("token_logprobs") ||
      !choice["logprobs"].contains("text_offset")) {
    throw MalformedResponse("completion response lacks echoed logprobs");
  }
  const json& logprobs = choice["logprobs"]["token_logprobs"];
  const json& offsets = choice["logprobs"]["text_offset"];
  if (logprobs.size() != offsets.size()) {
    throw MalformedResponse("token_logprobs and text_offset disagree");
  }

  ScoredText scored;
  scored.text = continuation;
  const std::size_t boundary = condition.size();
  for (std::size_t i = 0; i < logprobs.size(); ++i) {
    if (offsets[i].get<std::size_t>() < boundary) continue;
    if (logprobs[i].is_null()) {
      throw MalformedResponse("continuation token has a null logprob");
    }
    double lp = logprobs[i].get<double>();
    if (lp > 1e-6) {
      throw MalformedResponse("continuation token has a positive logprob");
    }
    scored.logprobs.push_back(std::min(lp, 0.0));
  }
  if (scored.logprobs.empty()) {
    throw MalformedResponse("no tokens fell inside the continuation span");
  }
  return scored;
}

double perplexity(const ScoredText& scored) {
  if (scored.logprobs.empty()) {
    throw EmptyContinuation("cannot compute perplexity of zero tokens");
  }
  double sum = 0.0;
  for (double lp : scored.logprobs) sum += lp;
  return std::exp(-sum / static_cast<double>(scored.logprobs.size()));
}

// --- remote embeddings ----------------------------------------------------

RemoteEmbeddingProvider::RemoteEmbeddingProvider(
    std::shared_ptr<HttpTransport> transport, int dim)
    : transport_(std::move(transport)), dim_(dim) {
  if (!transport_) throw std::invalid_argument("no transport");
}

std::vector<std::vector<double>> RemoteEmbeddingProvider::embed(
    const std::vector<std::string>& smiles) {
  std::vector<std::string> ids;
  ids.reserve(smiles.size());
  for (std::size_t i = 0; i < smiles.size(); ++i) {
    ids.push_back(std::to_string(i));
  }
  const json request = {{"ids", ids}, {"smiles", smiles}};
  HttpResponse response;
  try {
    response = transport_->post("/embed", request.dump());
  } catch (const TransportError& e) {
    throw ProviderUnavailable(e.what());
  }
  if (response.status != 200) {
    throw ProviderUnavailable("embedding endpoint returned status " +
                              std::to_string(response.status));
  }
  const json body = json::parse(response.body, nullptr, false);
  if (body.is_discarded() || !body.contains("vectors") ||
      !body.contains("dimension")) {
    throw MalformedResponse("embedding response lacks vectors/dimension");
  }
  if (body["dimension"].get<int>() != dim_) {
    throw DimensionMismatch("embedding endpoint declared dimension " +
                            body["dimension"].dump() + ", expected " +
                            std::to_string(dim_));
  }
  std::vector<std::vector<double>> vectors;
  for (const auto& vec : body["vectors"]) {
    std::vector<double> v = vec.get<std::vector<double>>();
    if (static_cast<int>(v.size()) != dim_) {
      throw DimensionMismatch("embedding vector has wrong dimension");
    }
    vectors.push_back(std::move(v));
  }
  return vectors;
}

}  // namespace molforge
