//
// Project MolForge - Copyright 2026 MolForge Developers
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFORGE_GATEWAY_HPP
#define MOLFORGE_GATEWAY_HPP

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "molforge/retrieval.hpp"

namespace molforge {

enum class Role : std::uint8_t { System, User, Assistant };

const char* to_string(Role role);
Role role_from_string(const std::string& text);

// Teacher/scorer sampling parameters; defaults follow the shipped config.
struct GenerationParams {
  double temperature = 0.75;
  double top_p = 0.85;
  int top_k = 40;
  int max_new_tokens = 512;
  int num_return_sequences = 1;
};

struct ChatMessage {
  Role role = Role::User;
  std::string content;
};

// Ordered chat messages plus generation parameters. The first message is
// the system message and roles alternate user/assistant after it.
struct ChatPrompt {
  std::vector<ChatMessage> messages;
  GenerationParams params;

  // Throws std::invalid_argument when the role structure is broken.
  void validate() const;
};

// Continuation text with per-token natural-log probabilities.
struct ScoredText {
  std::string text;
  std::vector<double> logprobs;

  int token_count() const { return static_cast<int>(logprobs.size()); }
};

class TransportError : public std::runtime_error {
 public:
  explicit TransportError(const std::string& what)
      : std::runtime_error(what) {}
};

class RateLimited : public std::runtime_error {
 public:
  explicit RateLimited(const std::string& what) : std::runtime_error(what) {}
};

class MalformedResponse : public std::runtime_error {
 public:
  explicit MalformedResponse(const std::string& what)
      : std::runtime_error(what) {}
};

class EmptyContinuation : public std::runtime_error {
 public:
  explicit EmptyContinuation(const std::string& what)
      : std::runtime_error(what) {}
};

// --- transports -----------------------------------------------------------

struct HttpResponse {
  int status = 0;
  std::string body;
};

class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  virtual HttpResponse post(const std::string& path,
                            const std::string& json_body) = 0;
};

// Plain-HTTP client for OpenAI-compatible servers (vllm and friends).
class HttplibTransport : public HttpTransport {
 public:
  HttplibTransport(std::string base_url, std::string api_key = "");
  HttpResponse post(const std::string& path,
                    const std::string& json_body) override;

 private:
  std::string base_url_;
  std::string api_key_;
};

// Deterministic in-process stand-in for the teacher, scorer, and embedding
// endpoints; the full pipeline and test suite run offline against it.
class MockLlmTransport : public HttpTransport {
 public:
  explicit MockLlmTransport(std::uint64_t seed = 0) : seed_(seed) {}
  HttpResponse post(const std::string& path,
                    const std::string& json_body) override;

 private:
  std::uint64_t seed_;
};

struct RetryPolicy {
  int max_attempts = 4;
  int base_delay_ms = 250;
  int max_delay_ms = 4000;
};

struct Endpoint {
  std::shared_ptr<HttpTransport> transport;
  std::string model;
  RetryPolicy retry;
};

// --- cache ------------------------------------------------------------

// Append-only JSONL of (key hash, request, response, timestamp) with an
// in-memory map. Concurrent readers, serialized writers; on a key
// collision the stored request is compared byte-for-byte.
class ResponseCache {
 public:
  // Empty path keeps the cache purely in memory.
  explicit ResponseCache(std::string path = "");

  std::optional<nlohmann::json> lookup(const std::string& key,
                                       const nlohmann::json& request) const;
  void store(const std::string& key, const nlohmann::json& request,
             const nlohmann::json& response);

  std::size_t size() const;
  static std::string key_of(const std::string& path,
                            const nlohmann::json& request);

 private:
  struct Entry {
    nlohmann::json request;
    nlohmann::json response;
  };
  std::string path_;
  mutable std::mutex mutex_;
  std::map<std::string, Entry> entries_;
};

// --- client -----------------------------------------------------------

class LlmClient {
 public:
  LlmClient(Endpoint endpoint, std::shared_ptr<ResponseCache> cache);

  // POST /v1/chat/completions; returns the first choice's message text.
  std::string chat_complete(const ChatPrompt& prompt);

  // POST /v1/completions in prompt-echo logprob mode; the returned
  // logprobs cover exactly the continuation's tokens.
  ScoredText score_continuation(const std::string& condition,
                                const std::string& continuation);

  // Network round trips actually performed (cache hits excluded).
  std::uint64_t network_calls() const { return network_calls_.load(); }

  const std::string& model() const { return endpoint_.model; }

 private:
  nlohmann::json post_cached(const std::string& path,
                             const nlohmann::json& request);

  Endpoint endpoint_;
  std::shared_ptr<ResponseCache> cache_;
  std::atomic<std::uint64_t> network_calls_{0};
};

// exp(-(1/N) * sum(logprob_i)); always >= 1 for logprobs <= 0.
double perplexity(const ScoredText& scored);

// --- remote embeddings -------------------------------------------------

// POST /embed {"ids": [...], "smiles": [...]} ->
// {"vectors": [[...]], "dimension": d}.
class RemoteEmbeddingProvider : public EmbeddingProvider {
 public:
  RemoteEmbeddingProvider(std::shared_ptr<HttpTransport> transport, int dim);
  int dim() const override { return dim_; }
  std::vector<std::vector<double>> embed(
      const std::vector<std::string>& smiles) override;

 private:
  std::shared_ptr<HttpTransport> transport_;
  int dim_;
};

}  // namespace molforge

#endif  // MOLFORGE_GATEWAY_HPP
