// Copyright 2026 The LexiMark Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LEXIMARK_HTTP_PROVIDERS_H_
#define LEXIMARK_HTTP_PROVIDERS_H_

#include <atomic>
#include <chrono>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "leximark/protocol.h"
#include "leximark/providers.h"

namespace leximark {

// One POST attempt. Implementations classify failures: kUnavailable or
// kDeadlineExceeded for retryable transport trouble (connection refused,
// timeouts, 5xx), anything else for hard failures (4xx, bad payloads).
class Transport {
 public:
  virtual ~Transport() = default;
  virtual absl::StatusOr<std::string> Post(std::string_view path,
                                           std::string_view body) const = 0;
};

struct HttpEndpoint {
  std::string base_url = "http://127.0.0.1:8080";
  std::string bearer_token;  // sent as "Authorization: Bearer ..." if set
  std::chrono::milliseconds connect_timeout{5000};
  std::chrono::milliseconds read_timeout{60000};
};

// cpp-httplib client; a fresh connection per call, so it is thread-safe.
std::unique_ptr<Transport> MakeHttpTransport(HttpEndpoint endpoint);

struct RetryPolicy {
  int max_retries = 3;
  std::chrono::milliseconds initial_backoff{50};
  double backoff_multiplier = 2.0;
};

struct ProviderTelemetry {
  std::atomic<std::uint64_t> requests{0};
  std::atomic<std::uint64_t> retries{0};
  std::atomic<std::uint64_t> failures{0};
};

// Posts with retries on retryable errors. After the last attempt fails the
// error is kUnavailable and names `provider`.
absl::StatusOr<std::string> PostWithRetry(const Transport& transport,
                                          std::string_view provider,
                                          std::string_view path,
                                          std::string_view body,
                                          const RetryPolicy& policy,
                                          ProviderTelemetry* telemetry);

bool IsRetryable(const absl::Status& status);

class RemoteLogProbProvider final : public LogProbProvider {
 public:
  RemoteLogProbProvider(std::shared_ptr<const Transport> transport,
                        std::string model, RetryPolicy policy = {},
                        std::size_t batch_size = 8)
      : transport_(std::move(transport)),
        model_(std::move(model)),
        policy_(policy),
        batch_size_(batch_size == 0 ? 1 : batch_size) {}

  std::string_view name() const override { return "remote-logprobs"; }
  absl::StatusOr<std::vector<DocumentLogProbs>> LogProbs(
      std::span<const Document> docs) const override;
  const ProviderTelemetry& telemetry() const { return telemetry_; }

 private:
  std::shared_ptr<const Transport> transport_;
  std::string model_;
  RetryPolicy policy_;
  std::size_t batch_size_;
  mutable ProviderTelemetry telemetry_;
};

class RemoteEmbeddingProvider final : public EmbeddingProvider {
 public:
  explicit RemoteEmbeddingProvider(std::shared_ptr<const Transport> transport,
                                   RetryPolicy policy = {})
      : transport_(std::move(transport)), policy_(policy) {}

  std::string_view name() const override { return "remote-embeddings"; }
  absl::StatusOr<std::vector<EmbeddingVector>> Embed(
      std::span<const std::string> texts) const override;
  const ProviderTelemetry& telemetry() const { return telemetry_; }

 private:
  std::shared_ptr<const Transport> transport_;
  RetryPolicy policy_;
  mutable ProviderTelemetry telemetry_;
};

// Masked-LM lexical substitution served by the bridge.
class RemoteLexSubProvider final : public SynonymProvider {
 public:
  RemoteLexSubProvider(std::shared_ptr<const Transport> transport,
                       protocol::LexSubMode mode, RetryPolicy policy = {})
      : transport_(std::move(transport)),
        mode_(mode),
        policy_(policy),
        name_(mode == protocol::LexSubMode::kConcat ? "lexsub-concat"
                                                    : "lexsub-dropout") {}

  std::string_view name() const override { return name_; }
  absl::StatusOr<std::vector<SynonymCandidate>> Candidates(
      const SynonymQuery& query) const override;
  const ProviderTelemetry& telemetry() const { return telemetry_; }

 private:
  std::shared_ptr<const Transport> transport_;
  protocol::LexSubMode mode_;
  RetryPolicy policy_;
  std::string name_;
  mutable ProviderTelemetry telemetry_;
};

}  // namespace leximark

#endif  // LEXIMARK_HTTP_PROVIDERS_H_
