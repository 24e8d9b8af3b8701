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

#include "leximark/http_providers.h"

#include <thread>

#include "httplib.h"
#include "leximark/status_macros.h"
#include "leximark/strings.h"

namespace leximark {
namespace {

class HttpTransport final : public Transport {
 public:
  explicit HttpTransport(HttpEndpoint endpoint)
      : endpoint_(std::move(endpoint)) {}

  absl::StatusOr<std::string> Post(std::string_view path,
                                   std::string_view body) const override {
    httplib::Client client(endpoint_.base_url);
    if (!client.is_valid()) {
      return absl::InvalidArgumentError(
          StrCat("invalid provider URL '", endpoint_.base_url, "'"));
    }
    client.set_connection_timeout(endpoint_.connect_timeout);
    client.set_read_timeout(endpoint_.read_timeout);
    client.set_write_timeout(endpoint_.read_timeout);
    if (!endpoint_.bearer_token.empty()) {
      client.set_bearer_token_auth(endpoint_.bearer_token);
    }
    const std::string target(path);
    httplib::Result result = client.Post(target, std::string(body),
                                         "application/json");
    if (!result) {
      const httplib::Error error = result.error();
      const std::string message =
          StrCat(endpoint_.base_url, target, ": ",
                       httplib::to_string(error));
      if (error == httplib::Error::Read || error == httplib::Error::Write) {
        return absl::DeadlineExceededError(message);
      }
      return absl::UnavailableError(message);
    }
    const int status = result->status;
    if (status >= 200 && status < 300) return result->body;
    const std::string message = StrCat(
        endpoint_.base_url, target, ": HTTP ", status, ": ", result->body);
    if (status >= 500 || status == 429) return absl::UnavailableError(message);
    return absl::InvalidArgumentError(message);
  }

 private:
  HttpEndpoint endpoint_;
};

}  // namespace

std::unique_ptr<Transport> MakeHttpTransport(HttpEndpoint endpoint) {
  return std::make_unique<HttpTransport>(std::move(endpoint));
}

bool IsRetryable(const absl::Status& status) {
  return absl::IsUnavailable(status) || absl::IsDeadlineExceeded(status);
}

absl::StatusOr<std::string> PostWithRetry(const Transport& transport,
                                          std::string_view provider,
                                          std::string_view path,
                                          std::string_view body,
                                          const RetryPolicy& policy,
                                          ProviderTelemetry* telemetry) {
  auto backoff = policy.initial_backoff;
  absl::Status last;
  const int attempts = 1 + std::max(0, policy.max_retries);
  for (int attempt = 0; attempt < attempts; ++attempt) {
    if (attempt > 0) {
      if (telemetry != nullptr) ++telemetry->retries;
      std::this_thread::sleep_for(backoff);
      backoff = std::chrono::milliseconds(static_cast<long long>(
          static_cast<double>(backoff.count()) * policy.backoff_multiplier));
    }
    if (telemetry != nullptr) ++telemetry->requests;
    absl::StatusOr<std::string> response = transport.Post(path, body);
    if (response.ok()) return response;
    last = response.status();
    if (!IsRetryable(last)) break;
  }
  if (telemetry != nullptr) ++telemetry->failures;
  if (!IsRetryable(last)) {
    return absl::InternalError(
        StrCat("provider '", provider, "': ", last.message()));
  }
  return absl::UnavailableError(StrCat("provider '", provider,
                                             "' failed after ", attempts,
                                             " attempts: ", last.message()));
}

absl::StatusOr<std::vector<DocumentLogProbs>> RemoteLogProbProvider::LogProbs(
    std::span<const Document> docs) const {
  std::vector<DocumentLogProbs> out;
  out.reserve(docs.size());
  for (std::size_t begin = 0; begin < docs.size(); begin += batch_size_) {
    const std::size_t end = std::min(docs.size(), begin + batch_size_);
    std::vector<std::string> texts;
    for (std::size_t i = begin; i < end; ++i) texts.push_back(docs[i].text);
    LEXIMARK_ASSIGN_OR_RETURN(
        std::string body,
        PostWithRetry(*transport_, name(), protocol::kLogProbsPath,
                      protocol::EncodeLogProbRequest(texts, model_), policy_,
                      &telemetry_));
    auto results = protocol::DecodeLogProbResponse(body, texts.size());
    if (!results.ok()) {
      return absl::InternalError(StrCat("provider '", name(),
                                              "': ", results.status().message()));
    }
    for (std::size_t i = 0; i < results->size(); ++i) {
      DocumentLogProbs doc;
      doc.doc_id = docs[begin + i].id;
      doc.tokens = std::move((*results)[i].tokens);
      doc.truncated = (*results)[i].truncated;
      out.push_back(std::move(doc));
    }
  }
  return out;
}

absl::StatusOr<std::vector<EmbeddingVector>> RemoteEmbeddingProvider::Embed(
    std::span<const std::string> texts) const {
  LEXIMARK_ASSIGN_OR_RETURN(
      std::string body,
      PostWithRetry(*transport_, name(), protocol::kEmbeddingsPath,
                    protocol::EncodeEmbeddingRequest(texts), policy_,
                    &telemetry_));
  auto vectors = protocol::DecodeEmbeddingResponse(body, texts.size());
  if (!vectors.ok()) {
    return absl::InternalError(
        StrCat("provider '", name(), "': ", vectors.status().message()));
  }
  return vectors;
}

absl::StatusOr<std::vector<SynonymCandidate>> RemoteLexSubProvider::Candidates(
    const SynonymQuery& query) const {
  LEXIMARK_ASSIGN_OR_RETURN(
      std::string body,
      PostWithRetry(*transport_, name(), protocol::kLexSubPath,
                    protocol::EncodeLexSubRequest(query, mode_), policy_,
                    &telemetry_));
  auto candidates = protocol::DecodeLexSubResponse(body);
  if (!candidates.ok()) {
    return absl::InternalError(StrCat("provider '", name(), "': ",
                                            candidates.status().message()));
  }
  return candidates;
}

}  // namespace leximark
