// certchain: blockchain-anchored academic record registry
// Copyright 2026 The certchain Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <certchain/service.hpp>

#include <memory>

namespace certchain
{
/// HTTP binding of Service. JSON bodies, multipart uploads (file part
/// "file"), bearer tokens in the Authorization header.
class HttpServer
{
public:
    explicit HttpServer(Service& service);
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Returns the bound port (pass 0 for an ephemeral one). Throws
    /// std::runtime_error if binding fails.
    int bind(const std::string& host, int port);
    /// Blocks until stop().
    void run();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Converts an HTTP request to a Service request; exposed for tests.
/// Returns nullopt when a non-empty body is not a JSON object.
std::optional<Request> make_request(std::string method, std::string path, std::string_view authorization,
                                    std::string_view body);

}  // namespace certchain
