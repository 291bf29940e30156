// certchain: blockchain-anchored academic record registry
// Copyright 2026 The certchain Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <certchain/analytics.hpp>
#include <certchain/node_home.hpp>

#include <iosfwd>

namespace certchain::cli
{
inline constexpr int kExitOk = 0;
inline constexpr int kExitNotVerified = 1;
inline constexpr int kExitUsage = 2;

/// Unix time the demo's wall clock starts from (2020-05-01T00:00:00Z).
inline constexpr std::int64_t kDemoEpoch = 1588291200;

struct DemoDocument
{
    std::string doc_id;
    std::string student_id;
    std::string issuer;
    Hash256 digest;
    std::string share_url;
};

struct DemoResult
{
    std::size_t universities = 0;
    std::size_t students = 0;
    std::size_t verified = 0;
    std::vector<DemoDocument> documents;
};

/// Seeds 6 universities, 30 students and one document per student through
/// the service, mines until everything is confirmed, then shares every
/// document. `cfg.data_dir` must be empty or absent.
DemoResult run_demo(const NodeConfig& cfg, std::ostream& out);

/// Receipts of the node as a txlog; senders that are universities are
/// grouped under their name, everyone else under "Unattributed".
std::vector<analytics::TxLogEntry> node_txlog(NodeHome& home);

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace certchain::cli
