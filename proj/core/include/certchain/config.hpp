// certchain: blockchain-anchored academic record registry
// Copyright 2026 The certchain Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <certchain/ledger.hpp>

#include <json.hpp>

#include <filesystem>
#include <functional>

namespace certchain
{
/// Node and service settings. Chain parameters are fixed when a data
/// directory is created; the remaining fields may change between runs.
struct NodeConfig
{
    ChainConfig chain;
    std::filesystem::path data_dir = "certchain-data";
    std::string host = "127.0.0.1";
    int port = 8080;
    /// Drives every random choice (keys, salts, tokens) when set.
    std::optional<std::uint64_t> seed;
    /// Simulated time between blocks while transactions are pending.
    SimDuration mining_interval = std::chrono::seconds{2};
    /// Real time between mining-driver ticks under `serve`.
    std::chrono::milliseconds tick_period{500};
    unsigned faucet_count = 16;
    WeiAmount admin_funds = WeiAmount::ether(100);
    WeiAmount faucet_funds = WeiAmount::ether(10);
    std::string admin_email = "admin@certchain.local";
    std::string admin_password = "admin-password";
    std::int64_t session_ttl_seconds = 3600;
    std::int64_t share_ttl_seconds = 30 * 24 * 3600;
};

class ConfigError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Every field is optional; unknown keys are rejected. Keys match the field
/// names, with chain parameters nested under "chain".
void apply_json(NodeConfig& cfg, const nlohmann::json& j);
nlohmann::json to_json(const NodeConfig& cfg);

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;
EnvLookup process_environment();

/// Environment overrides, e.g. CERTCHAIN_PORT, CERTCHAIN_DATA_DIR,
/// CERTCHAIN_SEED, CERTCHAIN_DIFFICULTY, CERTCHAIN_MINING_INTERVAL_MS.
void apply_env(NodeConfig& cfg, const EnvLookup& env);

/// Defaults, then the file (if given), then the environment.
NodeConfig load_config(const std::optional<std::filesystem::path>& file, const EnvLookup& env);

}  // namespace certchain
