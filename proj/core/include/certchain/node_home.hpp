// certchain: blockchain-anchored academic record registry
// Copyright 2026 The certchain Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <certchain/config.hpp>
#include <certchain/mining_driver.hpp>
#include <certchain/service.hpp>

#include <filesystem>
#include <memory>

namespace certchain
{
class NodeHomeError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// A node's data directory and everything loaded from it.
///
///   node.json        settings, master seed, contract address, clock
///   chain.ndjson     accepted blocks, genesis first
///   mempool.ndjson   pending transactions
///   wallets/         one key file per wallet entry (admin, faucet-NN, miner)
///   store/           off-chain store
///   outbox.jsonl     notifier output
class NodeHome
{
public:
    /// Initializes a fresh directory: funds admin and faucet wallets at
    /// genesis, deploys the registry contract, mines it and seeds the admin
    /// login. With `chain_epoch`, the wall clock is chain_epoch plus the
    /// simulated chain time, which makes whole runs reproducible. Throws
    /// NodeHomeError if the directory exists and is not empty.
    static std::unique_ptr<NodeHome> create(const NodeConfig& cfg,
                                            std::optional<std::int64_t> chain_epoch = std::nullopt);
    /// Loads and replays an existing directory.
    static std::unique_ptr<NodeHome> open(const std::filesystem::path& dir);

    ~NodeHome();

    [[nodiscard]] static bool is_empty_dir(const std::filesystem::path& dir);

    [[nodiscard]] const NodeConfig& config() const noexcept { return cfg_; }
    [[nodiscard]] const std::filesystem::path& dir() const noexcept { return cfg_.data_dir; }
    [[nodiscard]] Ledger& ledger() noexcept { return *ledger_; }
    [[nodiscard]] Wallet& wallet() noexcept { return wallet_; }
    [[nodiscard]] OffchainStore& store() noexcept { return *store_; }
    [[nodiscard]] Notifier& notifier() noexcept { return *notifier_; }
    [[nodiscard]] RandomSource& rng() noexcept { return *rng_; }
    [[nodiscard]] Service& service() noexcept { return *service_; }
    [[nodiscard]] MiningDriver& driver() noexcept { return *driver_; }
    [[nodiscard]] const Address& contract() const noexcept { return contract_; }
    [[nodiscard]] Address miner() const { return wallet_.address("miner"); }
    [[nodiscard]] std::int64_t wall_now() const { return clock_(); }

    /// Writes node.json, chain.ndjson and mempool.ndjson atomically.
    void save();

private:
    NodeHome() = default;
    void start_runtime(std::uint64_t rng_epoch);

    NodeConfig cfg_;
    Hash256 master_;
    std::optional<std::int64_t> chain_epoch_;
    std::uint64_t rng_epoch_ = 0;
    Address contract_;
    WallClock clock_;

    std::unique_ptr<Ledger> ledger_;
    Wallet wallet_;
    std::unique_ptr<RandomSource> rng_;
    std::unique_ptr<OffchainStore> store_;
    std::unique_ptr<Notifier> notifier_;
    std::unique_ptr<Service> service_;
    std::unique_ptr<MiningDriver> driver_;
    std::mutex save_mutex_;
};

}  // namespace certchain
