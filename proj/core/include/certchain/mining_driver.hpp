// certchain: blockchain-anchored academic record registry
// Copyright 2026 The certchain Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <certchain/ledger.hpp>

#include <atomic>
#include <condition_variable>
#include <functional>
#include <thread>

namespace certchain
{
/// Produces a block whenever at least one transaction is pending and
/// `interval` of simulated time has passed since the last block.
class MiningDriver
{
public:
    using BlockCallback = std::function<void(const Block&)>;

    MiningDriver(Ledger& ledger, Address miner, SimDuration interval = std::chrono::seconds{2},
                 BlockCallback on_block = {});
    ~MiningDriver();
    MiningDriver(const MiningDriver&) = delete;
    MiningDriver& operator=(const MiningDriver&) = delete;

    /// Advances the simulated clock by `elapsed` and mines if due.
    std::optional<Block> tick(SimDuration elapsed);
    /// Calls tick() until the mempool is empty or `max_blocks` were mined.
    std::vector<Block> drain(std::size_t max_blocks = 1000);

    /// Background producer: every `period` of real time, tick(interval).
    void start(std::chrono::milliseconds period);
    void stop();

private:
    Ledger& ledger_;
    Address miner_;
    SimDuration interval_;
    BlockCallback on_block_;

    std::mutex mutex_;
    SimDuration since_last_{0};

    std::mutex run_mutex_;
    std::condition_variable cv_;
    bool running_ = false;
    std::thread thread_;
};

}  // namespace certchain
