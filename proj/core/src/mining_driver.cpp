// certchain: blockchain-anchored academic record registry
// Copyright 2026 The certchain Authors.
// SPDX-License-Identifier: Apache-2.0

#include <certchain/mining_driver.hpp>

namespace certchain
{
MiningDriver::MiningDriver(Ledger& ledger, Address miner, SimDuration interval, BlockCallback on_block)
    : ledger_{ledger}, miner_{miner}, interval_{interval}, on_block_{std::move(on_block)}
{
    if (interval_ <= SimDuration::zero())
        throw std::invalid_argument{"mining interval must be positive"};
}

MiningDriver::~MiningDriver()
{
    stop();
}

std::optional<Block> MiningDriver::tick(SimDuration elapsed)
{
    std::lock_guard lock{mutex_};
    ledger_.advance_clock(elapsed);
    since_last_ += elapsed;
    if (since_last_ < interval_ || ledger_.pending_count() == 0)
        return std::nullopt;
    auto block = ledger_.mine_next_block(miner_);
    since_last_ = SimDuration::zero();
    if (on_block_)
        on_block_(block);
    return block;
}

std::vector<Block> MiningDriver::drain(std::size_t max_blocks)
{
    std::vector<Block> mined;
    while (mined.size() < max_blocks && ledger_.pending_count() > 0)
        if (auto b = tick(interval_))
            mined.push_back(std::move(*b));
    return mined;
}

void MiningDriver::start(std::chrono::milliseconds period)
{
    std::lock_guard lock{run_mutex_};
    if (running_)
        return;
    running_ = true;
    thread_ = std::thread{[this, period] {
        std::unique_lock run{run_mutex_};
        while (running_)
        {
            if (cv_.wait_for(run, period, [this] { return !running_; }))
                break;
            run.unlock();
            tick(interval_);
            run.lock();
        }
    }};
}

void MiningDriver::stop()
{
    {
        std::lock_guard lock{run_mutex_};
        if (!running_)
            return;
        running_ = false;
    }
    cv_.notify_all();
    if (thread_.joinable())
        thread_.join();
}

}  // namespace certchain
