// certchain: blockchain-anchored academic record registry
// Copyright 2026 The certchain Authors.
// SPDX-License-Identifier: Apache-2.0

#include <certchain/analytics.hpp>
#include <certchain/wallet.hpp>

#include <benchmark/benchmark.h>

#include <random>

using namespace certchain;

namespace
{
void BM_Sha256(benchmark::State& state)
{
    const Bytes data(static_cast<std::size_t>(state.range(0)), 0x5a);
    for (auto _ : state)
        benchmark::DoNotOptimize(sha256(data));
    state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Sha256)->Arg(64)->Arg(4096)->Arg(1 << 20);

void BM_SignVerify(benchmark::State& state)
{
    auto e = WalletEntry::create("bench", sha256("bench").view());
    UnsignedTransaction u;
    u.to.bytes[0] = 1;
    for (auto _ : state)
    {
        const auto tx = e.sign_transaction(u);
        benchmark::DoNotOptimize(tx.verify());
    }
}
BENCHMARK(BM_SignVerify);

// One block of five transfers, proposed, sealed and validated by every node.
void BM_MineBlock(benchmark::State& state)
{
    ChainConfig cfg;
    cfg.difficulty = static_cast<unsigned>(state.range(0));
    std::vector<WalletEntry> keys;
    for (int i = 0; i < 5; ++i)
    {
        keys.push_back(WalletEntry::create("k", sha256("bench-" + std::to_string(i)).view()));
        cfg.genesis_allocations[keys.back().address] = WeiAmount::ether(1000);
    }
    Ledger ledger{cfg};
    Address miner;
    miner.bytes[0] = 9;
    for (auto _ : state)
    {
        state.PauseTiming();
        for (auto& k : keys)
        {
            UnsignedTransaction u;
            u.to = miner;
            u.submitted_at = ledger.now();
            ledger.submit_transaction(k.sign_transaction(u));
        }
        state.ResumeTiming();
        benchmark::DoNotOptimize(ledger.mine_next_block(miner));
    }
}
BENCHMARK(BM_MineBlock)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_Aggregate(benchmark::State& state)
{
    std::mt19937_64 rng{1};
    std::vector<analytics::TxLogEntry> entries;
    for (int i = 0; i < state.range(0); ++i)
    {
        analytics::TxLogEntry e;
        e.tx_hash = std::to_string(i);
        e.issuer = "University " + std::to_string(1 + rng() % 6);
        e.submitted_at = SimDuration{static_cast<std::int64_t>(rng() % 1'000'000)};
        e.confirmed_at = e.submitted_at + SimDuration{static_cast<std::int64_t>(rng() % 60'000)};
        e.gas_used = 21'000 + rng() % 19'000;
        e.gas_price = WeiAmount::gwei(1 + rng() % 200);
        e.fee = compute_fee(e.gas_used, e.gas_price);
        entries.push_back(std::move(e));
    }
    const auto prices = analytics::parse_prices("0,213.61\n500,2036.55\n");
    for (auto _ : state)
        benchmark::DoNotOptimize(analytics::aggregate(entries, prices));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Aggregate)->Arg(219)->Arg(10'000);
}  // namespace
BENCHMARK_MAIN();
