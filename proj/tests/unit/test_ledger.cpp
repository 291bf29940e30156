// certchain: blockchain-anchored academic record registry
// Copyright 2026 The certchain Authors.
// SPDX-License-Identifier: Apache-2.0

#include <certchain/ledger.hpp>
#include <certchain/mining_driver.hpp>

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <atomic>
#include <random>
#include <thread>

using namespace certchain;
using certchain::testing::TestChain;

namespace
{
Address sink(std::uint8_t tag)
{
    Address a;
    a.bytes.fill(tag);
    a.bytes[0] = 0xEE;
    return a;
}

WeiAmount genesis_total(const TestChain& c)
{
    WeiAmount sum;
    for (const auto& [_, w] : c.config.genesis_allocations)
        sum += w;
    return sum;
}

// Reconstructs the proof-of-work start time of a sealed block.
SimDuration seal_start(const Block& b, SimDuration tick)
{
    return b.timestamp - tick * static_cast<std::int64_t>(b.pow_nonce + 1);
}
}  // namespace

TEST(ChainConfig, Validation)
{
    ChainConfig c;
    EXPECT_NO_THROW(c.validate());
    c.node_count = 4;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = {};
    c.difficulty = 0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = {};
    c.block_gas_limit = 0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Ledger, GenesisIsDeterministic)
{
    TestChain a{3}, b{3};
    EXPECT_EQ(a.ledger->tip(), b.ledger->tip());
    EXPECT_EQ(a.ledger->height(), 0u);
    EXPECT_EQ(a.ledger->account(a.keys[0].address).balance, WeiAmount::ether(10));
}

TEST(Ledger, GasSchedule)
{
    TestChain c{3};
    const auto deploy = c.submit(0, Address{});
    c.mine_all();
    c.contract = *c.receipt(deploy).contract_address;
    EXPECT_EQ(c.contract, contract_address(c.keys[0].address, 0));
    const auto add = c.add_uni(0, 1, "U");
    const auto transfer = c.submit(2, sink(1));
    c.mine_all();
    const auto store = c.store_hash(1, sha256("d"));
    c.mine_all();
    EXPECT_EQ(c.receipt(deploy).gas_used, gas::kDeploy);
    EXPECT_EQ(c.receipt(add).gas_used, gas::kAddUni);
    EXPECT_EQ(c.receipt(store).gas_used, gas::kStoreHash);
    EXPECT_EQ(c.receipt(transfer).gas_used, gas::kTransfer);
}

TEST(Ledger, OutOfGasChargesFullLimit)
{
    TestChain c{2};
    c.deploy();
    c.add_uni(0, 1, "U");
    c.mine_all();
    const auto h = c.submit(1, c.contract, encode_call(StoreHashCall{sha256("d"), 1}), kDefaultGasPrice, 25'000);
    c.mine_all();
    const auto r = c.receipt(h);
    EXPECT_EQ(r.error, CallError::out_of_gas);
    EXPECT_EQ(r.gas_used, 25'000u);
    EXPECT_EQ(r.fee, compute_fee(25'000, kDefaultGasPrice));
    EXPECT_FALSE(c.ledger->get_hash(c.contract, sha256("d")));
}

TEST(Ledger, FeeLawAndConservation)
{
    TestChain c{6};
    c.deploy();
    for (unsigned u = 1; u <= 3; ++u)
        c.add_uni(0, u, "U" + std::to_string(u));
    c.mine_all();
    std::mt19937_64 rng{42};
    for (int i = 0; i < 60; ++i)
    {
        const unsigned who = 1 + rng() % 5;
        const auto price = WeiAmount::gwei(1 + rng() % 200);
        if (who <= 3)
            c.store_hash(who, sha256("doc" + std::to_string(i % 40)), 1, price);
        else
            c.submit(who, sink(static_cast<std::uint8_t>(i)), {}, price);
        if (i % 7 == 0)
            c.ledger->mine_next_block(c.miner);
    }
    c.mine_all();

    const auto receipts = c.ledger->receipts();
    ASSERT_EQ(receipts.size(), 64u);
    WeiAmount fees;
    for (const auto& r : receipts)
    {
        EXPECT_EQ(r.fee, compute_fee(r.gas_used, r.gas_price));
        EXPECT_LE(r.gas_used, kDefaultGasLimit);
        EXPECT_GE(r.confirmation_delay(), SimDuration::zero());
        fees += r.fee;
    }
    const auto state = c.ledger->state();
    const auto blocks = c.ledger->height();
    EXPECT_EQ(state->total_balance(), genesis_total(c) + c.config.block_reward * blocks);
    EXPECT_EQ(state->account(c.miner).balance, fees + c.config.block_reward * blocks);
    for (const auto& b : c.ledger->blocks())
    {
        Gas used = 0;
        for (const auto& tx : b.transactions)
            used += c.receipt(tx.hash()).gas_used;
        EXPECT_LE(used, c.config.block_gas_limit);
    }
}

TEST(Ledger, ReplayReproducesStateRoots)
{
    TestChain c{4};
    c.deploy();
    c.add_uni(0, 1, "U");
    c.submit(2, sink(2));
    c.mine_all();
    for (int i = 0; i < 10; ++i)
        c.store_hash(1, sha256(std::to_string(i)));
    c.mine_all();
    const auto blocks = c.ledger->blocks();
    const auto replayed = Ledger::replay(c.config, blocks);
    EXPECT_EQ(replayed->blocks(), blocks);
    EXPECT_EQ(replayed->state()->root(), c.ledger->state()->root());
    EXPECT_EQ(replayed->receipts(), c.ledger->receipts());
    for (unsigned n = 0; n < c.config.node_count; ++n)
        EXPECT_EQ(replayed->node(n).state().root(), blocks.back().state_root);

    auto wrong = c.config;
    wrong.genesis_allocations.begin()->second = WeiAmount::ether(11);
    EXPECT_THROW(Ledger::replay(wrong, blocks), std::runtime_error);
    auto tampered = blocks;
    tampered[2].state_root.bytes[0] ^= 1;
    EXPECT_THROW(Ledger::replay(c.config, tampered), std::runtime_error);
}

TEST(Ledger, BlocksRespectGasLimitAndOrder)
{
    TestChain c{12};
    for (unsigned i = 0; i < 12; ++i)
        c.submit(i, sink(1), {}, WeiAmount::gwei(10 + i));
    const auto b = c.ledger->mine_next_block(c.miner);
    // 120,000 / 21,000 = 5 transfers.
    ASSERT_EQ(b.transactions.size(), 5u);
    for (std::size_t i = 1; i < b.transactions.size(); ++i)
        EXPECT_GE(b.transactions[i - 1].gas_price, b.transactions[i].gas_price);
    EXPECT_EQ(b.transactions.front().gas_price, WeiAmount::gwei(21));
    EXPECT_EQ(c.ledger->pending_count(), 7u);
}

TEST(Ledger, SameSenderNoncesStayOrdered)
{
    TestChain c{2};
    // Later nonce pays more; it must still wait for the earlier one.
    const auto low = c.submit(0, sink(1), {}, WeiAmount::gwei(1));
    const auto high = c.submit(0, sink(1), {}, WeiAmount::gwei(500));
    c.mine_all();
    EXPECT_EQ(c.receipt(low).block_number, c.receipt(high).block_number);
    const auto txs = c.ledger->tip().transactions;
    ASSERT_EQ(txs.size(), 2u);
    EXPECT_EQ(txs[0].hash(), low);
}

// Property: among transactions from distinct senders submitted together,
// every included gas price is at least every excluded one, and a strictly
// higher price is never confirmed later.
TEST(LedgerProperty, PriorityAndDelayMonotonicity)
{
    std::mt19937_64 rng{20260501};
    for (int trial = 0; trial < 100; ++trial)
    {
        SCOPED_TRACE(trial);
        const unsigned n = 6 + rng() % 10;
        TestChain c{n, 4, WeiAmount::ether(1), "prio-" + std::to_string(trial)};
        std::vector<std::pair<Hash256, WeiAmount>> txs;
        for (unsigned i = 0; i < n; ++i)
        {
            const auto price = WeiAmount::gwei(1 + rng() % 300);
            txs.emplace_back(c.submit(i, sink(static_cast<std::uint8_t>(i)), {}, price), price);
        }
        const auto first = c.ledger->mine_next_block(c.miner);
        WeiAmount min_in{~WeiAmount::rep{0}}, max_out;
        for (const auto& [h, p] : txs)
        {
            const bool in = std::any_of(first.transactions.begin(), first.transactions.end(),
                                        [&](const auto& t) { return t.hash() == h; });
            if (in)
                min_in = std::min(min_in, p);
            else
                max_out = std::max(max_out, p);
        }
        EXPECT_GE(min_in, max_out);
        c.mine_all();
        for (const auto& [ha, pa] : txs)
            for (const auto& [hb, pb] : txs)
                if (pa > pb)
                {
                    EXPECT_LE(c.receipt(ha).block_number, c.receipt(hb).block_number);
                    EXPECT_LE(c.receipt(ha).confirmation_delay(), c.receipt(hb).confirmation_delay());
                }
    }
}

// More pending work at one price means a later worst-case confirmation.
TEST(LedgerProperty, CongestionIncreasesDelay)
{
    SimDuration prev{-1};
    std::uint64_t prev_blocks = 0;
    for (unsigned n : {5u, 10u, 20u, 40u})
    {
        TestChain c{n, 4, WeiAmount::ether(1), "cong-" + std::to_string(n)};
        for (unsigned i = 0; i < n; ++i)
            c.submit(i, sink(1));
        MiningDriver driver{*c.ledger, c.miner, std::chrono::seconds{2}};
        driver.drain();
        SimDuration worst{0};
        for (const auto& r : c.ledger->receipts())
            worst = std::max(worst, r.confirmation_delay());
        EXPECT_GT(worst, prev);
        EXPECT_GT(c.ledger->height(), prev_blocks);
        EXPECT_EQ(c.ledger->height(), (n + 4) / 5);
        prev = worst;
        prev_blocks = c.ledger->height();
    }
}

TEST(Ledger, SubmitErrors)
{
    TestChain c{3, 8, WeiAmount::gwei(100) * 50'000};
    auto expect_code = [&](const SignedTransaction& tx, SubmitErrc code) {
        try
        {
            c.ledger->submit_transaction(tx);
            ADD_FAILURE() << "accepted";
        }
        catch (const SubmitError& e)
        {
            EXPECT_EQ(e.code(), code) << e.what();
        }
    };

    auto good = c.sign(0, sink(1));
    auto forged = good;
    forged.gas_price = WeiAmount::gwei(101);
    expect_code(forged, SubmitErrc::invalid_signature);
    auto wrong_key = good;
    wrong_key.sender_key = c.keys[1].keypair.public_key();
    expect_code(wrong_key, SubmitErrc::invalid_signature);

    c.ledger->submit_transaction(good);
    expect_code(good, SubmitErrc::duplicate_transaction);

    c.keys[0].next_nonce = 5;
    expect_code(c.sign(0, sink(1)), SubmitErrc::nonce_gap);
    c.keys[0].next_nonce = 1;
    // Balance covers one max fee (40,000 x 100 Gwei) but not two.
    expect_code(c.sign(0, sink(1)), SubmitErrc::insufficient_balance);
    c.keys[0].next_nonce = 1;

    UnsignedTransaction future;
    future.to = sink(1);
    future.submitted_at = c.ledger->now() + SimDuration{1};
    expect_code(c.keys[1].sign_transaction(future), SubmitErrc::invalid_transaction);
    c.keys[1].next_nonce = 0;
    expect_code(c.sign(1, sink(1), {}, kDefaultGasPrice, 0), SubmitErrc::invalid_transaction);

    EXPECT_EQ(to_string(SubmitErrc::nonce_gap), "NonceGap");
    EXPECT_EQ(c.ledger->pending_count(), 1u);
    EXPECT_EQ(c.ledger->pending_nonce(c.keys[0].address), 1u);
    EXPECT_EQ(c.ledger->pending_nonce(c.keys[1].address), 0u);
}

TEST(Ledger, ReceiptStatusLifecycle)
{
    TestChain c{1};
    const auto h = c.submit(0, sink(1));
    EXPECT_TRUE(std::holds_alternative<PendingStatus>(c.ledger->get_receipt(h)));
    EXPECT_TRUE(std::holds_alternative<UnknownStatus>(c.ledger->get_receipt(sha256("none"))));
    c.mine_all();
    const auto r = c.receipt(h);
    EXPECT_EQ(r.block_number, 1u);
    EXPECT_EQ(r.confirmed_at, c.ledger->tip().timestamp);
    EXPECT_GE(c.ledger->now(), r.confirmed_at);
}

TEST(Ledger, TimestampsFollowClockAndWork)
{
    TestChain c{1};
    c.ledger->advance_clock(std::chrono::seconds{30});
    c.submit(0, sink(1));
    const auto b = c.ledger->mine_next_block(c.miner);
    EXPECT_EQ(b.timestamp, SimDuration{30'000} + c.config.tick_per_hash * static_cast<std::int64_t>(b.pow_nonce + 1));
    EXPECT_GE(b.block_hash.leading_zero_bits(), c.config.difficulty);
    EXPECT_EQ(b.block_hash, b.compute_hash());
}

class CorruptionProbe : public ::testing::Test
{
protected:
    void SetUp() override
    {
        chain.deploy();
        chain.add_uni(0, 1, "U");
        chain.mine_all();
        chain.store_hash(1, sha256("a"));
        chain.submit(2, sink(3));
        candidate = chain.ledger->propose_block(chain.miner);
        ASSERT_EQ(candidate.transactions.size(), 2u);
        root_before = chain.ledger->state()->root();
        height_before = chain.ledger->height();
    }

    void expect_rejected(const Block& b, std::initializer_list<BlockFault> allowed)
    {
        const auto a = chain.ledger->validate_and_accept(b);
        EXPECT_FALSE(a.accepted);
        EXPECT_EQ(a.votes_for, 0u);
        EXPECT_NE(std::find(allowed.begin(), allowed.end(), a.fault), allowed.end()) << to_string(a.fault);
        EXPECT_EQ(chain.ledger->height(), height_before);
        EXPECT_EQ(chain.ledger->state()->root(), root_before);
    }

    void reseal(Block& b) { seal_block(b, seal_start(candidate, chain.config.tick_per_hash), chain.config.tick_per_hash); }

    TestChain chain{3, 10};
    Block candidate;
    Hash256 root_before;
    std::uint64_t height_before = 0;
};

TEST_F(CorruptionProbe, CandidateIsValid)
{
    EXPECT_TRUE(chain.ledger->validate_and_accept(candidate).accepted);
}

TEST_F(CorruptionProbe, ProofOfWork)
{
    auto b = candidate;
    b.block_hash.bytes[31] ^= 1;
    expect_rejected(b, {BlockFault::bad_hash});

    // Stale nonce: header no longer hashes to a valid proof.
    b = candidate;
    b.pow_nonce += 1;
    expect_rejected(b, {BlockFault::insufficient_work, BlockFault::bad_hash});

    // Self-consistent hash that lacks the required work.
    b = candidate;
    for (std::uint64_t n = candidate.pow_nonce + 1;; ++n)
    {
        b.pow_nonce = n;
        if (b.compute_hash().leading_zero_bits() < b.difficulty)
            break;
    }
    b.block_hash = b.compute_hash();
    expect_rejected(b, {BlockFault::insufficient_work});
}

TEST_F(CorruptionProbe, StateRoot)
{
    for (int probe = 0; probe < 3; ++probe)
    {
        SCOPED_TRACE(probe);
        auto b = candidate;
        if (probe == 0)
            b.state_root.bytes[0] ^= 0x80;
        else if (probe == 1)
            b.state_root = root_before;
        else
            b.miner = sink(9);  // reward credited elsewhere than the root says
        reseal(b);
        expect_rejected(b, {BlockFault::bad_state_root});
    }
}

TEST_F(CorruptionProbe, Signature)
{
    for (int probe = 0; probe < 3; ++probe)
    {
        SCOPED_TRACE(probe);
        auto b = candidate;
        auto& tx = *std::find_if(b.transactions.begin(), b.transactions.end(),
                                 [](const auto& t) { return !t.payload.empty(); });
        if (probe == 0)
            tx.signature.bytes[10] ^= 0x01;
        else if (probe == 1)
            tx.payload.back() ^= 0x01;
        else
            tx.sender_key = chain.keys[2].keypair.public_key();
        reseal(b);
        expect_rejected(b, {BlockFault::invalid_transaction});
    }
}

TEST_F(CorruptionProbe, StructuralFaults)
{
    auto b = candidate;
    b.parent_hash.bytes[0] ^= 1;
    reseal(b);
    expect_rejected(b, {BlockFault::unknown_parent});
    b = candidate;
    b.number += 1;
    reseal(b);
    expect_rejected(b, {BlockFault::bad_number});
    b = candidate;
    b.transactions.pop_back();
    reseal(b);
    expect_rejected(b, {BlockFault::bad_state_root});
}

TEST(Consensus, MinorityOfFaultyNodesIsTolerated)
{
    TestChain c{2};
    c.ledger->set_node_behavior(0, NodeBehavior::reject_all);
    c.ledger->set_node_behavior(3, NodeBehavior::reject_all);
    c.submit(0, sink(1));
    const auto block = c.ledger->propose_block(c.miner);
    const auto a = c.ledger->validate_and_accept(block);
    EXPECT_TRUE(a.accepted);
    EXPECT_EQ(a.votes_for, 3u);
    EXPECT_EQ(a.node_count, 5u);
    EXPECT_EQ(c.ledger->height(), 1u);
    // Faulty nodes still follow the accepted chain.
    EXPECT_EQ(c.ledger->node(0).chain().size(), 2u);
}

TEST(Consensus, MajorityOfFaultyNodesBlocksProgress)
{
    TestChain c{2};
    for (unsigned n : {0u, 2u, 4u})
        c.ledger->set_node_behavior(n, NodeBehavior::reject_all);
    c.submit(0, sink(1));
    const auto block = c.ledger->propose_block(c.miner);
    const auto a = c.ledger->validate_and_accept(block);
    EXPECT_FALSE(a.accepted);
    EXPECT_EQ(a.votes_for, 2u);
    EXPECT_EQ(c.ledger->height(), 0u);
    EXPECT_EQ(c.ledger->pending_count(), 1u);
    EXPECT_THROW(c.ledger->mine_next_block(c.miner), std::logic_error);

    c.ledger->set_node_behavior(2, NodeBehavior::honest);
    EXPECT_TRUE(c.ledger->validate_and_accept(block).accepted);
}

TEST(Consensus, ConcurrentSubmittersAndMiner)
{
    TestChain c{8, 6};
    std::vector<std::thread> threads;
    std::atomic<int> errors{0};
    std::vector<std::vector<SignedTransaction>> per_sender(8);
    for (unsigned i = 0; i < 8; ++i)
        for (int k = 0; k < 10; ++k)
            per_sender[i].push_back(c.sign(i, sink(static_cast<std::uint8_t>(i)), {}, WeiAmount::gwei(1 + k)));
    for (unsigned i = 0; i < 8; ++i)
        threads.emplace_back([&, i] {
            for (const auto& tx : per_sender[i])
                try
                {
                    c.ledger->submit_transaction(tx);
                }
                catch (...)
                {
                    ++errors;
                }
        });
    std::thread miner{[&] {
        for (int k = 0; k < 5; ++k)
            c.ledger->mine_next_block(c.miner);
    }};
    for (auto& t : threads)
        t.join();
    miner.join();
    c.mine_all();
    EXPECT_EQ(errors.load(), 0);
    EXPECT_EQ(c.ledger->receipts().size(), 80u);
    EXPECT_EQ(Ledger::replay(c.config, c.ledger->blocks())->state()->root(), c.ledger->state()->root());
}

TEST(MiningDriver, MinesOnlyWhenDueAndPending)
{
    TestChain c{2};
    std::vector<std::uint64_t> seen;
    MiningDriver d{*c.ledger, c.miner, std::chrono::seconds{2}, [&](const Block& b) { seen.push_back(b.number); }};
    EXPECT_FALSE(d.tick(std::chrono::seconds{5}));
    // Idle time counts toward the interval since the last block.
    c.submit(0, sink(1));
    const auto b = d.tick(std::chrono::seconds{1});
    ASSERT_TRUE(b);
    EXPECT_EQ(b->number, 1u);
    EXPECT_EQ(seen, std::vector<std::uint64_t>{1});
    c.submit(0, sink(1));
    EXPECT_FALSE(d.tick(std::chrono::seconds{1}));
    EXPECT_TRUE(d.tick(std::chrono::seconds{1}));

    for (unsigned i = 0; i < 2; ++i)
        for (int k = 0; k < 4; ++k)
            c.submit(i, sink(2));
    EXPECT_EQ(d.drain().size(), 2u);
    EXPECT_EQ(c.ledger->pending_count(), 0u);

    c.submit(1, sink(3));
    d.start(std::chrono::milliseconds{1});
    for (int i = 0; i < 500 && c.ledger->pending_count() > 0; ++i)
        std::this_thread::sleep_for(std::chrono::milliseconds{2});
    d.stop();
    EXPECT_EQ(c.ledger->pending_count(), 0u);
}
