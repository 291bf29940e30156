// certchain: blockchain-anchored academic record registry
// Copyright 2026 The certchain Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <certchain/ledger.hpp>
#include <certchain/wallet.hpp>

#include <atomic>
#include <filesystem>
#include <random>

namespace certchain::testing
{
/// Unique scratch directory removed on destruction.
class TempDir
{
public:
    TempDir()
    {
        static std::atomic<unsigned> counter{0};
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() /
                ("certchain-test-" + std::to_string(rd()) + "-" + std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir()
    {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    [[nodiscard]] const std::filesystem::path& path() const noexcept { return path_; }
    [[nodiscard]] std::filesystem::path operator/(const std::string& s) const { return path_ / s; }

private:
    std::filesystem::path path_;
};

inline Hash256 test_seed(std::string_view label)
{
    return sha256("certchain-test/" + std::string{label});
}

/// Ledger with funded accounts; account 0 owns the deployed registry.
struct TestChain
{
    explicit TestChain(unsigned accounts = 4, unsigned difficulty = 8, WeiAmount funds = WeiAmount::ether(10),
                       std::string_view tag = "chain")
    {
        config.difficulty = difficulty;
        for (unsigned i = 0; i < accounts; ++i)
        {
            keys.push_back(WalletEntry::create("acct-" + std::to_string(i),
                                               test_seed(std::string{tag} + "/" + std::to_string(i)).view()));
            config.genesis_allocations[keys.back().address] = funds;
        }
        miner = WalletEntry::create("miner", test_seed(std::string{tag} + "/miner").view()).address;
        ledger = std::make_unique<Ledger>(config);
    }

    SignedTransaction sign(unsigned i, const Address& to, Bytes payload = {},
                           WeiAmount price = kDefaultGasPrice, Gas limit = kDefaultGasLimit)
    {
        UnsignedTransaction tx;
        tx.to = to;
        tx.payload = std::move(payload);
        tx.gas_price = price;
        tx.gas_limit = limit;
        tx.submitted_at = ledger->now();
        return keys.at(i).sign_transaction(tx);
    }

    Hash256 submit(unsigned i, const Address& to, Bytes payload = {}, WeiAmount price = kDefaultGasPrice,
                   Gas limit = kDefaultGasLimit)
    {
        return ledger->submit_transaction(sign(i, to, std::move(payload), price, limit));
    }

    Receipt receipt(const Hash256& h) const { return std::get<Receipt>(ledger->get_receipt(h)); }

    /// Deploys the registry from account 0 and mines it.
    Address deploy()
    {
        const auto h = submit(0, Address{});
        ledger->mine_next_block(miner);
        contract = *receipt(h).contract_address;
        return contract;
    }

    Hash256 add_uni(unsigned caller, unsigned uni, const std::string& name)
    {
        return submit(caller, contract, encode_call(AddUniCall{keys.at(uni).address, name, "Country"}));
    }

    Hash256 store_hash(unsigned caller, const Hash256& digest, std::uint32_t code = 1,
                       WeiAmount price = kDefaultGasPrice)
    {
        return submit(caller, contract, encode_call(StoreHashCall{digest, code}), price);
    }

    void mine_all()
    {
        while (ledger->pending_count() > 0)
            ledger->mine_next_block(miner);
    }

    ChainConfig config;
    std::vector<WalletEntry> keys;
    Address miner;
    Address contract;
    std::unique_ptr<Ledger> ledger;
};

}  // namespace certchain::testing
