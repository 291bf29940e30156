// certchain: blockchain-anchored academic record registry
// Copyright 2026 The certchain Authors.
// SPDX-License-Identifier: Apache-2.0

#include <certchain/wallet.hpp>

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <sys/stat.h>

#include <fstream>

using namespace certchain;
using certchain::testing::TempDir;
using certchain::testing::test_seed;

TEST(WalletEntry, SignsWithDefaultsAndAdvancesNonce)
{
    auto e = WalletEntry::create("a", test_seed("w").view());
    UnsignedTransaction u;
    u.to.bytes[0] = 1;
    const auto t0 = e.sign_transaction(u);
    const auto t1 = e.sign_transaction(u);
    EXPECT_EQ(t0.nonce, 0u);
    EXPECT_EQ(t1.nonce, 1u);
    EXPECT_EQ(t0.gas_limit, kDefaultGasLimit);
    EXPECT_EQ(t0.gas_price, kDefaultGasPrice);
    EXPECT_EQ(t0.from, e.address);
    EXPECT_TRUE(t0.verify());
    EXPECT_TRUE(verify_signature(t0, e.keypair.public_key().view()));
    EXPECT_NE(t0.hash(), t1.hash());

    u.from.bytes[3] = 9;
    EXPECT_THROW(e.sign_transaction(u), AddressMismatch);
    EXPECT_THROW(WalletEntry::create("b", Bytes(16, 0)), BadSeedLength);
}

TEST(SignedTransaction, EncodeDecode)
{
    auto e = WalletEntry::create("a", test_seed("w").view());
    UnsignedTransaction u;
    u.payload = {1, 2, 3};
    u.gas_price = WeiAmount::gwei(7);
    u.submitted_at = SimDuration{1234};
    const auto tx = e.sign_transaction(u);
    const auto back = SignedTransaction::decode(tx.encode());
    EXPECT_EQ(back, tx);
    EXPECT_EQ(back.hash(), tx.hash());
    EXPECT_EQ(tx.max_fee(), compute_fee(kDefaultGasLimit, WeiAmount::gwei(7)));
    auto bytes = tx.encode();
    bytes.pop_back();
    EXPECT_THROW(SignedTransaction::decode(bytes), DecodeError);
}

TEST(Wallet, TransactRestoresNonceOnFailure)
{
    Wallet w;
    w.add(WalletEntry::create("a", test_seed("w").view()));
    UnsignedTransaction u;
    EXPECT_THROW(w.transact("a", u, 0, [](const SignedTransaction&) -> Hash256 { throw std::runtime_error{"x"}; }),
                 std::runtime_error);
    EXPECT_EQ(w.entry("a").next_nonce, 0u);
    std::uint64_t seen = 99;
    w.transact("a", u, 4, [&](const SignedTransaction& t) {
        seen = t.nonce;
        return t.hash();
    });
    EXPECT_EQ(seen, 4u);
    EXPECT_EQ(w.entry("a").next_nonce, 5u);
    EXPECT_THROW((void)w.address("missing"), std::out_of_range);
    EXPECT_TRUE(w.contains("a"));
    EXPECT_EQ(w.labels(), std::vector<std::string>{"a"});
}

TEST(Wallet, SaveLoadRoundTrip)
{
    TempDir dir;
    Wallet w;
    w.add(WalletEntry::create("admin", test_seed("admin").view()));
    w.add(WalletEntry::create("miner", test_seed("miner").view()));
    UnsignedTransaction u;
    w.transact("admin", u, 3, [](const SignedTransaction& t) { return t.hash(); });
    w.save(dir.path());

    struct stat st{};
    ASSERT_EQ(::stat((dir / "admin.json").c_str(), &st), 0);
    EXPECT_EQ(st.st_mode & 0777, 0600u);
    std::ifstream in{dir / "admin.json"};
    const std::string text{std::istreambuf_iterator<char>{in}, {}};
    EXPECT_NE(text.find("UNENCRYPTED"), std::string::npos);

    const auto loaded = Wallet::load(dir.path());
    EXPECT_EQ(loaded.labels(), (std::vector<std::string>{"admin", "miner"}));
    EXPECT_EQ(loaded.address("admin"), w.address("admin"));
    EXPECT_EQ(loaded.entry("admin").next_nonce, 4u);
}

TEST(Wallet, LoadRejectsMismatchedAddress)
{
    TempDir dir;
    Wallet w;
    w.add(WalletEntry::create("a", test_seed("a").view()));
    w.save(dir.path());
    std::ifstream in{dir / "a.json"};
    std::string text{std::istreambuf_iterator<char>{in}, {}};
    in.close();
    const auto pos = text.find("\"0x") + 3;
    text[pos] = text[pos] == '0' ? '1' : '0';
    std::ofstream{dir / "a.json"} << text;
    EXPECT_THROW(Wallet::load(dir.path()), std::runtime_error);
}
