// certchain: blockchain-anchored academic record registry
// Copyright 2026 The certchain Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <certchain/transaction.hpp>

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>

namespace certchain
{
class AddressMismatch : public std::invalid_argument
{
public:
    AddressMismatch() : std::invalid_argument{"transaction sender does not match wallet address"} {}
};

/// Transaction fields supplied by the caller; the wallet fills the rest.
struct UnsignedTransaction
{
    /// Zero address means "this wallet".
    Address from;
    Address to;
    Bytes payload;
    std::optional<Gas> gas_limit;
    std::optional<WeiAmount> gas_price;
    SimDuration submitted_at{0};
};

struct WalletEntry
{
    std::string label;
    Keypair keypair;
    Address address;
    std::uint64_t next_nonce = 0;

    /// Throws BadSeedLength.
    static WalletEntry create(std::string label, BytesView seed);

    /// Uses next_nonce, defaults gas to 40,000 at 100 Gwei, then increments
    /// next_nonce. Throws AddressMismatch if `tx.from` names another account.
    SignedTransaction sign_transaction(const UnsignedTransaction& tx);
};

/// Checks `tx.signature` over the canonical encoding under `public_key`.
bool verify_signature(const SignedTransaction& tx, BytesView public_key) noexcept;

/// Labelled wallet entries. Each entry is locked while it signs, so nonce
/// assignment and submission happen atomically per account; distinct entries
/// can be used concurrently.
class Wallet
{
public:
    Wallet() = default;
    Wallet(Wallet&& other) noexcept;
    Wallet& operator=(Wallet&& other) noexcept;

    void add(WalletEntry entry);
    [[nodiscard]] bool contains(const std::string& label) const;
    [[nodiscard]] Address address(const std::string& label) const;
    [[nodiscard]] WalletEntry entry(const std::string& label) const;
    [[nodiscard]] std::vector<std::string> labels() const;

    /// Signs with `label` and hands the transaction to `submit`. The nonce is
    /// raised to at least `min_nonce` first; if `submit` throws, next_nonce is
    /// restored and the exception propagates.
    Hash256 transact(const std::string& label, const UnsignedTransaction& tx, std::uint64_t min_nonce,
                     const std::function<Hash256(const SignedTransaction&)>& submit);

    /// Writes one JSON file per entry (`<label>.json`, mode 0600). The files
    /// hold the seed in plaintext and say so in a `warning` field.
    void save(const std::filesystem::path& dir) const;
    static Wallet load(const std::filesystem::path& dir);

private:
    struct Slot
    {
        mutable std::mutex mutex;
        WalletEntry entry;
    };
    Slot& slot(const std::string& label) const;

    mutable std::mutex mutex_;
    std::map<std::string, std::unique_ptr<Slot>> slots_;
};

}  // namespace certchain
