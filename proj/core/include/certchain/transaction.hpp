// certchain: blockchain-anchored academic record registry
// Copyright 2026 The certchain Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <certchain/crypto.hpp>

namespace certchain
{
/// Gas limit attached to every transaction the wallet signs by default.
constexpr Gas kDefaultGasLimit = 40'000;
/// Default gas price: 100 Gwei per gas unit.
constexpr WeiAmount kDefaultGasPrice = WeiAmount::gwei(100);

/// Transaction fields covered by the signature, in canonical order.
struct TransactionFields
{
    std::uint64_t nonce = 0;
    Address from;
    /// Zero address means contract deployment.
    Address to;
    Bytes payload;
    Gas gas_limit = kDefaultGasLimit;
    WeiAmount gas_price = kDefaultGasPrice;
    SimDuration submitted_at{0};

    bool operator==(const TransactionFields&) const = default;
};

struct SignedTransaction : TransactionFields
{
    PublicKey sender_key;
    Signature signature;

    bool operator==(const SignedTransaction&) const = default;

    /// Canonical encoding of the signed fields plus sender key.
    [[nodiscard]] Bytes signing_bytes() const;
    /// Canonical encoding of every field including the signature.
    [[nodiscard]] Bytes encode() const;
    static SignedTransaction decode(BytesView bytes);

    /// SHA-256 of encode().
    [[nodiscard]] Hash256 hash() const;

    /// Signature checks against sender_key and sender_key derives `from`.
    [[nodiscard]] bool verify() const noexcept;

    /// Upper bound on the fee this transaction can be charged.
    [[nodiscard]] WeiAmount max_fee() const { return compute_fee(gas_limit, gas_price); }
};

/// Signs `fields` with `key`. The caller is responsible for `fields.from`
/// matching the key's address.
SignedTransaction sign_fields(const TransactionFields& fields, const Keypair& key);

}  // namespace certchain
