// certchain: blockchain-anchored academic record registry
// Copyright 2026 The certchain Authors.
// SPDX-License-Identifier: Apache-2.0

#include <certchain/codec.hpp>
#include <certchain/transaction.hpp>

namespace certchain
{
namespace
{
Encoder encode_signed_part(const SignedTransaction& tx)
{
    Encoder e;
    e.u64(tx.nonce)
        .address(tx.from)
        .address(tx.to)
        .bytes(tx.payload)
        .u64(tx.gas_limit)
        .wei(tx.gas_price)
        .i64(tx.submitted_at.count())
        .bytes(tx.sender_key.view());
    return e;
}
}  // namespace

Bytes SignedTransaction::signing_bytes() const
{
    return encode_signed_part(*this).take();
}

Bytes SignedTransaction::encode() const
{
    auto e = encode_signed_part(*this);
    e.bytes(signature.view());
    return std::move(e).take();
}

SignedTransaction SignedTransaction::decode(BytesView bytes)
{
    Decoder d{bytes};
    SignedTransaction tx;
    tx.nonce = d.u64();
    tx.from = d.address();
    tx.to = d.address();
    tx.payload = d.bytes();
    tx.gas_limit = d.u64();
    tx.gas_price = d.wei();
    tx.submitted_at = SimDuration{d.i64()};
    const auto key = d.bytes();
    const auto sig = d.bytes();
    d.expect_done();
    if (key.size() != PublicKey::size || sig.size() != Signature::size)
        throw DecodeError{"bad key or signature width"};
    std::copy(key.begin(), key.end(), tx.sender_key.bytes.begin());
    std::copy(sig.begin(), sig.end(), tx.signature.bytes.begin());
    return tx;
}

Hash256 SignedTransaction::hash() const
{
    return sha256(encode());
}

bool SignedTransaction::verify() const noexcept
{
    try
    {
        if (address_from_public_key(sender_key) != from)
            return false;
        return verify_signature(sender_key.view(), signing_bytes(), signature.view());
    }
    catch (...)
    {
        return false;
    }
}

SignedTransaction sign_fields(const TransactionFields& fields, const Keypair& key)
{
    SignedTransaction tx;
    static_cast<TransactionFields&>(tx) = fields;
    tx.sender_key = key.public_key();
    tx.signature = key.sign(tx.signing_bytes());
    return tx;
}

}  // namespace certchain
