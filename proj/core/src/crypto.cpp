// certchain: blockchain-anchored academic record registry
// Copyright 2026 The certchain Authors.
// SPDX-License-Identifier: Apache-2.0

#include <certchain/crypto.hpp>

#include <sodium.h>

#include <cstring>

namespace certchain
{
namespace
{
struct SodiumInit
{
    SodiumInit()
    {
        if (sodium_init() < 0)
            throw std::runtime_error{"libsodium initialisation failed"};
    }
};

void ensure_sodium()
{
    static const SodiumInit init;
}

static_assert(sizeof(crypto_hash_sha256_state) <= 128);
}  // namespace

Hash256 sha256(BytesView data)
{
    Hash256 h;
    crypto_hash_sha256(h.bytes.data(), data.data(), data.size());
    return h;
}

Sha256::Sha256()
{
    crypto_hash_sha256_init(reinterpret_cast<crypto_hash_sha256_state*>(state_.data()));
}

Sha256& Sha256::update(BytesView data)
{
    crypto_hash_sha256_update(
        reinterpret_cast<crypto_hash_sha256_state*>(state_.data()), data.data(), data.size());
    return *this;
}

Hash256 Sha256::finish()
{
    Hash256 h;
    crypto_hash_sha256_final(reinterpret_cast<crypto_hash_sha256_state*>(state_.data()), h.bytes.data());
    return h;
}

Keypair Keypair::from_seed(BytesView seed)
{
    if (seed.size() != crypto_sign_SEEDBYTES)
        throw BadSeedLength{};
    ensure_sodium();
    Keypair kp;
    std::memcpy(kp.seed_.bytes.data(), seed.data(), seed.size());
    crypto_sign_seed_keypair(kp.public_.bytes.data(), kp.expanded_.data(), kp.seed_.bytes.data());
    return kp;
}

Signature Keypair::sign(BytesView message) const
{
    Signature sig;
    crypto_sign_detached(sig.bytes.data(), nullptr, message.data(), message.size(), expanded_.data());
    return sig;
}

bool verify_signature(BytesView public_key, BytesView message, BytesView signature) noexcept
{
    if (public_key.size() != crypto_sign_PUBLICKEYBYTES || signature.size() != crypto_sign_BYTES)
        return false;
    try
    {
        ensure_sodium();
    }
    catch (...)
    {
        return false;
    }
    return crypto_sign_verify_detached(signature.data(), message.data(), message.size(), public_key.data()) == 0;
}

Address address_from_public_key(const PublicKey& key)
{
    const auto digest = sha256(key.view());
    return Address::from_span(BytesView{digest.bytes}.subspan(12));
}

std::uint64_t RandomSource::next_u64()
{
    std::array<std::uint8_t, 8> b{};
    fill(b);
    std::uint64_t v = 0;
    for (auto x : b)
        v = (v << 8) | x;
    return v;
}

void SystemRandom::fill(std::span<std::uint8_t> out)
{
    ensure_sodium();
    randombytes_buf(out.data(), out.size());
}

SeededRandom::SeededRandom(std::uint64_t seed)
{
    std::array<std::uint8_t, 8> be{};
    for (int i = 7; i >= 0; --i)
    {
        be[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(seed & 0xff);
        seed >>= 8;
    }
    seed_ = Sha256{}.update("certchain-seed").update(be).finish();
}

void SeededRandom::fill(std::span<std::uint8_t> out)
{
    ensure_sodium();
    std::lock_guard lock{mutex_};
    std::array<std::uint8_t, 8> ctr{};
    auto c = counter_++;
    for (int i = 7; i >= 0; --i)
    {
        ctr[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(c & 0xff);
        c >>= 8;
    }
    const auto key = Sha256{}.update(seed_.view()).update(ctr).finish();
    randombytes_buf_deterministic(out.data(), out.size(), key.bytes.data());
}

Hash256 derive_seed(const Hash256& master, std::string_view label)
{
    return Sha256{}.update(master.view()).update(label).finish();
}

}  // namespace certchain
