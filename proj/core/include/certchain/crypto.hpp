// certchain: blockchain-anchored academic record registry
// Copyright 2026 The certchain Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <certchain/primitives.hpp>

#include <mutex>

namespace certchain
{
Hash256 sha256(BytesView data);
inline Hash256 sha256(std::string_view data)
{
    return sha256(as_bytes(data));
}

/// Streaming SHA-256 for inputs assembled from several pieces.
class Sha256
{
public:
    Sha256();
    Sha256& update(BytesView data);
    Sha256& update(std::string_view data) { return update(as_bytes(data)); }
    Hash256 finish();

private:
    alignas(64) std::array<std::uint8_t, 128> state_{};
};

using Seed = FixedBytes<32>;
using PublicKey = FixedBytes<32>;
using Signature = FixedBytes<64>;

class BadSeedLength : public std::invalid_argument
{
public:
    BadSeedLength() : std::invalid_argument{"keypair seed must be exactly 32 bytes"} {}
};

/// Ed25519 key pair derived deterministically from a 32-byte seed.
class Keypair
{
public:
    /// Throws BadSeedLength unless `seed` is 32 bytes.
    static Keypair from_seed(BytesView seed);

    [[nodiscard]] const Seed& seed() const noexcept { return seed_; }
    [[nodiscard]] const PublicKey& public_key() const noexcept { return public_; }
    [[nodiscard]] Signature sign(BytesView message) const;

private:
    Seed seed_;
    PublicKey public_;
    std::array<std::uint8_t, 64> expanded_{};
};

/// Total function: malformed key or signature lengths yield false.
bool verify_signature(BytesView public_key, BytesView message, BytesView signature) noexcept;

/// Last 20 bytes of SHA-256(public key).
Address address_from_public_key(const PublicKey& key);

/// Source of random bytes. Implementations are safe to share across threads.
class RandomSource
{
public:
    virtual ~RandomSource() = default;
    virtual void fill(std::span<std::uint8_t> out) = 0;

    Bytes bytes(std::size_t n)
    {
        Bytes b(n);
        fill(b);
        return b;
    }
    std::uint64_t next_u64();
};

/// Operating-system entropy.
class SystemRandom final : public RandomSource
{
public:
    void fill(std::span<std::uint8_t> out) override;
};

/// Deterministic ChaCha20 stream keyed by a seed; each fill() draws a fresh
/// block keyed by SHA-256(seed || counter).
class SeededRandom final : public RandomSource
{
public:
    explicit SeededRandom(const Hash256& seed) : seed_{seed} {}
    explicit SeededRandom(std::uint64_t seed);

    void fill(std::span<std::uint8_t> out) override;

private:
    std::mutex mutex_;
    Hash256 seed_;
    std::uint64_t counter_ = 0;
};

/// SHA-256(master || label): independent sub-seeds for keys and streams.
Hash256 derive_seed(const Hash256& master, std::string_view label);

}  // namespace certchain
