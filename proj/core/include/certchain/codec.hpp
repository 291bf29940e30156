// certchain: blockchain-anchored academic record registry
// Copyright 2026 The certchain Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <certchain/primitives.hpp>

namespace certchain
{
/// Canonical binary encoding used for hashing, signing and contract payloads.
///
/// Every field is written as a 4-byte big-endian length followed by the
/// field bytes. Integers are fixed-width big-endian (u32: 4 bytes, u64: 8,
/// Wei: 16). Fields appear in declared order with no padding or tags, so two
/// values encode identically iff all their fields are equal.
class Encoder
{
public:
    Encoder& u8(std::uint8_t v);
    Encoder& u32(std::uint32_t v);
    Encoder& u64(std::uint64_t v);
    Encoder& i64(std::int64_t v) { return u64(static_cast<std::uint64_t>(v)); }
    Encoder& wei(WeiAmount v);
    Encoder& bytes(BytesView v);
    Encoder& text(std::string_view v) { return bytes(as_bytes(v)); }
    Encoder& hash(const Hash256& h) { return bytes(h.view()); }
    Encoder& address(const Address& a) { return bytes(a.view()); }
    /// Writes `v` without a length prefix (used for opcode bytes).
    Encoder& raw(BytesView v);

    [[nodiscard]] const Bytes& data() const& noexcept { return out_; }
    [[nodiscard]] Bytes&& take() && noexcept { return std::move(out_); }

private:
    void length(std::size_t n);
    Bytes out_;
};

class DecodeError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Reads values written by Encoder. Throws DecodeError on any mismatch.
class Decoder
{
public:
    explicit Decoder(BytesView in) noexcept : in_{in} {}

    std::uint8_t raw_u8();
    std::uint8_t u8();
    std::uint32_t u32();
    std::uint64_t u64();
    std::int64_t i64() { return static_cast<std::int64_t>(u64()); }
    WeiAmount wei();
    Bytes bytes();
    std::string text();
    Hash256 hash();
    Address address();

    [[nodiscard]] bool done() const noexcept { return pos_ == in_.size(); }
    void expect_done() const;

private:
    BytesView field(std::size_t expected_size);
    BytesView field_any();
    BytesView in_;
    std::size_t pos_ = 0;
};

}  // namespace certchain
