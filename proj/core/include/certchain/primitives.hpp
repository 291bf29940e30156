// certchain: blockchain-anchored academic record registry
// Copyright 2026 The certchain Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <chrono>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace certchain
{
using Bytes = std::vector<std::uint8_t>;
using BytesView = std::span<const std::uint8_t>;

/// Gas units.
using Gas = std::uint64_t;

/// Simulated chain time, measured from genesis at millisecond resolution.
using SimDuration = std::chrono::duration<std::int64_t, std::milli>;

/// Raised for malformed textual input (hex, decimal amounts, addresses).
class ParseError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Raised when integer ledger arithmetic would leave its range.
class ArithmeticOverflow : public std::overflow_error
{
public:
    using std::overflow_error::overflow_error;
};

std::string to_hex(BytesView bytes);
/// Accepts upper- or lower-case digits, no prefix. Throws ParseError.
Bytes from_hex(std::string_view hex);
bool is_hex(std::string_view text) noexcept;

inline BytesView as_bytes(std::string_view s) noexcept
{
    return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

template <std::size_t N>
struct FixedBytes
{
    static constexpr std::size_t size = N;
    std::array<std::uint8_t, N> bytes{};

    constexpr auto operator<=>(const FixedBytes&) const = default;

    [[nodiscard]] BytesView view() const noexcept { return bytes; }
    [[nodiscard]] bool is_zero() const noexcept
    {
        for (auto b : bytes)
            if (b != 0)
                return false;
        return true;
    }
};

/// 32-byte SHA-256 digest. Text form: 64 lowercase hex characters.
struct Hash256 : FixedBytes<32>
{
    [[nodiscard]] std::string hex() const { return to_hex(bytes); }
    static Hash256 from_hex(std::string_view text);
    static std::optional<Hash256> try_from_hex(std::string_view text) noexcept;
    static Hash256 from_span(BytesView b);
    /// Number of leading zero bits, 0..256.
    [[nodiscard]] unsigned leading_zero_bits() const noexcept;
};

/// 20-byte account or contract identifier. Text form: "0x" + 40 lowercase hex.
struct Address : FixedBytes<20>
{
    [[nodiscard]] std::string hex() const { return "0x" + to_hex(bytes); }
    static Address from_hex(std::string_view text);
    static Address from_span(BytesView b);
};

/// Non-negative amount of Wei with checked 128-bit integer arithmetic.
class WeiAmount
{
public:
    __extension__ using rep = unsigned __int128;

    constexpr WeiAmount() noexcept = default;
    constexpr explicit WeiAmount(rep v) noexcept : value_{v} {}

    static constexpr WeiAmount wei(std::uint64_t n) noexcept { return WeiAmount{n}; }
    static constexpr WeiAmount gwei(std::uint64_t n) noexcept
    {
        return WeiAmount{static_cast<rep>(n) * 1'000'000'000u};
    }
    static constexpr WeiAmount ether(std::uint64_t n) noexcept
    {
        return WeiAmount{static_cast<rep>(n) * 1'000'000'000'000'000'000u};
    }

    [[nodiscard]] constexpr rep value() const noexcept { return value_; }

    WeiAmount operator+(WeiAmount o) const;
    WeiAmount operator-(WeiAmount o) const;
    WeiAmount operator*(std::uint64_t k) const;
    WeiAmount& operator+=(WeiAmount o) { return *this = *this + o; }
    WeiAmount& operator-=(WeiAmount o) { return *this = *this - o; }

    constexpr auto operator<=>(const WeiAmount&) const = default;

    /// Exact decimal integer in Wei.
    [[nodiscard]] std::string to_string() const;
    static WeiAmount parse(std::string_view decimal);

    /// Ether rendering rounded half-even to `decimals` fractional digits.
    [[nodiscard]] std::string to_ether_string(unsigned decimals = 8) const;

    /// Big-endian 16-byte encoding.
    [[nodiscard]] std::array<std::uint8_t, 16> to_be_bytes() const noexcept;
    static WeiAmount from_be_bytes(BytesView b);

private:
    rep value_{0};
};

/// Transaction fee: exact product of gas used and gas price. Throws
/// ArithmeticOverflow instead of wrapping.
WeiAmount compute_fee(Gas gas_used, WeiAmount gas_price);

/// Renders simulated time as seconds with three decimals, e.g. "4.096".
std::string format_seconds(SimDuration d);
/// Parses "12", "12.5" or "12.345" seconds. Throws ParseError.
SimDuration parse_seconds(std::string_view text);

}  // namespace certchain

template <>
struct std::hash<certchain::Hash256>
{
    std::size_t operator()(const certchain::Hash256& h) const noexcept
    {
        std::size_t v = 0;
        for (std::size_t i = 0; i < sizeof(v); ++i)
            v = (v << 8) | h.bytes[i];
        return v;
    }
};

template <>
struct std::hash<certchain::Address>
{
    std::size_t operator()(const certchain::Address& a) const noexcept
    {
        std::size_t v = 0;
        for (std::size_t i = 0; i < sizeof(v); ++i)
            v = (v << 8) | a.bytes[12 + i];
        return v;
    }
};
