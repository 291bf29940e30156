// certchain: blockchain-anchored academic record registry
// Copyright 2026 The certchain Authors.
// SPDX-License-Identifier: Apache-2.0

#include <certchain/primitives.hpp>

#include <algorithm>
#include <bit>

namespace certchain
{
namespace
{
constexpr char kHexDigits[] = "0123456789abcdef";

int hex_value(char c) noexcept
{
    if (c >= '0' && c <= '9')
        return c - '0';
    if (c >= 'a' && c <= 'f')
        return c - 'a' + 10;
    if (c >= 'A' && c <= 'F')
        return c - 'A' + 10;
    return -1;
}

std::string u128_to_string(WeiAmount::rep v)
{
    if (v == 0)
        return "0";
    std::string s;
    while (v != 0)
    {
        s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}
}  // namespace

std::string to_hex(BytesView bytes)
{
    std::string out;
    out.reserve(bytes.size() * 2);
    for (auto b : bytes)
    {
        out.push_back(kHexDigits[b >> 4]);
        out.push_back(kHexDigits[b & 0x0f]);
    }
    return out;
}

bool is_hex(std::string_view text) noexcept
{
    return text.size() % 2 == 0 &&
           std::all_of(text.begin(), text.end(), [](char c) { return hex_value(c) >= 0; });
}

Bytes from_hex(std::string_view hex)
{
    if (hex.size() % 2 != 0)
        throw ParseError{"hex string has odd length"};
    Bytes out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i)
    {
        const int hi = hex_value(hex[2 * i]);
        const int lo = hex_value(hex[2 * i + 1]);
        if (hi < 0 || lo < 0)
            throw ParseError{"invalid hex digit"};
        out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
    }
    return out;
}

Hash256 Hash256::from_span(BytesView b)
{
    if (b.size() != size)
        throw ParseError{"hash must be exactly 32 bytes"};
    Hash256 h;
    std::copy(b.begin(), b.end(), h.bytes.begin());
    return h;
}

Hash256 Hash256::from_hex(std::string_view text)
{
    if (text.size() != 2 * size)
        throw ParseError{"hash must be 64 hex characters"};
    return from_span(certchain::from_hex(text));
}

std::optional<Hash256> Hash256::try_from_hex(std::string_view text) noexcept
{
    if (text.size() != 2 * size || !is_hex(text))
        return std::nullopt;
    return from_span(certchain::from_hex(text));
}

unsigned Hash256::leading_zero_bits() const noexcept
{
    unsigned n = 0;
    for (auto b : bytes)
    {
        if (b == 0)
        {
            n += 8;
            continue;
        }
        n += static_cast<unsigned>(std::countl_zero(b));
        break;
    }
    return n;
}

Address Address::from_span(BytesView b)
{
    if (b.size() != size)
        throw ParseError{"address must be exactly 20 bytes"};
    Address a;
    std::copy(b.begin(), b.end(), a.bytes.begin());
    return a;
}

Address Address::from_hex(std::string_view text)
{
    if (text.size() != 2 + 2 * size || text[0] != '0' || (text[1] != 'x' && text[1] != 'X'))
        throw ParseError{"address must be 0x followed by 40 hex characters"};
    return from_span(certchain::from_hex(text.substr(2)));
}

WeiAmount WeiAmount::operator+(WeiAmount o) const
{
    rep r;
    if (__builtin_add_overflow(value_, o.value_, &r))
        throw ArithmeticOverflow{"wei addition overflow"};
    return WeiAmount{r};
}

WeiAmount WeiAmount::operator-(WeiAmount o) const
{
    if (o.value_ > value_)
        throw ArithmeticOverflow{"wei subtraction underflow"};
    return WeiAmount{value_ - o.value_};
}

WeiAmount WeiAmount::operator*(std::uint64_t k) const
{
    rep r;
    if (__builtin_mul_overflow(value_, static_cast<rep>(k), &r))
        throw ArithmeticOverflow{"wei multiplication overflow"};
    return WeiAmount{r};
}

std::string WeiAmount::to_string() const
{
    return u128_to_string(value_);
}

WeiAmount WeiAmount::parse(std::string_view decimal)
{
    if (decimal.empty())
        throw ParseError{"empty wei amount"};
    rep v = 0;
    for (char c : decimal)
    {
        if (c < '0' || c > '9')
            throw ParseError{"wei amount must be a decimal integer"};
        if (__builtin_mul_overflow(v, rep{10}, &v) ||
            __builtin_add_overflow(v, static_cast<rep>(c - '0'), &v))
            throw ParseError{"wei amount out of range"};
    }
    return WeiAmount{v};
}

std::string WeiAmount::to_ether_string(unsigned decimals) const
{
    if (decimals > 18)
        decimals = 18;
    rep scale = 1;
    for (unsigned i = 0; i < 18 - decimals; ++i)
        scale *= 10;
    rep q = value_ / scale;
    const rep r = value_ % scale;
    const rep twice = r * 2;
    if (twice > scale || (twice == scale && (q & 1) != 0))
        ++q;

    rep unit = 1;
    for (unsigned i = 0; i < decimals; ++i)
        unit *= 10;
    std::string out = u128_to_string(q / unit);
    if (decimals > 0)
    {
        std::string frac = u128_to_string(q % unit);
        out += '.';
        out.append(decimals - frac.size(), '0');
        out += frac;
    }
    return out;
}

std::array<std::uint8_t, 16> WeiAmount::to_be_bytes() const noexcept
{
    std::array<std::uint8_t, 16> out{};
    rep v = value_;
    for (int i = 15; i >= 0; --i)
    {
        out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v & 0xff);
        v >>= 8;
    }
    return out;
}

WeiAmount WeiAmount::from_be_bytes(BytesView b)
{
    if (b.size() != 16)
        throw ParseError{"wei encoding must be 16 bytes"};
    rep v = 0;
    for (auto x : b)
        v = (v << 8) | x;
    return WeiAmount{v};
}

WeiAmount compute_fee(Gas gas_used, WeiAmount gas_price)
{
    return gas_price * gas_used;
}

std::string format_seconds(SimDuration d)
{
    const auto ms = d.count();
    const bool neg = ms < 0;
    const auto a = neg ? -ms : ms;
    std::string frac = std::to_string(a % 1000);
    frac.insert(0, 3 - frac.size(), '0');
    return (neg ? "-" : "") + std::to_string(a / 1000) + "." + frac;
}

SimDuration parse_seconds(std::string_view text)
{
    const auto dot = text.find('.');
    const auto whole = text.substr(0, dot);
    const auto frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
    if (whole.empty() || frac.size() > 3 || (dot != std::string_view::npos && frac.empty()))
        throw ParseError{"invalid seconds value: " + std::string{text}};
    std::int64_t ms = 0;
    for (char c : whole)
    {
        if (c < '0' || c > '9' || ms > (INT64_MAX / 10000))
            throw ParseError{"invalid seconds value: " + std::string{text}};
        ms = ms * 10 + (c - '0');
    }
    ms *= 1000;
    std::int64_t scale = 100;
    for (char c : frac)
    {
        if (c < '0' || c > '9')
            throw ParseError{"invalid seconds value: " + std::string{text}};
        ms += (c - '0') * scale;
        scale /= 10;
    }
    return SimDuration{ms};
}

}  // namespace certchain
