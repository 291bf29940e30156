// certchain: blockchain-anchored academic record registry
// Copyright 2026 The certchain Authors.
// SPDX-License-Identifier: Apache-2.0

#include <certchain/codec.hpp>

namespace certchain
{
namespace
{
template <typename T>
void put_be(Bytes& out, T v)
{
    for (int shift = (sizeof(T) - 1) * 8; shift >= 0; shift -= 8)
        out.push_back(static_cast<std::uint8_t>((v >> shift) & 0xff));
}

template <typename T>
T get_be(BytesView b)
{
    T v = 0;
    for (auto x : b)
        v = static_cast<T>((v << 8) | x);
    return v;
}
}  // namespace

void Encoder::length(std::size_t n)
{
    if (n > 0xffffffffu)
        throw std::length_error{"field too large for canonical encoding"};
    put_be(out_, static_cast<std::uint32_t>(n));
}

Encoder& Encoder::u8(std::uint8_t v)
{
    length(1);
    out_.push_back(v);
    return *this;
}

Encoder& Encoder::u32(std::uint32_t v)
{
    length(4);
    put_be(out_, v);
    return *this;
}

Encoder& Encoder::u64(std::uint64_t v)
{
    length(8);
    put_be(out_, v);
    return *this;
}

Encoder& Encoder::wei(WeiAmount v)
{
    const auto b = v.to_be_bytes();
    return bytes(b);
}

Encoder& Encoder::bytes(BytesView v)
{
    length(v.size());
    out_.insert(out_.end(), v.begin(), v.end());
    return *this;
}

Encoder& Encoder::raw(BytesView v)
{
    out_.insert(out_.end(), v.begin(), v.end());
    return *this;
}

BytesView Decoder::field_any()
{
    if (in_.size() - pos_ < 4)
        throw DecodeError{"truncated length prefix"};
    const auto n = get_be<std::uint32_t>(in_.subspan(pos_, 4));
    pos_ += 4;
    if (in_.size() - pos_ < n)
        throw DecodeError{"truncated field"};
    auto f = in_.subspan(pos_, n);
    pos_ += n;
    return f;
}

BytesView Decoder::field(std::size_t expected_size)
{
    auto f = field_any();
    if (f.size() != expected_size)
        throw DecodeError{"unexpected field width"};
    return f;
}

std::uint8_t Decoder::raw_u8()
{
    if (pos_ >= in_.size())
        throw DecodeError{"truncated input"};
    return in_[pos_++];
}

std::uint8_t Decoder::u8()
{
    return field(1)[0];
}

std::uint32_t Decoder::u32()
{
    return get_be<std::uint32_t>(field(4));
}

std::uint64_t Decoder::u64()
{
    return get_be<std::uint64_t>(field(8));
}

WeiAmount Decoder::wei()
{
    return WeiAmount::from_be_bytes(field(16));
}

Bytes Decoder::bytes()
{
    auto f = field_any();
    return {f.begin(), f.end()};
}

std::string Decoder::text()
{
    auto f = field_any();
    return {f.begin(), f.end()};
}

Hash256 Decoder::hash()
{
    return Hash256::from_span(field(32));
}

Address Decoder::address()
{
    return Address::from_span(field(20));
}

void Decoder::expect_done() const
{
    if (!done())
        throw DecodeError{"trailing bytes"};
}

}  // namespace certchain
