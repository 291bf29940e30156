// certchain: blockchain-anchored academic record registry
// Copyright 2026 The certchain Authors.
// SPDX-License-Identifier: Apache-2.0

#include <certchain/codec.hpp>
#include <certchain/crypto.hpp>

#include <gtest/gtest.h>

using namespace certchain;

TEST(Codec, LengthPrefixedLayout)
{
    Encoder e;
    e.u32(1).text("ab");
    EXPECT_EQ(to_hex(e.data()), "00000004" "00000001" "00000002" "6162");
}

TEST(Codec, RoundTrip)
{
    const auto h = sha256("x");
    Address a;
    a.bytes[19] = 9;
    Encoder e;
    e.u8(3).u32(70000).u64(1ull << 40).i64(-5).wei(WeiAmount::ether(3)).bytes(Bytes{1, 2}).text("hé").hash(h).address(a);
    Decoder d{e.data()};
    EXPECT_EQ(d.u8(), 3);
    EXPECT_EQ(d.u32(), 70000u);
    EXPECT_EQ(d.u64(), 1ull << 40);
    EXPECT_EQ(d.i64(), -5);
    EXPECT_EQ(d.wei(), WeiAmount::ether(3));
    EXPECT_EQ(d.bytes(), (Bytes{1, 2}));
    EXPECT_EQ(d.text(), "hé");
    EXPECT_EQ(d.hash(), h);
    EXPECT_EQ(d.address(), a);
    EXPECT_NO_THROW(d.expect_done());
}

TEST(Codec, RejectsMismatches)
{
    Encoder e;
    e.u64(1);
    Decoder wrong_width{e.data()};
    EXPECT_THROW(wrong_width.u32(), DecodeError);

    const Bytes truncated{0, 0, 0, 9, 1};
    Decoder short_field{truncated};
    EXPECT_THROW(short_field.bytes(), DecodeError);

    Encoder two;
    two.u32(1).u32(2);
    Decoder trailing{two.data()};
    trailing.u32();
    EXPECT_THROW(trailing.expect_done(), DecodeError);
}
