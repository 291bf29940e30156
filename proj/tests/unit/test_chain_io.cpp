// certchain: blockchain-anchored academic record registry
// Copyright 2026 The certchain Authors.
// SPDX-License-Identifier: Apache-2.0

#include <certchain/chain_io.hpp>

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace certchain;
using certchain::testing::TestChain;

namespace
{
TestChain populated()
{
    TestChain c{3};
    c.deploy();
    c.add_uni(0, 1, "Uni");
    c.mine_all();
    c.store_hash(1, sha256("doc"), 2);
    c.store_hash(2, sha256("doc2"));
    c.mine_all();
    return c;
}
}  // namespace

TEST(ChainIo, ExportImportRoundTrip)
{
    auto c = populated();
    const auto blocks = c.ledger->blocks();
    const auto text = export_chain(blocks);
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), static_cast<long>(blocks.size()));
    const auto back = import_chain(text);
    EXPECT_EQ(back, blocks);
    EXPECT_EQ(export_chain(back), text);
    EXPECT_EQ(Ledger::replay(c.config, back)->state()->root(), c.ledger->state()->root());
}

TEST(ChainIo, TransactionsRoundTrip)
{
    TestChain c{2};
    c.submit(0, Address{});
    c.submit(1, Address{}, {9, 9});
    const auto pending = c.ledger->pending();
    EXPECT_EQ(import_transactions(export_transactions(pending)), pending);
    EXPECT_TRUE(import_transactions("").empty());
    EXPECT_EQ(transaction_from_json(to_json(pending[0])), pending[0]);
}

TEST(ChainIo, ImportErrorsCarryLineNumbers)
{
    auto c = populated();
    auto text = export_chain(c.ledger->blocks());
    const auto second = text.find('\n') + 1;
    text.insert(second, "{not json}\n");
    try
    {
        (void)import_chain(text);
        FAIL() << "accepted";
    }
    catch (const ImportError& e)
    {
        EXPECT_EQ(e.line(), 2u);
    }
    EXPECT_THROW(import_chain("{\"number\":1}\n"), ImportError);
}

TEST(ChainIo, ReceiptsCsv)
{
    auto c = populated();
    std::ostringstream out;
    write_receipts_csv(out, c.ledger->receipts());
    std::istringstream in{out.str()};
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, kReceiptCsvHeader);
    std::size_t rows = 0;
    bool saw_revert = false;
    while (std::getline(in, line))
    {
        ++rows;
        saw_revert |= line.find("reverted:NotRegisteredUniversity") != std::string::npos;
        EXPECT_EQ(std::count(line.begin(), line.end(), ','), 9);
    }
    EXPECT_EQ(rows, c.ledger->receipts().size());
    EXPECT_TRUE(saw_revert);
}
