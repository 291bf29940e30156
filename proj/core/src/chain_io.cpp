// certchain: blockchain-anchored academic record registry
// Copyright 2026 The certchain Authors.
// SPDX-License-Identifier: Apache-2.0

#include <certchain/chain_io.hpp>

#include <ostream>

namespace certchain
{
using nlohmann::json;

namespace
{
template <typename F>
void for_each_line(std::string_view text, F&& f)
{
    std::size_t line_no = 0;
    while (!text.empty())
    {
        ++line_no;
        const auto nl = text.find('\n');
        auto line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        if (line.empty())
            continue;
        try
        {
            f(line);
        }
        catch (const ImportError&)
        {
            throw;
        }
        catch (const std::exception& e)
        {
            throw ImportError{line_no, e.what()};
        }
    }
}

template <std::size_t N>
FixedBytes<N> fixed_from_hex(const std::string& s)
{
    const auto b = from_hex(s);
    if (b.size() != N)
        throw ParseError{"expected " + std::to_string(N) + " bytes"};
    FixedBytes<N> out;
    std::copy(b.begin(), b.end(), out.bytes.begin());
    return out;
}
}  // namespace

ImportError::ImportError(std::size_t line, const std::string& what)
    : std::runtime_error{"line " + std::to_string(line) + ": " + what}, line_{line}
{
}

json to_json(const SignedTransaction& tx)
{
    return json{
        {"hash", tx.hash().hex()},
        {"nonce", tx.nonce},
        {"from", tx.from.hex()},
        {"to", tx.to.hex()},
        {"payload", to_hex(tx.payload)},
        {"gas_limit", tx.gas_limit},
        {"gas_price", tx.gas_price.to_string()},
        {"submitted_at", format_seconds(tx.submitted_at)},
        {"sender_key", to_hex(tx.sender_key.view())},
        {"signature", to_hex(tx.signature.view())},
    };
}

SignedTransaction transaction_from_json(const json& j)
{
    SignedTransaction tx;
    tx.nonce = j.at("nonce").get<std::uint64_t>();
    tx.from = Address::from_hex(j.at("from").get<std::string>());
    tx.to = Address::from_hex(j.at("to").get<std::string>());
    tx.payload = from_hex(j.at("payload").get<std::string>());
    tx.gas_limit = j.at("gas_limit").get<Gas>();
    tx.gas_price = WeiAmount::parse(j.at("gas_price").get<std::string>());
    tx.submitted_at = parse_seconds(j.at("submitted_at").get<std::string>());
    tx.sender_key = fixed_from_hex<32>(j.at("sender_key").get<std::string>());
    tx.signature = fixed_from_hex<64>(j.at("signature").get<std::string>());
    if (j.contains("hash") && j["hash"].get<std::string>() != tx.hash().hex())
        throw ParseError{"transaction hash does not match its fields"};
    return tx;
}

json to_json(const Block& block)
{
    json txs = json::array();
    for (const auto& tx : block.transactions)
        txs.push_back(to_json(tx));
    return json{
        {"number", block.number},
        {"parent_hash", block.parent_hash.hex()},
        {"timestamp", format_seconds(block.timestamp)},
        {"difficulty", block.difficulty},
        {"pow_nonce", block.pow_nonce},
        {"miner", block.miner.hex()},
        {"transactions", std::move(txs)},
        {"state_root", block.state_root.hex()},
        {"block_hash", block.block_hash.hex()},
    };
}

Block block_from_json(const json& j)
{
    Block b;
    b.number = j.at("number").get<std::uint64_t>();
    b.parent_hash = Hash256::from_hex(j.at("parent_hash").get<std::string>());
    b.timestamp = parse_seconds(j.at("timestamp").get<std::string>());
    b.difficulty = j.at("difficulty").get<unsigned>();
    b.pow_nonce = j.at("pow_nonce").get<std::uint64_t>();
    b.miner = Address::from_hex(j.at("miner").get<std::string>());
    for (const auto& t : j.at("transactions"))
        b.transactions.push_back(transaction_from_json(t));
    b.state_root = Hash256::from_hex(j.at("state_root").get<std::string>());
    b.block_hash = Hash256::from_hex(j.at("block_hash").get<std::string>());
    return b;
}

std::string export_chain(const std::vector<Block>& blocks)
{
    std::string out;
    for (const auto& b : blocks)
    {
        out += to_json(b).dump();
        out += '\n';
    }
    return out;
}

std::vector<Block> import_chain(std::string_view ndjson)
{
    std::vector<Block> blocks;
    for_each_line(ndjson, [&](std::string_view line) { blocks.push_back(block_from_json(json::parse(line))); });
    return blocks;
}

std::string export_transactions(const std::vector<SignedTransaction>& txs)
{
    std::string out;
    for (const auto& tx : txs)
    {
        out += to_json(tx).dump();
        out += '\n';
    }
    return out;
}

std::vector<SignedTransaction> import_transactions(std::string_view ndjson)
{
    std::vector<SignedTransaction> txs;
    for_each_line(ndjson, [&](std::string_view line) { txs.push_back(transaction_from_json(json::parse(line))); });
    return txs;
}

void write_receipts_csv(std::ostream& out, const std::vector<Receipt>& receipts)
{
    out << kReceiptCsvHeader << '\n';
    for (const auto& r : receipts)
    {
        out << r.tx_hash.hex() << ',' << r.block_number << ',' << r.from.hex() << ',' << r.gas_used << ','
            << r.gas_price.to_string() << ',' << r.fee.to_string() << ',' << format_seconds(r.submitted_at) << ','
            << format_seconds(r.confirmed_at) << ',' << format_seconds(r.confirmation_delay()) << ','
            << r.status_text() << '\n';
    }
}

}  // namespace certchain
