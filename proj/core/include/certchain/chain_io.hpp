// certchain: blockchain-anchored academic record registry
// Copyright 2026 The certchain Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <certchain/ledger.hpp>

#include <json.hpp>

#include <iosfwd>

namespace certchain
{
/// Malformed chain or transaction export; `line` is 1-based (0 if unknown).
class ImportError : public std::runtime_error
{
public:
    ImportError(std::size_t line, const std::string& what);
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

nlohmann::json to_json(const SignedTransaction& tx);
SignedTransaction transaction_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Block& block);
Block block_from_json(const nlohmann::json& j);

/// One block per line, genesis first. Hashes and addresses are lowercase hex,
/// Wei amounts decimal strings, times decimal seconds with millisecond
/// precision.
std::string export_chain(const std::vector<Block>& blocks);
std::vector<Block> import_chain(std::string_view ndjson);

/// One signed transaction per line (used to persist the mempool).
std::string export_transactions(const std::vector<SignedTransaction>& txs);
std::vector<SignedTransaction> import_transactions(std::string_view ndjson);

inline constexpr std::string_view kReceiptCsvHeader =
    "tx_hash,block_number,from,gas_used,gas_price_wei,fee_wei,submitted_at_s,confirmed_at_s,delay_s,status";

void write_receipts_csv(std::ostream& out, const std::vector<Receipt>& receipts);

}  // namespace certchain
