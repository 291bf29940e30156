// certchain: blockchain-anchored academic record registry
// Copyright 2026 The certchain Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <certchain/ledger.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <map>

namespace certchain::analytics
{
using Rational = boost::multiprecision::cpp_rational;

inline constexpr std::string_view kTxLogHeader =
    "tx_hash,issuer,submitted_at_s,confirmed_at_s,gas_used,gas_price_wei,fee_wei";
inline constexpr std::string_view kPriceHeader = "effective_at,usd_per_ether";
inline constexpr std::string_view kReportHeader =
    "group,tx_count,total_delay_s,avg_delay_s,total_fee_eth,avg_fee_eth,total_fee_usd,avg_fee_usd";

struct TxLogEntry
{
    std::string tx_hash;
    std::string issuer;
    SimDuration submitted_at{0};
    SimDuration confirmed_at{0};
    Gas gas_used = 0;
    WeiAmount gas_price;
    WeiAmount fee;
};

struct PriceQuote
{
    SimDuration effective_at{0};
    Rational usd_per_ether;
};

/// Input row that does not parse or violates an entry invariant. `line` is
/// 1-based and counts the header.
class CsvError : public std::runtime_error
{
public:
    CsvError(std::size_t line, const std::string& what);
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// No quote is effective at an entry's confirmation time.
class NoApplicablePrice : public std::runtime_error
{
public:
    explicit NoApplicablePrice(const std::string& tx_hash);
};

class UnknownFormat : public std::invalid_argument
{
public:
    explicit UnknownFormat(const std::string& name);
};

/// Header line optional. Rejects rows with fee != gas_used * gas_price or
/// confirmed_at < submitted_at.
std::vector<TxLogEntry> parse_txlog(std::string_view csv);
std::string write_txlog(const std::vector<TxLogEntry>& entries);
std::vector<PriceQuote> parse_prices(std::string_view csv);
/// Issuer map CSV: `address,issuer`.
std::map<Address, std::string> parse_issuer_map(std::string_view csv);
/// Joins a receipt CSV with an issuer map; senders missing from the map are
/// grouped as "Unattributed".
std::vector<TxLogEntry> txlog_from_receipts(std::string_view receipts_csv,
                                            const std::map<Address, std::string>& issuers);

/// Exact decimal text, e.g. "213.61" -> 21361/100. Throws ParseError.
Rational parse_decimal(std::string_view text);
/// Half-even rounding to `places` fractional digits.
std::string format_decimal(const Rational& value, unsigned places);
/// Whole seconds (half-even) as MM:SS; minutes are not wrapped into hours.
std::string format_mmss(const Rational& seconds);
/// fee in Ether times the quote, exact.
Rational usd_value(WeiAmount fee, const Rational& usd_per_ether);

struct GroupStats
{
    std::string group;
    std::uint64_t tx_count = 0;
    SimDuration total_delay{0};
    WeiAmount total_fee;
    Rational total_fee_usd;

    /// nullopt for an empty group.
    [[nodiscard]] std::optional<Rational> avg_delay_s() const;
    [[nodiscard]] std::optional<Rational> avg_fee_eth() const;
    [[nodiscard]] std::optional<Rational> avg_fee_usd() const;
    [[nodiscard]] Rational total_fee_eth() const;
    [[nodiscard]] Rational total_delay_s() const;
};

struct AggregateReport
{
    GroupStats all;
    /// Sorted by group name; groups without entries are absent.
    std::vector<GroupStats> groups;
};

/// Totals are exact; each entry is priced with the latest quote whose
/// effective_at is not after its confirmation. Throws NoApplicablePrice.
AggregateReport aggregate(const std::vector<TxLogEntry>& entries, std::vector<PriceQuote> prices);
std::vector<GroupStats> group_by_university(const std::vector<TxLogEntry>& entries,
                                            const std::vector<PriceQuote>& prices);

enum class ReportFormat
{
    csv,
    json,
};
/// "csv" or "json"; throws UnknownFormat.
ReportFormat parse_format(std::string_view name);

/// CSV: header, then the "ALL" row, then one row per group. JSON: the same
/// fields per row plus total_delay_mmss and avg_delay_mmss. Durations have 3
/// decimals, Ether 8, USD 6; averages of an empty log are empty (CSV) or
/// null (JSON).
std::string emit_report(const AggregateReport& report, ReportFormat format);

}  // namespace certchain::analytics
