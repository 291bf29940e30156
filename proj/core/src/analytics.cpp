// certchain: blockchain-anchored academic record registry
// Copyright 2026 The certchain Authors.
// SPDX-License-Identifier: Apache-2.0

#include <certchain/analytics.hpp>
#include <certchain/chain_io.hpp>

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <sstream>

namespace certchain::analytics
{
using boost::multiprecision::cpp_int;

namespace
{
const cpp_int kWeiPerEther{"1000000000000000000"};

cpp_int to_cpp_int(WeiAmount w)
{
    // cpp_int has no __int128 constructor on every Boost; go via decimal text.
    return cpp_int{w.to_string()};
}

Rational seconds_of(SimDuration d)
{
    return Rational{d.count(), 1000};
}

std::vector<std::string_view> split_csv(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true)
    {
        auto comma = line.find(',', pos);
        out.push_back(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
        if (comma == std::string_view::npos)
            break;
        pos = comma + 1;
    }
    return out;
}

template <class F>
void for_each_row(std::string_view csv, std::string_view header, std::size_t columns, F&& f)
{
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < csv.size())
    {
        auto nl = csv.find('\n', pos);
        auto line = csv.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? csv.size() : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        if (line.empty() || (line_no == 1 && line == header))
            continue;
        auto cols = split_csv(line);
        if (cols.size() != columns)
            throw CsvError{line_no, "expected " + std::to_string(columns) + " columns, found " +
                                        std::to_string(cols.size())};
        try
        {
            f(cols);
        }
        catch (const CsvError&)
        {
            throw;
        }
        catch (const std::exception& e)
        {
            throw CsvError{line_no, e.what()};
        }
    }
}

std::uint64_t parse_u64(std::string_view s)
{
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || s.empty())
        throw ParseError{"invalid integer: " + std::string{s}};
    return v;
}

nlohmann::json opt_json(const std::optional<Rational>& v, unsigned places)
{
    return v ? nlohmann::json(format_decimal(*v, places)) : nlohmann::json(nullptr);
}

std::string opt_text(const std::optional<Rational>& v, unsigned places)
{
    return v ? format_decimal(*v, places) : std::string{};
}
}  // namespace

CsvError::CsvError(std::size_t line, const std::string& what)
    : std::runtime_error{"line " + std::to_string(line) + ": " + what}, line_{line}
{
}

NoApplicablePrice::NoApplicablePrice(const std::string& tx_hash)
    : std::runtime_error{"NoApplicablePrice: no quote effective at confirmation of " + tx_hash}
{
}

UnknownFormat::UnknownFormat(const std::string& name) : std::invalid_argument{"UnknownFormat: " + name} {}

Rational parse_decimal(std::string_view text)
{
    const auto dot = text.find('.');
    const auto whole = text.substr(0, dot);
    const auto frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
    auto digits_only = [](std::string_view s) {
        return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    if (whole.empty() || !digits_only(whole) || !digits_only(frac) ||
        (dot != std::string_view::npos && frac.empty()))
        throw ParseError{"invalid decimal: " + std::string{text}};
    cpp_int scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i)
        scale *= 10;
    const cpp_int num{std::string{whole} + std::string{frac}};
    return Rational{num, scale};
}

std::string format_decimal(const Rational& value, unsigned places)
{
    const bool neg = value < 0;
    const Rational a = neg ? Rational{-value} : value;
    cpp_int scale = 1;
    for (unsigned i = 0; i < places; ++i)
        scale *= 10;
    const Rational scaled = a * scale;
    const cpp_int num = boost::multiprecision::numerator(scaled);
    const cpp_int den = boost::multiprecision::denominator(scaled);
    cpp_int q = num / den;
    const cpp_int twice_r = 2 * (num % den);
    if (twice_r > den || (twice_r == den && (q & 1) != 0))
        ++q;

    std::string digits = q.str();
    if (digits.size() <= places)
        digits.insert(0, places + 1 - digits.size(), '0');
    std::string out = digits.substr(0, digits.size() - places);
    if (places > 0)
        out += "." + digits.substr(digits.size() - places);
    if (neg && q != 0)
        out.insert(0, 1, '-');
    return out;
}

std::string format_mmss(const Rational& seconds)
{
    const auto whole = std::stoll(format_decimal(seconds, 0));
    const auto mm = whole / 60;
    const auto ss = whole % 60;
    std::string m = std::to_string(mm);
    std::string s = std::to_string(ss);
    if (m.size() < 2)
        m.insert(0, 1, '0');
    if (s.size() < 2)
        s.insert(0, 1, '0');
    return m + ":" + s;
}

Rational usd_value(WeiAmount fee, const Rational& usd_per_ether)
{
    return Rational{to_cpp_int(fee), kWeiPerEther} * usd_per_ether;
}

std::vector<TxLogEntry> parse_txlog(std::string_view csv)
{
    std::vector<TxLogEntry> out;
    for_each_row(csv, kTxLogHeader, 7, [&](const std::vector<std::string_view>& c) {
        TxLogEntry e;
        e.tx_hash = std::string{c[0]};
        e.issuer = std::string{c[1]};
        if (e.issuer.empty())
            throw ParseError{"empty issuer"};
        e.submitted_at = parse_seconds(c[2]);
        e.confirmed_at = parse_seconds(c[3]);
        e.gas_used = parse_u64(c[4]);
        e.gas_price = WeiAmount::parse(c[5]);
        e.fee = WeiAmount::parse(c[6]);
        if (e.confirmed_at < e.submitted_at)
            throw ParseError{"confirmed before submitted"};
        if (compute_fee(e.gas_used, e.gas_price) != e.fee)
            throw ParseError{"fee differs from gas_used * gas_price"};
        out.push_back(std::move(e));
    });
    return out;
}

std::string write_txlog(const std::vector<TxLogEntry>& entries)
{
    std::ostringstream out;
    out << kTxLogHeader << '\n';
    for (const auto& e : entries)
        out << e.tx_hash << ',' << e.issuer << ',' << format_seconds(e.submitted_at) << ','
            << format_seconds(e.confirmed_at) << ',' << e.gas_used << ',' << e.gas_price.to_string() << ','
            << e.fee.to_string() << '\n';
    return out.str();
}

std::vector<PriceQuote> parse_prices(std::string_view csv)
{
    std::vector<PriceQuote> out;
    for_each_row(csv, kPriceHeader, 2, [&](const std::vector<std::string_view>& c) {
        PriceQuote q{parse_seconds(c[0]), parse_decimal(c[1])};
        if (q.usd_per_ether <= 0)
            throw ParseError{"price must be positive"};
        out.push_back(std::move(q));
    });
    return out;
}

std::map<Address, std::string> parse_issuer_map(std::string_view csv)
{
    std::map<Address, std::string> out;
    for_each_row(csv, "address,issuer", 2, [&](const std::vector<std::string_view>& c) {
        if (c[1].empty())
            throw ParseError{"empty issuer"};
        out[Address::from_hex(c[0])] = std::string{c[1]};
    });
    return out;
}

std::vector<TxLogEntry> txlog_from_receipts(std::string_view receipts_csv,
                                            const std::map<Address, std::string>& issuers)
{
    std::vector<TxLogEntry> out;
    for_each_row(receipts_csv, kReceiptCsvHeader, 10, [&](const std::vector<std::string_view>& c) {
        TxLogEntry e;
        e.tx_hash = std::string{c[0]};
        const auto from = Address::from_hex(c[2]);
        auto it = issuers.find(from);
        e.issuer = it == issuers.end() ? "Unattributed" : it->second;
        e.gas_used = parse_u64(c[3]);
        e.gas_price = WeiAmount::parse(c[4]);
        e.fee = WeiAmount::parse(c[5]);
        e.submitted_at = parse_seconds(c[6]);
        e.confirmed_at = parse_seconds(c[7]);
        if (compute_fee(e.gas_used, e.gas_price) != e.fee)
            throw ParseError{"fee differs from gas_used * gas_price"};
        out.push_back(std::move(e));
    });
    return out;
}

std::optional<Rational> GroupStats::avg_delay_s() const
{
    if (tx_count == 0)
        return std::nullopt;
    return total_delay_s() / tx_count;
}

std::optional<Rational> GroupStats::avg_fee_eth() const
{
    if (tx_count == 0)
        return std::nullopt;
    return total_fee_eth() / tx_count;
}

std::optional<Rational> GroupStats::avg_fee_usd() const
{
    if (tx_count == 0)
        return std::nullopt;
    return total_fee_usd / tx_count;
}

Rational GroupStats::total_fee_eth() const
{
    return Rational{to_cpp_int(total_fee), kWeiPerEther};
}

Rational GroupStats::total_delay_s() const
{
    return seconds_of(total_delay);
}

AggregateReport aggregate(const std::vector<TxLogEntry>& entries, std::vector<PriceQuote> prices)
{
    std::stable_sort(prices.begin(), prices.end(),
                     [](const auto& a, const auto& b) { return a.effective_at < b.effective_at; });
    AggregateReport report;
    report.all.group = "ALL";
    std::map<std::string, GroupStats> groups;
    for (const auto& e : entries)
    {
        auto q = std::upper_bound(prices.begin(), prices.end(), e.confirmed_at,
                                  [](SimDuration t, const PriceQuote& p) { return t < p.effective_at; });
        if (q == prices.begin())
            throw NoApplicablePrice{e.tx_hash};
        const auto usd = usd_value(e.fee, std::prev(q)->usd_per_ether);
        const auto delay = e.confirmed_at - e.submitted_at;

        auto& g = groups[e.issuer];
        g.group = e.issuer;
        for (auto* s : {&report.all, &g})
        {
            s->tx_count += 1;
            s->total_delay += delay;
            s->total_fee += e.fee;
            s->total_fee_usd += usd;
        }
    }
    for (auto& [_, g] : groups)
        report.groups.push_back(std::move(g));
    return report;
}

std::vector<GroupStats> group_by_university(const std::vector<TxLogEntry>& entries,
                                            const std::vector<PriceQuote>& prices)
{
    return aggregate(entries, prices).groups;
}

ReportFormat parse_format(std::string_view name)
{
    if (name == "csv")
        return ReportFormat::csv;
    if (name == "json")
        return ReportFormat::json;
    throw UnknownFormat{std::string{name}};
}

std::string emit_report(const AggregateReport& report, ReportFormat format)
{
    std::vector<const GroupStats*> rows{&report.all};
    for (const auto& g : report.groups)
        rows.push_back(&g);

    if (format == ReportFormat::csv)
    {
        std::ostringstream out;
        out << kReportHeader << '\n';
        for (const auto* g : rows)
            out << g->group << ',' << g->tx_count << ',' << format_decimal(g->total_delay_s(), 3) << ','
                << opt_text(g->avg_delay_s(), 3) << ',' << format_decimal(g->total_fee_eth(), 8) << ','
                << opt_text(g->avg_fee_eth(), 8) << ',' << format_decimal(g->total_fee_usd, 6) << ','
                << opt_text(g->avg_fee_usd(), 6) << '\n';
        return out.str();
    }

    nlohmann::json arr = nlohmann::json::array();
    for (const auto* g : rows)
    {
        const auto avg_delay = g->avg_delay_s();
        arr.push_back({{"group", g->group},
                       {"tx_count", g->tx_count},
                       {"total_delay_s", format_decimal(g->total_delay_s(), 3)},
                       {"avg_delay_s", opt_json(avg_delay, 3)},
                       {"total_fee_eth", format_decimal(g->total_fee_eth(), 8)},
                       {"avg_fee_eth", opt_json(g->avg_fee_eth(), 8)},
                       {"total_fee_usd", format_decimal(g->total_fee_usd, 6)},
                       {"avg_fee_usd", opt_json(g->avg_fee_usd(), 6)},
                       {"total_delay_mmss", format_mmss(g->total_delay_s())},
                       {"avg_delay_mmss", avg_delay ? nlohmann::json(format_mmss(*avg_delay)) : nlohmann::json(nullptr)}});
    }
    return nlohmann::json{{"rows", std::move(arr)}}.dump(2) + "\n";
}

}  // namespace certchain::analytics
