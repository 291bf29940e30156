// certchain: blockchain-anchored academic record registry
// Copyright 2026 The certchain Authors.
// SPDX-License-Identifier: Apache-2.0

#include <certchain/chain_io.hpp>
#include <certchain/cli.hpp>
#include <certchain/http_server.hpp>

#include <CLI11.hpp>

#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace certchain::cli
{
using nlohmann::json;

namespace
{
class UsageError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

std::string read_text(const std::string& path)
{
    std::ifstream in{path, std::ios::binary};
    if (!in)
        throw UsageError{"cannot read " + path};
    return {std::istreambuf_iterator<char>{in}, {}};
}

/// Drives Service::handle and insists on the expected status.
class DemoClient
{
public:
    explicit DemoClient(Service& s) : service_{s} {}

    json call(int expect, std::string method, std::string path, const std::string& token, json body = json::object(),
              std::optional<Bytes> file = std::nullopt)
    {
        Request req{std::move(method), std::move(path), token, std::move(body), std::move(file)};
        const auto res = service_.handle(req);
        if (res.status != expect)
            throw std::runtime_error{"demo: " + req.method + " " + req.path + " returned " +
                                     std::to_string(res.status) + " " + res.body.dump()};
        return res.body;
    }

    std::string login(const std::string& email, const std::string& password)
    {
        return call(200, "POST", "/auth/login", {}, {{"email", email}, {"password", password}})
            .at("token")
            .get<std::string>();
    }

private:
    Service& service_;
};

constexpr std::array<std::string_view, 6> kCountries{"Jordan", "Canada", "Germany", "Japan", "Brazil", "Kenya"};
constexpr std::array<std::string_view, 3> kDocTypes{"Bachelor Degree", "Academic Transcript", "Diploma"};
constexpr unsigned kUniversities = 6;
constexpr unsigned kStudentsPerUniversity = 5;
constexpr std::string_view kDemoPassword = "demo-password";

std::string two_digits(unsigned n)
{
    auto s = std::to_string(n);
    return s.size() < 2 ? "0" + s : s;
}

NodeConfig resolve_config(const std::optional<std::string>& config_file, const std::optional<std::string>& data_dir,
                          const std::optional<std::uint64_t>& seed, const std::optional<int>& port)
{
    auto cfg = load_config(config_file ? std::optional<std::filesystem::path>{*config_file} : std::nullopt,
                           process_environment());
    if (data_dir)
        cfg.data_dir = *data_dir;
    if (seed)
        cfg.seed = *seed;
    if (port)
        cfg.port = *port;
    return cfg;
}

int cmd_hash(const std::string& file, std::ostream& out, std::ostream& err)
{
    std::ifstream in{file, std::ios::binary};
    if (!in)
    {
        err << "error: cannot read " << file << '\n';
        return kExitUsage;
    }
    Sha256 h;
    char buf[65536];
    while (in.read(buf, sizeof buf) || in.gcount() > 0)
        h.update(BytesView{reinterpret_cast<const std::uint8_t*>(buf), static_cast<std::size_t>(in.gcount())});
    if (in.bad())
    {
        err << "error: cannot read " << file << '\n';
        return kExitUsage;
    }
    out << h.finish().hex() << '\n';
    return kExitOk;
}

int cmd_verify(const NodeConfig& cfg, const std::string& digest_text, std::ostream& out, std::ostream& err)
{
    const auto digest = Hash256::try_from_hex(digest_text);
    if (!digest)
    {
        err << "error: digest must be 64 hex characters\n";
        return kExitUsage;
    }
    auto home = NodeHome::open(cfg.data_dir);
    const auto result = home->service().verify(*digest);
    out << result.to_json().dump() << '\n';
    return result.verified ? kExitOk : kExitNotVerified;
}

int cmd_mine(const NodeConfig& cfg, unsigned count, std::ostream& out)
{
    auto home = NodeHome::open(cfg.data_dir);
    for (unsigned i = 0; i < count; ++i)
    {
        const auto block = home->ledger().mine_next_block(home->miner());
        out << block.number << ' ' << block.block_hash.hex() << ' ' << block.transactions.size() << '\n';
    }
    home->save();
    return kExitOk;
}

int cmd_report(const std::optional<std::string>& txlog, const std::optional<std::string>& receipts,
               const std::optional<std::string>& issuers, const std::string& prices, const std::string& format,
               std::ostream& out, std::ostream& err)
{
    const auto fmt = analytics::parse_format(format);
    std::string current;
    try
    {
        std::vector<analytics::TxLogEntry> entries;
        if (txlog)
        {
            current = *txlog;
            entries = analytics::parse_txlog(read_text(*txlog));
        }
        else
        {
            if (!receipts || !issuers)
                throw UsageError{"report needs --txlog, or --receipts with --issuers"};
            current = *issuers;
            const auto map = analytics::parse_issuer_map(read_text(*issuers));
            current = *receipts;
            entries = analytics::txlog_from_receipts(read_text(*receipts), map);
        }
        current = prices;
        const auto quotes = analytics::parse_prices(read_text(prices));
        out << analytics::emit_report(analytics::aggregate(entries, quotes), fmt);
        return kExitOk;
    }
    catch (const analytics::CsvError& e)
    {
        err << "error: " << current << ": " << e.what() << '\n';
        return kExitUsage;
    }
}

std::atomic<HttpServer*> g_server{nullptr};

int cmd_serve(const NodeConfig& cfg, std::ostream& out)
{
    // Block termination signals here so every thread inherits the mask and
    // one waiter thread can handle them synchronously.
    sigset_t set;
    sigemptyset(&set);
    sigaddset(&set, SIGINT);
    sigaddset(&set, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &set, nullptr);

    auto home = NodeHome::is_empty_dir(cfg.data_dir) ? NodeHome::create(cfg) : NodeHome::open(cfg.data_dir);
    HttpServer server{home->service()};
    const int port = server.bind(cfg.host, cfg.port);
    home->driver().start(cfg.tick_period);
    out << "listening on http://" << cfg.host << ':' << port << std::endl;

    g_server = &server;
    std::thread waiter{[set] {
        int sig = 0;
        sigwait(&set, &sig);
        if (auto* s = g_server.load())
            s->stop();
    }};
    server.run();
    g_server = nullptr;
    // Wake the waiter if the server stopped for another reason.
    pthread_kill(waiter.native_handle(), SIGTERM);
    waiter.join();
    home->driver().stop();
    home->save();
    return kExitOk;
}

}  // namespace

std::vector<analytics::TxLogEntry> node_txlog(NodeHome& home)
{
    std::map<Address, std::string> issuers;
    for (const auto& u : home.store().users(Role::university))
        if (u.linked_address)
            issuers[*u.linked_address] = u.display_name;
    std::vector<analytics::TxLogEntry> out;
    for (const auto& r : home.ledger().receipts())
    {
        auto it = issuers.find(r.from);
        out.push_back({r.tx_hash.hex(), it == issuers.end() ? "Unattributed" : it->second, r.submitted_at,
                       r.confirmed_at, r.gas_used, r.gas_price, r.fee});
    }
    return out;
}

DemoResult run_demo(const NodeConfig& cfg, std::ostream& out)
{
    if (!NodeHome::is_empty_dir(cfg.data_dir))
        throw UsageError{"demo needs an empty data directory: " + cfg.data_dir.string()};
    auto home = NodeHome::create(cfg, kDemoEpoch);
    auto& service = home->service();
    auto& driver = home->driver();
    DemoClient client{service};
    DemoResult result;
    out << "contract\t" << home->contract().hex() << '\n';

    const auto admin = client.login(cfg.admin_email, cfg.admin_password);
    std::vector<std::string> uni_ids;
    std::vector<std::string> uni_names;
    for (unsigned u = 1; u <= kUniversities; ++u)
    {
        const auto name = "University " + std::to_string(u);
        const auto body = client.call(202, "POST", "/admin/universities", admin,
                                      {{"name", name},
                                       {"country", kCountries[u - 1]},
                                       {"email", "registrar@uni" + std::to_string(u) + ".demo"},
                                       {"password", kDemoPassword}});
        uni_ids.push_back(body.at("university_id").get<std::string>());
        uni_names.push_back(name);
        out << "university\t" << uni_ids.back() << '\t' << name << '\t' << body.at("address").get<std::string>()
            << '\n';
    }
    driver.drain();
    result.universities = uni_ids.size();

    struct Student
    {
        std::string id;
        std::string email;
        unsigned uni;
    };
    std::vector<Student> students;
    std::vector<std::string> uni_tokens;
    for (unsigned u = 0; u < kUniversities; ++u)
    {
        const auto token = client.login("registrar@uni" + std::to_string(u + 1) + ".demo", std::string{kDemoPassword});
        uni_tokens.push_back(token);
        for (const auto& t : kDocTypes)
            client.call(201, "POST", "/university/doc-types", token, {{"name", t}});
        for (unsigned k = 0; k < kStudentsPerUniversity; ++k)
        {
            const unsigned n = u * kStudentsPerUniversity + k + 1;
            const auto name = "Student " + two_digits(n);
            const auto email = "student" + two_digits(n) + "@uni" + std::to_string(u + 1) + ".demo";
            json body{{"name", name}, {"email", email}, {"password", kDemoPassword}};
            json profile;
            // Alternate between self-registration and university enrollment.
            if (n % 2 == 1)
            {
                body["university_id"] = uni_ids[u];
                profile = client.call(201, "POST", "/students/register", {}, body);
            }
            else
            {
                profile = client.call(201, "POST", "/university/students", token, body);
            }
            students.push_back({profile.at("student_id").get<std::string>(), email, u});
            out << "student\t" << students.back().id << '\t' << uni_ids[u] << '\t' << name << '\n';
        }
    }
    result.students = students.size();

    std::vector<std::string> doc_ids;
    for (std::size_t i = 0; i < students.size(); ++i)
    {
        const auto& s = students[i];
        const auto type = std::string{kDocTypes[i % kDocTypes.size()]};
        std::ostringstream text;
        text << "certchain demo document\nissuer: " << uni_names[s.uni] << "\nstudent: " << s.id
             << "\ntype: " << type << "\nserial: " << to_hex(home->rng().bytes(8)) << '\n';
        const auto bytes = text.str();
        const auto body = client.call(202, "POST", "/university/documents", uni_tokens[s.uni],
                                      {{"student_id", s.id}, {"doc_type", type}}, Bytes(bytes.begin(), bytes.end()));
        doc_ids.push_back(body.at("doc_id").get<std::string>());
    }
    driver.drain();

    for (std::size_t i = 0; i < students.size(); ++i)
    {
        const auto& s = students[i];
        const auto token = client.login(s.email, std::string{kDemoPassword});
        const auto share = client.call(201, "POST", "/student/documents/" + doc_ids[i] + "/share", token,
                                       {{"employer_email", "hr" + two_digits(static_cast<unsigned>(i + 1)) +
                                                               "@employer.demo"}});
        const auto doc = *home->store().document(doc_ids[i]);
        DemoDocument d{doc.doc_id, s.id, uni_names[s.uni], doc.file_digest, share.at("url").get<std::string>()};
        const auto v = service.verify(d.digest);
        if (v.verified && v.issuer_name == d.issuer)
            ++result.verified;
        out << "document\t" << d.doc_id << '\t' << d.digest.hex() << '\t' << d.issuer << '\t' << d.share_url << '\n';
        result.documents.push_back(std::move(d));
    }
    home->save();
    out << "summary\tuniversities=" << result.universities << "\tstudents=" << result.students
        << "\tdocuments=" << result.documents.size() << "\tverified=" << result.verified
        << "\tblocks=" << home->ledger().height() << '\n';
    return result;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"certchain: academic record registry node and tools", "certchain"};
    app.require_subcommand(1);
    app.fallthrough();

    std::optional<std::string> config_file;
    std::optional<std::string> data_dir;
    std::optional<std::uint64_t> seed;
    std::optional<int> port;
    app.add_option("--config", config_file, "JSON config file");
    app.add_option("--data-dir", data_dir, "Node data directory");
    app.add_option("--seed", seed, "Seed for every random choice");
    app.add_option("--port", port, "HTTP port for serve");

    std::string hash_file;
    auto* hash = app.add_subcommand("hash", "Print the SHA-256 digest of a file");
    hash->add_option("file", hash_file)->required();

    std::string digest;
    auto* verify = app.add_subcommand("verify", "Verify a digest against the chain");
    verify->add_option("digest", digest)->required();

    unsigned mine_count = 1;
    auto* mine = app.add_subcommand("mine", "Mine blocks from the mempool");
    mine->add_option("n", mine_count, "Number of blocks")->check(CLI::PositiveNumber);

    std::optional<std::string> txlog;
    std::optional<std::string> receipts;
    std::optional<std::string> issuers;
    std::string prices;
    std::string format = "csv";
    auto* report = app.add_subcommand("report", "Aggregate transaction times and costs");
    report->add_option("--txlog", txlog, "txlog CSV");
    report->add_option("--receipts", receipts, "Receipt CSV from export-receipts");
    report->add_option("--issuers", issuers, "CSV address,issuer for --receipts");
    report->add_option("--prices", prices, "CSV effective_at,usd_per_ether")->required();
    report->add_option("--format", format, "csv or json");

    auto* init = app.add_subcommand("init", "Create a node data directory");
    auto* serve = app.add_subcommand("serve", "Run the HTTP service and the mining driver");
    auto* demo = app.add_subcommand("demo", "Seed a demonstration population");
    auto* export_chain_cmd = app.add_subcommand("export-chain", "Print the chain as NDJSON");
    auto* export_receipts = app.add_subcommand("export-receipts", "Print receipts as CSV");
    auto* export_txlog = app.add_subcommand("export-txlog", "Print receipts as a txlog CSV");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try
    {
        auto cfg = resolve_config(config_file, data_dir, seed, port);
        if (*hash)
            return cmd_hash(hash_file, out, err);
        if (*verify)
            return cmd_verify(cfg, digest, out, err);
        if (*mine)
            return cmd_mine(cfg, mine_count, out);
        if (*report)
            return cmd_report(txlog, receipts, issuers, prices, format, out, err);
        if (*init)
        {
            auto home = NodeHome::create(cfg);
            out << "contract\t" << home->contract().hex() << "\nadmin\t" << cfg.admin_email << '\n';
            return kExitOk;
        }
        if (*serve)
            return cmd_serve(cfg, out);
        if (*demo)
        {
            if (!cfg.seed)
                cfg.seed = 0;
            const auto r = run_demo(cfg, out);
            return r.verified == r.documents.size() ? kExitOk : kExitNotVerified;
        }
        auto home = NodeHome::open(cfg.data_dir);
        if (*export_chain_cmd)
            out << export_chain(home->ledger().blocks());
        else if (*export_receipts)
            write_receipts_csv(out, home->ledger().receipts());
        else if (*export_txlog)
            out << analytics::write_txlog(node_txlog(*home));
        return kExitOk;
    }
    catch (const std::exception& e)
    {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace certchain::cli
