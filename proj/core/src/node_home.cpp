// certchain: blockchain-anchored academic record registry
// Copyright 2026 The certchain Authors.
// SPDX-License-Identifier: Apache-2.0

#include <certchain/chain_io.hpp>
#include <certchain/node_home.hpp>

#include <fstream>

namespace certchain
{
using nlohmann::json;
namespace fs = std::filesystem;

namespace
{
std::string read_file(const fs::path& p)
{
    std::ifstream in{p, std::ios::binary};
    if (!in)
        throw NodeHomeError{"cannot read " + p.string()};
    return {std::istreambuf_iterator<char>{in}, {}};
}

void write_file_atomic(const fs::path& p, const std::string& text)
{
    auto tmp = p;
    tmp += ".tmp";
    {
        std::ofstream out{tmp, std::ios::binary | std::ios::trunc};
        out << text;
        out.flush();
        if (!out)
            throw NodeHomeError{"cannot write " + tmp.string()};
    }
    fs::rename(tmp, p);
}

Hash256 master_from_seed(std::uint64_t seed)
{
    Encoder e;
    e.u64(seed);
    return Sha256{}.update("certchain-master").update(e.data()).finish();
}

std::string faucet_label(unsigned i)
{
    auto n = std::to_string(i);
    if (n.size() < 2)
        n.insert(0, 1, '0');
    return "faucet-" + n;
}
}  // namespace

NodeHome::~NodeHome()
{
    if (driver_)
        driver_->stop();
}

bool NodeHome::is_empty_dir(const fs::path& dir)
{
    return !fs::exists(dir) || (fs::is_directory(dir) && fs::is_empty(dir));
}

std::unique_ptr<NodeHome> NodeHome::create(const NodeConfig& cfg, std::optional<std::int64_t> chain_epoch)
{
    if (!is_empty_dir(cfg.data_dir))
        throw NodeHomeError{"data directory is not empty: " + cfg.data_dir.string()};
    fs::create_directories(cfg.data_dir);

    std::unique_ptr<NodeHome> home{new NodeHome};
    home->cfg_ = cfg;
    home->chain_epoch_ = chain_epoch;
    if (cfg.seed)
        home->master_ = master_from_seed(*cfg.seed);
    else
        SystemRandom{}.fill(home->master_.bytes);

    auto add_wallet = [&](const std::string& label) {
        home->wallet_.add(WalletEntry::create(label, derive_seed(home->master_, "wallet/" + label).view()));
    };
    add_wallet("admin");
    add_wallet("miner");
    for (unsigned i = 1; i <= cfg.faucet_count; ++i)
        add_wallet(faucet_label(i));

    auto& chain = home->cfg_.chain;
    chain.genesis_allocations.clear();
    chain.genesis_allocations[home->wallet_.address("admin")] = cfg.admin_funds;
    for (unsigned i = 1; i <= cfg.faucet_count; ++i)
        chain.genesis_allocations[home->wallet_.address(faucet_label(i))] = cfg.faucet_funds;
    home->ledger_ = std::make_unique<Ledger>(chain);

    // Registry deployment: a transaction to the zero address.
    const auto admin = home->wallet_.address("admin");
    UnsignedTransaction deploy;
    deploy.from = admin;
    deploy.submitted_at = home->ledger_->now();
    const auto tx = home->wallet_.transact("admin", deploy, home->ledger_->pending_nonce(admin),
                                           [&](const SignedTransaction& s) {
                                               return home->ledger_->submit_transaction(s);
                                           });
    home->ledger_->mine_next_block(home->wallet_.address("miner"));
    const auto status = home->ledger_->get_receipt(tx);
    const auto* receipt = std::get_if<Receipt>(&status);
    if (!receipt || !receipt->contract_address)
        throw NodeHomeError{"registry deployment failed"};
    home->contract_ = *receipt->contract_address;

    home->wallet_.save(cfg.data_dir / "wallets");
    home->start_runtime(0);
    home->store_->create_user(Role::admin, cfg.admin_email, cfg.admin_password, admin, "Administrator");
    home->save();
    return home;
}

std::unique_ptr<NodeHome> NodeHome::open(const fs::path& dir)
{
    if (!fs::exists(dir / "node.json"))
        throw NodeHomeError{"not a node data directory: " + dir.string()};
    std::unique_ptr<NodeHome> home{new NodeHome};
    json meta;
    try
    {
        meta = json::parse(read_file(dir / "node.json"));
        apply_json(home->cfg_, meta.at("config"));
        home->cfg_.data_dir = dir;
        for (const auto& a : meta.at("genesis_allocations"))
            home->cfg_.chain.genesis_allocations[Address::from_hex(a.at("address").get<std::string>())] =
                WeiAmount::parse(a.at("wei").get<std::string>());
        home->master_ = Hash256::from_hex(meta.at("master_seed").get<std::string>());
        home->contract_ = Address::from_hex(meta.at("contract").get<std::string>());
        if (!meta.at("chain_epoch").is_null())
            home->chain_epoch_ = meta["chain_epoch"].get<std::int64_t>();
        home->rng_epoch_ = meta.at("rng_epoch").get<std::uint64_t>();
    }
    catch (const json::exception& e)
    {
        throw NodeHomeError{std::string{"malformed node.json: "} + e.what()};
    }

    home->ledger_ = Ledger::replay(home->cfg_.chain, import_chain(read_file(dir / "chain.ndjson")));
    if (fs::exists(dir / "mempool.ndjson"))
        for (const auto& tx : import_transactions(read_file(dir / "mempool.ndjson")))
            home->ledger_->submit_transaction(tx);
    const SimDuration clock{meta.at("clock_ms").get<std::int64_t>()};
    if (clock > home->ledger_->now())
        home->ledger_->advance_clock(clock - home->ledger_->now());

    home->wallet_ = Wallet::load(dir / "wallets");
    home->start_runtime(home->rng_epoch_ + 1);
    home->save();
    return home;
}

void NodeHome::start_runtime(std::uint64_t rng_epoch)
{
    rng_epoch_ = rng_epoch;
    if (chain_epoch_)
        clock_ = [this, epoch = *chain_epoch_] {
            return epoch + std::chrono::duration_cast<std::chrono::seconds>(ledger_->now()).count();
        };
    else
        clock_ = system_wall_clock();
    rng_ = std::make_unique<SeededRandom>(derive_seed(master_, "runtime/" + std::to_string(rng_epoch)));
    store_ = OffchainStore::open(cfg_.data_dir / "store", *rng_, [this] { return clock_(); });
    notifier_ = std::make_unique<OutboxNotifier>(cfg_.data_dir / "outbox.jsonl");

    ServiceOptions opts;
    opts.session_ttl_seconds = cfg_.session_ttl_seconds;
    opts.share_ttl_seconds = cfg_.share_ttl_seconds;
    service_ = std::make_unique<Service>(*ledger_, wallet_, *store_, *notifier_, *rng_,
                                         [this] { return clock_(); }, contract_, opts);
    driver_ = std::make_unique<MiningDriver>(*ledger_, miner(), cfg_.mining_interval,
                                             [this](const Block&) { save(); });
}

void NodeHome::save()
{
    std::lock_guard lock{save_mutex_};
    json allocations = json::array();
    for (const auto& [addr, wei] : cfg_.chain.genesis_allocations)
        allocations.push_back({{"address", addr.hex()}, {"wei", wei.to_string()}});
    auto cfg_json = to_json(cfg_);
    cfg_json.erase("data_dir");
    const json meta{{"format", 1},
                    {"config", std::move(cfg_json)},
                    {"genesis_allocations", std::move(allocations)},
                    {"master_seed", master_.hex()},
                    {"contract", contract_.hex()},
                    {"chain_epoch", chain_epoch_ ? json(*chain_epoch_) : json(nullptr)},
                    {"rng_epoch", rng_epoch_},
                    {"clock_ms", ledger_->now().count()}};
    write_file_atomic(cfg_.data_dir / "chain.ndjson", export_chain(ledger_->blocks()));
    write_file_atomic(cfg_.data_dir / "mempool.ndjson", export_transactions(ledger_->pending()));
    write_file_atomic(cfg_.data_dir / "node.json", meta.dump(2) + "\n");
}

}  // namespace certchain
