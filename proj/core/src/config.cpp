// certchain: blockchain-anchored academic record registry
// Copyright 2026 The certchain Authors.
// SPDX-License-Identifier: Apache-2.0

#include <certchain/config.hpp>

#include <cstdlib>
#include <fstream>

namespace certchain
{
using nlohmann::json;

namespace
{
template <class T>
T get(const json& j, const char* key)
{
    try
    {
        return j.at(key).get<T>();
    }
    catch (const json::exception& e)
    {
        throw ConfigError{std::string{"config key '"} + key + "': " + e.what()};
    }
}

std::uint64_t parse_uint(const std::string& name, const std::string& v)
{
    try
    {
        std::size_t used = 0;
        const auto n = std::stoull(v, &used);
        if (used != v.size() || v.front() == '-')
            throw std::invalid_argument{v};
        return n;
    }
    catch (const std::exception&)
    {
        throw ConfigError{name + " must be a non-negative integer, got '" + v + "'"};
    }
}

void apply_chain(ChainConfig& c, const json& j)
{
    for (const auto& [key, value] : j.items())
    {
        if (key == "difficulty")
            c.difficulty = get<unsigned>(j, "difficulty");
        else if (key == "block_gas_limit")
            c.block_gas_limit = get<Gas>(j, "block_gas_limit");
        else if (key == "node_count")
            c.node_count = get<unsigned>(j, "node_count");
        else if (key == "tick_per_hash_ms")
            c.tick_per_hash = SimDuration{get<std::int64_t>(j, "tick_per_hash_ms")};
        else if (key == "block_reward_wei")
            c.block_reward = WeiAmount::parse(get<std::string>(j, "block_reward_wei"));
        else
            throw ConfigError{"unknown chain config key '" + key + "'"};
        (void)value;
    }
}
}  // namespace

void apply_json(NodeConfig& cfg, const json& j)
{
    if (!j.is_object())
        throw ConfigError{"config must be a JSON object"};
    for (const auto& [key, value] : j.items())
    {
        if (key == "chain")
            apply_chain(cfg.chain, value);
        else if (key == "data_dir")
            cfg.data_dir = get<std::string>(j, "data_dir");
        else if (key == "host")
            cfg.host = get<std::string>(j, "host");
        else if (key == "port")
            cfg.port = get<int>(j, "port");
        else if (key == "seed")
            cfg.seed = value.is_null() ? std::nullopt : std::optional{get<std::uint64_t>(j, "seed")};
        else if (key == "mining_interval_ms")
            cfg.mining_interval = SimDuration{get<std::int64_t>(j, "mining_interval_ms")};
        else if (key == "tick_period_ms")
            cfg.tick_period = std::chrono::milliseconds{get<std::int64_t>(j, "tick_period_ms")};
        else if (key == "faucet_count")
            cfg.faucet_count = get<unsigned>(j, "faucet_count");
        else if (key == "admin_funds_wei")
            cfg.admin_funds = WeiAmount::parse(get<std::string>(j, "admin_funds_wei"));
        else if (key == "faucet_funds_wei")
            cfg.faucet_funds = WeiAmount::parse(get<std::string>(j, "faucet_funds_wei"));
        else if (key == "admin_email")
            cfg.admin_email = get<std::string>(j, "admin_email");
        else if (key == "admin_password")
            cfg.admin_password = get<std::string>(j, "admin_password");
        else if (key == "session_ttl_seconds")
            cfg.session_ttl_seconds = get<std::int64_t>(j, "session_ttl_seconds");
        else if (key == "share_ttl_seconds")
            cfg.share_ttl_seconds = get<std::int64_t>(j, "share_ttl_seconds");
        else
            throw ConfigError{"unknown config key '" + key + "'"};
    }
}

json to_json(const NodeConfig& cfg)
{
    return json{{"chain",
                 {{"difficulty", cfg.chain.difficulty},
                  {"block_gas_limit", cfg.chain.block_gas_limit},
                  {"node_count", cfg.chain.node_count},
                  {"tick_per_hash_ms", cfg.chain.tick_per_hash.count()},
                  {"block_reward_wei", cfg.chain.block_reward.to_string()}}},
                {"data_dir", cfg.data_dir.string()},
                {"host", cfg.host},
                {"port", cfg.port},
                {"seed", cfg.seed ? json(*cfg.seed) : json(nullptr)},
                {"mining_interval_ms", cfg.mining_interval.count()},
                {"tick_period_ms", cfg.tick_period.count()},
                {"faucet_count", cfg.faucet_count},
                {"admin_funds_wei", cfg.admin_funds.to_string()},
                {"faucet_funds_wei", cfg.faucet_funds.to_string()},
                {"admin_email", cfg.admin_email},
                {"admin_password", cfg.admin_password},
                {"session_ttl_seconds", cfg.session_ttl_seconds},
                {"share_ttl_seconds", cfg.share_ttl_seconds}};
}

EnvLookup process_environment()
{
    return [](const std::string& name) -> std::optional<std::string> {
        if (const char* v = std::getenv(name.c_str()))
            return std::string{v};
        return std::nullopt;
    };
}

void apply_env(NodeConfig& cfg, const EnvLookup& env)
{
    auto num = [&](const char* name, auto apply) {
        if (auto v = env(name))
            apply(parse_uint(name, *v));
    };
    if (auto v = env("CERTCHAIN_DATA_DIR"))
        cfg.data_dir = *v;
    if (auto v = env("CERTCHAIN_HOST"))
        cfg.host = *v;
    num("CERTCHAIN_PORT", [&](auto n) { cfg.port = static_cast<int>(n); });
    num("CERTCHAIN_SEED", [&](auto n) { cfg.seed = n; });
    num("CERTCHAIN_DIFFICULTY", [&](auto n) { cfg.chain.difficulty = static_cast<unsigned>(n); });
    num("CERTCHAIN_BLOCK_GAS_LIMIT", [&](auto n) { cfg.chain.block_gas_limit = n; });
    num("CERTCHAIN_NODE_COUNT", [&](auto n) { cfg.chain.node_count = static_cast<unsigned>(n); });
    num("CERTCHAIN_MINING_INTERVAL_MS",
        [&](auto n) { cfg.mining_interval = SimDuration{static_cast<std::int64_t>(n)}; });
    num("CERTCHAIN_TICK_PERIOD_MS",
        [&](auto n) { cfg.tick_period = std::chrono::milliseconds{static_cast<std::int64_t>(n)}; });
    if (auto v = env("CERTCHAIN_ADMIN_EMAIL"))
        cfg.admin_email = *v;
    if (auto v = env("CERTCHAIN_ADMIN_PASSWORD"))
        cfg.admin_password = *v;
}

NodeConfig load_config(const std::optional<std::filesystem::path>& file, const EnvLookup& env)
{
    NodeConfig cfg;
    if (file)
    {
        std::ifstream in{*file};
        if (!in)
            throw ConfigError{"cannot read config file " + file->string()};
        const auto j = json::parse(in, nullptr, false);
        if (j.is_discarded())
            throw ConfigError{"config file is not valid JSON: " + file->string()};
        apply_json(cfg, j);
    }
    apply_env(cfg, env);
    return cfg;
}

}  // namespace certchain
