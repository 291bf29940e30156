// certchain: blockchain-anchored academic record registry
// Copyright 2026 The certchain Authors.
// SPDX-License-Identifier: Apache-2.0

#include <certchain/config.hpp>

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <fstream>

using namespace certchain;
using certchain::testing::TempDir;
using nlohmann::json;

namespace
{
EnvLookup env_of(std::map<std::string, std::string> vars)
{
    return [vars = std::move(vars)](const std::string& k) -> std::optional<std::string> {
        if (auto it = vars.find(k); it != vars.end())
            return it->second;
        return std::nullopt;
    };
}
}  // namespace

TEST(Config, Defaults)
{
    const auto cfg = load_config(std::nullopt, env_of({}));
    EXPECT_EQ(cfg.port, 8080);
    EXPECT_EQ(cfg.chain.node_count, 5u);
    EXPECT_EQ(cfg.chain.block_gas_limit, 120'000u);
    EXPECT_FALSE(cfg.seed);
    EXPECT_EQ(cfg.mining_interval, std::chrono::seconds{2});
}

TEST(Config, JsonRoundTrip)
{
    NodeConfig cfg;
    cfg.seed = 9;
    cfg.chain.difficulty = 3;
    cfg.admin_funds = WeiAmount::parse("123456789012345678901234");
    NodeConfig back;
    apply_json(back, to_json(cfg));
    EXPECT_EQ(to_json(back), to_json(cfg));
    EXPECT_EQ(back.admin_funds, cfg.admin_funds);
    EXPECT_EQ(back.seed, 9u);
}

TEST(Config, RejectsUnknownKeysAndBadTypes)
{
    NodeConfig cfg;
    EXPECT_THROW(apply_json(cfg, json{{"prot", 1}}), ConfigError);
    EXPECT_THROW(apply_json(cfg, json{{"chain", {{"dificulty", 1}}}}), ConfigError);
    EXPECT_THROW(apply_json(cfg, json{{"port", "eighty"}}), ConfigError);
    EXPECT_THROW(apply_json(cfg, json::array()), ConfigError);
}

TEST(Config, FileThenEnvironment)
{
    TempDir dir;
    std::ofstream{dir / "c.json"} << R"({"port": 9000, "seed": 3, "chain": {"difficulty": 4}})";
    const auto cfg = load_config(dir / "c.json", env_of({{"CERTCHAIN_PORT", "9100"}, {"CERTCHAIN_HOST", "0.0.0.0"}}));
    EXPECT_EQ(cfg.port, 9100);
    EXPECT_EQ(cfg.host, "0.0.0.0");
    EXPECT_EQ(cfg.seed, 3u);
    EXPECT_EQ(cfg.chain.difficulty, 4u);

    EXPECT_THROW(load_config(dir / "missing.json", env_of({})), ConfigError);
    std::ofstream{dir / "bad.json"} << "{";
    EXPECT_THROW(load_config(dir / "bad.json", env_of({})), ConfigError);
    EXPECT_THROW(load_config(std::nullopt, env_of({{"CERTCHAIN_PORT", "80a"}})), ConfigError);
}
