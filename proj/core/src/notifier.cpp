// certchain: blockchain-anchored academic record registry
// Copyright 2026 The certchain Authors.
// SPDX-License-Identifier: Apache-2.0

#include <certchain/notifier.hpp>

#include <json.hpp>

#include <fstream>
#include <stdexcept>

namespace certchain
{
OutboxNotifier::OutboxNotifier(std::filesystem::path path) : path_{std::move(path)} {}

void OutboxNotifier::send(const OutgoingMessage& m)
{
    const nlohmann::json line{{"to", m.to}, {"subject", m.subject}, {"share_url", m.share_url}};
    std::lock_guard lock{mutex_};
    std::ofstream out{path_, std::ios::app};
    out << line.dump() << '\n';
    if (!out)
        throw std::runtime_error{"cannot append to " + path_.string()};
}

void MemoryNotifier::send(const OutgoingMessage& m)
{
    std::lock_guard lock{mutex_};
    messages_.push_back(m);
}

std::vector<OutgoingMessage> MemoryNotifier::messages() const
{
    std::lock_guard lock{mutex_};
    return messages_;
}

}  // namespace certchain
