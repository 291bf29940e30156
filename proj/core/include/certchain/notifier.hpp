// certchain: blockchain-anchored academic record registry
// Copyright 2026 The certchain Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <mutex>
#include <string>
#include <vector>

namespace certchain
{
struct OutgoingMessage
{
    std::string to;
    std::string subject;
    std::string share_url;
};

/// Delivery of share links to recipients. No real mail transport is wired in.
class Notifier
{
public:
    virtual ~Notifier() = default;
    virtual void send(const OutgoingMessage& m) = 0;
};

/// Appends one JSON object per message to a file (JSON Lines).
class OutboxNotifier final : public Notifier
{
public:
    explicit OutboxNotifier(std::filesystem::path path);
    void send(const OutgoingMessage& m) override;
    [[nodiscard]] const std::filesystem::path& path() const noexcept { return path_; }

private:
    std::filesystem::path path_;
    std::mutex mutex_;
};

class MemoryNotifier final : public Notifier
{
public:
    void send(const OutgoingMessage& m) override;
    [[nodiscard]] std::vector<OutgoingMessage> messages() const;

private:
    mutable std::mutex mutex_;
    std::vector<OutgoingMessage> messages_;
};

}  // namespace certchain
