// certchain: blockchain-anchored academic record registry
// Copyright 2026 The certchain Authors.
// SPDX-License-Identifier: Apache-2.0

#include <certchain/wallet.hpp>

#include <json.hpp>

#include <fcntl.h>
#include <unistd.h>

#include <fstream>
#include <sstream>

namespace certchain
{
namespace
{
constexpr std::string_view kPlaintextWarning =
    "UNENCRYPTED: this file contains a private key seed in plaintext. Keep it private.";

void write_private_file(const std::filesystem::path& path, const std::string& content)
{
    auto tmp = path;
    tmp += ".tmp";
    const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0600);
    if (fd < 0)
        throw std::runtime_error{"cannot create " + tmp.string()};
    std::size_t off = 0;
    while (off < content.size())
    {
        const auto n = ::write(fd, content.data() + off, content.size() - off);
        if (n <= 0)
        {
            ::close(fd);
            throw std::runtime_error{"cannot write " + tmp.string()};
        }
        off += static_cast<std::size_t>(n);
    }
    ::fsync(fd);
    ::close(fd);
    std::filesystem::rename(tmp, path);
}
}  // namespace

WalletEntry WalletEntry::create(std::string label, BytesView seed)
{
    WalletEntry e;
    e.label = std::move(label);
    e.keypair = Keypair::from_seed(seed);
    e.address = address_from_public_key(e.keypair.public_key());
    return e;
}

SignedTransaction WalletEntry::sign_transaction(const UnsignedTransaction& tx)
{
    if (!tx.from.is_zero() && tx.from != address)
        throw AddressMismatch{};
    TransactionFields f;
    f.nonce = next_nonce;
    f.from = address;
    f.to = tx.to;
    f.payload = tx.payload;
    f.gas_limit = tx.gas_limit.value_or(kDefaultGasLimit);
    f.gas_price = tx.gas_price.value_or(kDefaultGasPrice);
    f.submitted_at = tx.submitted_at;
    auto signed_tx = sign_fields(f, keypair);
    ++next_nonce;
    return signed_tx;
}

bool verify_signature(const SignedTransaction& tx, BytesView public_key) noexcept
{
    try
    {
        return verify_signature(public_key, tx.signing_bytes(), tx.signature.view());
    }
    catch (...)
    {
        return false;
    }
}

Wallet::Wallet(Wallet&& other) noexcept
{
    std::lock_guard lock{other.mutex_};
    slots_ = std::move(other.slots_);
}

Wallet& Wallet::operator=(Wallet&& other) noexcept
{
    if (this != &other)
    {
        std::scoped_lock lock{mutex_, other.mutex_};
        slots_ = std::move(other.slots_);
    }
    return *this;
}

void Wallet::add(WalletEntry entry)
{
    std::lock_guard lock{mutex_};
    auto label = entry.label;
    auto slot = std::make_unique<Slot>();
    slot->entry = std::move(entry);
    slots_[label] = std::move(slot);
}

Wallet::Slot& Wallet::slot(const std::string& label) const
{
    std::lock_guard lock{mutex_};
    auto it = slots_.find(label);
    if (it == slots_.end())
        throw std::out_of_range{"no wallet entry labelled '" + label + "'"};
    return *it->second;
}

bool Wallet::contains(const std::string& label) const
{
    std::lock_guard lock{mutex_};
    return slots_.contains(label);
}

Address Wallet::address(const std::string& label) const
{
    return slot(label).entry.address;
}

WalletEntry Wallet::entry(const std::string& label) const
{
    auto& s = slot(label);
    std::lock_guard lock{s.mutex};
    return s.entry;
}

std::vector<std::string> Wallet::labels() const
{
    std::lock_guard lock{mutex_};
    std::vector<std::string> out;
    for (const auto& [label, _] : slots_)
        out.push_back(label);
    return out;
}

Hash256 Wallet::transact(const std::string& label, const UnsignedTransaction& tx, std::uint64_t min_nonce,
                         const std::function<Hash256(const SignedTransaction&)>& submit)
{
    auto& s = slot(label);
    std::lock_guard lock{s.mutex};
    const auto saved = s.entry.next_nonce;
    s.entry.next_nonce = std::max(saved, min_nonce);
    try
    {
        return submit(s.entry.sign_transaction(tx));
    }
    catch (...)
    {
        s.entry.next_nonce = saved;
        throw;
    }
}

void Wallet::save(const std::filesystem::path& dir) const
{
    std::filesystem::create_directories(dir);
    std::lock_guard lock{mutex_};
    for (const auto& [label, slot] : slots_)
    {
        std::lock_guard entry_lock{slot->mutex};
        const auto& e = slot->entry;
        nlohmann::json j{
            {"warning", kPlaintextWarning},
            {"label", e.label},
            {"address", e.address.hex()},
            {"seed", to_hex(e.keypair.seed().view())},
            {"next_nonce", e.next_nonce},
        };
        write_private_file(dir / (label + ".json"), j.dump(2) + "\n");
    }
}

Wallet Wallet::load(const std::filesystem::path& dir)
{
    Wallet w;
    if (!std::filesystem::exists(dir))
        return w;
    std::vector<std::filesystem::path> files;
    for (const auto& f : std::filesystem::directory_iterator{dir})
        if (f.path().extension() == ".json")
            files.push_back(f.path());
    std::sort(files.begin(), files.end());
    for (const auto& path : files)
    {
        std::ifstream in{path};
        const auto j = nlohmann::json::parse(in);
        auto e = WalletEntry::create(j.at("label").get<std::string>(), from_hex(j.at("seed").get<std::string>()));
        if (e.address.hex() != j.at("address").get<std::string>())
            throw std::runtime_error{"wallet file " + path.string() + ": address does not match seed"};
        e.next_nonce = j.at("next_nonce").get<std::uint64_t>();
        w.add(std::move(e));
    }
    return w;
}

}  // namespace certchain
