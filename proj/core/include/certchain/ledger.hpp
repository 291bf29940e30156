// certchain: blockchain-anchored academic record registry
// Copyright 2026 The certchain Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <certchain/contract.hpp>
#include <certchain/transaction.hpp>

#include <memory>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <unordered_map>

namespace certchain
{
struct ChainConfig
{
    /// Required leading zero bits of every block hash after genesis.
    unsigned difficulty = 12;
    Gas block_gas_limit = 120'000;
    /// Number of simulated validators; must be odd.
    unsigned node_count = 5;
    std::map<Address, WeiAmount> genesis_allocations;
    /// Simulated time consumed by one proof-of-work attempt.
    SimDuration tick_per_hash{1};
    WeiAmount block_reward = WeiAmount::ether(2);

    /// Throws std::invalid_argument.
    void validate() const;
};

struct AccountState
{
    WeiAmount balance;
    std::uint64_t nonce = 0;

    bool operator==(const AccountState&) const = default;
};

struct WorldState
{
    std::map<Address, AccountState> accounts;
    std::map<Address, ContractState> contracts;

    [[nodiscard]] AccountState account(const Address& a) const;
    [[nodiscard]] const ContractState* contract(const Address& a) const;
    [[nodiscard]] WeiAmount total_balance() const;
    [[nodiscard]] Bytes encode() const;
    /// SHA-256 of encode().
    [[nodiscard]] Hash256 root() const;

    bool operator==(const WorldState&) const = default;
};

struct Receipt
{
    Hash256 tx_hash;
    std::uint64_t block_number = 0;
    Address from;
    Gas gas_used = 0;
    WeiAmount gas_price;
    WeiAmount fee;
    /// CallError::none means success; anything else is a revert.
    CallError error = CallError::none;
    SimDuration submitted_at{0};
    SimDuration confirmed_at{0};
    /// Set for successful deployments.
    std::optional<Address> contract_address;

    [[nodiscard]] bool success() const noexcept { return error == CallError::none; }
    [[nodiscard]] SimDuration confirmation_delay() const noexcept { return confirmed_at - submitted_at; }
    /// "success" or "reverted:<ErrorName>".
    [[nodiscard]] std::string status_text() const;
    [[nodiscard]] Bytes encode() const;

    bool operator==(const Receipt&) const = default;
};

struct Block
{
    std::uint64_t number = 0;
    Hash256 parent_hash;
    SimDuration timestamp{0};
    unsigned difficulty = 0;
    std::uint64_t pow_nonce = 0;
    Address miner;
    std::vector<SignedTransaction> transactions;
    Hash256 state_root;
    Hash256 block_hash;

    /// SHA-256 over the concatenated transaction hashes.
    [[nodiscard]] Hash256 tx_root() const;
    /// Canonical header encoding: every field except block_hash, with the
    /// transaction list represented by tx_root().
    [[nodiscard]] Bytes header_bytes() const { return header_bytes(tx_root()); }
    [[nodiscard]] Bytes header_bytes(const Hash256& tx_root) const;
    [[nodiscard]] Hash256 compute_hash() const { return sha256(header_bytes()); }

    bool operator==(const Block&) const = default;
};

/// Searches pow_nonce upward from 0 with timestamp = start + (attempts * tick)
/// until the header hash has at least `difficulty` leading zero bits, then
/// stores the result in block_hash.
void seal_block(Block& block, SimDuration start, SimDuration tick);

enum class SubmitErrc
{
    invalid_signature,
    nonce_gap,
    insufficient_balance,
    duplicate_transaction,
    invalid_transaction,
};

std::string_view to_string(SubmitErrc e) noexcept;

class SubmitError : public std::runtime_error
{
public:
    explicit SubmitError(SubmitErrc code, const std::string& detail = {});
    [[nodiscard]] SubmitErrc code() const noexcept { return code_; }

private:
    SubmitErrc code_;
};

enum class BlockFault
{
    none,
    unknown_parent,
    bad_number,
    bad_difficulty,
    bad_hash,
    insufficient_work,
    bad_timestamp,
    invalid_transaction,
    gas_limit_exceeded,
    bad_state_root,
};

std::string_view to_string(BlockFault f) noexcept;

/// Deterministic state transition for one block.
struct BlockExecution
{
    WorldState state;
    std::vector<Receipt> receipts;
    Gas gas_used = 0;
};

/// Re-executes `block` on top of `parent`. Receipts carry the block's
/// timestamp as confirmed_at. Never throws for invalid blocks; the fault is
/// reported instead.
struct ExecutionOutcome
{
    BlockFault fault = BlockFault::none;
    std::optional<BlockExecution> execution;
};
ExecutionOutcome execute_block(const WorldState& parent, const Block& block, const ChainConfig& config);

enum class NodeBehavior
{
    honest,
    /// Crashed or faulty validator: votes against every block.
    reject_all,
};

/// One simulated validator with its own copy of the chain and state.
class ValidatorNode
{
public:
    ValidatorNode(const ChainConfig& config, const Block& genesis, const WorldState& genesis_state);

    struct Vote
    {
        bool accept = false;
        BlockFault fault = BlockFault::none;
        std::optional<BlockExecution> execution;
    };

    [[nodiscard]] Vote validate(const Block& block) const;
    void append(const Block& block, const WorldState& post_state);

    [[nodiscard]] const std::vector<Block>& chain() const noexcept { return chain_; }
    [[nodiscard]] const WorldState& state() const noexcept { return state_; }
    NodeBehavior behavior = NodeBehavior::honest;

private:
    const ChainConfig* config_;
    std::vector<Block> chain_;
    WorldState state_;
};

struct Acceptance
{
    bool accepted = false;
    unsigned votes_for = 0;
    unsigned node_count = 0;
    /// Fault reported by the first rejecting honest node, if any.
    BlockFault fault = BlockFault::none;

    explicit operator bool() const noexcept { return accepted; }
};

struct PendingStatus
{
};
struct UnknownStatus
{
};
using TxStatus = std::variant<Receipt, PendingStatus, UnknownStatus>;

/// In-process proof-of-work chain with majority validation across simulated
/// nodes.
///
/// Block production and application are serialized behind one writer.
/// submit_transaction and every read are safe from concurrent callers;
/// state() hands out immutable snapshots.
class Ledger
{
public:
    explicit Ledger(ChainConfig config);

    /// Rebuilds a ledger by validating `blocks` (genesis first) in order.
    /// Throws std::runtime_error if the genesis differs or a block is
    /// rejected.
    static std::unique_ptr<Ledger> replay(ChainConfig config, const std::vector<Block>& blocks);

    /// Throws SubmitError.
    Hash256 submit_transaction(const SignedTransaction& tx);

    /// Builds and seals a candidate block from the mempool without committing.
    [[nodiscard]] Block propose_block(const Address& miner) const;
    /// Every node re-executes `block`; it is appended everywhere iff more than
    /// half of the nodes vote for it.
    Acceptance validate_and_accept(const Block& block);
    /// propose_block + validate_and_accept. Throws std::logic_error if the
    /// honest majority rejects its own proposal.
    Block mine_next_block(const Address& miner);

    [[nodiscard]] TxStatus get_receipt(const Hash256& tx_hash) const;
    /// get_hash view against the current head. Never mutates state.
    [[nodiscard]] std::optional<CertificateRecord> get_hash(const Address& contract, const Hash256& cert_hash) const;
    /// Hash of the successful store_hash transaction that recorded cert_hash.
    [[nodiscard]] std::optional<Hash256> find_store_transaction(const Address& contract,
                                                                const Hash256& cert_hash) const;

    [[nodiscard]] std::shared_ptr<const WorldState> state() const;
    [[nodiscard]] AccountState account(const Address& a) const;
    /// Nonce the next submitted transaction from `a` must carry.
    [[nodiscard]] std::uint64_t pending_nonce(const Address& a) const;
    /// Pending transactions in mempool order.
    [[nodiscard]] std::vector<SignedTransaction> pending() const;
    [[nodiscard]] std::size_t pending_count() const;

    [[nodiscard]] std::vector<Block> blocks() const;
    [[nodiscard]] Block tip() const;
    /// Number of blocks after genesis.
    [[nodiscard]] std::uint64_t height() const;
    /// Receipts in chain order.
    [[nodiscard]] std::vector<Receipt> receipts() const;

    [[nodiscard]] SimDuration now() const;
    /// Advances the simulated clock (idle time between blocks).
    void advance_clock(SimDuration d);

    [[nodiscard]] const ChainConfig& config() const noexcept { return config_; }
    void set_node_behavior(unsigned node, NodeBehavior b);
    [[nodiscard]] const ValidatorNode& node(unsigned i) const { return nodes_.at(i); }

private:
    /// Mempool order: gas price descending, then submission time, then hash.
    struct OrderKey
    {
        WeiAmount gas_price;
        SimDuration submitted_at;
        Hash256 hash;

        bool operator<(const OrderKey& o) const noexcept;
    };
    struct PendingAccount
    {
        std::uint64_t count = 0;
        WeiAmount reserved;
    };

    Block build_block(const Address& miner) const;
    Acceptance accept_locked(const Block& block);
    void rebuild_pending_accounts();

    ChainConfig config_;

    std::mutex writer_;
    std::vector<ValidatorNode> nodes_;

    mutable std::shared_mutex mutex_;
    std::vector<Block> chain_;
    std::shared_ptr<const WorldState> head_;
    std::unordered_map<Hash256, Receipt> receipts_;
    std::vector<Hash256> receipt_order_;
    std::unordered_map<Hash256, SignedTransaction> pool_;
    std::set<OrderKey> ordered_;
    std::map<Address, PendingAccount> pending_accounts_;
    SimDuration now_{0};
};

}  // namespace certchain
