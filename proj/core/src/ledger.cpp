// certchain: blockchain-anchored academic record registry
// Copyright 2026 The certchain Authors.
// SPDX-License-Identifier: Apache-2.0

#include <certchain/ledger.hpp>

#include <algorithm>

namespace certchain
{
namespace
{
/// Gas a transaction will consume against `state`, capped at its limit.
Gas intrinsic_cost(const WorldState& state, const SignedTransaction& tx) noexcept
{
    if (tx.to.is_zero())
        return gas::kDeploy;
    if (state.contract(tx.to) != nullptr)
        return call_gas(tx.payload);
    return gas::kTransfer;
}

/// Applies one transaction. Validity checks run before any mutation, so on a
/// fault `state` is untouched.
BlockFault apply_transaction(WorldState& state, const SignedTransaction& tx, std::uint64_t block_number,
                             SimDuration block_time, Receipt& receipt)
{
    if (tx.gas_limit == 0 || tx.submitted_at > block_time || tx.submitted_at < SimDuration::zero())
        return BlockFault::invalid_transaction;
    if (!tx.verify())
        return BlockFault::invalid_transaction;
    auto& sender = state.accounts[tx.from];
    WeiAmount max_fee;
    try
    {
        max_fee = tx.max_fee();
    }
    catch (const ArithmeticOverflow&)
    {
        return BlockFault::invalid_transaction;
    }
    if (sender.nonce != tx.nonce || sender.balance < max_fee)
        return BlockFault::invalid_transaction;

    receipt = Receipt{};
    receipt.tx_hash = tx.hash();
    receipt.block_number = block_number;
    receipt.from = tx.from;
    receipt.gas_price = tx.gas_price;
    receipt.submitted_at = tx.submitted_at;

    const Gas cost = intrinsic_cost(state, tx);
    if (cost > tx.gas_limit)
    {
        receipt.gas_used = tx.gas_limit;
        receipt.error = CallError::out_of_gas;
    }
    else
    {
        receipt.gas_used = cost;
        if (tx.to.is_zero())
        {
            const auto addr = contract_address(tx.from, tx.nonce);
            if (state.contracts.contains(addr))
                receipt.error = CallError::bad_payload;
            else
            {
                state.contracts.emplace(addr, ContractState{tx.from});
                receipt.contract_address = addr;
            }
        }
        else if (auto it = state.contracts.find(tx.to); it != state.contracts.end())
        {
            receipt.error = it->second.execute(tx.from, tx.payload, block_number);
        }
    }

    receipt.fee = compute_fee(receipt.gas_used, tx.gas_price);
    sender.balance -= receipt.fee;
    sender.nonce += 1;
    return BlockFault::none;
}

void credit_miner(WorldState& state, const Address& miner, WeiAmount fees, WeiAmount reward)
{
    auto& acct = state.accounts[miner];
    acct.balance += fees;
    acct.balance += reward;
}

constexpr std::array<std::string_view, 5> kSubmitNames{
    "InvalidSignature", "NonceGap", "InsufficientBalance", "DuplicateTransaction", "InvalidTransaction"};

constexpr std::array<std::string_view, 10> kFaultNames{
    "None",       "UnknownParent",      "BadNumber",        "BadDifficulty", "BadHash",
    "InsufficientWork", "BadTimestamp", "InvalidTransaction", "GasLimitExceeded", "BadStateRoot"};
}  // namespace

void ChainConfig::validate() const
{
    if (node_count < 1 || node_count % 2 == 0)
        throw std::invalid_argument{"node_count must be odd and at least 1"};
    if (difficulty < 1 || difficulty > 64)
        throw std::invalid_argument{"difficulty must be between 1 and 64 bits"};
    if (block_gas_limit == 0)
        throw std::invalid_argument{"block_gas_limit must be positive"};
    if (tick_per_hash <= SimDuration::zero())
        throw std::invalid_argument{"tick_per_hash must be positive"};
}

AccountState WorldState::account(const Address& a) const
{
    if (auto it = accounts.find(a); it != accounts.end())
        return it->second;
    return {};
}

const ContractState* WorldState::contract(const Address& a) const
{
    auto it = contracts.find(a);
    return it == contracts.end() ? nullptr : &it->second;
}

WeiAmount WorldState::total_balance() const
{
    WeiAmount sum;
    for (const auto& [_, acct] : accounts)
        sum += acct.balance;
    return sum;
}

Bytes WorldState::encode() const
{
    Encoder e;
    e.u64(accounts.size());
    for (const auto& [addr, acct] : accounts)
        e.address(addr).wei(acct.balance).u64(acct.nonce);
    e.u64(contracts.size());
    for (const auto& [addr, contract] : contracts)
    {
        e.address(addr);
        contract.encode_into(e);
    }
    return std::move(e).take();
}

Hash256 WorldState::root() const
{
    return sha256(encode());
}

std::string Receipt::status_text() const
{
    return success() ? std::string{"success"} : "reverted:" + std::string{to_string(error)};
}

Bytes Receipt::encode() const
{
    Encoder e;
    e.hash(tx_hash)
        .u64(block_number)
        .address(from)
        .u64(gas_used)
        .wei(gas_price)
        .wei(fee)
        .u8(static_cast<std::uint8_t>(error))
        .i64(submitted_at.count())
        .i64(confirmed_at.count())
        .bytes(contract_address ? contract_address->view() : BytesView{});
    return std::move(e).take();
}

Hash256 Block::tx_root() const
{
    Sha256 h;
    for (const auto& tx : transactions)
        h.update(tx.hash().view());
    return h.finish();
}

Bytes Block::header_bytes(const Hash256& root) const
{
    Encoder e;
    e.u64(number)
        .hash(parent_hash)
        .i64(timestamp.count())
        .u32(difficulty)
        .u64(pow_nonce)
        .address(miner)
        .hash(root)
        .hash(state_root);
    return std::move(e).take();
}

void seal_block(Block& block, SimDuration start, SimDuration tick)
{
    const auto root = block.tx_root();
    for (std::uint64_t nonce = 0;; ++nonce)
    {
        block.pow_nonce = nonce;
        block.timestamp = start + tick * static_cast<std::int64_t>(nonce + 1);
        const auto h = sha256(block.header_bytes(root));
        if (h.leading_zero_bits() >= block.difficulty)
        {
            block.block_hash = h;
            return;
        }
    }
}

std::string_view to_string(SubmitErrc e) noexcept
{
    return kSubmitNames.at(static_cast<std::size_t>(e));
}

SubmitError::SubmitError(SubmitErrc code, const std::string& detail)
    : std::runtime_error{std::string{to_string(code)} + (detail.empty() ? "" : ": " + detail)}, code_{code}
{
}

std::string_view to_string(BlockFault f) noexcept
{
    return kFaultNames.at(static_cast<std::size_t>(f));
}

ExecutionOutcome execute_block(const WorldState& parent, const Block& block, const ChainConfig& config)
{
    BlockExecution exec{parent, {}, 0};
    WeiAmount fees;
    try
    {
        for (const auto& tx : block.transactions)
        {
            Receipt r;
            if (auto f = apply_transaction(exec.state, tx, block.number, block.timestamp, r); f != BlockFault::none)
                return {f, std::nullopt};
            r.confirmed_at = block.timestamp;
            exec.gas_used += r.gas_used;
            fees += r.fee;
            exec.receipts.push_back(std::move(r));
        }
        if (exec.gas_used > config.block_gas_limit)
            return {BlockFault::gas_limit_exceeded, std::nullopt};
        credit_miner(exec.state, block.miner, fees, config.block_reward);
    }
    catch (const ArithmeticOverflow&)
    {
        return {BlockFault::invalid_transaction, std::nullopt};
    }
    return {BlockFault::none, std::move(exec)};
}

ValidatorNode::ValidatorNode(const ChainConfig& config, const Block& genesis, const WorldState& genesis_state)
    : config_{&config}, chain_{genesis}, state_{genesis_state}
{
}

ValidatorNode::Vote ValidatorNode::validate(const Block& block) const
{
    if (behavior == NodeBehavior::reject_all)
        return {};
    const auto& parent = chain_.back();
    if (block.parent_hash != parent.block_hash)
        return {false, BlockFault::unknown_parent, std::nullopt};
    if (block.number != parent.number + 1)
        return {false, BlockFault::bad_number, std::nullopt};
    if (block.difficulty != config_->difficulty)
        return {false, BlockFault::bad_difficulty, std::nullopt};
    const auto h = block.compute_hash();
    if (h.leading_zero_bits() < block.difficulty)
        return {false, BlockFault::insufficient_work, std::nullopt};
    if (h != block.block_hash)
        return {false, BlockFault::bad_hash, std::nullopt};
    if (block.pow_nonce >= static_cast<std::uint64_t>(INT64_MAX / config_->tick_per_hash.count()) ||
        block.timestamp < parent.timestamp + config_->tick_per_hash * static_cast<std::int64_t>(block.pow_nonce + 1))
        return {false, BlockFault::bad_timestamp, std::nullopt};

    auto outcome = execute_block(state_, block, *config_);
    if (outcome.fault != BlockFault::none)
        return {false, outcome.fault, std::nullopt};
    if (outcome.execution->state.root() != block.state_root)
        return {false, BlockFault::bad_state_root, std::nullopt};
    return {true, BlockFault::none, std::move(outcome.execution)};
}

void ValidatorNode::append(const Block& block, const WorldState& post_state)
{
    chain_.push_back(block);
    state_ = post_state;
}

bool Ledger::OrderKey::operator<(const OrderKey& o) const noexcept
{
    if (gas_price != o.gas_price)
        return gas_price > o.gas_price;
    if (submitted_at != o.submitted_at)
        return submitted_at < o.submitted_at;
    return hash < o.hash;
}

Ledger::Ledger(ChainConfig config) : config_{std::move(config)}
{
    config_.validate();
    WorldState genesis_state;
    for (const auto& [addr, amount] : config_.genesis_allocations)
        genesis_state.accounts[addr].balance = amount;

    Block genesis;
    genesis.difficulty = config_.difficulty;
    genesis.state_root = genesis_state.root();
    genesis.block_hash = genesis.compute_hash();

    nodes_.reserve(config_.node_count);
    for (unsigned i = 0; i < config_.node_count; ++i)
        nodes_.emplace_back(config_, genesis, genesis_state);
    chain_.push_back(std::move(genesis));
    head_ = std::make_shared<const WorldState>(std::move(genesis_state));
}

std::unique_ptr<Ledger> Ledger::replay(ChainConfig config, const std::vector<Block>& blocks)
{
    auto ledger = std::make_unique<Ledger>(std::move(config));
    if (blocks.empty() || blocks.front() != ledger->chain_.front())
        throw std::runtime_error{"genesis block does not match chain configuration"};
    for (std::size_t i = 1; i < blocks.size(); ++i)
    {
        const auto acceptance = ledger->validate_and_accept(blocks[i]);
        if (!acceptance)
            throw std::runtime_error{"block " + std::to_string(blocks[i].number) +
                                     " rejected during replay: " + std::string{to_string(acceptance.fault)}};
    }
    return ledger;
}

Hash256 Ledger::submit_transaction(const SignedTransaction& tx)
{
    const auto h = tx.hash();
    std::unique_lock lock{mutex_};
    if (pool_.contains(h) || receipts_.contains(h))
        throw SubmitError{SubmitErrc::duplicate_transaction, h.hex()};
    if (!tx.verify())
        throw SubmitError{SubmitErrc::invalid_signature};
    if (tx.gas_limit == 0)
        throw SubmitError{SubmitErrc::invalid_transaction, "gas_limit must be positive"};
    if (tx.submitted_at < SimDuration::zero() || tx.submitted_at > now_)
        throw SubmitError{SubmitErrc::invalid_transaction, "submitted_at is ahead of the chain clock"};

    const auto acct = head_->account(tx.from);
    auto& pending = pending_accounts_[tx.from];
    const auto expected = acct.nonce + pending.count;
    if (tx.nonce != expected)
    {
        if (pending.count == 0)
            pending_accounts_.erase(tx.from);
        throw SubmitError{SubmitErrc::nonce_gap,
                          "expected " + std::to_string(expected) + ", got " + std::to_string(tx.nonce)};
    }
    WeiAmount needed;
    try
    {
        needed = pending.reserved + tx.max_fee();
    }
    catch (const ArithmeticOverflow&)
    {
        throw SubmitError{SubmitErrc::invalid_transaction, "fee overflow"};
    }
    if (acct.balance < needed)
    {
        if (pending.count == 0)
            pending_accounts_.erase(tx.from);
        throw SubmitError{SubmitErrc::insufficient_balance};
    }

    pending.count += 1;
    pending.reserved = needed;
    pool_.emplace(h, tx);
    ordered_.insert(OrderKey{tx.gas_price, tx.submitted_at, h});
    return h;
}

Block Ledger::build_block(const Address& miner) const
{
    Block parent;
    WorldState state;
    std::vector<const SignedTransaction*> candidates;
    SimDuration now;
    {
        std::shared_lock lock{mutex_};
        parent = chain_.back();
        state = *head_;
        now = now_;
        candidates.reserve(ordered_.size());
        for (const auto& key : ordered_)
            candidates.push_back(&pool_.at(key.hash));

        Block block;
        block.number = parent.number + 1;
        block.parent_hash = parent.block_hash;
        block.difficulty = config_.difficulty;
        block.miner = miner;
        const auto start = std::max(parent.timestamp, now);

        // Take the first eligible transaction in mempool order, then rescan:
        // a sender's later nonce may have been skipped ahead of its earlier one.
        std::vector<bool> used(candidates.size(), false);
        Gas gas_total = 0;
        WeiAmount fees;
        for (bool progressed = true; progressed;)
        {
            progressed = false;
            for (std::size_t i = 0; i < candidates.size(); ++i)
            {
                if (used[i])
                    continue;
                const auto& tx = *candidates[i];
                if (state.account(tx.from).nonce != tx.nonce)
                    continue;
                const Gas gas = std::min(intrinsic_cost(state, tx), tx.gas_limit);
                if (gas_total + gas > config_.block_gas_limit)
                    break;
                used[i] = true;
                Receipt r;
                if (apply_transaction(state, tx, block.number, start, r) != BlockFault::none)
                    continue;
                gas_total += r.gas_used;
                fees += r.fee;
                block.transactions.push_back(tx);
                progressed = true;
                break;
            }
        }
        lock.unlock();

        credit_miner(state, miner, fees, config_.block_reward);
        block.state_root = state.root();
        seal_block(block, start, config_.tick_per_hash);
        return block;
    }
}

Block Ledger::propose_block(const Address& miner) const
{
    return build_block(miner);
}

Acceptance Ledger::validate_and_accept(const Block& block)
{
    std::lock_guard writer{writer_};
    return accept_locked(block);
}

Acceptance Ledger::accept_locked(const Block& block)
{
    Acceptance result;
    result.node_count = static_cast<unsigned>(nodes_.size());
    std::optional<BlockExecution> execution;
    for (const auto& node : nodes_)
    {
        auto vote = node.validate(block);
        if (vote.accept)
        {
            ++result.votes_for;
            if (!execution)
                execution = std::move(vote.execution);
        }
        else if (result.fault == BlockFault::none && node.behavior == NodeBehavior::honest)
        {
            result.fault = vote.fault;
        }
    }
    result.accepted = 2 * result.votes_for > result.node_count;
    if (!result.accepted)
        return result;

    for (auto& node : nodes_)
        node.append(block, execution->state);

    std::unique_lock lock{mutex_};
    chain_.push_back(block);
    head_ = std::make_shared<const WorldState>(std::move(execution->state));
    for (auto& r : execution->receipts)
    {
        receipt_order_.push_back(r.tx_hash);
        pool_.erase(r.tx_hash);
        receipts_.emplace(r.tx_hash, std::move(r));
    }
    // Drop ordering keys of mined transactions and anything made stale.
    for (auto it = ordered_.begin(); it != ordered_.end();)
    {
        auto p = pool_.find(it->hash);
        if (p == pool_.end())
        {
            it = ordered_.erase(it);
            continue;
        }
        if (p->second.nonce < head_->account(p->second.from).nonce)
        {
            pool_.erase(p);
            it = ordered_.erase(it);
            continue;
        }
        ++it;
    }
    rebuild_pending_accounts();
    now_ = std::max(now_, block.timestamp);
    return result;
}

void Ledger::rebuild_pending_accounts()
{
    pending_accounts_.clear();
    for (const auto& [h, tx] : pool_)
    {
        auto& p = pending_accounts_[tx.from];
        p.count += 1;
        p.reserved += tx.max_fee();
    }
}

Block Ledger::mine_next_block(const Address& miner)
{
    std::lock_guard writer{writer_};
    auto block = build_block(miner);
    const auto acceptance = accept_locked(block);
    if (!acceptance)
        throw std::logic_error{"validators rejected a locally mined block: " +
                               std::string{to_string(acceptance.fault)}};
    return block;
}

TxStatus Ledger::get_receipt(const Hash256& tx_hash) const
{
    std::shared_lock lock{mutex_};
    if (auto it = receipts_.find(tx_hash); it != receipts_.end())
        return it->second;
    if (pool_.contains(tx_hash))
        return PendingStatus{};
    return UnknownStatus{};
}

std::optional<CertificateRecord> Ledger::get_hash(const Address& contract, const Hash256& cert_hash) const
{
    std::shared_lock lock{mutex_};
    const auto* c = head_->contract(contract);
    if (c == nullptr)
        return std::nullopt;
    auto stored = c->get_hash(cert_hash);
    if (!stored)
        return std::nullopt;
    return CertificateRecord{stored->issuer, stored->stored_at, chain_.at(stored->stored_at).timestamp,
                             stored->doc_type_code};
}

std::optional<Hash256> Ledger::find_store_transaction(const Address& contract, const Hash256& cert_hash) const
{
    std::shared_lock lock{mutex_};
    const auto* c = head_->contract(contract);
    if (c == nullptr)
        return std::nullopt;
    auto stored = c->get_hash(cert_hash);
    if (!stored)
        return std::nullopt;
    for (const auto& tx : chain_.at(stored->stored_at).transactions)
    {
        if (tx.to != contract)
            continue;
        auto call = decode_call(tx.payload);
        if (!call || !std::holds_alternative<StoreHashCall>(*call) ||
            std::get<StoreHashCall>(*call).cert_hash != cert_hash)
            continue;
        const auto h = tx.hash();
        if (receipts_.at(h).success())
            return h;
    }
    return std::nullopt;
}

std::shared_ptr<const WorldState> Ledger::state() const
{
    std::shared_lock lock{mutex_};
    return head_;
}

AccountState Ledger::account(const Address& a) const
{
    return state()->account(a);
}

std::uint64_t Ledger::pending_nonce(const Address& a) const
{
    std::shared_lock lock{mutex_};
    auto n = head_->account(a).nonce;
    if (auto it = pending_accounts_.find(a); it != pending_accounts_.end())
        n += it->second.count;
    return n;
}

std::vector<SignedTransaction> Ledger::pending() const
{
    std::shared_lock lock{mutex_};
    std::vector<SignedTransaction> out;
    out.reserve(ordered_.size());
    for (const auto& key : ordered_)
        out.push_back(pool_.at(key.hash));
    return out;
}

std::size_t Ledger::pending_count() const
{
    std::shared_lock lock{mutex_};
    return pool_.size();
}

std::vector<Block> Ledger::blocks() const
{
    std::shared_lock lock{mutex_};
    return chain_;
}

Block Ledger::tip() const
{
    std::shared_lock lock{mutex_};
    return chain_.back();
}

std::uint64_t Ledger::height() const
{
    std::shared_lock lock{mutex_};
    return chain_.size() - 1;
}

std::vector<Receipt> Ledger::receipts() const
{
    std::shared_lock lock{mutex_};
    std::vector<Receipt> out;
    out.reserve(receipt_order_.size());
    for (const auto& h : receipt_order_)
        out.push_back(receipts_.at(h));
    return out;
}

SimDuration Ledger::now() const
{
    std::shared_lock lock{mutex_};
    return now_;
}

void Ledger::advance_clock(SimDuration d)
{
    if (d < SimDuration::zero())
        throw std::invalid_argument{"clock cannot move backwards"};
    std::unique_lock lock{mutex_};
    now_ += d;
}

void Ledger::set_node_behavior(unsigned node, NodeBehavior b)
{
    std::lock_guard writer{writer_};
    nodes_.at(node).behavior = b;
}

}  // namespace certchain
