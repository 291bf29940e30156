// certchain: blockchain-anchored academic record registry
// Copyright 2026 The certchain Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <certchain/codec.hpp>

#include <map>
#include <variant>

namespace certchain
{
/// Flat gas schedule.
namespace gas
{
constexpr Gas kDeploy = 32'000;
constexpr Gas kAddUni = 32'000;
constexpr Gas kStoreHash = 30'000;
/// Plain call to a non-contract address, and malformed contract calls.
constexpr Gas kTransfer = 21'000;
}  // namespace gas

enum class Opcode : std::uint8_t
{
    add_uni = 0x01,
    store_hash = 0x02,
};

enum class CallError : std::uint8_t
{
    none = 0,
    not_owner,
    university_already_registered,
    not_registered_university,
    duplicate_hash,
    invalid_metadata,
    bad_payload,
    out_of_gas,
};

/// CamelCase name, e.g. "DuplicateHash".
std::string_view to_string(CallError e) noexcept;
std::optional<CallError> call_error_from_string(std::string_view s) noexcept;

struct UniversityMeta
{
    std::string name;
    std::string country;
    std::uint64_t registered_at = 0;  ///< block number

    bool operator==(const UniversityMeta&) const = default;
};

/// On-chain record for one certificate hash.
struct StoredCertificate
{
    Address issuer;
    std::uint64_t stored_at = 0;  ///< block number
    std::uint32_t doc_type_code = 0;

    bool operator==(const StoredCertificate&) const = default;
};

/// Result of the get_hash view: the stored record joined with the timestamp
/// of the block that stored it. The timestamp is not part of contract
/// storage because it is only fixed once the block's proof of work is found.
struct CertificateRecord
{
    Address issuer;
    std::uint64_t stored_at = 0;
    SimDuration block_timestamp{0};
    std::uint32_t doc_type_code = 0;

    bool operator==(const CertificateRecord&) const = default;
};

struct AddUniCall
{
    Address university;
    std::string name;
    std::string country;
};

struct StoreHashCall
{
    Hash256 cert_hash;
    std::uint32_t doc_type_code = 0;
};

using ContractCall = std::variant<AddUniCall, StoreHashCall>;

/// Call payload: 1-byte opcode followed by length-prefixed arguments.
///   0x01 add_uni:    university (20 bytes), name (UTF-8), country (UTF-8)
///   0x02 store_hash: cert_hash (32 bytes), doc_type_code (u32)
Bytes encode_call(const ContractCall& call);
/// nullopt for unknown opcodes or malformed arguments.
std::optional<ContractCall> decode_call(BytesView payload) noexcept;

/// Gas charged for a call with this payload (flat per opcode).
Gas call_gas(BytesView payload) noexcept;

/// Contract address: first 20 bytes of SHA-256(owner || nonce as u64 BE).
Address contract_address(const Address& owner, std::uint64_t nonce);

/// Storage of one deployed achievement-registry contract.
///
/// Records are write-once: a stored hash is never overwritten or removed,
/// and every record's issuer is a registered university.
class ContractState
{
public:
    ContractState() = default;
    explicit ContractState(const Address& owner) : owner_{owner} {}

    [[nodiscard]] const Address& owner() const noexcept { return owner_; }
    [[nodiscard]] const std::map<Address, UniversityMeta>& universities() const noexcept
    {
        return universities_;
    }
    [[nodiscard]] const std::map<Hash256, StoredCertificate>& records() const noexcept { return records_; }

    CallError add_uni(const Address& caller, const Address& uni, UniversityMeta meta);
    CallError store_hash(const Address& caller, const Hash256& cert_hash, std::uint32_t doc_type_code,
                         std::uint64_t block_number);
    /// View call; never mutates.
    [[nodiscard]] std::optional<StoredCertificate> get_hash(const Hash256& cert_hash) const;

    /// Dispatches a decoded payload; malformed payloads yield bad_payload.
    CallError execute(const Address& caller, BytesView payload, std::uint64_t block_number);

    void encode_into(Encoder& e) const;

    bool operator==(const ContractState&) const = default;

private:
    Address owner_;
    std::map<Address, UniversityMeta> universities_;
    std::map<Hash256, StoredCertificate> records_;
};

}  // namespace certchain
