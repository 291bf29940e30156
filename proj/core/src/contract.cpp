// certchain: blockchain-anchored academic record registry
// Copyright 2026 The certchain Authors.
// SPDX-License-Identifier: Apache-2.0

#include <certchain/contract.hpp>
#include <certchain/crypto.hpp>

#include <array>

namespace certchain
{
namespace
{
constexpr std::array<std::pair<CallError, std::string_view>, 8> kErrorNames{{
    {CallError::none, "None"},
    {CallError::not_owner, "NotOwner"},
    {CallError::university_already_registered, "UniversityAlreadyRegistered"},
    {CallError::not_registered_university, "NotRegisteredUniversity"},
    {CallError::duplicate_hash, "DuplicateHash"},
    {CallError::invalid_metadata, "InvalidMetadata"},
    {CallError::bad_payload, "BadPayload"},
    {CallError::out_of_gas, "OutOfGas"},
}};
}  // namespace

std::string_view to_string(CallError e) noexcept
{
    for (const auto& [code, name] : kErrorNames)
        if (code == e)
            return name;
    return "Unknown";
}

std::optional<CallError> call_error_from_string(std::string_view s) noexcept
{
    for (const auto& [code, name] : kErrorNames)
        if (name == s)
            return code;
    return std::nullopt;
}

Bytes encode_call(const ContractCall& call)
{
    Encoder e;
    std::visit(
        [&](const auto& c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, AddUniCall>)
            {
                const std::uint8_t op = static_cast<std::uint8_t>(Opcode::add_uni);
                e.raw({&op, 1}).address(c.university).text(c.name).text(c.country);
            }
            else
            {
                const std::uint8_t op = static_cast<std::uint8_t>(Opcode::store_hash);
                e.raw({&op, 1}).hash(c.cert_hash).u32(c.doc_type_code);
            }
        },
        call);
    return std::move(e).take();
}

std::optional<ContractCall> decode_call(BytesView payload) noexcept
{
    try
    {
        Decoder d{payload};
        switch (static_cast<Opcode>(d.raw_u8()))
        {
        case Opcode::add_uni:
        {
            AddUniCall c;
            c.university = d.address();
            c.name = d.text();
            c.country = d.text();
            d.expect_done();
            return c;
        }
        case Opcode::store_hash:
        {
            StoreHashCall c;
            c.cert_hash = d.hash();
            c.doc_type_code = d.u32();
            d.expect_done();
            return c;
        }
        }
    }
    catch (const std::exception&)
    {
    }
    return std::nullopt;
}

Gas call_gas(BytesView payload) noexcept
{
    if (payload.empty())
        return gas::kTransfer;
    switch (static_cast<Opcode>(payload[0]))
    {
    case Opcode::add_uni:
        return gas::kAddUni;
    case Opcode::store_hash:
        return gas::kStoreHash;
    }
    return gas::kTransfer;
}

Address contract_address(const Address& owner, std::uint64_t nonce)
{
    std::array<std::uint8_t, 8> be{};
    for (int i = 7; i >= 0; --i)
    {
        be[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(nonce & 0xff);
        nonce >>= 8;
    }
    const auto digest = Sha256{}.update(owner.view()).update(be).finish();
    return Address::from_span(BytesView{digest.bytes}.first(Address::size));
}

CallError ContractState::add_uni(const Address& caller, const Address& uni, UniversityMeta meta)
{
    if (caller != owner_)
        return CallError::not_owner;
    if (meta.name.empty() || uni.is_zero())
        return CallError::invalid_metadata;
    if (universities_.contains(uni))
        return CallError::university_already_registered;
    universities_.emplace(uni, std::move(meta));
    return CallError::none;
}

CallError ContractState::store_hash(const Address& caller, const Hash256& cert_hash, std::uint32_t doc_type_code,
                                    std::uint64_t block_number)
{
    if (!universities_.contains(caller))
        return CallError::not_registered_university;
    if (records_.contains(cert_hash))
        return CallError::duplicate_hash;
    records_.emplace(cert_hash, StoredCertificate{caller, block_number, doc_type_code});
    return CallError::none;
}

std::optional<StoredCertificate> ContractState::get_hash(const Hash256& cert_hash) const
{
    if (auto it = records_.find(cert_hash); it != records_.end())
        return it->second;
    return std::nullopt;
}

CallError ContractState::execute(const Address& caller, BytesView payload, std::uint64_t block_number)
{
    auto call = decode_call(payload);
    if (!call)
        return CallError::bad_payload;
    if (auto* add = std::get_if<AddUniCall>(&*call))
        return add_uni(caller, add->university, {add->name, add->country, block_number});
    const auto& store = std::get<StoreHashCall>(*call);
    return store_hash(caller, store.cert_hash, store.doc_type_code, block_number);
}

void ContractState::encode_into(Encoder& e) const
{
    e.address(owner_).u64(universities_.size());
    for (const auto& [addr, meta] : universities_)
        e.address(addr).text(meta.name).text(meta.country).u64(meta.registered_at);
    e.u64(records_.size());
    for (const auto& [h, rec] : records_)
        e.hash(h).address(rec.issuer).u64(rec.stored_at).u32(rec.doc_type_code);
}

}  // namespace certchain
