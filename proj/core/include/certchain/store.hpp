// certchain: blockchain-anchored academic record registry
// Copyright 2026 The certchain Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <certchain/crypto.hpp>

#include <json.hpp>

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <shared_mutex>

namespace certchain
{
enum class Role
{
    admin,
    university,
    student,
    employer,
};

/// "Admin", "University", "Student", "Employer".
std::string_view to_string(Role r) noexcept;
std::optional<Role> role_from_string(std::string_view s) noexcept;

/// Wall-clock time source in Unix seconds.
using WallClock = std::function<std::int64_t()>;
WallClock system_wall_clock();

struct UserAccount
{
    std::string user_id;
    Role role = Role::student;
    std::string email;
    Bytes password_salt;  ///< 16 random bytes
    Hash256 password_digest;  ///< SHA-256(salt || password)
    std::optional<Address> linked_address;
    std::string display_name;
    std::string country;
    /// Off-chain deactivation; on-chain registration is permanent.
    bool disabled = false;
};

struct StudentProfile
{
    std::string student_id;
    std::string name;
    std::string university_id;
    std::string email;
};

struct DocumentType
{
    std::uint32_t code = 0;
    std::string name;
};

struct DocumentRecord
{
    std::string doc_id;
    std::string student_id;
    std::string issuer_university_id;
    std::string doc_type;
    Hash256 file_digest;
    /// Unset while the store_hash transaction has not been submitted.
    std::optional<Hash256> tx_hash;
    std::int64_t uploaded_at = 0;
};

struct ShareToken
{
    std::string token;  ///< 32 random bytes, hex
    std::string doc_id;
    std::string student_id;
    std::string recipient;
    std::int64_t created_at = 0;
    std::int64_t expires_at = 0;
    bool revoked = false;
};

enum class StoreErrc
{
    duplicate_email,
    weak_password,
    unknown_user,
    unknown_university,
    unknown_student,
    add_document_type_first,
    unknown_document,
    not_document_owner,
    unknown_token,
    expired,
    revoked,
    transaction_already_set,
    corrupt_store,
};

/// CamelCase name, e.g. "AddDocumentTypeFirst".
std::string_view to_string(StoreErrc e) noexcept;

class StoreError : public std::runtime_error
{
public:
    explicit StoreError(StoreErrc code, const std::string& detail = {});
    [[nodiscard]] StoreErrc code() const noexcept { return code_; }

private:
    StoreErrc code_;
};

inline constexpr std::size_t kMinPasswordLength = 8;
inline constexpr std::int64_t kDefaultShareTtlSeconds = 30 * 24 * 3600;

/// Private off-chain records: accounts, student profiles, document metadata
/// and file bytes, the document-type catalog, and share tokens.
///
/// Reads run concurrently; mutations serialize behind one writer. A store
/// opened on a directory rewrites its image after every mutation with
/// write-temp-then-rename, so a crash leaves either the old or the new image.
///
/// Layout of a store directory:
///   store.json        JSON image, then a final line "sha256:<hex of the JSON bytes>"
///   files/<digest>    document bytes, content-addressed by SHA-256
class OffchainStore
{
public:
    /// Memory-only store.
    OffchainStore(RandomSource& rng, WallClock clock);
    /// Opens (or creates) a store directory. Throws StoreError{corrupt_store}
    /// if an existing image fails its checksum or does not parse.
    static std::unique_ptr<OffchainStore> open(const std::filesystem::path& dir, RandomSource& rng,
                                               WallClock clock);

    UserAccount create_user(Role role, const std::string& email, const std::string& password,
                            std::optional<Address> linked_address = std::nullopt,
                            const std::string& display_name = {}, const std::string& country = {});
    /// Unknown email and wrong password fail identically, and both hash once.
    [[nodiscard]] std::optional<UserAccount> authenticate(const std::string& email,
                                                          const std::string& password) const;
    void set_user_disabled(const std::string& user_id, bool disabled);

    /// Creates the student's login and profile; user_id equals student_id.
    StudentProfile register_student(const std::string& name, const std::string& email, const std::string& password,
                                    const std::string& university_id);

    /// Returns the existing entry if `name` is already in the catalog.
    DocumentType add_document_type(const std::string& name);

    DocumentRecord record_document(const std::string& student_id, const std::string& issuer_university_id,
                                   const std::string& doc_type, BytesView file);
    /// tx_hash is write-once.
    void set_document_transaction(const std::string& doc_id, const Hash256& tx_hash);

    ShareToken create_share_token(const std::string& student_id, const std::string& doc_id,
                                  std::int64_t ttl_seconds, const std::string& recipient = {});
    /// Throws unknown_token, expired or revoked.
    [[nodiscard]] DocumentRecord resolve_share_token(const std::string& token) const;
    void revoke_share_token(const std::string& student_id, const std::string& token);

    [[nodiscard]] std::optional<UserAccount> user(const std::string& user_id) const;
    [[nodiscard]] std::optional<UserAccount> find_user(Role role, const std::string& email) const;
    [[nodiscard]] std::optional<UserAccount> find_user_by_address(const Address& a) const;
    [[nodiscard]] std::vector<UserAccount> users(std::optional<Role> role = std::nullopt) const;
    [[nodiscard]] std::optional<StudentProfile> student(const std::string& student_id) const;
    [[nodiscard]] std::vector<StudentProfile> students(const std::string& university_id = {}) const;
    [[nodiscard]] std::optional<DocumentRecord> document(const std::string& doc_id) const;
    [[nodiscard]] std::optional<DocumentRecord> find_document_by_digest(const Hash256& digest) const;
    [[nodiscard]] std::vector<DocumentRecord> documents() const;
    [[nodiscard]] std::optional<DocumentType> document_type(const std::string& name) const;
    [[nodiscard]] std::optional<DocumentType> document_type(std::uint32_t code) const;
    [[nodiscard]] std::vector<DocumentType> document_types() const;
    [[nodiscard]] std::vector<ShareToken> share_tokens() const;
    [[nodiscard]] Bytes document_bytes(const std::string& doc_id) const;

    /// Single JSON document with arrays users, students, documents,
    /// doc_types and share_tokens.
    [[nodiscard]] nlohmann::json export_json() const;
    /// Writes the image now (a no-op for memory-only stores).
    void persist() const;

    [[nodiscard]] const std::optional<std::filesystem::path>& directory() const noexcept { return dir_; }

private:
    void import_json(const nlohmann::json& j);
    [[nodiscard]] nlohmann::json image_locked() const;
    void persist_locked() const;
    void write_file(const Hash256& digest, BytesView bytes);
    [[nodiscard]] std::int64_t now() const { return clock_(); }

    RandomSource* rng_;
    WallClock clock_;
    std::optional<std::filesystem::path> dir_;

    mutable std::shared_mutex mutex_;
    std::map<std::string, UserAccount> users_;
    std::map<std::string, StudentProfile> students_;
    std::map<std::string, DocumentRecord> documents_;
    std::map<std::string, DocumentType> doc_types_;
    std::map<std::string, ShareToken> tokens_;
    std::map<Hash256, Bytes> memory_files_;
};

}  // namespace certchain
