// certchain: blockchain-anchored academic record registry
// Copyright 2026 The certchain Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <certchain/ledger.hpp>
#include <certchain/notifier.hpp>
#include <certchain/store.hpp>
#include <certchain/wallet.hpp>

#include <json.hpp>

#include <mutex>
#include <unordered_map>

namespace certchain
{
/// Transport-independent request. Form fields of multipart uploads are
/// folded into `body` as strings; the uploaded file goes to `file`.
struct Request
{
    std::string method;
    std::string path;
    /// Value of "Authorization: Bearer <token>", empty if absent.
    std::string bearer;
    nlohmann::json body = nlohmann::json::object();
    std::optional<Bytes> file;
};

struct Response
{
    int status = 200;
    nlohmann::json body = nlohmann::json::object();
};

struct SessionPrincipal
{
    std::string user_id;
    Role role = Role::student;
    std::int64_t expires_at = 0;
    std::string token;
};

struct VerificationResult
{
    bool verified = false;
    std::string issuer_name;
    Address university_address;
    std::string doc_type;
    std::uint64_t stored_at_block = 0;
    SimDuration block_timestamp{0};
    Hash256 tx_hash;

    /// Optional fields are present exactly when verified.
    [[nodiscard]] nlohmann::json to_json() const;
};

/// Who may call a route. `roles` empty means public.
struct RouteInfo
{
    std::string method;
    std::string pattern;
    std::vector<Role> roles;
    std::string summary;
};

struct ServiceOptions
{
    std::int64_t session_ttl_seconds = 3600;
    std::int64_t share_ttl_seconds = kDefaultShareTtlSeconds;
    std::string admin_wallet = "admin";
    /// Wallet labels with this prefix are handed to new universities in
    /// lexicographic order.
    std::string university_wallet_prefix = "faucet-";
};

/// Role-based workflows over the store, wallet and ledger.
///
/// Handlers may run concurrently. Each handler writes to the store and to
/// the ledger one after the other, never holding both writers at once.
/// Error responses carry only {"error": "<Code>"}.
class Service
{
public:
    Service(Ledger& ledger, Wallet& wallet, OffchainStore& store, Notifier& notifier, RandomSource& rng,
            WallClock clock, Address contract, ServiceOptions options = {});

    Response handle(const Request& req);

    [[nodiscard]] VerificationResult verify(const Hash256& digest) const;
    [[nodiscard]] static const std::vector<RouteInfo>& routes();

    [[nodiscard]] const Address& contract() const noexcept { return contract_; }

private:
    struct Ctx;
    using Handler = Response (Service::*)(Ctx&);
    struct Route
    {
        RouteInfo info;
        std::vector<std::string> segments;
        Handler handler;
    };
    static const std::vector<Route>& route_table();

    std::optional<SessionPrincipal> session(const std::string& token) const;
    bool university_confirmed(const UserAccount& uni) const;
    std::string wallet_label_for(const Address& a) const;
    std::optional<std::string> next_university_wallet() const;
    Hash256 submit_call(const std::string& wallet_label, const Address& from, Bytes payload);
    nlohmann::json document_json(const DocumentRecord& d) const;
    nlohmann::json university_json(const UserAccount& u) const;
    static nlohmann::json student_json(const StudentProfile& s);

    Response login(Ctx& c);
    Response list_universities(Ctx& c);
    Response add_university(Ctx& c);
    Response remove_university(Ctx& c);
    Response admin_students(Ctx& c);
    Response list_doc_types(Ctx& c);
    Response add_doc_type(Ctx& c);
    Response university_students(Ctx& c);
    Response university_add_student(Ctx& c);
    Response upload_document(Ctx& c);
    Response university_documents(Ctx& c);
    Response register_student(Ctx& c);
    Response student_documents(Ctx& c);
    Response share_document(Ctx& c);
    Response resolve_share(Ctx& c);
    Response verify_digest(Ctx& c);
    Response transaction_status(Ctx& c);

    Ledger& ledger_;
    Wallet& wallet_;
    OffchainStore& store_;
    Notifier& notifier_;
    RandomSource& rng_;
    WallClock clock_;
    Address contract_;
    ServiceOptions options_;

    mutable std::mutex sessions_mutex_;
    std::unordered_map<std::string, SessionPrincipal> sessions_;
    /// Serializes wallet hand-out so two universities never share one.
    std::mutex onboarding_mutex_;
};

}  // namespace certchain
