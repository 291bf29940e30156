// certchain: blockchain-anchored academic record registry
// Copyright 2026 The certchain Authors.
// SPDX-License-Identifier: Apache-2.0

#include <certchain/store.hpp>

#include <chrono>
#include <algorithm>
#include <fstream>

namespace certchain
{
using nlohmann::json;

namespace
{
constexpr std::array<std::string_view, 4> kRoleNames{"Admin", "University", "Student", "Employer"};

constexpr std::array<std::string_view, 13> kStoreErrNames{
    "DuplicateEmail",     "WeakPassword",     "UnknownUser",   "UnknownUniversity",
    "UnknownStudent",     "AddDocumentTypeFirst", "UnknownDocument", "NotDocumentOwner",
    "UnknownToken",       "Expired",          "Revoked",       "TransactionAlreadySet",
    "CorruptStore"};

constexpr std::string_view kChecksumPrefix = "sha256:";

Hash256 password_digest(BytesView salt, const std::string& password)
{
    return Sha256{}.update(salt).update(password).finish();
}

std::string id_with_prefix(char prefix, std::size_t n, int width)
{
    auto digits = std::to_string(n);
    if (static_cast<int>(digits.size()) < width)
        digits.insert(0, static_cast<std::size_t>(width) - digits.size(), '0');
    return std::string(1, prefix) + digits;
}

char role_prefix(Role r)
{
    switch (r)
    {
    case Role::admin:
        return 'A';
    case Role::university:
        return 'U';
    case Role::student:
        return 'S';
    case Role::employer:
        return 'E';
    }
    return 'X';
}

void atomic_write(const std::filesystem::path& path, BytesView data)
{
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out{tmp, std::ios::binary | std::ios::trunc};
        out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
        out.flush();
        if (!out)
            throw std::runtime_error{"cannot write " + tmp.string()};
    }
    std::filesystem::rename(tmp, path);
}

json user_to_json(const UserAccount& u)
{
    return json{
        {"user_id", u.user_id},
        {"role", to_string(u.role)},
        {"email", u.email},
        {"password_salt", to_hex(u.password_salt)},
        {"password_digest", u.password_digest.hex()},
        {"linked_address", u.linked_address ? json(u.linked_address->hex()) : json(nullptr)},
        {"display_name", u.display_name},
        {"country", u.country},
        {"disabled", u.disabled},
    };
}

UserAccount user_from_json(const json& j)
{
    UserAccount u;
    u.user_id = j.at("user_id").get<std::string>();
    const auto role = role_from_string(j.at("role").get<std::string>());
    if (!role)
        throw std::runtime_error{"unknown role"};
    u.role = *role;
    u.email = j.at("email").get<std::string>();
    u.password_salt = from_hex(j.at("password_salt").get<std::string>());
    u.password_digest = Hash256::from_hex(j.at("password_digest").get<std::string>());
    if (!j.at("linked_address").is_null())
        u.linked_address = Address::from_hex(j["linked_address"].get<std::string>());
    u.display_name = j.at("display_name").get<std::string>();
    u.country = j.at("country").get<std::string>();
    u.disabled = j.at("disabled").get<bool>();
    return u;
}
}  // namespace

std::string_view to_string(Role r) noexcept
{
    return kRoleNames.at(static_cast<std::size_t>(r));
}

std::optional<Role> role_from_string(std::string_view s) noexcept
{
    for (std::size_t i = 0; i < kRoleNames.size(); ++i)
        if (kRoleNames[i] == s)
            return static_cast<Role>(i);
    return std::nullopt;
}

WallClock system_wall_clock()
{
    return [] {
        return std::chrono::duration_cast<std::chrono::seconds>(std::chrono::system_clock::now().time_since_epoch())
            .count();
    };
}

std::string_view to_string(StoreErrc e) noexcept
{
    return kStoreErrNames.at(static_cast<std::size_t>(e));
}

StoreError::StoreError(StoreErrc code, const std::string& detail)
    : std::runtime_error{std::string{to_string(code)} + (detail.empty() ? "" : ": " + detail)}, code_{code}
{
}

OffchainStore::OffchainStore(RandomSource& rng, WallClock clock) : rng_{&rng}, clock_{std::move(clock)} {}

std::unique_ptr<OffchainStore> OffchainStore::open(const std::filesystem::path& dir, RandomSource& rng,
                                                   WallClock clock)
{
    auto store = std::make_unique<OffchainStore>(rng, std::move(clock));
    std::filesystem::create_directories(dir / "files");
    store->dir_ = dir;
    const auto image = dir / "store.json";
    if (!std::filesystem::exists(image))
    {
        store->persist();
        return store;
    }

    std::ifstream in{image, std::ios::binary};
    std::string text{std::istreambuf_iterator<char>{in}, {}};
    // Image is "<json>\nsha256:<hex>\n".
    if (text.empty() || text.back() != '\n')
        throw StoreError{StoreErrc::corrupt_store, "missing checksum trailer"};
    const auto last_nl = text.rfind('\n', text.size() - 2);
    if (last_nl == std::string::npos)
        throw StoreError{StoreErrc::corrupt_store, "missing checksum trailer"};
    const std::string_view trailer{text.data() + last_nl + 1, text.size() - last_nl - 2};
    const std::string_view body{text.data(), last_nl + 1};
    if (!trailer.starts_with(kChecksumPrefix) ||
        trailer.substr(kChecksumPrefix.size()) != sha256(body).hex())
        throw StoreError{StoreErrc::corrupt_store, "checksum mismatch"};
    try
    {
        store->import_json(json::parse(body));
    }
    catch (const std::exception& e)
    {
        throw StoreError{StoreErrc::corrupt_store, e.what()};
    }
    return store;
}

UserAccount OffchainStore::create_user(Role role, const std::string& email, const std::string& password,
                                       std::optional<Address> linked_address, const std::string& display_name,
                                       const std::string& country)
{
    if (password.size() < kMinPasswordLength)
        throw StoreError{StoreErrc::weak_password};
    std::unique_lock lock{mutex_};
    std::size_t same_role = 0;
    for (const auto& [_, u] : users_)
    {
        if (u.role != role)
            continue;
        ++same_role;
        if (u.email == email)
            throw StoreError{StoreErrc::duplicate_email, email};
    }
    UserAccount u;
    u.user_id = id_with_prefix(role_prefix(role), same_role + 1, role == Role::student ? 6 : 4);
    u.role = role;
    u.email = email;
    u.password_salt = rng_->bytes(16);
    u.password_digest = password_digest(u.password_salt, password);
    u.linked_address = linked_address;
    u.display_name = display_name;
    u.country = country;
    users_.emplace(u.user_id, u);
    persist_locked();
    return u;
}

std::optional<UserAccount> OffchainStore::authenticate(const std::string& email, const std::string& password) const
{
    static const Bytes kDummySalt(16, 0);
    std::shared_lock lock{mutex_};
    std::optional<UserAccount> match;
    bool seen = false;
    for (const auto& [_, u] : users_)
    {
        if (u.email != email)
            continue;
        seen = true;
        if (!match && !u.disabled && password_digest(u.password_salt, password) == u.password_digest)
            match = u;
    }
    if (!seen)
        (void)password_digest(kDummySalt, password);
    return match;
}

void OffchainStore::set_user_disabled(const std::string& user_id, bool disabled)
{
    std::unique_lock lock{mutex_};
    auto it = users_.find(user_id);
    if (it == users_.end())
        throw StoreError{StoreErrc::unknown_user, user_id};
    it->second.disabled = disabled;
    persist_locked();
}

StudentProfile OffchainStore::register_student(const std::string& name, const std::string& email,
                                               const std::string& password, const std::string& university_id)
{
    {
        std::shared_lock lock{mutex_};
        auto uni = users_.find(university_id);
        if (uni == users_.end() || uni->second.role != Role::university)
            throw StoreError{StoreErrc::unknown_university, university_id};
    }
    auto account = create_user(Role::student, email, password, std::nullopt, name);
    StudentProfile p{account.user_id, name, university_id, email};
    std::unique_lock lock{mutex_};
    students_.emplace(p.student_id, p);
    persist_locked();
    return p;
}

DocumentType OffchainStore::add_document_type(const std::string& name)
{
    if (name.empty())
        throw std::invalid_argument{"document type name must not be empty"};
    std::unique_lock lock{mutex_};
    if (auto it = doc_types_.find(name); it != doc_types_.end())
        return it->second;
    DocumentType t{static_cast<std::uint32_t>(doc_types_.size() + 1), name};
    doc_types_.emplace(name, t);
    persist_locked();
    return t;
}

DocumentRecord OffchainStore::record_document(const std::string& student_id, const std::string& issuer_university_id,
                                              const std::string& doc_type, BytesView file)
{
    const auto digest = sha256(file);
    std::unique_lock lock{mutex_};
    if (!students_.contains(student_id))
        throw StoreError{StoreErrc::unknown_student, student_id};
    if (auto uni = users_.find(issuer_university_id); uni == users_.end() || uni->second.role != Role::university)
        throw StoreError{StoreErrc::unknown_university, issuer_university_id};
    if (!doc_types_.contains(doc_type))
        throw StoreError{StoreErrc::add_document_type_first, doc_type};

    write_file(digest, file);
    DocumentRecord rec;
    rec.doc_id = id_with_prefix('D', documents_.size() + 1, 6);
    rec.student_id = student_id;
    rec.issuer_university_id = issuer_university_id;
    rec.doc_type = doc_type;
    rec.file_digest = digest;
    rec.uploaded_at = now();
    documents_.emplace(rec.doc_id, rec);
    persist_locked();
    return rec;
}

void OffchainStore::set_document_transaction(const std::string& doc_id, const Hash256& tx_hash)
{
    std::unique_lock lock{mutex_};
    auto it = documents_.find(doc_id);
    if (it == documents_.end())
        throw StoreError{StoreErrc::unknown_document, doc_id};
    if (it->second.tx_hash)
        throw StoreError{StoreErrc::transaction_already_set, doc_id};
    it->second.tx_hash = tx_hash;
    persist_locked();
}

ShareToken OffchainStore::create_share_token(const std::string& student_id, const std::string& doc_id,
                                             std::int64_t ttl_seconds, const std::string& recipient)
{
    if (ttl_seconds <= 0)
        throw std::invalid_argument{"share token ttl must be positive"};
    std::unique_lock lock{mutex_};
    auto doc = documents_.find(doc_id);
    if (doc == documents_.end())
        throw StoreError{StoreErrc::unknown_document, doc_id};
    if (doc->second.student_id != student_id)
        throw StoreError{StoreErrc::not_document_owner, doc_id};
    ShareToken t;
    do
        t.token = to_hex(rng_->bytes(32));
    while (tokens_.contains(t.token));
    t.doc_id = doc_id;
    t.student_id = student_id;
    t.recipient = recipient;
    t.created_at = now();
    t.expires_at = t.created_at + ttl_seconds;
    tokens_.emplace(t.token, t);
    persist_locked();
    return t;
}

DocumentRecord OffchainStore::resolve_share_token(const std::string& token) const
{
    std::shared_lock lock{mutex_};
    auto it = tokens_.find(token);
    if (it == tokens_.end())
        throw StoreError{StoreErrc::unknown_token};
    if (it->second.revoked)
        throw StoreError{StoreErrc::revoked};
    if (now() >= it->second.expires_at)
        throw StoreError{StoreErrc::expired};
    return documents_.at(it->second.doc_id);
}

void OffchainStore::revoke_share_token(const std::string& student_id, const std::string& token)
{
    std::unique_lock lock{mutex_};
    auto it = tokens_.find(token);
    if (it == tokens_.end())
        throw StoreError{StoreErrc::unknown_token};
    if (it->second.student_id != student_id)
        throw StoreError{StoreErrc::not_document_owner};
    it->second.revoked = true;
    persist_locked();
}

std::optional<UserAccount> OffchainStore::user(const std::string& user_id) const
{
    std::shared_lock lock{mutex_};
    if (auto it = users_.find(user_id); it != users_.end())
        return it->second;
    return std::nullopt;
}

std::optional<UserAccount> OffchainStore::find_user(Role role, const std::string& email) const
{
    std::shared_lock lock{mutex_};
    for (const auto& [_, u] : users_)
        if (u.role == role && u.email == email)
            return u;
    return std::nullopt;
}

std::optional<UserAccount> OffchainStore::find_user_by_address(const Address& a) const
{
    std::shared_lock lock{mutex_};
    for (const auto& [_, u] : users_)
        if (u.linked_address == a)
            return u;
    return std::nullopt;
}

std::vector<UserAccount> OffchainStore::users(std::optional<Role> role) const
{
    std::shared_lock lock{mutex_};
    std::vector<UserAccount> out;
    for (const auto& [_, u] : users_)
        if (!role || u.role == *role)
            out.push_back(u);
    return out;
}

std::optional<StudentProfile> OffchainStore::student(const std::string& student_id) const
{
    std::shared_lock lock{mutex_};
    if (auto it = students_.find(student_id); it != students_.end())
        return it->second;
    return std::nullopt;
}

std::vector<StudentProfile> OffchainStore::students(const std::string& university_id) const
{
    std::shared_lock lock{mutex_};
    std::vector<StudentProfile> out;
    for (const auto& [_, s] : students_)
        if (university_id.empty() || s.university_id == university_id)
            out.push_back(s);
    return out;
}

std::optional<DocumentRecord> OffchainStore::document(const std::string& doc_id) const
{
    std::shared_lock lock{mutex_};
    if (auto it = documents_.find(doc_id); it != documents_.end())
        return it->second;
    return std::nullopt;
}

std::optional<DocumentRecord> OffchainStore::find_document_by_digest(const Hash256& digest) const
{
    std::shared_lock lock{mutex_};
    for (const auto& [_, d] : documents_)
        if (d.file_digest == digest)
            return d;
    return std::nullopt;
}

std::vector<DocumentRecord> OffchainStore::documents() const
{
    std::shared_lock lock{mutex_};
    std::vector<DocumentRecord> out;
    for (const auto& [_, d] : documents_)
        out.push_back(d);
    return out;
}

std::optional<DocumentType> OffchainStore::document_type(const std::string& name) const
{
    std::shared_lock lock{mutex_};
    if (auto it = doc_types_.find(name); it != doc_types_.end())
        return it->second;
    return std::nullopt;
}

std::optional<DocumentType> OffchainStore::document_type(std::uint32_t code) const
{
    std::shared_lock lock{mutex_};
    for (const auto& [_, t] : doc_types_)
        if (t.code == code)
            return t;
    return std::nullopt;
}

std::vector<DocumentType> OffchainStore::document_types() const
{
    std::shared_lock lock{mutex_};
    std::vector<DocumentType> out;
    for (const auto& [_, t] : doc_types_)
        out.push_back(t);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.code < b.code; });
    return out;
}

std::vector<ShareToken> OffchainStore::share_tokens() const
{
    std::shared_lock lock{mutex_};
    std::vector<ShareToken> out;
    for (const auto& [_, t] : tokens_)
        out.push_back(t);
    return out;
}

Bytes OffchainStore::document_bytes(const std::string& doc_id) const
{
    std::shared_lock lock{mutex_};
    auto it = documents_.find(doc_id);
    if (it == documents_.end())
        throw StoreError{StoreErrc::unknown_document, doc_id};
    const auto& digest = it->second.file_digest;
    if (!dir_)
        return memory_files_.at(digest);
    std::ifstream in{*dir_ / "files" / digest.hex(), std::ios::binary};
    if (!in)
        throw StoreError{StoreErrc::corrupt_store, "missing file for " + doc_id};
    return Bytes{std::istreambuf_iterator<char>{in}, {}};
}

void OffchainStore::write_file(const Hash256& digest, BytesView bytes)
{
    if (!dir_)
    {
        memory_files_.try_emplace(digest, bytes.begin(), bytes.end());
        return;
    }
    const auto path = *dir_ / "files" / digest.hex();
    if (!std::filesystem::exists(path))
        atomic_write(path, bytes);
}

json OffchainStore::export_json() const
{
    std::shared_lock lock{mutex_};
    return image_locked();
}

json OffchainStore::image_locked() const
{
    json users = json::array();
    for (const auto& [_, u] : users_)
        users.push_back(user_to_json(u));
    json students = json::array();
    for (const auto& [_, s] : students_)
        students.push_back(
            {{"student_id", s.student_id}, {"name", s.name}, {"university_id", s.university_id}, {"email", s.email}});
    json documents = json::array();
    for (const auto& [_, d] : documents_)
        documents.push_back({{"doc_id", d.doc_id},
                             {"student_id", d.student_id},
                             {"issuer_university_id", d.issuer_university_id},
                             {"doc_type", d.doc_type},
                             {"file_digest", d.file_digest.hex()},
                             {"tx_hash", d.tx_hash ? json(d.tx_hash->hex()) : json(nullptr)},
                             {"uploaded_at", d.uploaded_at}});
    json types = json::array();
    for (const auto& [_, t] : doc_types_)
        types.push_back({{"code", t.code}, {"name", t.name}});
    json tokens = json::array();
    for (const auto& [_, t] : tokens_)
        tokens.push_back({{"token", t.token},
                          {"doc_id", t.doc_id},
                          {"student_id", t.student_id},
                          {"recipient", t.recipient},
                          {"created_at", t.created_at},
                          {"expires_at", t.expires_at},
                          {"revoked", t.revoked}});
    return json{{"users", std::move(users)},
                {"students", std::move(students)},
                {"documents", std::move(documents)},
                {"doc_types", std::move(types)},
                {"share_tokens", std::move(tokens)}};
}

void OffchainStore::import_json(const json& j)
{
    for (const auto& u : j.at("users"))
    {
        auto acct = user_from_json(u);
        users_.emplace(acct.user_id, std::move(acct));
    }
    for (const auto& s : j.at("students"))
    {
        StudentProfile p{s.at("student_id").get<std::string>(), s.at("name").get<std::string>(),
                         s.at("university_id").get<std::string>(), s.at("email").get<std::string>()};
        students_.emplace(p.student_id, std::move(p));
    }
    for (const auto& d : j.at("documents"))
    {
        DocumentRecord r;
        r.doc_id = d.at("doc_id").get<std::string>();
        r.student_id = d.at("student_id").get<std::string>();
        r.issuer_university_id = d.at("issuer_university_id").get<std::string>();
        r.doc_type = d.at("doc_type").get<std::string>();
        r.file_digest = Hash256::from_hex(d.at("file_digest").get<std::string>());
        if (!d.at("tx_hash").is_null())
            r.tx_hash = Hash256::from_hex(d["tx_hash"].get<std::string>());
        r.uploaded_at = d.at("uploaded_at").get<std::int64_t>();
        documents_.emplace(r.doc_id, std::move(r));
    }
    for (const auto& t : j.at("doc_types"))
    {
        DocumentType type{t.at("code").get<std::uint32_t>(), t.at("name").get<std::string>()};
        doc_types_.emplace(type.name, std::move(type));
    }
    for (const auto& t : j.at("share_tokens"))
    {
        ShareToken s;
        s.token = t.at("token").get<std::string>();
        s.doc_id = t.at("doc_id").get<std::string>();
        s.student_id = t.at("student_id").get<std::string>();
        s.recipient = t.at("recipient").get<std::string>();
        s.created_at = t.at("created_at").get<std::int64_t>();
        s.expires_at = t.at("expires_at").get<std::int64_t>();
        s.revoked = t.at("revoked").get<bool>();
        tokens_.emplace(s.token, std::move(s));
    }
}

void OffchainStore::persist() const
{
    std::shared_lock lock{mutex_};
    persist_locked();
}

void OffchainStore::persist_locked() const
{
    if (!dir_)
        return;
    const auto body = image_locked().dump(2) + "\n";
    const auto text = body + std::string{kChecksumPrefix} + sha256(body).hex() + "\n";
    atomic_write(*dir_ / "store.json", as_bytes(text));
}

}  // namespace certchain
