// certchain: blockchain-anchored academic record registry
// Copyright 2026 The certchain Authors.
// SPDX-License-Identifier: Apache-2.0

#include <certchain/service.hpp>

#include <algorithm>

namespace certchain
{
using nlohmann::json;

namespace
{
struct ApiError
{
    int status;
    std::string code;
};

std::vector<std::string> split_path(std::string_view path)
{
    if (auto q = path.find('?'); q != std::string_view::npos)
        path = path.substr(0, q);
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos < path.size())
    {
        if (path[pos] == '/')
        {
            ++pos;
            continue;
        }
        auto next = path.find('/', pos);
        if (next == std::string_view::npos)
            next = path.size();
        out.emplace_back(path.substr(pos, next - pos));
        pos = next;
    }
    return out;
}

const std::string& text_field(const json& body, const char* name)
{
    auto it = body.find(name);
    if (it == body.end() || !it->is_string() || it->get_ref<const std::string&>().empty())
        throw ApiError{400, "MissingField"};
    return it->get_ref<const std::string&>();
}

int status_for(StoreErrc e)
{
    switch (e)
    {
    case StoreErrc::duplicate_email:
    case StoreErrc::transaction_already_set:
        return 409;
    case StoreErrc::weak_password:
    case StoreErrc::add_document_type_first:
        return 422;
    case StoreErrc::not_document_owner:
        return 403;
    case StoreErrc::expired:
    case StoreErrc::revoked:
        return 410;
    case StoreErrc::corrupt_store:
        return 500;
    default:
        return 404;
    }
}

Response error(int status, std::string_view code)
{
    return Response{status, json{{"error", code}}};
}

std::string chain_status(const TxStatus& s)
{
    if (const auto* r = std::get_if<Receipt>(&s))
        return r->success() ? "confirmed" : r->status_text();
    if (std::holds_alternative<PendingStatus>(s))
        return "pending";
    return "unknown";
}
}  // namespace

struct Service::Ctx
{
    const Request& req;
    std::vector<std::string> params;
    std::optional<SessionPrincipal> principal;
};

json VerificationResult::to_json() const
{
    if (!verified)
        return json{{"verified", false}};
    return json{{"verified", true},
                {"issuer_name", issuer_name},
                {"university_address", university_address.hex()},
                {"doc_type", doc_type},
                {"stored_at_block", stored_at_block},
                {"block_timestamp", format_seconds(block_timestamp)},
                {"tx_hash", tx_hash.hex()}};
}

Service::Service(Ledger& ledger, Wallet& wallet, OffchainStore& store, Notifier& notifier, RandomSource& rng,
                 WallClock clock, Address contract, ServiceOptions options)
    : ledger_{ledger},
      wallet_{wallet},
      store_{store},
      notifier_{notifier},
      rng_{rng},
      clock_{std::move(clock)},
      contract_{contract},
      options_{std::move(options)}
{
}

const std::vector<Service::Route>& Service::route_table()
{
    using R = Role;
    static const std::vector<Route> table = [] {
        std::vector<Route> t;
        auto add = [&t](std::string method, std::string pattern, std::vector<Role> roles, std::string summary,
                        Handler h) {
            auto segs = split_path(pattern);
            t.push_back(Route{{std::move(method), std::move(pattern), std::move(roles), std::move(summary)},
                              std::move(segs), h});
        };
        add("POST", "/auth/login", {}, "Exchange email and password for a bearer token", &Service::login);
        add("GET", "/admin/universities", {R::admin}, "List universities with on-chain status",
            &Service::list_universities);
        add("POST", "/admin/universities", {R::admin}, "Create a university and submit add_uni",
            &Service::add_university);
        add("DELETE", "/admin/universities/{id}", {R::admin}, "Disable a university off-chain",
            &Service::remove_university);
        add("GET", "/admin/students", {R::admin}, "List every student", &Service::admin_students);
        add("GET", "/university/doc-types", {R::university}, "List the document-type catalog",
            &Service::list_doc_types);
        add("POST", "/university/doc-types", {R::university}, "Add a document type", &Service::add_doc_type);
        add("GET", "/university/students", {R::university}, "List the caller's students",
            &Service::university_students);
        add("POST", "/university/students", {R::university}, "Add a student to the caller",
            &Service::university_add_student);
        add("POST", "/university/documents", {R::university}, "Upload a document and submit store_hash",
            &Service::upload_document);
        add("GET", "/university/documents", {R::university}, "List documents issued by the caller",
            &Service::university_documents);
        add("POST", "/students/register", {}, "Student self-registration", &Service::register_student);
        add("GET", "/student/documents", {R::student}, "List the caller's documents", &Service::student_documents);
        add("POST", "/student/documents/{id}/share", {R::student}, "Create a share link for an owned document",
            &Service::share_document);
        add("GET", "/share/{token}", {}, "Resolve a share link to a verification result", &Service::resolve_share);
        add("GET", "/verify/{digest}", {}, "Verify a SHA-256 digest against the chain", &Service::verify_digest);
        add("GET", "/tx/{hash}", {}, "Transaction status", &Service::transaction_status);
        return t;
    }();
    return table;
}

const std::vector<RouteInfo>& Service::routes()
{
    static const std::vector<RouteInfo> infos = [] {
        std::vector<RouteInfo> out;
        for (const auto& r : route_table())
            out.push_back(r.info);
        return out;
    }();
    return infos;
}

Response Service::handle(const Request& req)
{
    const auto segs = split_path(req.path);
    bool path_matched = false;
    for (const auto& route : route_table())
    {
        if (route.segments.size() != segs.size())
            continue;
        std::vector<std::string> params;
        bool match = true;
        for (std::size_t i = 0; i < segs.size() && match; ++i)
        {
            const auto& pat = route.segments[i];
            if (pat.front() == '{')
                params.push_back(segs[i]);
            else
                match = pat == segs[i];
        }
        if (!match)
            continue;
        path_matched = true;
        if (route.info.method != req.method)
            continue;

        Ctx ctx{req, std::move(params), std::nullopt};
        if (!route.info.roles.empty())
        {
            ctx.principal = session(req.bearer);
            if (!ctx.principal)
                return error(401, "Unauthorized");
            const auto& roles = route.info.roles;
            if (std::find(roles.begin(), roles.end(), ctx.principal->role) == roles.end())
                return error(403, "Forbidden");
        }
        try
        {
            return (this->*route.handler)(ctx);
        }
        catch (const ApiError& e)
        {
            return error(e.status, e.code);
        }
        catch (const StoreError& e)
        {
            return error(status_for(e.code()), to_string(e.code()));
        }
        catch (const SubmitError& e)
        {
            return error(503, to_string(e.code()));
        }
        catch (const std::exception&)
        {
            return error(500, "Internal");
        }
    }
    return path_matched ? error(405, "MethodNotAllowed") : error(404, "NotFound");
}

std::optional<SessionPrincipal> Service::session(const std::string& token) const
{
    if (token.empty())
        return std::nullopt;
    std::optional<SessionPrincipal> p;
    {
        std::lock_guard lock{sessions_mutex_};
        auto it = sessions_.find(token);
        if (it == sessions_.end())
            return std::nullopt;
        p = it->second;
    }
    if (clock_() >= p->expires_at)
        return std::nullopt;
    const auto account = store_.user(p->user_id);
    if (!account || account->disabled)
        return std::nullopt;
    return p;
}

bool Service::university_confirmed(const UserAccount& uni) const
{
    if (!uni.linked_address)
        return false;
    const auto state = ledger_.state();
    const auto* c = state->contract(contract_);
    return c != nullptr && c->universities().contains(*uni.linked_address);
}

std::string Service::wallet_label_for(const Address& a) const
{
    for (const auto& label : wallet_.labels())
        if (wallet_.address(label) == a)
            return label;
    throw ApiError{500, "Internal"};
}

std::optional<std::string> Service::next_university_wallet() const
{
    auto labels = wallet_.labels();
    std::sort(labels.begin(), labels.end());
    for (const auto& label : labels)
    {
        if (!label.starts_with(options_.university_wallet_prefix))
            continue;
        if (!store_.find_user_by_address(wallet_.address(label)))
            return label;
    }
    return std::nullopt;
}

Hash256 Service::submit_call(const std::string& wallet_label, const Address& from, Bytes payload)
{
    UnsignedTransaction tx;
    tx.from = from;
    tx.to = contract_;
    tx.payload = std::move(payload);
    tx.submitted_at = ledger_.now();
    return wallet_.transact(wallet_label, tx, ledger_.pending_nonce(from),
                            [this](const SignedTransaction& s) { return ledger_.submit_transaction(s); });
}

json Service::document_json(const DocumentRecord& d) const
{
    json j{{"doc_id", d.doc_id},
           {"student_id", d.student_id},
           {"issuer_university_id", d.issuer_university_id},
           {"doc_type", d.doc_type},
           {"file_digest", d.file_digest.hex()},
           {"uploaded_at", d.uploaded_at},
           {"tx_hash", d.tx_hash ? json(d.tx_hash->hex()) : json(nullptr)},
           {"chain_status", "pending"}};
    if (d.tx_hash)
    {
        const auto status = ledger_.get_receipt(*d.tx_hash);
        j["chain_status"] = chain_status(status);
        if (const auto* r = std::get_if<Receipt>(&status))
            j["block_number"] = r->block_number;
    }
    return j;
}

json Service::university_json(const UserAccount& u) const
{
    return json{{"university_id", u.user_id},
                {"name", u.display_name},
                {"country", u.country},
                {"email", u.email},
                {"address", u.linked_address ? json(u.linked_address->hex()) : json(nullptr)},
                {"confirmed", university_confirmed(u)},
                {"disabled", u.disabled}};
}

json Service::student_json(const StudentProfile& s)
{
    return json{{"student_id", s.student_id}, {"name", s.name}, {"university_id", s.university_id},
                {"email", s.email}};
}

VerificationResult Service::verify(const Hash256& digest) const
{
    VerificationResult v;
    const auto rec = ledger_.get_hash(contract_, digest);
    if (!rec)
        return v;
    v.verified = true;
    v.university_address = rec->issuer;
    v.stored_at_block = rec->stored_at;
    v.block_timestamp = rec->block_timestamp;
    if (const auto u = store_.find_user_by_address(rec->issuer))
        v.issuer_name = u->display_name;
    else if (const auto* c = ledger_.state()->contract(contract_))
        v.issuer_name = c->universities().at(rec->issuer).name;
    if (const auto t = store_.document_type(rec->doc_type_code))
        v.doc_type = t->name;
    else
        v.doc_type = std::to_string(rec->doc_type_code);
    if (const auto tx = ledger_.find_store_transaction(contract_, digest))
        v.tx_hash = *tx;
    return v;
}

Response Service::login(Ctx& c)
{
    const auto& body = c.req.body;
    const auto email = body.value("email", std::string{});
    const auto password = body.value("password", std::string{});
    const auto account = store_.authenticate(email, password);
    if (!account)
        return error(401, "Unauthorized");
    SessionPrincipal p{account->user_id, account->role, clock_() + options_.session_ttl_seconds,
                       to_hex(rng_.bytes(32))};
    {
        std::lock_guard lock{sessions_mutex_};
        sessions_[p.token] = p;
    }
    return Response{200, json{{"token", p.token},
                              {"user_id", p.user_id},
                              {"role", to_string(p.role)},
                              {"display_name", account->display_name},
                              {"expires_at", p.expires_at}}};
}

Response Service::list_universities(Ctx&)
{
    json out = json::array();
    for (const auto& u : store_.users(Role::university))
        if (!u.disabled)
            out.push_back(university_json(u));
    return Response{200, json{{"universities", std::move(out)}}};
}

Response Service::add_university(Ctx& c)
{
    const auto& name = text_field(c.req.body, "name");
    const auto& country = text_field(c.req.body, "country");
    const auto& email = text_field(c.req.body, "email");
    const auto& password = text_field(c.req.body, "password");

    UserAccount uni;
    {
        std::lock_guard lock{onboarding_mutex_};
        const auto label = next_university_wallet();
        if (!label)
            throw ApiError{503, "NoFundedWallet"};
        uni = store_.create_user(Role::university, email, password, wallet_.address(*label), name, country);
    }
    const auto admin = wallet_.address(options_.admin_wallet);
    const auto tx = submit_call(options_.admin_wallet, admin,
                                encode_call(AddUniCall{*uni.linked_address, name, country}));
    return Response{202, json{{"university_id", uni.user_id},
                              {"address", uni.linked_address->hex()},
                              {"tx_hash", tx.hex()}}};
}

Response Service::remove_university(Ctx& c)
{
    const auto u = store_.user(c.params.at(0));
    if (!u || u->role != Role::university)
        throw ApiError{404, "UnknownUniversity"};
    store_.set_user_disabled(u->user_id, true);
    return Response{200, json{{"university_id", u->user_id}, {"disabled", true}}};
}

Response Service::admin_students(Ctx&)
{
    json out = json::array();
    for (const auto& s : store_.students())
        out.push_back(student_json(s));
    return Response{200, json{{"students", std::move(out)}}};
}

Response Service::list_doc_types(Ctx&)
{
    json out = json::array();
    for (const auto& t : store_.document_types())
        out.push_back({{"code", t.code}, {"name", t.name}});
    return Response{200, json{{"doc_types", std::move(out)}}};
}

Response Service::add_doc_type(Ctx& c)
{
    const auto t = store_.add_document_type(text_field(c.req.body, "name"));
    return Response{201, json{{"code", t.code}, {"name", t.name}}};
}

Response Service::university_students(Ctx& c)
{
    json out = json::array();
    for (const auto& s : store_.students(c.principal->user_id))
        out.push_back(student_json(s));
    return Response{200, json{{"students", std::move(out)}}};
}

Response Service::university_add_student(Ctx& c)
{
    const auto p = store_.register_student(text_field(c.req.body, "name"), text_field(c.req.body, "email"),
                                           text_field(c.req.body, "password"), c.principal->user_id);
    return Response{201, student_json(p)};
}

Response Service::upload_document(Ctx& c)
{
    const auto uni = store_.user(c.principal->user_id);
    if (!uni || !university_confirmed(*uni))
        throw ApiError{409, "UniversityNotYetConfirmed"};
    const auto& student_id = text_field(c.req.body, "student_id");
    const auto& doc_type = text_field(c.req.body, "doc_type");
    if (!c.req.file)
        throw ApiError{400, "MissingField"};

    // Universities upload for their own students only.
    const auto student = store_.student(student_id);
    if (!student || student->university_id != uni->user_id)
        throw ApiError{404, "UnknownStudent"};
    const auto type = store_.document_type(doc_type);
    if (!type)
        throw ApiError{422, "AddDocumentTypeFirst"};
    const auto digest = sha256(*c.req.file);
    if (ledger_.get_hash(contract_, digest) || store_.find_document_by_digest(digest))
        throw ApiError{409, "DuplicateHash"};

    const auto rec = store_.record_document(student_id, uni->user_id, doc_type, *c.req.file);
    const auto tx = submit_call(wallet_label_for(*uni->linked_address), *uni->linked_address,
                                encode_call(StoreHashCall{digest, type->code}));
    store_.set_document_transaction(rec.doc_id, tx);
    return Response{202, json{{"doc_id", rec.doc_id}, {"file_digest", digest.hex()}, {"tx_hash", tx.hex()}}};
}

Response Service::university_documents(Ctx& c)
{
    json out = json::array();
    for (const auto& d : store_.documents())
        if (d.issuer_university_id == c.principal->user_id)
            out.push_back(document_json(d));
    return Response{200, json{{"documents", std::move(out)}}};
}

Response Service::register_student(Ctx& c)
{
    const auto p = store_.register_student(text_field(c.req.body, "name"), text_field(c.req.body, "email"),
                                           text_field(c.req.body, "password"),
                                           text_field(c.req.body, "university_id"));
    return Response{201, student_json(p)};
}

Response Service::student_documents(Ctx& c)
{
    json out = json::array();
    for (const auto& d : store_.documents())
        if (d.student_id == c.principal->user_id)
            out.push_back(document_json(d));
    return Response{200, json{{"documents", std::move(out)}}};
}

Response Service::share_document(Ctx& c)
{
    const auto& body = c.req.body;
    const auto& employer = text_field(body, "employer_email");
    std::int64_t ttl = options_.share_ttl_seconds;
    if (auto it = body.find("ttl"); it != body.end())
    {
        if (!it->is_number_integer() || it->get<std::int64_t>() <= 0)
            throw ApiError{400, "MissingField"};
        ttl = it->get<std::int64_t>();
    }
    const auto token = store_.create_share_token(c.principal->user_id, c.params.at(0), ttl, employer);
    const auto url = "/share/" + token.token;
    notifier_.send(OutgoingMessage{employer, "Shared academic document", url});
    return Response{201, json{{"url", url}, {"token", token.token}, {"expires_at", token.expires_at}}};
}

Response Service::resolve_share(Ctx& c)
{
    const auto doc = store_.resolve_share_token(c.params.at(0));
    auto j = verify(doc.file_digest).to_json();
    j["file_digest"] = doc.file_digest.hex();
    return Response{200, std::move(j)};
}

Response Service::verify_digest(Ctx& c)
{
    const auto digest = Hash256::try_from_hex(c.params.at(0));
    if (!digest)
        throw ApiError{400, "MalformedDigest"};
    return Response{200, verify(*digest).to_json()};
}

Response Service::transaction_status(Ctx& c)
{
    const auto hash = Hash256::try_from_hex(c.params.at(0));
    if (!hash)
        throw ApiError{400, "MalformedHash"};
    const auto status = ledger_.get_receipt(*hash);
    if (std::holds_alternative<UnknownStatus>(status))
        throw ApiError{404, "UnknownTransaction"};
    json j{{"tx_hash", hash->hex()}, {"status", chain_status(status)}};
    if (const auto* r = std::get_if<Receipt>(&status))
    {
        j["block_number"] = r->block_number;
        j["gas_used"] = r->gas_used;
        j["gas_price_wei"] = r->gas_price.to_string();
        j["fee_wei"] = r->fee.to_string();
        j["submitted_at"] = format_seconds(r->submitted_at);
        j["confirmed_at"] = format_seconds(r->confirmed_at);
    }
    return Response{200, std::move(j)};
}

}  // namespace certchain
