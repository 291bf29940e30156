// certchain: blockchain-anchored academic record registry
// Copyright 2026 The certchain Authors.
// SPDX-License-Identifier: Apache-2.0

#include <certchain/store.hpp>

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <fstream>

using namespace certchain;
using certchain::testing::TempDir;

namespace
{
struct Fixture
{
    SeededRandom rng{1};
    std::int64_t now = 1'000'000;
    WallClock clock = [this] { return now; };
};

std::string read_text(const std::filesystem::path& p)
{
    std::ifstream in{p, std::ios::binary};
    return {std::istreambuf_iterator<char>{in}, {}};
}

template <typename F>
StoreErrc error_of(F&& f)
{
    try
    {
        f();
    }
    catch (const StoreError& e)
    {
        return e.code();
    }
    ADD_FAILURE() << "no StoreError";
    return StoreErrc::corrupt_store;
}
}  // namespace

TEST(Store, RoleNames)
{
    for (auto r : {Role::admin, Role::university, Role::student, Role::employer})
        EXPECT_EQ(role_from_string(to_string(r)), r);
    EXPECT_FALSE(role_from_string("admin"));
    EXPECT_EQ(to_string(StoreErrc::add_document_type_first), "AddDocumentTypeFirst");
}

TEST(Store, UsersAndAuthentication)
{
    Fixture f;
    OffchainStore s{f.rng, f.clock};
    const auto a = s.create_user(Role::admin, "root@x", "password1");
    const auto u = s.create_user(Role::university, "reg@x", "password2", Address{}, "Uni", "JO");
    EXPECT_EQ(a.user_id, "A0001");
    EXPECT_EQ(u.user_id, "U0001");
    EXPECT_EQ(u.password_salt.size(), 16u);
    Bytes salted = u.password_salt;
    for (char c : std::string{"password2"})
        salted.push_back(static_cast<std::uint8_t>(c));
    EXPECT_EQ(u.password_digest, sha256(salted));

    EXPECT_EQ(error_of([&] { s.create_user(Role::university, "reg@x", "password3"); }), StoreErrc::duplicate_email);
    EXPECT_EQ(error_of([&] { s.create_user(Role::university, "new@x", "short"); }), StoreErrc::weak_password);

    EXPECT_EQ(s.authenticate("reg@x", "password2")->user_id, "U0001");
    EXPECT_FALSE(s.authenticate("reg@x", "password1"));
    EXPECT_FALSE(s.authenticate("nobody@x", "password2"));
    s.set_user_disabled("U0001", true);
    EXPECT_FALSE(s.authenticate("reg@x", "password2"));
    s.set_user_disabled("U0001", false);
    EXPECT_TRUE(s.authenticate("reg@x", "password2"));
    EXPECT_EQ(error_of([&] { s.set_user_disabled("U0099", true); }), StoreErrc::unknown_user);
    EXPECT_EQ(s.find_user(Role::university, "reg@x")->user_id, "U0001");
    EXPECT_EQ(s.find_user_by_address(Address{})->user_id, "U0001");
    EXPECT_EQ(s.users(Role::admin).size(), 1u);
    EXPECT_EQ(s.users().size(), 2u);
}

TEST(Store, SaltsDiffer)
{
    Fixture f;
    OffchainStore s{f.rng, f.clock};
    const auto a = s.create_user(Role::admin, "a@x", "same-password");
    const auto b = s.create_user(Role::admin, "b@x", "same-password");
    EXPECT_NE(a.password_salt, b.password_salt);
    EXPECT_NE(a.password_digest, b.password_digest);
}

TEST(Store, StudentsDocumentsAndTypes)
{
    Fixture f;
    OffchainStore s{f.rng, f.clock};
    s.create_user(Role::university, "u1@x", "password1");
    s.create_user(Role::university, "u2@x", "password1");
    const auto st = s.register_student("Ann", "ann@x", "password1", "U0001");
    EXPECT_EQ(st.student_id, "S000001");
    EXPECT_EQ(s.user(st.student_id)->role, Role::student);
    EXPECT_EQ(error_of([&] { s.register_student("B", "b@x", "password1", "U0009"); }), StoreErrc::unknown_university);
    EXPECT_EQ(error_of([&] { s.register_student("B", "b@x", "password1", "S000001"); }),
              StoreErrc::unknown_university);
    s.register_student("Bob", "bob@x", "password1", "U0002");
    EXPECT_EQ(s.students("U0001").size(), 1u);
    EXPECT_EQ(s.students().size(), 2u);

    const Bytes file{'p', 'd', 'f'};
    EXPECT_EQ(error_of([&] { s.record_document(st.student_id, "U0001", "Degree", file); }),
              StoreErrc::add_document_type_first);
    const auto t1 = s.add_document_type("Degree");
    const auto t2 = s.add_document_type("Transcript");
    EXPECT_EQ(t1.code, 1u);
    EXPECT_EQ(t2.code, 2u);
    EXPECT_EQ(s.add_document_type("Degree").code, 1u);
    EXPECT_EQ(s.document_type(2u)->name, "Transcript");
    EXPECT_EQ(s.document_types().size(), 2u);

    EXPECT_EQ(error_of([&] { s.record_document("S000099", "U0001", "Degree", file); }), StoreErrc::unknown_student);
    EXPECT_EQ(error_of([&] { s.record_document(st.student_id, "U0042", "Degree", file); }),
              StoreErrc::unknown_university);

    const auto d = s.record_document(st.student_id, "U0001", "Degree", file);
    EXPECT_EQ(d.doc_id, "D000001");
    EXPECT_EQ(d.file_digest, sha256(file));
    EXPECT_EQ(d.uploaded_at, f.now);
    EXPECT_FALSE(d.tx_hash);
    EXPECT_EQ(s.document_bytes(d.doc_id), file);
    EXPECT_EQ(s.find_document_by_digest(sha256(file))->doc_id, d.doc_id);

    s.set_document_transaction(d.doc_id, sha256("tx"));
    EXPECT_EQ(s.document(d.doc_id)->tx_hash, sha256("tx"));
    EXPECT_EQ(error_of([&] { s.set_document_transaction(d.doc_id, sha256("tx2")); }),
              StoreErrc::transaction_already_set);
    EXPECT_EQ(error_of([&] { s.set_document_transaction("D000404", sha256("tx2")); }), StoreErrc::unknown_document);
}

TEST(Store, ShareTokens)
{
    Fixture f;
    OffchainStore s{f.rng, f.clock};
    s.create_user(Role::university, "u@x", "password1");
    const auto ann = s.register_student("Ann", "ann@x", "password1", "U0001");
    const auto bob = s.register_student("Bob", "bob@x", "password1", "U0001");
    s.add_document_type("Degree");
    const auto d = s.record_document(ann.student_id, "U0001", "Degree", Bytes{1});

    EXPECT_EQ(error_of([&] { s.create_share_token(bob.student_id, d.doc_id, 60); }), StoreErrc::not_document_owner);
    EXPECT_EQ(error_of([&] { s.create_share_token(ann.student_id, "D000404", 60); }), StoreErrc::unknown_document);

    const auto t = s.create_share_token(ann.student_id, d.doc_id, 60, "hr@x");
    EXPECT_EQ(t.token.size(), 64u);
    EXPECT_TRUE(is_hex(t.token));
    EXPECT_EQ(t.expires_at, f.now + 60);
    EXPECT_EQ(s.resolve_share_token(t.token).doc_id, d.doc_id);
    f.now += 59;
    EXPECT_NO_THROW((void)s.resolve_share_token(t.token));
    f.now += 1;
    EXPECT_EQ(error_of([&] { (void)s.resolve_share_token(t.token); }), StoreErrc::expired);
    EXPECT_EQ(error_of([&] { (void)s.resolve_share_token(std::string(64, 'a')); }), StoreErrc::unknown_token);

    const auto t2 = s.create_share_token(ann.student_id, d.doc_id, 60);
    EXPECT_NE(t2.token, t.token);
    EXPECT_EQ(error_of([&] { s.revoke_share_token(bob.student_id, t2.token); }), StoreErrc::not_document_owner);
    s.revoke_share_token(ann.student_id, t2.token);
    EXPECT_EQ(error_of([&] { (void)s.resolve_share_token(t2.token); }), StoreErrc::revoked);
    EXPECT_EQ(s.share_tokens().size(), 2u);
}

TEST(Store, PersistenceRoundTrip)
{
    TempDir dir;
    Fixture f;
    Hash256 digest;
    std::string token;
    {
        auto s = OffchainStore::open(dir.path(), f.rng, f.clock);
        s->create_user(Role::university, "u@x", "password1", Address{}, "Uni", "JO");
        s->register_student("Ann", "ann@x", "password1", "U0001");
        s->add_document_type("Degree");
        const auto d = s->record_document("S000001", "U0001", "Degree", Bytes{7, 7, 7});
        s->set_document_transaction(d.doc_id, sha256("tx"));
        token = s->create_share_token("S000001", d.doc_id, 100).token;
        digest = d.file_digest;
    }
    EXPECT_TRUE(std::filesystem::exists(dir / "files" / digest.hex()));
    const auto text = read_text(dir / "store.json");
    const auto trailer = text.rfind("sha256:");
    ASSERT_NE(trailer, std::string::npos);
    EXPECT_EQ(text.substr(trailer + 7, 64), sha256(text.substr(0, trailer)).hex());

    SeededRandom other{2};
    auto s = OffchainStore::open(dir.path(), other, f.clock);
    EXPECT_EQ(s->authenticate("u@x", "password1")->display_name, "Uni");
    EXPECT_EQ(s->document("D000001")->tx_hash, sha256("tx"));
    EXPECT_EQ(s->document_bytes("D000001"), (Bytes{7, 7, 7}));
    EXPECT_EQ(s->resolve_share_token(token).doc_id, "D000001");
    EXPECT_EQ(s->export_json(), OffchainStore::open(dir.path(), other, f.clock)->export_json());
    // Counters continue after reload.
    EXPECT_EQ(s->register_student("Bob", "bob@x", "password1", "U0001").student_id, "S000002");
}

TEST(Store, CorruptImagesAreRejected)
{
    TempDir dir;
    Fixture f;
    {
        auto s = OffchainStore::open(dir.path(), f.rng, f.clock);
        s->create_user(Role::admin, "a@x", "password1");
    }
    const auto good = read_text(dir / "store.json");
    auto write = [&](const std::string& text) { std::ofstream{dir / "store.json", std::ios::binary} << text; };

    write(good.substr(0, good.size() / 2));
    EXPECT_EQ(error_of([&] { OffchainStore::open(dir.path(), f.rng, f.clock); }), StoreErrc::corrupt_store);

    auto flipped = good;
    flipped[good.find("a@x")] = 'b';
    write(flipped);
    EXPECT_EQ(error_of([&] { OffchainStore::open(dir.path(), f.rng, f.clock); }), StoreErrc::corrupt_store);

    write("");
    EXPECT_EQ(error_of([&] { OffchainStore::open(dir.path(), f.rng, f.clock); }), StoreErrc::corrupt_store);

    write(good);
    EXPECT_NO_THROW(OffchainStore::open(dir.path(), f.rng, f.clock));
}

TEST(Store, MissingFileIsCorruption)
{
    TempDir dir;
    Fixture f;
    auto s = OffchainStore::open(dir.path(), f.rng, f.clock);
    s->create_user(Role::university, "u@x", "password1");
    s->register_student("Ann", "ann@x", "password1", "U0001");
    s->add_document_type("Degree");
    const auto d = s->record_document("S000001", "U0001", "Degree", Bytes{1});
    std::filesystem::remove(dir / "files" / d.file_digest.hex());
    EXPECT_EQ(error_of([&] { (void)s->document_bytes(d.doc_id); }), StoreErrc::corrupt_store);
}
