// certchain: blockchain-anchored academic record registry
// Copyright 2026 The certchain Authors.
// SPDX-License-Identifier: Apache-2.0

#include <certchain/http_server.hpp>

#include <httplib.h>

namespace certchain
{
namespace
{
constexpr std::string_view kBearer = "Bearer ";

std::string bearer_token(std::string_view authorization)
{
    if (!authorization.starts_with(kBearer))
        return {};
    return std::string{authorization.substr(kBearer.size())};
}
}  // namespace

std::optional<Request> make_request(std::string method, std::string path, std::string_view authorization,
                                    std::string_view body)
{
    Request r;
    r.method = std::move(method);
    r.path = std::move(path);
    r.bearer = bearer_token(authorization);
    if (!body.empty())
    {
        auto j = nlohmann::json::parse(body, nullptr, false);
        if (j.is_discarded() || !j.is_object())
            return std::nullopt;
        r.body = std::move(j);
    }
    return r;
}

struct HttpServer::Impl
{
    explicit Impl(Service& s) : service{s} {}
    Service& service;
    httplib::Server server;
};

HttpServer::HttpServer(Service& service) : impl_{std::make_unique<Impl>(service)}
{
    auto handler = [this](const httplib::Request& hreq, httplib::Response& hres) {
        std::optional<Request> req;
        if (hreq.is_multipart_form_data())
        {
            req = make_request(hreq.method, hreq.path, hreq.get_header_value("Authorization"), {});
            for (const auto& [name, part] : hreq.files)
            {
                if (name == "file")
                    req->file = Bytes(part.content.begin(), part.content.end());
                else
                    req->body[name] = part.content;
            }
        }
        else
        {
            req = make_request(hreq.method, hreq.path, hreq.get_header_value("Authorization"), hreq.body);
        }
        Response res = req ? impl_->service.handle(*req)
                           : Response{400, nlohmann::json{{"error", "MalformedRequest"}}};
        hres.status = res.status;
        hres.set_content(res.body.dump(), "application/json");
    };
    impl_->server.Get(".*", handler);
    impl_->server.Post(".*", handler);
    impl_->server.Delete(".*", handler);
    impl_->server.Put(".*", handler);
}

HttpServer::~HttpServer()
{
    stop();
}

int HttpServer::bind(const std::string& host, int port)
{
    if (port == 0)
    {
        const int p = impl_->server.bind_to_any_port(host);
        if (p < 0)
            throw std::runtime_error{"cannot bind " + host};
        return p;
    }
    if (!impl_->server.bind_to_port(host, port))
        throw std::runtime_error{"cannot bind " + host + ":" + std::to_string(port)};
    return port;
}

void HttpServer::run()
{
    impl_->server.listen_after_bind();
}

void HttpServer::stop()
{
    impl_->server.stop();
}

}  // namespace certchain
