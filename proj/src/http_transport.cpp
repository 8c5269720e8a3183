#include "drugwatch/http_transport.hpp"

#include <httplib.h>

namespace drugwatch {

UrlParts split_url(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw Error("not an absolute URL: " + url);
    const auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

namespace {

httplib::Client make_client(const UrlParts& parts, std::chrono::milliseconds timeout) {
    httplib::Client cli(parts.origin);
    const auto sec = std::chrono::duration_cast<std::chrono::seconds>(timeout);
    const auto usec = std::chrono::duration_cast<std::chrono::microseconds>(timeout - sec);
    cli.set_connection_timeout(sec.count(), usec.count());
    cli.set_read_timeout(sec.count(), usec.count());
    cli.set_write_timeout(sec.count(), usec.count());
    return cli;
}

HttpResponse convert(const httplib::Result& res, const std::string& url) {
    if (!res) throw TransportError("request to " + url + " failed: " + httplib::to_string(res.error()));
    return HttpResponse{res->status, res->body};
}

}  // namespace

HttpResponse HttplibTransport::get(const std::string& url, std::chrono::milliseconds timeout) {
    const auto parts = split_url(url);
    auto cli = make_client(parts, timeout);
    return convert(cli.Get(parts.target), url);
}

HttpResponse HttplibTransport::post(const std::string& url, const std::string& body,
                                    const std::string& content_type, std::chrono::milliseconds timeout) {
    const auto parts = split_url(url);
    auto cli = make_client(parts, timeout);
    return convert(cli.Post(parts.target, body, content_type), url);
}

}  // namespace drugwatch
