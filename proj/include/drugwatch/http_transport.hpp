#pragma once

#include "drugwatch/error.hpp"

#include <chrono>
#include <string>

namespace drugwatch {

struct HttpResponse {
    int status = 0;
    std::string body;
};

/// Connection failure or timeout; the request may be retried.
class TransportError : public Error {
public:
    using Error::Error;
};

/// Seam between the clients and the network. Tests substitute scripted transports.
class HttpTransport {
public:
    virtual ~HttpTransport() = default;
    virtual HttpResponse get(const std::string& url, std::chrono::milliseconds timeout) = 0;
    virtual HttpResponse post(const std::string& url, const std::string& body,
                              const std::string& content_type, std::chrono::milliseconds timeout) = 0;
};

/// Real transport over cpp-httplib; accepts http:// and https:// URLs.
class HttplibTransport final : public HttpTransport {
public:
    HttpResponse get(const std::string& url, std::chrono::milliseconds timeout) override;
    HttpResponse post(const std::string& url, const std::string& body, const std::string& content_type,
                      std::chrono::milliseconds timeout) override;
};

struct UrlParts {
    std::string origin;  // scheme://host[:port]
    std::string target;  // /path?query
};

/// Splits an absolute URL; throws Error when there is no scheme.
[[nodiscard]] UrlParts split_url(const std::string& url);

}  // namespace drugwatch
