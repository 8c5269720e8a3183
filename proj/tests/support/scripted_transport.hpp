#pragma once

#include "drugwatch/http_transport.hpp"

#include <atomic>
#include <deque>
#include <functional>
#include <mutex>
#include <string>
#include <vector>

namespace testsupport {

/// Replays queued responses and records every call. An empty queue is a transport failure.
class ScriptedTransport final : public drugwatch::HttpTransport {
public:
    struct Call {
        std::string method, url, body;
    };

    void push(int status, std::string body) {
        std::lock_guard lock(mu_);
        script_.push_back({status, std::move(body)});
    }
    void push_failure() {
        std::lock_guard lock(mu_);
        script_.push_back({-1, {}});
    }
    /// Called on every request before the script is consulted.
    std::function<void()> on_call;

    drugwatch::HttpResponse get(const std::string& url, std::chrono::milliseconds) override {
        return next({"GET", url, {}});
    }
    drugwatch::HttpResponse post(const std::string& url, const std::string& body, const std::string&,
                                 std::chrono::milliseconds) override {
        return next({"POST", url, body});
    }

    std::vector<Call> calls() const {
        std::lock_guard lock(mu_);
        return calls_;
    }

private:
    drugwatch::HttpResponse next(Call c) {
        if (on_call) on_call();
        std::lock_guard lock(mu_);
        calls_.push_back(std::move(c));
        if (script_.empty() || script_.front().status < 0) {
            if (!script_.empty()) script_.pop_front();
            throw drugwatch::TransportError("scripted transport failure");
        }
        auto r = script_.front();
        script_.pop_front();
        return r;
    }

    mutable std::mutex mu_;
    std::deque<drugwatch::HttpResponse> script_;
    std::vector<Call> calls_;
};

}  // namespace testsupport
