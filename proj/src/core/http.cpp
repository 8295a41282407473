// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#include "speaking/core/http.hpp"

#include <httplib.h>

#include "speaking/core/errors.hpp"

namespace speaking {

HttpResponse http_post(const std::string& url, const std::string& body,
                       const std::string& content_type) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
        throw BackendFailure("endpoint is not a URL: " + url);
    }
    const auto path_start = url.find('/', scheme_end + 3);
    const std::string base = path_start == std::string::npos ? url : url.substr(0, path_start);
    const std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);

    httplib::Client client(base);
    client.set_connection_timeout(10, 0);
    client.set_read_timeout(120, 0);
    auto res = client.Post(path, body, content_type);
    if (!res) {
        throw BackendFailure("cannot reach backend endpoint " + url + ": " +
                             httplib::to_string(res.error()));
    }
    return {res->status, res->body};
}

}  // namespace speaking
