// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

namespace speaking {

struct HttpResponse {
    int status = 0;
    std::string body;
};

// Minimal client for the backend adapter protocols. `url` is a full
// http://host:port/path endpoint. Throws BackendFailure when the server is
// unreachable; non-2xx statuses are returned to the caller.
HttpResponse http_post(const std::string& url, const std::string& body,
                       const std::string& content_type);

}  // namespace speaking
