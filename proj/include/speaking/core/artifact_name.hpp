// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "speaking/core/types.hpp"

namespace speaking {

// Builds "<stem>_<face_id>_<w>_<h>_<x>_<y>_<gender>.<ext>". The stem may
// itself contain underscores; decode_artifact_name parses from the right
// so the round trip is exact. `ext` must be non-empty and carry no dot.
std::string encode_artifact_name(const ArtifactName& a, const std::string& ext);

// Inverse of encode_artifact_name. Throws MalformedName when the name has
// fewer than 7 underscore-delimited tokens, a numeric field does not parse,
// or the gender token is unknown.
ArtifactName decode_artifact_name(const std::string& name);

}  // namespace speaking
