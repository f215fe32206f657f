/*
 * Copyright (C) 2026 The bunk8s authors.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <string>

namespace bunk8s::util {

/// Random version-4 UUID, lowercase, e.g. "1b4e28ba-2fa1-41d2-883f-0016d3cca427".
std::string random_uuid();

}  // namespace bunk8s::util
