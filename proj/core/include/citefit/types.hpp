// Copyright (c) 2026 The citefit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

namespace citefit {

// A shifted citation count: raw counts are stored as raw + 1, so the
// support of every model in this library starts at 1.
using Count = std::int64_t;

}  // namespace citefit
