// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 sparsetf contributors
#pragma once

namespace sparsetf {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kSchemaVersion = "1";

}  // namespace sparsetf
