// SPDX-License-Identifier: Apache-2.0
//
// treescatter - path loss modelling for single-tree mmWave scattering links
// Copyright (C) 2025-2026 the treescatter authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef TREESCATTER_DETAIL_MSG_HPP
#define TREESCATTER_DETAIL_MSG_HPP

#include <cstdio>
#include <string>

namespace treescatter::detail {

// printf-style message builder for exception texts.
template <typename... Args>
std::string msg(const char* fmt, Args... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, fmt, args...);
    return std::string(buf);
}

inline std::string msg(const char* fmt) {
    return std::string(fmt);
}

} // namespace treescatter::detail

#endif
