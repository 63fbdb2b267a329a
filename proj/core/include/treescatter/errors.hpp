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

#ifndef TREESCATTER_ERRORS_HPP
#define TREESCATTER_ERRORS_HPP

#include <stdexcept>

namespace treescatter {

// Base class for all library exceptions. Precondition violations on plain
// numeric inputs (non-finite values, non-positive lengths) throw
// std::invalid_argument instead.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A value lies outside the documented operating range of an operation
// (CLI exit code 3).
struct domain_error : error {
    using error::error;
};
struct bandwidth_error : domain_error {
    using domain_error::domain_error;
};
struct geometry_error : domain_error {
    using domain_error::domain_error;
};
struct reference_error : domain_error {
    using domain_error::domain_error;
};
struct index_error : domain_error {
    using domain_error::domain_error;
};
struct empty_input_error : domain_error {
    using domain_error::domain_error;
};
struct config_error : domain_error {
    using domain_error::domain_error;
};

// Malformed or inconsistent file content (CLI exit code 4).
struct format_error : error {
    using error::error;
};
struct parse_error : format_error {
    using format_error::format_error;
};
struct shape_error : format_error {
    using format_error::format_error;
};
struct version_error : format_error {
    using format_error::format_error;
};

// Numerically unsolvable problem (CLI exit code 5).
struct numeric_error : error {
    using error::error;
};
struct degenerate_error : numeric_error {
    using numeric_error::numeric_error;
};
struct underdetermined_error : numeric_error {
    using numeric_error::numeric_error;
};
struct conditioning_error : numeric_error {
    using numeric_error::numeric_error;
};
struct division_error : numeric_error {
    using numeric_error::numeric_error;
};

} // namespace treescatter

#endif
