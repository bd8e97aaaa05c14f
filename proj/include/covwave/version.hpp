// SPDX-FileCopyrightText: 2026 covwave contributors
// SPDX-License-Identifier: Apache-2.0

/// @file version.hpp
/// @brief Library version constants used by the CLI and run manifests.

#ifndef COVWAVE_VERSION_HPP
#define COVWAVE_VERSION_HPP

namespace covwave {

inline constexpr int version_major = 0;
inline constexpr int version_minor = 1;
inline constexpr int version_patch = 0;

/// Version string embedded in reports and manifests.
inline constexpr const char* version_string = "0.1.0";

} // namespace covwave

#endif // COVWAVE_VERSION_HPP
