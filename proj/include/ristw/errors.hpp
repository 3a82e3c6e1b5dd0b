// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace ristw {

/// Base class for all library errors.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Vector/matrix sizes do not agree.
class dimension_error : public error {
public:
    explicit dimension_error(const std::string& what) : error(what) {}
};

/// A value lies outside its admissible domain (negative distance, power, ...).
class domain_error : public error {
public:
    explicit domain_error(const std::string& what) : error(what) {}
};

/// Two scenario nodes coincide, so link geometry is undefined.
class geometry_error : public error {
public:
    explicit geometry_error(const std::string& what) : error(what) {}
};

/// An entry of b + alpha*d fell (numerically) onto the origin, so the
/// elementwise normalization back onto the unit circle is undefined.
/// The line search responds by shrinking alpha.
class retraction_degenerate : public error {
public:
    explicit retraction_degenerate(const std::string& what) : error(what) {}
};

/// The effective cascaded channel is exactly zero; the closed-form
/// beamformer direction is undefined and the rate of that link is 0.
class zero_channel_error : public error {
public:
    explicit zero_channel_error(const std::string& what) : error(what) {}
};

/// Malformed text input (config file, CSV) with a description of where.
class parse_error : public error {
public:
    explicit parse_error(const std::string& what) : error(what) {}
};

/// A file could not be opened for reading or writing.
class io_error : public error {
public:
    explicit io_error(const std::string& what) : error(what) {}
};

} // namespace ristw
