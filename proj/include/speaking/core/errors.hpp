// Copyright (C) 2026 Speaking Images Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace speaking {

// Base class for every error raised by the pipeline. Stage code catches
// these per face; anything else escaping a backend is wrapped into
// BackendFailure by the adapter that owns the call.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class MalformedName : public Error {
public:
    using Error::Error;
};

class UnknownFace : public Error {
public:
    using Error::Error;
};

class StageOrderViolation : public Error {
public:
    using Error::Error;
};

class BackendFailure : public Error {
public:
    using Error::Error;
};

class UnknownGenderLabel : public Error {
public:
    using Error::Error;
};

class OutOfBounds : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class MissingMetadata : public Error {
public:
    using Error::Error;
};

class AllAttemptsRefused : public Error {
public:
    AllAttemptsRefused(const std::string& msg, int attempts)
        : Error(msg), attempts_(attempts) {}
    int attempts() const { return attempts_; }

private:
    int attempts_ = 0;
};

class NoVoiceForGender : public Error {
public:
    using Error::Error;
};

class NonSquareInput : public Error {
public:
    using Error::Error;
};

class DurationMismatch : public Error {
public:
    using Error::Error;
};

class InsufficientSamples : public Error {
public:
    using Error::Error;
};

class NonPSD : public Error {
public:
    using Error::Error;
};

class MalformedRow : public Error {
public:
    MalformedRow(const std::string& msg, int line)
        : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}
    int line() const { return line_; }

private:
    int line_ = 0;
};

class CorruptManifest : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace speaking
