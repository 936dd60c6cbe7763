#pragma once

#include <stdexcept>
#include <string>

namespace parksent {

/// Input data violated a structural or range contract (bad row, bad
/// geometry, bad score, malformed timestamp, ...).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// An analysis was asked to run on a pool with nothing usable in it
/// (no messages in the requested bins, zero lexicon-matched words, ...).
class EmptyPoolError : public std::runtime_error {
public:
    explicit EmptyPoolError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace parksent
