#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace paving {

// Precondition violations (bad sizes, negative weights, r < 2, ...).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Two routes to the same quantity disagreed; always a numerical bug.
class InternalInconsistency : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// A configured enumeration or entry budget would be exceeded.
class ResourceLimit : public std::runtime_error {
public:
    ResourceLimit(const std::string& what, std::uint64_t budget)
        : std::runtime_error(what), budget_(budget) {}
    std::uint64_t budget() const noexcept { return budget_; }

private:
    std::uint64_t budget_;
};

// Malformed matrix CSV or other unreadable input.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A partition violated a certified bound. Carries the offending labels.
class CertificationFailure : public std::runtime_error {
public:
    CertificationFailure(const std::string& what, std::vector<std::size_t> labels)
        : std::runtime_error(what), labels_(std::move(labels)) {}
    const std::vector<std::size_t>& labels() const noexcept { return labels_; }

private:
    std::vector<std::size_t> labels_;
};

}  // namespace paving
