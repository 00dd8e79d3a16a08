#pragma once

#include <stdexcept>
#include <string>

namespace svir {

// All recoverable failures are typed exceptions. The CLI maps them to the
// exit-code contract (usage/parse -> 2); library callers can catch narrowly.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct division_by_zero : error {
    division_by_zero() : error("division by zero") {}
};

struct config_mismatch : error {
    using error::error;
};

struct dimension_mismatch : error {
    using error::error;
};

// A bracket output left the declared target window.
struct window_escape : error {
    std::string escaped;
    explicit window_escape(std::string syms)
        : error("bracket output escapes target window: " + syms), escaped(std::move(syms)) {}
};

// A map table does not cover the inputs a check needs.
struct domain_insufficiency : error {
    std::string missing;
    explicit domain_insufficiency(std::string syms)
        : error("map table domain does not cover: " + syms), missing(std::move(syms)) {}
};

// Membership query on a vector whose support escapes the subspace's window;
// distinct from "not a member".
struct out_of_window : error {
    using error::error;
};

struct parse_error : error {
    std::size_t position;
    parse_error(const std::string& msg, std::size_t pos)
        : error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

} // namespace svir
