// Copyright (c) 2026 The chainpulse developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef CHAINPULSE_UTIL_ERROR_HPP
#define CHAINPULSE_UTIL_ERROR_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace chainpulse {

// Error with a short machine-parseable code ("csv-header", "bad-split", ...)
// plus a human readable message. The CLI prints errors as
// "error[<code>]: <message>" on a single line.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

} // namespace chainpulse

#endif // CHAINPULSE_UTIL_ERROR_HPP
