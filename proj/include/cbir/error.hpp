#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cbir {

enum class ErrorCode {
    decode,
    invalid_argument,
    degenerate_interpolant,
    empty_pairs,
    empty_corpus,
    io,
    dimension_mismatch,
    version_mismatch,
    schema,
    invariant,
    corpus_mismatch,
};

std::string_view to_string(ErrorCode code);

// All library failures surface as this type; callers branch on code().
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }
    // what() without the "<code> error: " prefix.
    const std::string& message() const noexcept { return message_; }

private:
    ErrorCode code_;
    std::string message_;
};

}  // namespace cbir
