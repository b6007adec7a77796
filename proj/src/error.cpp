#include "cbir/error.hpp"

namespace cbir {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::decode: return "decode";
    case ErrorCode::invalid_argument: return "invalid argument";
    case ErrorCode::degenerate_interpolant: return "degenerate interpolant";
    case ErrorCode::empty_pairs: return "empty pairs";
    case ErrorCode::empty_corpus: return "empty corpus";
    case ErrorCode::io: return "io";
    case ErrorCode::dimension_mismatch: return "dimension mismatch";
    case ErrorCode::version_mismatch: return "version mismatch";
    case ErrorCode::schema: return "schema";
    case ErrorCode::invariant: return "invariant";
    case ErrorCode::corpus_mismatch: return "corpus mismatch";
    }
    return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + " error: " + message), code_(code), message_(message)
{
}

}  // namespace cbir
