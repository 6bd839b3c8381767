#pragma once

#include <stdexcept>
#include <string>

namespace tsn {

// Every refusal the engine can produce, so callers (and the CLI exit-code
// mapping) can dispatch on a single enum instead of string-matching.
enum class errc {
    parse,                      // bad input text
    zero_ordinal,               // operation needs alpha > 0
    not_limit,                  // fundamental sequence of a non-limit
    malformed_blocks,           // block sequence not successive/disjoint/nonempty
    cap_exceeded,               // support or truncation cap hit
    unsupported_family,         // operation outside the implemented fragment
    undecidable_at_precision,   // interval ladder exhausted without a sign
    index_one,                  // log base would be 1
    unknown_index,              // symbolic index not Exact where required
    hypothesis_fails,           // symbolic precondition of a construction false
    diverged,                   // iterative construction hit its cap
    empty_intersection,         // transfer saw no block meeting supp f
    internal,                   // invariant broken, always a bug
};

struct error : std::runtime_error {
    errc code;
    error(errc c, const std::string& what) : std::runtime_error(what), code(c) {}
};

[[noreturn]] inline void fail(errc c, const std::string& what) { throw error(c, what); }

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::parse: return "ParseError";
        case errc::zero_ordinal: return "ZeroOrdinal";
        case errc::not_limit: return "NotLimit";
        case errc::malformed_blocks: return "MalformedBlocks";
        case errc::cap_exceeded: return "CapExceeded";
        case errc::unsupported_family: return "UnsupportedFamily";
        case errc::undecidable_at_precision: return "UndecidableAtPrecision";
        case errc::index_one: return "IndexOne";
        case errc::unknown_index: return "UnknownIndex";
        case errc::hypothesis_fails: return "HypothesisFails";
        case errc::diverged: return "Diverged";
        case errc::empty_intersection: return "EmptyIntersection";
        case errc::internal: return "InternalError";
    }
    return "UnknownError";
}

} // namespace tsn
