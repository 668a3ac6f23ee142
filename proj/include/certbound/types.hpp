#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace certbound {

// A pair of length-h strings over {0..k-1} packed as one base-k integer,
// digits most-significant first, spelling u then v.
using PairCode = std::uint64_t;

// Position of a canonical class in the ascending-representative order.
using Ordinal = std::uint64_t;

enum class Problem : std::uint8_t { Edit = 0, Lcs = 1 };

enum class Backend : std::uint8_t { Binary = 0, Dense = 1, Sparse = 2 };

inline const char* to_string(Problem p) { return p == Problem::Edit ? "edit" : "lcs"; }
inline const char* to_string(Backend b) {
    switch (b) {
        case Backend::Binary: return "binary";
        case Backend::Dense: return "dense";
        default: return "sparse";
    }
}

struct InvalidInputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CapacityError : std::runtime_error {
    std::uint64_t required_bytes;
    CapacityError(const std::string& msg, std::uint64_t required)
        : std::runtime_error(msg), required_bytes(required) {}
};

struct StructuralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OverflowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// k^e if it fits in 64 bits.
inline std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && r > UINT64_MAX / base) return std::nullopt;
        r *= base;
    }
    return r;
}

// Alphabet size k and window length h. Pairs of length-h strings must pack
// into 64 bits, i.e. k^(2h) <= 2^64 - 1; anything bigger is rejected here.
struct Alphabet {
    std::uint32_t k;
    std::uint32_t h;

    Alphabet(std::uint32_t k_, std::uint32_t h_) : k(k_), h(h_) {
        if (k < 2) throw InvalidInputError("alphabet size k must be >= 2");
        if (h < 1) throw InvalidInputError("window length h must be >= 1");
        if (!checked_pow(k, 2 * h))
            throw InvalidInputError("k^(2h) does not fit in a 64-bit unsigned integer (k=" +
                                    std::to_string(k) + ", h=" + std::to_string(h) + ")");
    }

    std::uint32_t window_digits() const { return 2 * h; }
    std::uint64_t code_space() const { return *checked_pow(k, 2 * h); }

    bool operator==(const Alphabet&) const = default;
};

}  // namespace certbound
