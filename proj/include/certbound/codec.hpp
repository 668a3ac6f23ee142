#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "certbound/types.hpp"

namespace certbound {

// Window pairs never exceed 62 digits (k^(2h) must fit in 64 bits), plus two
// appended letters during successor construction.
inline constexpr unsigned kMaxDigits = 64;
using DigitBuf = std::array<std::uint32_t, kMaxDigits>;

inline std::uint64_t encode_digits(const std::uint32_t* d, unsigned n, std::uint32_t k) {
    std::uint64_t code = 0;
    for (unsigned i = 0; i < n; ++i) code = code * k + d[i];
    return code;
}

inline void decode_digits(std::uint64_t code, unsigned n, std::uint32_t k, std::uint32_t* out) {
    for (unsigned i = n; i-- > 0;) {
        out[i] = static_cast<std::uint32_t>(code % k);
        code /= k;
    }
}

// ---------------------------------------------------------------------------
// Pair packing: digits of `code` in base k, most-significant first, spell u
// then v (each of length h).
// ---------------------------------------------------------------------------

inline PairCode encode_pair_digits(const std::uint32_t* u, const std::uint32_t* v,
                                   const Alphabet& a) {
    for (unsigned i = 0; i < a.h; ++i)
        if (u[i] >= a.k || v[i] >= a.k)
            throw InvalidInputError("letter out of range for alphabet");
    std::uint64_t code = encode_digits(u, a.h, a.k);
    code = code * *checked_pow(a.k, a.h) + encode_digits(v, a.h, a.k);
    return code;
}

inline void decode_pair_digits(PairCode code, const Alphabet& a, std::uint32_t* u,
                               std::uint32_t* v) {
    if (code >= a.code_space()) throw InvalidInputError("pair code out of range");
    std::uint64_t half = *checked_pow(a.k, a.h);
    decode_digits(code / half, a.h, a.k, u);
    decode_digits(code % half, a.h, a.k, v);
}

inline std::vector<std::uint32_t> letters_to_digits(std::string_view s, const Alphabet& a) {
    std::vector<std::uint32_t> d;
    d.reserve(s.size());
    for (char c : s) {
        if (c < 'a' || static_cast<std::uint32_t>(c - 'a') >= a.k)
            throw InvalidInputError(std::string("letter '") + c + "' out of range for k=" +
                                    std::to_string(a.k));
        d.push_back(static_cast<std::uint32_t>(c - 'a'));
    }
    return d;
}

inline std::string digits_to_letters(const std::uint32_t* d, unsigned n) {
    std::string s(n, '?');
    for (unsigned i = 0; i < n; ++i) s[i] = static_cast<char>('a' + d[i]);
    return s;
}

inline PairCode encode_pair(std::string_view u, std::string_view v, const Alphabet& a) {
    if (u.size() != a.h || v.size() != a.h)
        throw InvalidInputError("strings must both have window length h");
    auto du = letters_to_digits(u, a);
    auto dv = letters_to_digits(v, a);
    return encode_pair_digits(du.data(), dv.data(), a);
}

inline std::pair<std::string, std::string> decode_pair(PairCode code, const Alphabet& a) {
    DigitBuf u{}, v{};
    decode_pair_digits(code, a, u.data(), v.data());
    return {digits_to_letters(u.data(), a.h), digits_to_letters(v.data(), a.h)};
}

// ---------------------------------------------------------------------------
// Canonicalization. Relabeling letters to 0,1,2,... in order of first
// appearance in the concatenated string uv yields the lexicographically
// minimal image over all k! joint letter permutations: position by position,
// the smallest assignable digit is forced.
// ---------------------------------------------------------------------------

// Reusable first-occurrence relabeling state. One instance per thread; the
// stamped map avoids clearing between calls. Falls back to a linear scan of
// the (at most 2h+2) seen letters when k is too large for a direct map.
class Canonicalizer {
  public:
    explicit Canonicalizer(const Alphabet& a) : k_(a.k) {
        if (k_ <= kDirectMapLimit) {
            map_.assign(k_, 0);
            stamp_.assign(k_, 0);
        }
    }

    void begin() {
        if (!map_.empty()) {
            if (++epoch_ == 0) {  // stamp wrap: reset
                std::fill(stamp_.begin(), stamp_.end(), 0u);
                epoch_ = 1;
            }
        }
        seen_count_ = 0;
    }

    // Relabeled digit for `letter`, given `m` letters seen so far. A fresh
    // letter gets digit m. Caller tracks m (it equals seen_count()).
    std::uint32_t digit_for(std::uint32_t letter) {
        if (!map_.empty()) {
            if (stamp_[letter] == epoch_) return map_[letter];
            stamp_[letter] = epoch_;
            map_[letter] = seen_count_;
            seen_[seen_count_] = letter;
            return seen_count_++;
        }
        for (std::uint32_t i = 0; i < seen_count_; ++i)
            if (seen_[i] == letter) return i;
        seen_[seen_count_] = letter;
        return seen_count_++;
    }

    std::uint32_t seen_count() const { return seen_count_; }
    std::uint32_t seen_letter(std::uint32_t digit) const { return seen_[digit]; }

  private:
    static constexpr std::uint32_t kDirectMapLimit = 1u << 22;
    std::uint32_t k_;
    std::vector<std::uint32_t> map_;
    std::vector<std::uint32_t> stamp_;
    std::uint32_t epoch_ = 0;
    DigitBuf seen_{};
    std::uint32_t seen_count_ = 0;
};

inline void relabel_digits(const std::uint32_t* in, unsigned n, std::uint32_t* out,
                           Canonicalizer& cz) {
    cz.begin();
    for (unsigned i = 0; i < n; ++i) out[i] = cz.digit_for(in[i]);
}

struct Canonicalized {
    PairCode rep;
    // perm[old_letter] = new digit; letters absent from uv take the remaining
    // digits in ascending order.
    std::vector<std::uint32_t> perm;
};

inline PairCode canonical_rep(PairCode code, const Alphabet& a) {
    if (code >= a.code_space()) throw InvalidInputError("pair code out of range");
    if (a.k == 2) {
        const std::uint64_t mask = a.code_space() - 1;
        const PairCode flipped = ~code & mask;
        return code < flipped ? code : flipped;
    }
    DigitBuf d{}, r{};
    decode_digits(code, a.window_digits(), a.k, d.data());
    Canonicalizer cz(a);
    relabel_digits(d.data(), a.window_digits(), r.data(), cz);
    return encode_digits(r.data(), a.window_digits(), a.k);
}

inline Canonicalized canonicalize(PairCode code, const Alphabet& a) {
    if (code >= a.code_space()) throw InvalidInputError("pair code out of range");
    DigitBuf d{}, r{};
    decode_digits(code, a.window_digits(), a.k, d.data());
    Canonicalizer cz(a);
    relabel_digits(d.data(), a.window_digits(), r.data(), cz);

    Canonicalized result;
    result.rep = encode_digits(r.data(), a.window_digits(), a.k);
    result.perm.assign(a.k, UINT32_MAX);
    for (std::uint32_t digit = 0; digit < cz.seen_count(); ++digit)
        result.perm[cz.seen_letter(digit)] = digit;
    std::uint32_t next = cz.seen_count();
    for (std::uint32_t letter = 0; letter < a.k; ++letter)
        if (result.perm[letter] == UINT32_MAX) result.perm[letter] = next++;
    return result;
}

// ---------------------------------------------------------------------------
// Canonical index space. Representatives are exactly the strings whose
// letters appear in first-occurrence order 0,1,2,... (restricted-growth
// strings over at most k values), so they can be counted, ranked and
// unranked with a small DP table instead of scanning all k^(2h) codes.
// Ordinals follow ascending representative code, which for fixed length
// equals lexicographic order on digits.
// ---------------------------------------------------------------------------

struct CanonicalIndex {
    Ordinal ordinal;
    PairCode rep;
};

class CanonicalTable {
  public:
    explicit CanonicalTable(const Alphabet& a) : alphabet_(a), len_(a.window_digits()) {
        // counts_[i][m] = number of canonical suffixes of length len-i given m
        // distinct letters so far. All values are at most k^(len-i), which
        // fits by the Alphabet invariant.
        counts_.assign(static_cast<std::size_t>(len_ + 1) * (len_ + 2), 0);
        for (unsigned m = 0; m <= len_ + 1; ++m) at(len_, m) = 1;
        for (unsigned i = len_; i-- > 0;) {
            for (unsigned m = 0; m <= i; ++m) {
                std::uint64_t c = static_cast<std::uint64_t>(m) * at(i + 1, m);
                if (m < alphabet_.k) c += at(i + 1, m + 1);
                at(i, m) = c;
            }
        }
        size_ = at(0, 0);
    }

    const Alphabet& alphabet() const { return alphabet_; }
    Ordinal size() const { return size_; }

    std::uint64_t suffix_count(unsigned pos, unsigned distinct) const {
        return counts_[static_cast<std::size_t>(pos) * (len_ + 2) + distinct];
    }

    // Ordinal of the class of an arbitrary (not necessarily canonical) digit
    // string of length 2h: fused first-occurrence relabeling and rank.
    Ordinal lookup_digits(const std::uint32_t* d, Canonicalizer& cz) const {
        cz.begin();
        std::uint64_t rank = 0;
        for (unsigned i = 0; i < len_; ++i) {
            const std::uint32_t m = cz.seen_count();
            const std::uint32_t digit = cz.digit_for(d[i]);
            rank += digit * suffix_count(i + 1, m);
        }
        return rank;
    }

    // Rank of an already-canonical digit string.
    Ordinal rank_canonical(const std::uint32_t* d) const {
        std::uint64_t rank = 0;
        std::uint32_t m = 0;
        for (unsigned i = 0; i < len_; ++i) {
            rank += d[i] * suffix_count(i + 1, m);
            if (d[i] == m) ++m;
        }
        return rank;
    }

    Ordinal lookup(PairCode code) const {
        if (code >= alphabet_.code_space()) throw InvalidInputError("pair code out of range");
        if (alphabet_.k == 2) {
            const std::uint64_t mask = alphabet_.code_space() - 1;
            const PairCode flipped = ~code & mask;
            return code < flipped ? code : flipped;
        }
        DigitBuf d{};
        decode_digits(code, len_, alphabet_.k, d.data());
        Canonicalizer cz(alphabet_);
        return lookup_digits(d.data(), cz);
    }

    // Inverse of rank_canonical.
    void unrank(Ordinal o, std::uint32_t* d) const {
        if (o >= size_) throw InvalidInputError("ordinal out of range");
        std::uint64_t rest = o;
        std::uint32_t m = 0;
        for (unsigned i = 0; i < len_; ++i) {
            const std::uint64_t block = suffix_count(i + 1, m);
            std::uint64_t digit = rest / block;
            // digit == m means "fresh letter"; larger can't happen for a valid rank.
            d[i] = static_cast<std::uint32_t>(digit);
            rest -= digit * block;
            if (digit == m) ++m;
        }
    }

    PairCode rep_code(Ordinal o) const {
        DigitBuf d{};
        unrank(o, d.data());
        return encode_digits(d.data(), len_, alphabet_.k);
    }

    CanonicalIndex index_of(Ordinal o) const { return {o, rep_code(o)}; }

    // Throws CapacityError if holding bytes_per_class per canonical class
    // would exceed budget_bytes.
    void require_budget(std::uint64_t bytes_per_class, std::uint64_t budget_bytes) const {
        if (size_ > budget_bytes / bytes_per_class)
            throw CapacityError("canonical index space needs " +
                                    std::to_string(size_ * bytes_per_class) +
                                    " bytes, budget is " + std::to_string(budget_bytes),
                                size_ * bytes_per_class);
    }

  private:
    std::uint64_t& at(unsigned i, unsigned m) {
        return counts_[static_cast<std::size_t>(i) * (len_ + 2) + m];
    }

    Alphabet alphabet_;
    unsigned len_;
    std::vector<std::uint64_t> counts_;
    Ordinal size_ = 0;
};

// Sequential scan over canonical representatives in ordinal order. seek() is
// O(2h); advance() is amortized O(1) via an odometer on the digit string.
class RepScan {
  public:
    explicit RepScan(const CanonicalTable& table)
        : table_(&table), k_(table.alphabet().k), len_(table.alphabet().window_digits()) {
        seek(0);
    }

    void seek(Ordinal o) {
        ordinal_ = o;
        if (o >= table_->size()) return;
        table_->unrank(o, digits_.data());
        refresh_distinct(0);
    }

    Ordinal ordinal() const { return ordinal_; }
    const std::uint32_t* digits() const { return digits_.data(); }
    const std::uint32_t* u() const { return digits_.data(); }
    const std::uint32_t* v() const { return digits_.data() + len_ / 2; }

    bool advance() {
        ++ordinal_;
        for (unsigned j = len_; j-- > 0;) {
            const std::uint32_t limit =
                distinct_[j] < k_ ? distinct_[j] : k_ - 1;  // max digit allowed at j
            if (digits_[j] < limit) {
                ++digits_[j];
                for (unsigned t = j + 1; t < len_; ++t) digits_[t] = 0;
                refresh_distinct(j);
                return true;
            }
        }
        return false;
    }

  private:
    void refresh_distinct(unsigned from) {
        if (from == 0) distinct_[0] = 0;
        for (unsigned i = from; i < len_; ++i)
            distinct_[i + 1] = distinct_[i] + (digits_[i] == distinct_[i] ? 1 : 0);
    }

    const CanonicalTable* table_;
    std::uint32_t k_;
    unsigned len_;
    Ordinal ordinal_ = 0;
    DigitBuf digits_{};
    std::array<std::uint32_t, kMaxDigits + 1> distinct_{};
};

// The enumeration op from the module contract: the table itself is the
// (lazy) ascending list plus lookup. Materializing representative codes is
// only sensible for small spaces and is budget-guarded.
inline CanonicalTable enumerate_canonical(const Alphabet& a) { return CanonicalTable(a); }

inline std::vector<CanonicalIndex> materialize_canonical(const CanonicalTable& table,
                                                         std::uint64_t budget_bytes) {
    table.require_budget(sizeof(CanonicalIndex), budget_bytes);
    std::vector<CanonicalIndex> out;
    out.reserve(table.size());
    RepScan scan(table);
    for (Ordinal o = 0; o < table.size(); ++o) {
        out.push_back({o, encode_digits(scan.digits(), table.alphabet().window_digits(),
                                        table.alphabet().k)});
        scan.advance();
    }
    return out;
}

}  // namespace certbound
