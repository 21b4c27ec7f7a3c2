#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

namespace gallai {

// Dynamically sized bitset over 64-bit words. Rows of the per-colour
// adjacency matrices use this; the rainbow-triangle kernel is a word-wise
// AND over two rows, so keep the word array accessible.
class Bitset {
  public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    Bitset() = default;
    explicit Bitset(std::size_t nbits)
        : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

    std::size_t size() const { return nbits_; }

    bool test(std::size_t i) const {
        assert(i < nbits_);
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }
    void set(std::size_t i) {
        assert(i < nbits_);
        words_[i >> 6] |= std::uint64_t(1) << (i & 63);
    }
    void reset(std::size_t i) {
        assert(i < nbits_);
        words_[i >> 6] &= ~(std::uint64_t(1) << (i & 63));
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (std::uint64_t w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }
    bool any() const {
        for (std::uint64_t w : words_)
            if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    std::size_t find_first() const {
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k]) return k * 64 + static_cast<std::size_t>(__builtin_ctzll(words_[k]));
        return npos;
    }
    std::size_t find_next(std::size_t i) const {
        ++i;
        if (i >= nbits_) return npos;
        std::size_t k = i >> 6;
        std::uint64_t w = words_[k] & (~std::uint64_t(0) << (i & 63));
        while (true) {
            if (w) return k * 64 + static_cast<std::size_t>(__builtin_ctzll(w));
            if (++k == words_.size()) return npos;
            w = words_[k];
        }
    }

    Bitset operator&(const Bitset& o) const {
        assert(nbits_ == o.nbits_);
        Bitset r(nbits_);
        for (std::size_t k = 0; k < words_.size(); ++k) r.words_[k] = words_[k] & o.words_[k];
        return r;
    }
    Bitset operator|(const Bitset& o) const {
        assert(nbits_ == o.nbits_);
        Bitset r(nbits_);
        for (std::size_t k = 0; k < words_.size(); ++k) r.words_[k] = words_[k] | o.words_[k];
        return r;
    }
    Bitset& operator|=(const Bitset& o) {
        assert(nbits_ == o.nbits_);
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
        return *this;
    }
    bool operator==(const Bitset& o) const {
        return nbits_ == o.nbits_ && words_ == o.words_;
    }

    bool intersects(const Bitset& o) const {
        assert(nbits_ == o.nbits_);
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k] & o.words_[k]) return true;
        return false;
    }

    // First index in (this & other) that is strictly below `limit`, npos if none.
    std::size_t first_common_below(const Bitset& o, std::size_t limit) const {
        assert(nbits_ == o.nbits_);
        std::size_t full = limit >> 6;
        for (std::size_t k = 0; k < full; ++k) {
            std::uint64_t w = words_[k] & o.words_[k];
            if (w) return k * 64 + static_cast<std::size_t>(__builtin_ctzll(w));
        }
        if ((limit & 63) && full < words_.size()) {
            std::uint64_t mask = (std::uint64_t(1) << (limit & 63)) - 1;
            std::uint64_t w = words_[full] & o.words_[full] & mask;
            if (w) return full * 64 + static_cast<std::size_t>(__builtin_ctzll(w));
        }
        return npos;
    }

    // First index in (this & other) that is strictly above `lower`, npos if none.
    std::size_t first_common_above(const Bitset& o, std::size_t lower) const {
        assert(nbits_ == o.nbits_);
        std::size_t i = lower + 1;
        if (i >= nbits_) return npos;
        std::size_t k = i >> 6;
        std::uint64_t w = (words_[k] & o.words_[k]) & (~std::uint64_t(0) << (i & 63));
        while (true) {
            if (w) return k * 64 + static_cast<std::size_t>(__builtin_ctzll(w));
            if (++k == words_.size()) return npos;
            w = words_[k] & o.words_[k];
        }
    }

  private:
    std::size_t nbits_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace gallai
