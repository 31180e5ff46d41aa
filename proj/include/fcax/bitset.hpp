// Fixed-width dynamic bitset used for extents and intents.
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace fcax {

class Bitset {
public:
    Bitset() = default;
    explicit Bitset(std::size_t size, bool fill = false)
        : size_(size), words_((size + 63) / 64, fill ? ~std::uint64_t{0} : 0) {
        trim();
    }

    std::size_t size() const { return size_; }

    bool test(std::size_t i) const {
        return (words_[i / 64] >> (i % 64)) & 1u;
    }

    void set(std::size_t i, bool v = true) {
        if (v)
            words_[i / 64] |= std::uint64_t{1} << (i % 64);
        else
            words_[i / 64] &= ~(std::uint64_t{1} << (i % 64));
    }

    std::size_t count() const {
        std::size_t n = 0;
        for (auto w : words_) n += static_cast<std::size_t>(__builtin_popcountll(w));
        return n;
    }

    bool none() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }
    bool any() const { return !none(); }

    Bitset& operator&=(const Bitset& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    Bitset& operator|=(const Bitset& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
    friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }

    bool is_subset_of(const Bitset& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    bool intersects(const Bitset& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }

    friend bool operator==(const Bitset& a, const Bitset& b) {
        return a.size_ == b.size_ && a.words_ == b.words_;
    }
    friend bool operator!=(const Bitset& a, const Bitset& b) { return !(a == b); }

    // Arbitrary total order, usable as a map key.
    friend bool operator<(const Bitset& a, const Bitset& b) {
        if (a.size_ != b.size_) return a.size_ < b.size_;
        return a.words_ < b.words_;
    }

    // Ascending-index-sequence comparison between sets of equal cardinality:
    // the set holding the lowest differing index comes first.
    bool precedes_same_count(const Bitset& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            if (words_[i] != o.words_[i]) {
                std::uint64_t diff = words_[i] ^ o.words_[i];
                std::uint64_t low = diff & (~diff + 1);
                return (words_[i] & low) != 0;
            }
        }
        return false;
    }

    std::vector<std::size_t> indices() const {
        std::vector<std::size_t> out;
        out.reserve(count());
        for_each([&](std::size_t i) { out.push_back(i); });
        return out;
    }

    template <class F>
    void for_each(F f) const {
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            std::uint64_t w = words_[wi];
            while (w) {
                std::uint64_t low = w & (~w + 1);
                f(wi * 64 + static_cast<std::size_t>(__builtin_ctzll(w)));
                w ^= low;
            }
        }
    }

    // Widened (or truncated) copy; existing bits keep their index.
    Bitset resized(std::size_t n) const {
        Bitset out(n);
        for (std::size_t i = 0; i < std::min(words_.size(), out.words_.size()); ++i)
            out.words_[i] = words_[i];
        out.trim();
        return out;
    }

    std::string to_string() const {
        std::string s(size_, '0');
        for_each([&](std::size_t i) { s[i] = '1'; });
        return s;
    }

    static Bitset from_string(const std::string& s) {
        Bitset out(s.size());
        for (std::size_t i = 0; i < s.size(); ++i)
            if (s[i] == '1') out.set(i);
        return out;
    }

private:
    void trim() {
        if (size_ % 64 && !words_.empty())
            words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
    }

    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace fcax
