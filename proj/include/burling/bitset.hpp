#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace burling
{
    /// Fixed-width (set at construction) bitset over vertex ids 0..size-1.
    class Bitset
    {
        public:
            using Word = std::uint64_t;
            static constexpr std::size_t word_bits = 64;

            Bitset() = default;

            explicit Bitset(std::size_t size) :
                _size(size),
                _words((size + word_bits - 1) / word_bits, 0)
            {
            }

            auto size() const -> std::size_t { return _size; }

            auto test(std::size_t i) const -> bool
            {
                return (_words[i / word_bits] >> (i % word_bits)) & 1u;
            }

            auto set(std::size_t i) -> void
            {
                _words[i / word_bits] |= Word{1} << (i % word_bits);
            }

            auto reset(std::size_t i) -> void
            {
                _words[i / word_bits] &= ~(Word{1} << (i % word_bits));
            }

            auto clear() -> void
            {
                std::fill(_words.begin(), _words.end(), 0);
            }

            auto count() const -> std::size_t
            {
                std::size_t result = 0;
                for (auto w : _words)
                    result += std::popcount(w);
                return result;
            }

            auto none() const -> bool
            {
                return std::all_of(_words.begin(), _words.end(), [] (Word w) { return w == 0; });
            }

            auto any() const -> bool { return ! none(); }

            auto intersects(const Bitset & other) const -> bool
            {
                for (std::size_t i = 0 ; i < _words.size() ; ++i)
                    if (_words[i] & other._words[i])
                        return true;
                return false;
            }

            auto intersection_count(const Bitset & other) const -> std::size_t
            {
                std::size_t result = 0;
                for (std::size_t i = 0 ; i < _words.size() ; ++i)
                    result += std::popcount(_words[i] & other._words[i]);
                return result;
            }

            /// Index of the lowest set bit at position >= from, or size() if none.
            auto find_next(std::size_t from) const -> std::size_t
            {
                if (from >= _size)
                    return _size;
                std::size_t wi = from / word_bits;
                Word w = _words[wi] & (~Word{0} << (from % word_bits));
                while (true) {
                    if (w)
                        return std::min(_size, wi * word_bits + std::countr_zero(w));
                    if (++wi == _words.size())
                        return _size;
                    w = _words[wi];
                }
            }

            auto find_first() const -> std::size_t { return find_next(0); }

            auto operator|=(const Bitset & other) -> Bitset &
            {
                for (std::size_t i = 0 ; i < _words.size() ; ++i)
                    _words[i] |= other._words[i];
                return *this;
            }

            auto operator&=(const Bitset & other) -> Bitset &
            {
                for (std::size_t i = 0 ; i < _words.size() ; ++i)
                    _words[i] &= other._words[i];
                return *this;
            }

            /// this &= ~other
            auto subtract(const Bitset & other) -> Bitset &
            {
                for (std::size_t i = 0 ; i < _words.size() ; ++i)
                    _words[i] &= ~other._words[i];
                return *this;
            }

            template <typename F>
            auto for_each(F && f) const -> void
            {
                for (std::size_t wi = 0 ; wi < _words.size() ; ++wi) {
                    Word w = _words[wi];
                    while (w) {
                        f(wi * word_bits + std::countr_zero(w));
                        w &= w - 1;
                    }
                }
            }

            auto to_vector() const -> std::vector<std::uint32_t>
            {
                std::vector<std::uint32_t> result;
                for_each([&] (std::size_t i) { result.push_back(static_cast<std::uint32_t>(i)); });
                return result;
            }

            friend auto operator==(const Bitset &, const Bitset &) -> bool = default;

            friend auto operator&(Bitset a, const Bitset & b) -> Bitset { return a &= b; }
            friend auto operator|(Bitset a, const Bitset & b) -> Bitset { return a |= b; }

        private:
            std::size_t _size = 0;
            std::vector<Word> _words;
    };
}
