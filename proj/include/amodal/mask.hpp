#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace amodal {

// Binary raster, bit-packed row-major. Bit j of word k in a row is pixel
// x = 64*k + j. Padding bits past the row width are kept zero so popcounts
// and word-wise set algebra stay exact.
class MaskGrid {
public:
    MaskGrid() = default;
    MaskGrid(int width, int height);

    int width() const { return width_; }
    int height() const { return height_; }
    int words_per_row() const { return words_per_row_; }

    bool get(int x, int y) const {
        return (words_[word_index(x, y)] >> (x & 63)) & 1u;
    }
    void set(int x, int y, bool v = true) {
        const std::uint64_t bit = std::uint64_t{1} << (x & 63);
        if (v)
            words_[word_index(x, y)] |= bit;
        else
            words_[word_index(x, y)] &= ~bit;
    }

    std::int64_t count() const;
    bool any() const;

    MaskGrid& operator|=(const MaskGrid& o);
    MaskGrid& operator&=(const MaskGrid& o);
    MaskGrid& operator-=(const MaskGrid& o);  // set difference
    MaskGrid& operator^=(const MaskGrid& o);
    void invert();  // complement within the image rectangle

    friend MaskGrid operator|(MaskGrid a, const MaskGrid& b) { return a |= b; }
    friend MaskGrid operator&(MaskGrid a, const MaskGrid& b) { return a &= b; }
    friend MaskGrid operator-(MaskGrid a, const MaskGrid& b) { return a -= b; }
    friend MaskGrid operator^(MaskGrid a, const MaskGrid& b) { return a ^= b; }
    MaskGrid complement() const {
        MaskGrid r = *this;
        r.invert();
        return r;
    }

    // Content moved by (dx, dy): out(x, y) = this(x-dx, y-dy), zeros shifted
    // in at the borders. |dx| and |dy| are limited to 1.
    MaskGrid translated(int dx, int dy) const;

    bool operator==(const MaskGrid& o) const {
        return width_ == o.width_ && height_ == o.height_ && words_ == o.words_;
    }

    std::uint64_t* row_words(int y) { return words_.data() + std::size_t(y) * words_per_row_; }
    const std::uint64_t* row_words(int y) const {
        return words_.data() + std::size_t(y) * words_per_row_;
    }
    std::span<const std::uint64_t> words() const { return words_; }

    bool same_shape(const MaskGrid& o) const {
        return width_ == o.width_ && height_ == o.height_;
    }

private:
    std::size_t word_index(int x, int y) const {
        return std::size_t(y) * words_per_row_ + (x >> 6);
    }
    void clear_padding();

    int width_ = 0;
    int height_ = 0;
    int words_per_row_ = 0;
    std::vector<std::uint64_t> words_;
};

std::int64_t intersection_count(const MaskGrid& a, const MaskGrid& b);
std::int64_t union_count(const MaskGrid& a, const MaskGrid& b);

// |a∩b| / |a∪b|; 0 when both masks are empty. Throws on dimension mismatch.
double mask_iou(const MaskGrid& a, const MaskGrid& b);

}  // namespace amodal
