#include "amodal/mask.hpp"

#include <bit>

namespace amodal {

MaskGrid::MaskGrid(int width, int height) : width_(width), height_(height) {
    if (width < 0 || height < 0) {
        throw std::invalid_argument("MaskGrid: negative dimensions");
    }
    words_per_row_ = (width + 63) / 64;
    words_.assign(std::size_t(words_per_row_) * height, 0);
}

std::int64_t MaskGrid::count() const {
    std::int64_t n = 0;
    for (std::uint64_t w : words_) n += std::popcount(w);
    return n;
}

bool MaskGrid::any() const {
    for (std::uint64_t w : words_) {
        if (w) return true;
    }
    return false;
}

namespace {

void require_same_shape(const MaskGrid& a, const MaskGrid& b) {
    if (!a.same_shape(b)) {
        throw std::invalid_argument("MaskGrid: dimension mismatch");
    }
}

}  // namespace

MaskGrid& MaskGrid::operator|=(const MaskGrid& o) {
    require_same_shape(*this, o);
    for (std::size_t i = 0; i < words_.size(); i++) words_[i] |= o.words_[i];
    return *this;
}

MaskGrid& MaskGrid::operator&=(const MaskGrid& o) {
    require_same_shape(*this, o);
    for (std::size_t i = 0; i < words_.size(); i++) words_[i] &= o.words_[i];
    return *this;
}

MaskGrid& MaskGrid::operator-=(const MaskGrid& o) {
    require_same_shape(*this, o);
    for (std::size_t i = 0; i < words_.size(); i++) words_[i] &= ~o.words_[i];
    return *this;
}

MaskGrid& MaskGrid::operator^=(const MaskGrid& o) {
    require_same_shape(*this, o);
    for (std::size_t i = 0; i < words_.size(); i++) words_[i] ^= o.words_[i];
    return *this;
}

void MaskGrid::invert() {
    for (std::uint64_t& w : words_) w = ~w;
    clear_padding();
}

MaskGrid MaskGrid::translated(int dx, int dy) const {
    if (dx < -1 || dx > 1 || dy < -1 || dy > 1) {
        throw std::invalid_argument("MaskGrid::translated: shift limited to 1");
    }
    MaskGrid out(width_, height_);
    for (int y = 0; y < height_; y++) {
        const int sy = y - dy;
        if (sy < 0 || sy >= height_) continue;
        const std::uint64_t* src = row_words(sy);
        std::uint64_t* dst = out.row_words(y);
        if (dx == 0) {
            for (int w = 0; w < words_per_row_; w++) dst[w] = src[w];
        } else if (dx == 1) {  // out(x) = src(x-1)
            std::uint64_t carry = 0;
            for (int w = 0; w < words_per_row_; w++) {
                dst[w] = (src[w] << 1) | carry;
                carry = src[w] >> 63;
            }
        } else {  // out(x) = src(x+1)
            for (int w = 0; w < words_per_row_; w++) {
                const std::uint64_t next = (w + 1 < words_per_row_) ? src[w + 1] : 0;
                dst[w] = (src[w] >> 1) | (next << 63);
            }
        }
    }
    out.clear_padding();
    return out;
}

void MaskGrid::clear_padding() {
    const int tail_bits = width_ & 63;
    if (tail_bits == 0 || words_per_row_ == 0) return;
    const std::uint64_t keep = (std::uint64_t{1} << tail_bits) - 1;
    for (int y = 0; y < height_; y++) {
        row_words(y)[words_per_row_ - 1] &= keep;
    }
}

std::int64_t intersection_count(const MaskGrid& a, const MaskGrid& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("MaskGrid: dimension mismatch");
    const auto wa = a.words();
    const auto wb = b.words();
    std::int64_t n = 0;
    for (std::size_t i = 0; i < wa.size(); i++) n += std::popcount(wa[i] & wb[i]);
    return n;
}

std::int64_t union_count(const MaskGrid& a, const MaskGrid& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("MaskGrid: dimension mismatch");
    const auto wa = a.words();
    const auto wb = b.words();
    std::int64_t n = 0;
    for (std::size_t i = 0; i < wa.size(); i++) n += std::popcount(wa[i] | wb[i]);
    return n;
}

double mask_iou(const MaskGrid& a, const MaskGrid& b) {
    const std::int64_t uni = union_count(a, b);
    if (uni == 0) return 0.0;
    return double(intersection_count(a, b)) / double(uni);
}

}  // namespace amodal
