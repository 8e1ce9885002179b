#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace stc {

// Fixed-length bit vector over GF(2), packed into 64-bit words.
class BitVec {
  public:
    BitVec() : n_(0) {}
    explicit BitVec(size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    static BitVec unit(size_t n, size_t i) {
        BitVec v(n);
        v.set(i, true);
        return v;
    }

    size_t size() const { return n_; }

    bool get(size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

    void set(size_t i, bool b) {
        uint64_t mask = uint64_t(1) << (i & 63);
        if (b)
            w_[i >> 6] |= mask;
        else
            w_[i >> 6] &= ~mask;
    }

    void flip(size_t i) { w_[i >> 6] ^= uint64_t(1) << (i & 63); }

    BitVec &operator^=(const BitVec &o);
    BitVec operator^(const BitVec &o) const {
        BitVec r = *this;
        r ^= o;
        return r;
    }
    BitVec operator&(const BitVec &o) const;

    bool any() const;
    size_t count() const;
    // Parity of the AND of two vectors: popcount(a & b) mod 2.
    bool dot(const BitVec &o) const;

    // Index of the first set bit, or size() if none.
    size_t first_set() const;
    std::vector<size_t> support() const;

    bool operator==(const BitVec &o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const BitVec &o) const { return !(*this == o); }
    // Deterministic total order (word-wise); used for canonical sorting.
    bool operator<(const BitVec &o) const;

    uint64_t hash() const;

    // "0110..." with position i at character i.
    std::string to_string() const;
    static BitVec from_string(const std::string &s);

    const std::vector<uint64_t> &words() const { return w_; }

  private:
    size_t n_;
    std::vector<uint64_t> w_;
};

struct BitVecHash {
    size_t operator()(const BitVec &v) const { return static_cast<size_t>(v.hash()); }
};

// Dense GF(2) linear algebra over rows of equal length.
namespace gf2 {

// Reduce `rows` in place to reduced row echelon form, dropping zero rows.
// Returns the pivot column of each surviving row (strictly increasing).
std::vector<size_t> rref(std::vector<BitVec> &rows);

size_t rank(std::vector<BitVec> rows);

// Express v as an XOR of the given rows. Returns the coefficient vector
// (length rows.size()) or nullopt if v is outside the span.
std::optional<BitVec> decompose(const BitVec &v, const std::vector<BitVec> &rows);

bool in_span(const BitVec &v, const std::vector<BitVec> &rows);

// Basis of { x : rows[i] . x = 0 for all i }, over `ncols` variables.
std::vector<BitVec> nullspace(const std::vector<BitVec> &rows, size_t ncols);

// For independent rows, returns vectors h_j with h_j . rows[i] = delta_ij.
// Throws InternalError if the rows are dependent.
std::vector<BitVec> dual_basis(const std::vector<BitVec> &rows);

} // namespace gf2

} // namespace stc
