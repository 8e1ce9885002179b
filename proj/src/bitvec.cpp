#include "stc/bitvec.hpp"

#include <algorithm>
#include <bit>

#include "stc/errors.hpp"

namespace stc {

BitVec &BitVec::operator^=(const BitVec &o) {
    if (n_ != o.n_) throw DimensionError("BitVec size mismatch");
    for (size_t i = 0; i < w_.size(); i++) w_[i] ^= o.w_[i];
    return *this;
}

BitVec BitVec::operator&(const BitVec &o) const {
    if (n_ != o.n_) throw DimensionError("BitVec size mismatch");
    BitVec r(n_);
    for (size_t i = 0; i < w_.size(); i++) r.w_[i] = w_[i] & o.w_[i];
    return r;
}

bool BitVec::any() const {
    for (uint64_t w : w_)
        if (w) return true;
    return false;
}

size_t BitVec::count() const {
    size_t c = 0;
    for (uint64_t w : w_) c += std::popcount(w);
    return c;
}

bool BitVec::dot(const BitVec &o) const {
    if (n_ != o.n_) throw DimensionError("BitVec size mismatch");
    uint64_t acc = 0;
    for (size_t i = 0; i < w_.size(); i++) acc ^= w_[i] & o.w_[i];
    return std::popcount(acc) & 1;
}

size_t BitVec::first_set() const {
    for (size_t i = 0; i < w_.size(); i++)
        if (w_[i]) return i * 64 + std::countr_zero(w_[i]);
    return n_;
}

std::vector<size_t> BitVec::support() const {
    std::vector<size_t> out;
    for (size_t i = 0; i < w_.size(); i++) {
        uint64_t w = w_[i];
        while (w) {
            out.push_back(i * 64 + std::countr_zero(w));
            w &= w - 1;
        }
    }
    return out;
}

bool BitVec::operator<(const BitVec &o) const {
    if (n_ != o.n_) return n_ < o.n_;
    for (size_t i = 0; i < w_.size(); i++)
        if (w_[i] != o.w_[i]) return w_[i] < o.w_[i];
    return false;
}

uint64_t BitVec::hash() const {
    uint64_t h = 0x811c9dc5u ^ (uint64_t(n_) << 32);
    for (uint64_t w : w_) {
        h ^= w;
        h *= 0x100000001b3ULL;
        h ^= h >> 29;
    }
    return h;
}

std::string BitVec::to_string() const {
    std::string s(n_, '0');
    for (size_t i = 0; i < n_; i++)
        if (get(i)) s[i] = '1';
    return s;
}

BitVec BitVec::from_string(const std::string &s) {
    BitVec v(s.size());
    for (size_t i = 0; i < s.size(); i++) {
        if (s[i] == '1')
            v.set(i, true);
        else if (s[i] != '0')
            throw ParseError("bit string must contain only 0/1");
    }
    return v;
}

namespace gf2 {

std::vector<size_t> rref(std::vector<BitVec> &rows) {
    std::vector<size_t> pivots;
    size_t ncols = rows.empty() ? 0 : rows[0].size();
    size_t done = 0;
    for (size_t col = 0; col < ncols && done < rows.size(); col++) {
        size_t pivot = rows.size();
        for (size_t r = done; r < rows.size(); r++) {
            if (rows[r].get(col)) {
                pivot = r;
                break;
            }
        }
        if (pivot == rows.size()) continue;
        std::swap(rows[done], rows[pivot]);
        for (size_t r = 0; r < rows.size(); r++)
            if (r != done && rows[r].get(col)) rows[r] ^= rows[done];
        pivots.push_back(col);
        done++;
    }
    rows.resize(done);
    return pivots;
}

size_t rank(std::vector<BitVec> rows) {
    rref(rows);
    return rows.size();
}

std::optional<BitVec> decompose(const BitVec &v, const std::vector<BitVec> &rows) {
    // Eliminate with coefficient tracking over the original row indices.
    std::vector<BitVec> mat = rows;
    std::vector<BitVec> coeff;
    coeff.reserve(rows.size());
    for (size_t i = 0; i < rows.size(); i++) coeff.push_back(BitVec::unit(rows.size(), i));

    BitVec residual = v;
    BitVec rcoeff(rows.size());
    size_t ncols = v.size();
    size_t done = 0;
    for (size_t col = 0; col < ncols && done < mat.size(); col++) {
        size_t pivot = mat.size();
        for (size_t r = done; r < mat.size(); r++) {
            if (mat[r].get(col)) {
                pivot = r;
                break;
            }
        }
        if (pivot == mat.size()) continue;
        std::swap(mat[done], mat[pivot]);
        std::swap(coeff[done], coeff[pivot]);
        for (size_t r = done + 1; r < mat.size(); r++) {
            if (mat[r].get(col)) {
                mat[r] ^= mat[done];
                coeff[r] ^= coeff[done];
            }
        }
        if (residual.get(col)) {
            residual ^= mat[done];
            rcoeff ^= coeff[done];
        }
        done++;
    }
    if (residual.any()) return std::nullopt;
    return rcoeff;
}

bool in_span(const BitVec &v, const std::vector<BitVec> &rows) {
    return decompose(v, rows).has_value();
}

std::vector<BitVec> nullspace(const std::vector<BitVec> &rows, size_t ncols) {
    std::vector<BitVec> mat = rows;
    std::vector<size_t> pivots = rref(mat);
    std::vector<bool> is_pivot(ncols, false);
    for (size_t p : pivots) is_pivot[p] = true;

    std::vector<BitVec> basis;
    for (size_t free_col = 0; free_col < ncols; free_col++) {
        if (is_pivot[free_col]) continue;
        BitVec v(ncols);
        v.set(free_col, true);
        // Back-substitute: pivot variable p_i = sum of free entries in row i.
        for (size_t i = 0; i < mat.size(); i++)
            if (mat[i].get(free_col)) v.set(pivots[i], true);
        basis.push_back(v);
    }
    return basis;
}

std::vector<BitVec> dual_basis(const std::vector<BitVec> &rows) {
    size_t g = rows.size();
    if (g == 0) return {};
    size_t ncols = rows[0].size();
    // Row-reduce while tracking the transform T with T*rows = R (rref).
    std::vector<BitVec> mat = rows;
    std::vector<BitVec> t;
    t.reserve(g);
    for (size_t i = 0; i < g; i++) t.push_back(BitVec::unit(g, i));

    std::vector<size_t> pivots;
    size_t done = 0;
    for (size_t col = 0; col < ncols && done < g; col++) {
        size_t pivot = g;
        for (size_t r = done; r < g; r++) {
            if (mat[r].get(col)) {
                pivot = r;
                break;
            }
        }
        if (pivot == g) continue;
        std::swap(mat[done], mat[pivot]);
        std::swap(t[done], t[pivot]);
        for (size_t r = 0; r < g; r++) {
            if (r != done && mat[r].get(col)) {
                mat[r] ^= mat[done];
                t[r] ^= t[done];
            }
        }
        pivots.push_back(col);
        done++;
    }
    if (done < g) throw InternalError("dual_basis requires independent rows");

    // rows . h = e_j  <=>  R . h = T e_j; with R in rref, setting the pivot
    // variables to column j of T (free variables zero) solves it.
    std::vector<BitVec> duals;
    duals.reserve(g);
    for (size_t j = 0; j < g; j++) {
        BitVec h(ncols);
        for (size_t i = 0; i < g; i++)
            if (t[i].get(j)) h.set(pivots[i], true);
        duals.push_back(h);
    }
    return duals;
}

} // namespace gf2

} // namespace stc
