#include "bfk/ring.hpp"

#include <algorithm>

namespace bfk {

std::optional<RMono> mono_mul(const RMono& a, const RMono& b) {
    int u = a.u + b.u;
    int v = a.v + b.v;
    if (u > 0 && v > 0) return std::nullopt;  // UV = 0
    return RMono{u, v};
}

std::string mono_str(const RMono& m) {
    if (m.is_unit()) return "1";
    if (m.u > 0) return m.u == 1 ? "U" : "U^" + std::to_string(m.u);
    return m.v == 1 ? "V" : "V^" + std::to_string(m.v);
}

std::optional<RMono> mono_parse(const std::string& s) {
    if (s == "1") return RMono{0, 0};
    if (s.empty()) return std::nullopt;
    char c = s[0];
    if (c != 'U' && c != 'V') return std::nullopt;
    int n = 1;
    if (s.size() > 1) {
        if (s[1] != '^' || s.size() < 3) return std::nullopt;
        try {
            n = std::stoi(s.substr(2));
        } catch (...) {
            return std::nullopt;
        }
        if (n <= 0) return std::nullopt;
    }
    return c == 'U' ? RMono{n, 0} : RMono{0, n};
}

bool RElem::has_unit_term() const {
    for (const auto& t : terms_)
        if (t.is_unit()) return true;
    return false;
}

void RElem::add_term(const RMono& m) {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m);
    if (it != terms_.end() && *it == m)
        terms_.erase(it);
    else
        terms_.insert(it, m);
}

RElem& RElem::operator+=(const RElem& o) {
    for (const auto& t : o.terms_) add_term(t);
    return *this;
}

RElem operator*(const RElem& a, const RElem& b) {
    RElem out;
    for (const auto& x : a.terms())
        for (const auto& y : b.terms())
            if (auto m = mono_mul(x, y)) out.add_term(*m);
    return out;
}

int RElem::max_exponent() const {
    int m = 0;
    for (const auto& t : terms_) m = std::max({m, t.u, t.v});
    return m;
}

std::string RElem::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (size_t i = 0; i < terms_.size(); ++i) {
        if (i) out += "+";
        out += mono_str(terms_[i]);
    }
    return out;
}

Bigrading grading_shift(const Bigrading& g, const RMono& m) {
    return {g.gu - 2 * m.u, g.gv - 2 * m.v};
}

F2Matrix::F2Matrix(int rows, int cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), bits_(size_t(rows) * words_, 0) {}

bool F2Matrix::get(int r, int c) const {
    return (bits_[size_t(r) * words_ + c / 64] >> (c % 64)) & 1;
}

void F2Matrix::set(int r, int c, bool v) {
    uint64_t& w = bits_[size_t(r) * words_ + c / 64];
    uint64_t m = uint64_t(1) << (c % 64);
    if (v)
        w |= m;
    else
        w &= ~m;
}

void F2Matrix::flip(int r, int c) {
    bits_[size_t(r) * words_ + c / 64] ^= uint64_t(1) << (c % 64);
}

void F2Matrix::add_row(int dst, int src) {
    for (int k = 0; k < words_; ++k)
        bits_[size_t(dst) * words_ + k] ^= bits_[size_t(src) * words_ + k];
}

std::optional<std::vector<uint8_t>> F2Matrix::solve(const std::vector<uint8_t>& b) const {
    if ((int)b.size() != rows_) throw error("f2_solve: dimension mismatch");
    F2Matrix A = *this;
    std::vector<uint8_t> rhs = b;
    std::vector<int> pivot_col(rows_, -1);
    int row = 0;
    for (int c = 0; c < cols_ && row < rows_; ++c) {
        int p = -1;
        for (int r = row; r < rows_; ++r)
            if (A.get(r, c)) { p = r; break; }
        if (p < 0) continue;
        if (p != row) {
            for (int k = 0; k < A.words_; ++k)
                std::swap(A.bits_[size_t(p) * A.words_ + k], A.bits_[size_t(row) * A.words_ + k]);
            std::swap(rhs[p], rhs[row]);
        }
        for (int r = 0; r < rows_; ++r) {
            if (r != row && A.get(r, c)) {
                A.add_row(r, row);
                rhs[r] ^= rhs[row];
            }
        }
        pivot_col[row] = c;
        ++row;
    }
    for (int r = row; r < rows_; ++r)
        if (rhs[r]) return std::nullopt;
    std::vector<uint8_t> x(cols_, 0);
    for (int r = 0; r < row; ++r)
        if (rhs[r]) x[pivot_col[r]] = 1;
    return x;
}

int F2Matrix::rank() const {
    F2Matrix A = *this;
    int row = 0;
    for (int c = 0; c < cols_ && row < rows_; ++c) {
        int p = -1;
        for (int r = row; r < rows_; ++r)
            if (A.get(r, c)) { p = r; break; }
        if (p < 0) continue;
        if (p != row)
            for (int k = 0; k < A.words_; ++k)
                std::swap(A.bits_[size_t(p) * A.words_ + k], A.bits_[size_t(row) * A.words_ + k]);
        for (int r = row + 1; r < rows_; ++r)
            if (A.get(r, c)) A.add_row(r, row);
        ++row;
    }
    return row;
}

std::vector<std::vector<uint8_t>> F2Matrix::kernel() const {
    F2Matrix A = *this;
    std::vector<int> pivot_of_col(cols_, -1);
    int row = 0;
    for (int c = 0; c < cols_ && row < rows_; ++c) {
        int p = -1;
        for (int r = row; r < rows_; ++r)
            if (A.get(r, c)) { p = r; break; }
        if (p < 0) continue;
        if (p != row)
            for (int k = 0; k < A.words_; ++k)
                std::swap(A.bits_[size_t(p) * A.words_ + k], A.bits_[size_t(row) * A.words_ + k]);
        for (int r = 0; r < rows_; ++r)
            if (r != row && A.get(r, c)) A.add_row(r, row);
        pivot_of_col[c] = row;
        ++row;
    }
    std::vector<std::vector<uint8_t>> basis;
    for (int c = 0; c < cols_; ++c) {
        if (pivot_of_col[c] >= 0) continue;
        std::vector<uint8_t> v(cols_, 0);
        v[c] = 1;
        for (int c2 = 0; c2 < cols_; ++c2)
            if (pivot_of_col[c2] >= 0 && A.get(pivot_of_col[c2], c)) v[c2] = 1;
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<uint8_t>> f2_solve(const F2Matrix& A, const std::vector<uint8_t>& b) {
    return A.solve(b);
}

}  // namespace bfk
