// Exact arithmetic over F2 and over R = F2[U,V]/(UV), plus bigrading
// bookkeeping shared by every other module.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bfk {

// A monomial in R = F2[U,V]/(UV).  Since UV = 0, a nonzero monomial is
// either U^a (a >= 0) or V^b; the unit is U^0 = V^0.
struct RMono {
    int u = 0;
    int v = 0;

    bool is_unit() const { return u == 0 && v == 0; }
    bool operator==(const RMono& o) const { return u == o.u && v == o.v; }
    bool operator<(const RMono& o) const {
        if (u != o.u) return u < o.u;
        return v < o.v;
    }
};

// Product of monomials; vanishes when a U power meets a V power.
std::optional<RMono> mono_mul(const RMono& a, const RMono& b);

std::string mono_str(const RMono& m);
std::optional<RMono> mono_parse(const std::string& s);

// An element of R: a finite F2-set of monomials, kept sorted and deduplicated.
class RElem {
public:
    RElem() = default;
    explicit RElem(RMono m) : terms_{m} {}

    static RElem zero() { return RElem(); }
    static RElem unit() { return RElem(RMono{0, 0}); }
    static RElem upow(int n) { return RElem(RMono{n, 0}); }
    static RElem vpow(int n) { return RElem(RMono{0, n}); }

    bool is_zero() const { return terms_.empty(); }
    bool is_unit() const { return terms_.size() == 1 && terms_[0].is_unit(); }
    bool has_unit_term() const;
    const std::vector<RMono>& terms() const { return terms_; }

    void add_term(const RMono& m);  // symmetric difference
    RElem& operator+=(const RElem& o);
    friend RElem operator+(RElem a, const RElem& b) { a += b; return a; }
    friend RElem operator*(const RElem& a, const RElem& b);
    bool operator==(const RElem& o) const { return terms_ == o.terms_; }

    int max_exponent() const;
    std::string str() const;

private:
    std::vector<RMono> terms_;
};

// Bigrading (grU, grV).  The differential has bidegree (-1,-1), U has
// (-2,0), V has (0,-2); the Alexander grading is (grU - grV)/2.
struct Bigrading {
    int gu = 0;
    int gv = 0;

    bool operator==(const Bigrading& o) const { return gu == o.gu && gv == o.gv; }
    bool operator!=(const Bigrading& o) const { return !(*this == o); }
    bool operator<(const Bigrading& o) const {
        if (gu != o.gu) return gu < o.gu;
        return gv < o.gv;
    }
    Bigrading operator+(const Bigrading& o) const { return {gu + o.gu, gv + o.gv}; }
    Bigrading operator-(const Bigrading& o) const { return {gu - o.gu, gv - o.gv}; }
    Bigrading swapped() const { return {gv, gu}; }
};

// Multiplication by U^n shifts grU by -2n; by V^n shifts grV by -2n.
Bigrading grading_shift(const Bigrading& g, const RMono& m);

// Alexander grading; integral for knots in S^3 (checked by callers, not forced).
inline double alexander(const Bigrading& g) { return (g.gu - g.gv) / 2.0; }

// Dense bit matrix over F2 with deterministic elimination.
class F2Matrix {
public:
    F2Matrix() = default;
    F2Matrix(int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool get(int r, int c) const;
    void set(int r, int c, bool v);
    void flip(int r, int c);
    void add_row(int dst, int src);  // row dst += row src

    // Solves Ax = b; returns some solution with free variables set to 0,
    // choosing pivots in lexicographically least order.  Empty if inconsistent.
    std::optional<std::vector<uint8_t>> solve(const std::vector<uint8_t>& b) const;

    // Rank via elimination (deterministic).
    int rank() const;

    // Basis of the kernel (column vectors), deterministic.
    std::vector<std::vector<uint8_t>> kernel() const;

private:
    int rows_ = 0, cols_ = 0;
    int words_ = 0;
    std::vector<uint64_t> bits_;  // row-major, words_ per row
};

// Convenience wrapper used throughout: solve with dimension checking.
std::optional<std::vector<uint8_t>> f2_solve(const F2Matrix& A,
                                             const std::vector<uint8_t>& b);

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace bfk
