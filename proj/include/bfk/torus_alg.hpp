// The torus algebra A, its cyclic extension At, and the truncation At03
// = At / <rho_30>, with exact multiplication and the central element.
//
// Basis chords are cyclic intervals in Z/4; a chord is stored as
// (start, length) so rho_230 is {start 2, length 3}.  Idempotents i0, i1
// complete the F2-basis.  Products of basis elements are again basis
// elements or zero: two chords concatenate exactly when the second starts
// one past the end of the first, paths longer than four letters vanish.
#pragma once

#include "bfk/ring.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace bfk {

enum class AlgVariant : uint8_t { Torus, Extended, Half };  // A, At, At03

// i0 sits at the even node of the quiver: chords starting with an odd
// letter (rho_1, rho_3) leave i0, those starting with an even letter
// (rho_0, rho_2) leave i1.
enum class Idem : uint8_t { I0 = 0, I1 = 1 };

struct Chord {
    uint8_t start = 0;  // in Z/4
    uint8_t len = 1;    // 1..4

    bool operator==(const Chord& o) const { return start == o.start && len == o.len; }
    bool operator<(const Chord& o) const {
        if (start != o.start) return start < o.start;
        return len < o.len;
    }
    uint8_t last() const { return (start + len - 1) % 4; }
    bool contains_zero() const;       // letter 0 anywhere in the interval
    bool contains_30() const;         // adjacent letters 3,0 (killed in At03)
    Idem left_idem() const { return (start % 2) ? Idem::I0 : Idem::I1; }
    Idem right_idem() const { return (last() % 2) ? Idem::I1 : Idem::I0; }
    std::string str() const;  // e.g. "rho_230"
};

// A basis element: an idempotent or a chord.
struct AlgGen {
    bool is_idem = true;
    Idem idem = Idem::I0;
    Chord chord;

    static AlgGen make_idem(Idem i) { return AlgGen{true, i, {}}; }
    static AlgGen make_chord(Chord c) { return AlgGen{false, Idem::I0, c}; }
    Idem left() const { return is_idem ? idem : chord.left_idem(); }
    Idem right() const { return is_idem ? idem : chord.right_idem(); }
    bool operator==(const AlgGen& o) const {
        if (is_idem != o.is_idem) return false;
        return is_idem ? idem == o.idem : chord == o.chord;
    }
    bool operator<(const AlgGen& o) const {
        if (is_idem != o.is_idem) return is_idem > o.is_idem;  // idempotents first
        if (is_idem) return idem < o.idem;
        return chord < o.chord;
    }
    std::string str() const;
};

bool chord_legal(const Chord& c, AlgVariant v);

// Product of basis elements: a basis element or zero.
std::optional<AlgGen> gen_mul(const AlgGen& a, const AlgGen& b, AlgVariant v);

// An F2-linear combination of basis elements of a fixed variant.
class AlgElem {
public:
    AlgElem() = default;
    explicit AlgElem(AlgVariant v) : variant_(v) {}
    AlgElem(AlgVariant v, AlgGen g) : variant_(v), terms_{g} {}

    AlgVariant variant() const { return variant_; }
    bool is_zero() const { return terms_.empty(); }
    const std::vector<AlgGen>& terms() const { return terms_; }
    void add_term(const AlgGen& g);
    AlgElem& operator+=(const AlgElem& o);
    bool operator==(const AlgElem& o) const { return terms_ == o.terms_; }
    std::string str() const;

private:
    AlgVariant variant_ = AlgVariant::Torus;
    std::vector<AlgGen> terms_;
};

AlgElem alg_mul(const AlgElem& a, const AlgElem& b);

// Full F2-basis of the variant, idempotents first, then chords in
// (start, length) order.  Sizes: 8, 18, 12.
std::vector<AlgGen> alg_basis(AlgVariant v);

// The central element: the sum of all length-4 chords that survive in the
// variant.  Errors on the unextended algebra.
AlgElem central_element(AlgVariant v);

// Chord/idempotent names: "rho_<digits>", "i0", "i1".
std::optional<AlgGen> gen_parse(const std::string& name, AlgVariant v);

}  // namespace bfk
