#include "bfk/torus_alg.hpp"

#include <algorithm>

namespace bfk {

bool Chord::contains_zero() const {
    for (int k = 0; k < len; ++k)
        if ((start + k) % 4 == 0) return true;
    return false;
}

bool Chord::contains_30() const {
    for (int k = 0; k + 1 < len; ++k)
        if ((start + k) % 4 == 3) return true;  // next letter is 0
    return false;
}

std::string Chord::str() const {
    std::string s = "rho_";
    for (int k = 0; k < len; ++k) s += char('0' + (start + k) % 4);
    return s;
}

std::string AlgGen::str() const {
    if (is_idem) return idem == Idem::I0 ? "i0" : "i1";
    return chord.str();
}

bool chord_legal(const Chord& c, AlgVariant v) {
    switch (v) {
        case AlgVariant::Torus: return !c.contains_zero();
        case AlgVariant::Extended: return true;
        case AlgVariant::Half: return !c.contains_30();
    }
    return false;
}

std::optional<AlgGen> gen_mul(const AlgGen& a, const AlgGen& b, AlgVariant v) {
    if (a.is_idem && b.is_idem)
        return a.idem == b.idem ? std::optional<AlgGen>(a) : std::nullopt;
    if (a.is_idem)
        return a.idem == b.left() ? std::optional<AlgGen>(b) : std::nullopt;
    if (b.is_idem)
        return b.idem == a.right() ? std::optional<AlgGen>(a) : std::nullopt;
    // chord * chord: concatenate when consecutive, die past length 4
    if ((a.chord.last() + 1) % 4 != b.chord.start) return std::nullopt;
    int len = a.chord.len + b.chord.len;
    if (len > 4) return std::nullopt;
    Chord c{a.chord.start, uint8_t(len)};
    if (!chord_legal(c, v)) return std::nullopt;
    return AlgGen::make_chord(c);
}

void AlgElem::add_term(const AlgGen& g) {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), g);
    if (it != terms_.end() && *it == g)
        terms_.erase(it);
    else
        terms_.insert(it, g);
}

AlgElem& AlgElem::operator+=(const AlgElem& o) {
    for (const auto& t : o.terms_) add_term(t);
    return *this;
}

std::string AlgElem::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (size_t i = 0; i < terms_.size(); ++i) {
        if (i) out += "+";
        out += terms_[i].str();
    }
    return out;
}

AlgElem alg_mul(const AlgElem& a, const AlgElem& b) {
    if (a.variant() != b.variant()) throw error("alg_mul: variant mismatch");
    AlgElem out(a.variant());
    for (const auto& x : a.terms())
        for (const auto& y : b.terms())
            if (auto g = gen_mul(x, y, a.variant())) out.add_term(*g);
    return out;
}

std::vector<AlgGen> alg_basis(AlgVariant v) {
    std::vector<AlgGen> out;
    out.push_back(AlgGen::make_idem(Idem::I0));
    out.push_back(AlgGen::make_idem(Idem::I1));
    for (uint8_t s = 0; s < 4; ++s)
        for (uint8_t l = 1; l <= 4; ++l) {
            Chord c{s, l};
            if (chord_legal(c, v)) out.push_back(AlgGen::make_chord(c));
        }
    return out;
}

AlgElem central_element(AlgVariant v) {
    if (v == AlgVariant::Torus)
        throw error("central_element: the unextended torus algebra has none");
    AlgElem out(v);
    for (uint8_t s = 0; s < 4; ++s) {
        Chord c{s, 4};
        if (chord_legal(c, v)) out.add_term(AlgGen::make_chord(c));
    }
    return out;
}

std::optional<AlgGen> gen_parse(const std::string& name, AlgVariant v) {
    if (name == "i0") return AlgGen::make_idem(Idem::I0);
    if (name == "i1") return AlgGen::make_idem(Idem::I1);
    if (name.rfind("rho_", 0) != 0) return std::nullopt;
    std::string digits = name.substr(4);
    if (digits.empty() || digits.size() > 4) return std::nullopt;
    for (char c : digits)
        if (c < '0' || c > '3') return std::nullopt;
    Chord c{uint8_t(digits[0] - '0'), uint8_t(digits.size())};
    // the digit string must be a consecutive run
    for (size_t k = 0; k < digits.size(); ++k)
        if ((c.start + k) % 4 != uint8_t(digits[k] - '0')) return std::nullopt;
    if (!chord_legal(c, v)) return std::nullopt;
    return AlgGen::make_chord(c);
}

}  // namespace bfk
