#include "bfk/cfk.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace bfk {

bool RMat::is_zero() const {
    for (const auto& x : e_)
        if (!x.is_zero()) return false;
    return true;
}

RMat RMat::identity(int n) {
    RMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = RElem::unit();
    return m;
}

RMat operator*(const RMat& a, const RMat& b) {
    if (a.cols() != b.rows()) throw error("RMat: dimension mismatch in product");
    RMat out(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            if (a.at(i, k).is_zero()) continue;
            for (int j = 0; j < b.cols(); ++j) {
                if (b.at(k, j).is_zero()) continue;
                out.at(i, j) += a.at(i, k) * b.at(k, j);
            }
        }
    return out;
}

RMat operator+(RMat a, const RMat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw error("RMat: dimension mismatch in sum");
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) a.at(i, j) += b.at(i, j);
    return a;
}

int CfkComplex::index_of(const std::string& name) const {
    for (size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].name == name) return (int)i;
    return -1;
}

bool CfkComplex::is_reduced() const {
    for (int i = 0; i < size(); ++i)
        for (int j = 0; j < size(); ++j)
            if (d_.at(i, j).has_unit_term()) return false;
    return true;
}

ValidityReport validate_cfk(const CfkComplex& C) {
    ValidityReport rep;
    const int n = C.size();
    if (C.diff().rows() != n || C.diff().cols() != n) {
        rep.violations.push_back("differential matrix has wrong dimensions");
        return rep;
    }
    // grading discipline: every term of d[i][j] drops bidegree by (1,1)
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (const auto& m : C.diff().at(i, j).terms()) {
                Bigrading got = grading_shift(C.gen(i).gr, m);
                Bigrading want = C.gen(j).gr - Bigrading{1, 1};
                if (got != want)
                    rep.violations.push_back("entry d " + C.gen(j).name + " -> " +
                                             C.gen(i).name + " (" + mono_str(m) +
                                             ") violates the (-1,-1) grading rule");
            }
    RMat sq = C.diff() * C.diff();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!sq.at(i, j).is_zero())
                rep.violations.push_back("d^2 != 0 on " + C.gen(j).name + " (hits " +
                                         C.gen(i).name + ")");
    return rep;
}

bool map_is_homogeneous(const CfkComplex& D, const CfkComplex& C, const ChainMap& f) {
    for (int i = 0; i < D.size(); ++i)
        for (int j = 0; j < C.size(); ++j)
            for (const auto& m : f.mat.at(i, j).terms())
                if (grading_shift(D.gen(i).gr, m) != C.gen(j).gr + f.deg) return false;
    return true;
}

bool is_chain_map(const CfkComplex& D, const CfkComplex& C, const ChainMap& f) {
    return (D.diff() * f.mat + f.mat * C.diff()).is_zero();
}

ReduceResult reduce(const CfkComplex& C) {
    CfkComplex cur = C;
    int n0 = C.size();
    RMat f = RMat::identity(n0);  // C -> cur
    RMat g = RMat::identity(n0);  // cur -> C
    RMat H(n0, n0);

    for (;;) {
        const int n = cur.size();
        int pi = -1, pj = -1;
        for (int j = 0; j < n && pi < 0; ++j)
            for (int i = 0; i < n; ++i)
                if (cur.diff().at(i, j).has_unit_term()) { pi = i; pj = j; break; }
        if (pi < 0) break;

        // cancel the pair (source pj, target pi) along the unit entry
        std::vector<int> keep;
        for (int k = 0; k < n; ++k)
            if (k != pi && k != pj) keep.push_back(k);
        const int m = (int)keep.size();

        // the pivot must be exactly the unit: a homogeneous entry with a
        // unit term has no other terms, and 1 + U^a is not invertible in R
        RElem junk = cur.diff().at(pi, pj);
        junk.add_term(RMono{0, 0});
        if (!junk.is_zero()) throw error("reduce: non-homogeneous unit entry");

        // zig-zag: d'[a][b] = d[a][b] + d[a][pj] d[pi][b]
        // with x = gen pj (source), y = gen pi (target)
        RMat nd(m, m);
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) {
                RElem v = cur.diff().at(keep[a], keep[b]);
                v += cur.diff().at(keep[a], pj) * cur.diff().at(pi, keep[b]);
                nd.at(a, b) = v;
            }

        std::vector<Generator> ngens;
        for (int k : keep) ngens.push_back(cur.gen(k));

        // step maps on cur: h(y)=x; iota(z) = z + <dz,y> x ; pi(z) = p(z + ...)
        RMat step_pi(m, n);  // cur -> new
        for (int a = 0; a < m; ++a) {
            step_pi.at(a, keep[a]) = RElem::unit();
            step_pi.at(a, pi) = cur.diff().at(keep[a], pj);  // pi(y) = d x |_{C'}
        }
        RMat step_iota(n, m);  // new -> cur
        for (int a = 0; a < m; ++a) {
            step_iota.at(keep[a], a) = RElem::unit();
            step_iota.at(pj, a) = cur.diff().at(pi, keep[a]);  // <d z, y> x
        }
        RMat step_h(n, n);
        step_h.at(pj, pi) = RElem::unit();

        H = H + g * step_h * f;
        f = step_pi * f;
        g = g * step_iota;
        cur = CfkComplex(std::move(ngens), std::move(nd));
    }

    ReduceResult out;
    out.to_reduced = ChainMap{{0, 0}, std::move(f)};
    out.from_reduced = ChainMap{{0, 0}, std::move(g)};
    out.homotopy = ChainMap{{1, 1}, std::move(H)};
    out.reduced = std::move(cur);
    return out;
}

MapSlots map_slots(const CfkComplex& D, const CfkComplex& C, Bigrading deg) {
    MapSlots s;
    for (int i = 0; i < D.size(); ++i)
        for (int j = 0; j < C.size(); ++j) {
            Bigrading diff = C.gen(j).gr + deg - D.gen(i).gr;
            if (diff.gu == 0 && diff.gv == 0)
                s.slots.push_back({i, j, RMono{0, 0}});
            else if (diff.gv == 0 && diff.gu < 0 && diff.gu % 2 == 0)
                s.slots.push_back({i, j, RMono{-diff.gu / 2, 0}});
            else if (diff.gu == 0 && diff.gv < 0 && diff.gv % 2 == 0)
                s.slots.push_back({i, j, RMono{0, -diff.gv / 2}});
        }
    return s;
}

RMat MapSlots::assemble(int rows, int cols, const std::vector<uint8_t>& x) const {
    RMat m(rows, cols);
    for (size_t k = 0; k < slots.size(); ++k)
        if (x[k]) m.at(slots[k].row, slots[k].col).add_term(slots[k].mono);
    return m;
}

std::vector<uint8_t> MapSlots::extract(const RMat& m) const {
    std::vector<uint8_t> x(slots.size(), 0);
    for (size_t k = 0; k < slots.size(); ++k)
        for (const auto& t : m.at(slots[k].row, slots[k].col).terms())
            if (t == slots[k].mono) x[k] = 1;
    return x;
}

namespace {

// Builds the F2 matrix of a linear operator between two slot systems.
F2Matrix slot_operator(const MapSlots& in, const MapSlots& out, int rows, int cols,
                       const std::function<RMat(const RMat&)>& op) {
    F2Matrix A((int)out.slots.size(), (int)in.slots.size());
    for (size_t k = 0; k < in.slots.size(); ++k) {
        std::vector<uint8_t> e(in.slots.size(), 0);
        e[k] = 1;
        RMat img = op(in.assemble(rows, cols, e));
        auto v = out.extract(img);
        for (size_t r = 0; r < v.size(); ++r)
            if (v[r]) A.set((int)r, (int)k, true);
    }
    return A;
}

}  // namespace

std::optional<ChainMap> solve_homotopy(const CfkComplex& D, const CfkComplex& C,
                                       const ChainMap& f, const ChainMap& g) {
    if (!(f.deg == g.deg)) throw error("solve_homotopy: bidegree mismatch");
    Bigrading hdeg = f.deg + Bigrading{1, 1};
    MapSlots hs = map_slots(D, C, hdeg);
    MapSlots ts = map_slots(D, C, f.deg);
    auto op = [&](const RMat& h) { return D.diff() * h + h * C.diff(); };
    F2Matrix A = slot_operator(hs, ts, D.size(), C.size(), op);
    std::vector<uint8_t> rhs = ts.extract(f.mat + g.mat);
    // sanity: the target must lie inside the slot system
    RMat back = ts.assemble(D.size(), C.size(), rhs);
    if (!(back == f.mat + g.mat)) return std::nullopt;
    auto x = A.solve(rhs);
    if (!x) return std::nullopt;
    return ChainMap{hdeg, hs.assemble(D.size(), C.size(), *x)};
}

std::optional<ChainMap> solve_nullhomotopy(const CfkComplex& D, const CfkComplex& C,
                                           const ChainMap& f) {
    ChainMap zero{f.deg, RMat(D.size(), C.size())};
    return solve_homotopy(D, C, f, zero);
}

CfkComplex tensor_connected_sum(const CfkComplex& C, const CfkComplex& D) {
    std::vector<Generator> gens;
    for (const auto& x : C.gens())
        for (const auto& y : D.gens()) gens.push_back({x.name + "*" + y.name, x.gr + y.gr});
    const int nc = C.size(), nd = D.size();
    RMat diff(nc * nd, nc * nd);
    auto idx = [&](int i, int j) { return i * nd + j; };
    for (int i = 0; i < nc; ++i)
        for (int j = 0; j < nd; ++j) {
            for (int i2 = 0; i2 < nc; ++i2)
                diff.at(idx(i2, j), idx(i, j)) += C.diff().at(i2, i);
            for (int j2 = 0; j2 < nd; ++j2)
                diff.at(idx(i, j2), idx(i, j)) += D.diff().at(j2, j);
        }
    return CfkComplex(std::move(gens), std::move(diff));
}

CfkComplex dual(const CfkComplex& C) {
    std::vector<Generator> gens;
    for (const auto& x : C.gens()) gens.push_back({x.name, Bigrading{-x.gr.gu, -x.gr.gv}});
    const int n = C.size();
    RMat diff(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) diff.at(i, j) = C.diff().at(j, i);
    return CfkComplex(std::move(gens), std::move(diff));
}

CfkComplex conjugate_cfk(const CfkComplex& C) {
    std::vector<Generator> gens;
    for (const auto& x : C.gens()) gens.push_back({x.name, x.gr.swapped()});
    const int n = C.size();
    RMat diff(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            RElem v;
            for (const auto& m : C.diff().at(i, j).terms()) v.add_term(RMono{m.v, m.u});
            diff.at(i, j) = v;
        }
    return CfkComplex(std::move(gens), std::move(diff));
}

std::pair<ChainMap, ChainMap> phi_psi(const CfkComplex& C) {
    const int n = C.size();
    RMat phi(n, n), psi(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (const auto& m : C.diff().at(i, j).terms()) {
                if (m.u > 0 && (m.u % 2)) phi.at(i, j).add_term(RMono{m.u - 1, 0});
                if (m.v > 0 && (m.v % 2)) psi.at(i, j).add_term(RMono{0, m.v - 1});
            }
    return {ChainMap{{1, -1}, std::move(phi)}, ChainMap{{-1, 1}, std::move(psi)}};
}

ChainMap sarkar_map(const CfkComplex& C) {
    auto [phi, psi] = phi_psi(C);
    return ChainMap{{0, 0}, RMat::identity(C.size()) + phi.mat * psi.mat};
}

namespace {

// One simplification pass over either the U-part (which = true) or V-part:
// makes the chosen part a partial matching via column/row operations.
// Returns true when it changed the complex.
bool simplify_pass(CfkComplex& C, bool upart) {
    const int n = C.size();
    auto expo = [&](const RElem& e) -> int {
        // exponent of the relevant pure power in the entry, 0 if absent
        for (const auto& m : e.terms()) {
            if (upart && m.u > 0 && m.v == 0) return m.u;
            if (!upart && m.v > 0 && m.u == 0) return m.v;
        }
        return 0;
    };
    auto mono_of = [&](int k) { return upart ? RMono{k, 0} : RMono{0, k}; };

    bool changed = false;
    std::set<int> used_src, used_dst;
    for (;;) {
        // pick the unused entry with minimal exponent, deterministic order
        int bi = -1, bj = -1, be = 0;
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                if (used_src.count(j) || used_dst.count(i)) continue;
                int e = expo(C.diff().at(i, j));
                if (e > 0 && (be == 0 || e < be)) { be = e; bi = i; bj = j; }
            }
        if (bi < 0) break;
        // eliminate the rest of row bi and column bj in this part
        for (int j = 0; j < n; ++j) {
            if (j == bj) continue;
            int e = expo(C.diff().at(bi, j));
            if (e == 0) continue;
            // basis change gen_j += mono^{e-be} gen_bj (a column op plus the
            // complementary row op keeps d conjugated correctly)
            RElem c(mono_of(e - be));
            if (e == be) c = RElem::unit();
            for (int r = 0; r < n; ++r) C.diff().at(r, j) += C.diff().at(r, bj) * c;
            for (int cc = 0; cc < n; ++cc) C.diff().at(bj, cc) += c * C.diff().at(j, cc);
            changed = true;
        }
        for (int i = 0; i < n; ++i) {
            if (i == bi) continue;
            int e = expo(C.diff().at(i, bj));
            if (e == 0) continue;
            RElem c(mono_of(e - be));
            if (e == be) c = RElem::unit();
            for (int cc = 0; cc < n; ++cc) C.diff().at(i, cc) += c * C.diff().at(bi, cc);
            for (int r = 0; r < n; ++r) C.diff().at(r, bi) += C.diff().at(r, i) * c;
            changed = true;
        }
        used_src.insert(bj);
        used_dst.insert(bi);
    }
    return changed;
}

bool part_is_matching(const CfkComplex& C, bool upart) {
    const int n = C.size();
    std::vector<int> out_deg(n, 0), in_deg(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (const auto& m : C.diff().at(i, j).terms()) {
                bool rel = upart ? (m.u > 0 && m.v == 0) : (m.v > 0 && m.u == 0);
                if (rel) { ++out_deg[j]; ++in_deg[i]; }
            }
    for (int k = 0; k < n; ++k)
        if (out_deg[k] > 1 || in_deg[k] > 1) return false;
    // no chaining: a target is never a source in the same part
    for (int k = 0; k < n; ++k)
        if (out_deg[k] && in_deg[k]) return false;
    return true;
}

}  // namespace

CfkComplex simplify_basis(const CfkComplex& C) {
    auto red = reduce(C);
    CfkComplex cur = red.reduced;
    for (int round = 0; round < 16; ++round) {
        simplify_pass(cur, true);
        simplify_pass(cur, false);
        if (part_is_matching(cur, true) && part_is_matching(cur, false)) {
            auto rep = validate_cfk(cur);
            if (!rep.ok()) throw error("simplify_basis: produced an invalid complex");
            return cur;
        }
    }
    throw error("simplify_basis: non-simplifiable basis");
}

int compute_tau(const CfkComplex& C) {
    CfkComplex S = simplify_basis(C);
    const int n = S.size();
    std::vector<bool> upaired(n, false);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (const auto& m : S.diff().at(i, j).terms())
                if (m.u > 0 && m.v == 0) upaired[i] = upaired[j] = true;
    std::vector<int> free_gens;
    for (int k = 0; k < n; ++k)
        if (!upaired[k]) free_gens.push_back(k);
    if (free_gens.size() != 1) throw error("compute_tau: not a knot complex");
    double a = alexander(S.gen(free_gens[0]).gr);
    return (int)std::lround(-a);
}

std::vector<CfkComplex> decompose_cfk(const CfkComplex& C) {
    CfkComplex R = reduce(C).reduced;
    const int n = R.size();
    std::vector<int> comp(n, -1);
    int ncomp = 0;
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> stack{s};
        comp[s] = ncomp;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w = 0; w < n; ++w) {
                bool adj = !R.diff().at(v, w).is_zero() || !R.diff().at(w, v).is_zero();
                if (adj && comp[w] < 0) {
                    comp[w] = ncomp;
                    stack.push_back(w);
                }
            }
        }
        ++ncomp;
    }
    std::vector<CfkComplex> out;
    for (int c = 0; c < ncomp; ++c) {
        std::vector<int> ix;
        for (int k = 0; k < n; ++k)
            if (comp[k] == c) ix.push_back(k);
        std::vector<Generator> gens;
        for (int k : ix) gens.push_back(R.gen(k));
        RMat d((int)ix.size(), (int)ix.size());
        for (size_t a = 0; a < ix.size(); ++a)
            for (size_t b = 0; b < ix.size(); ++b) d.at((int)a, (int)b) = R.diff().at(ix[a], ix[b]);
        out.emplace_back(std::move(gens), std::move(d));
    }
    return out;
}

std::optional<ChainMap> iso_cfk(const CfkComplex& C, const CfkComplex& D) {
    if (C.size() != D.size()) return std::nullopt;
    const int n = C.size();
    {
        // cheap obstruction: bigradings must agree as multisets
        auto key = [](const CfkComplex& X) {
            std::multiset<std::pair<int, int>> s;
            for (const auto& g : X.gens()) s.insert({g.gr.gu, g.gr.gv});
            return s;
        };
        if (key(C) != key(D)) return std::nullopt;
    }
    MapSlots ps = map_slots(D, C, {0, 0});
    MapSlots cs = map_slots(D, C, {-1, -1});  // where the commutator lives
    auto op = [&](const RMat& p) { return D.diff() * p + p * C.diff(); };
    F2Matrix A = slot_operator(ps, cs, n, n, op);
    auto basis = A.kernel();  // all graded chain maps C -> D
    if (basis.empty()) return std::nullopt;

    auto unit_invertible = [&](const std::vector<uint8_t>& x) -> bool {
        F2Matrix P0(n, n);
        for (size_t k = 0; k < ps.slots.size(); ++k)
            if (x[k] && ps.slots[k].mono.is_unit()) P0.set(ps.slots[k].row, ps.slots[k].col, true);
        return P0.rank() == n;
    };

    auto unit_rank = [&](const std::vector<uint8_t>& x) {
        F2Matrix P0(n, n);
        for (size_t k = 0; k < ps.slots.size(); ++k)
            if (x[k] && ps.slots[k].mono.is_unit()) P0.set(ps.slots[k].row, ps.slots[k].col, true);
        return P0.rank();
    };

    // greedy then randomized search for an invertible point of the space
    std::vector<uint8_t> acc(ps.slots.size(), 0);
    for (const auto& v : basis) {
        std::vector<uint8_t> trial = acc;
        for (size_t k = 0; k < trial.size(); ++k) trial[k] ^= v[k];
        if (unit_invertible(trial)) return ChainMap{{0, 0}, ps.assemble(n, n, trial)};
        if (unit_rank(trial) > unit_rank(acc)) acc = trial;
    }
    if (unit_invertible(acc)) return ChainMap{{0, 0}, ps.assemble(n, n, acc)};
    std::mt19937 rng(0xb0f1u);
    for (int t = 0; t < 500; ++t) {
        std::vector<uint8_t> x(ps.slots.size(), 0);
        for (const auto& v : basis)
            if (rng() & 1)
                for (size_t k = 0; k < x.size(); ++k) x[k] ^= v[k];
        if (unit_invertible(x)) return ChainMap{{0, 0}, ps.assemble(n, n, x)};
    }
    return std::nullopt;
}

CfkComplex direct_sum(const CfkComplex& C, const CfkComplex& D) {
    std::vector<Generator> gens = C.gens();
    for (const auto& g : D.gens()) {
        Generator h = g;
        while (true) {
            bool clash = false;
            for (const auto& e : gens)
                if (e.name == h.name) { clash = true; break; }
            if (!clash) break;
            h.name += "'";
        }
        gens.push_back(h);
    }
    const int nc = C.size(), nd = D.size();
    RMat d(nc + nd, nc + nd);
    for (int i = 0; i < nc; ++i)
        for (int j = 0; j < nc; ++j) d.at(i, j) = C.diff().at(i, j);
    for (int i = 0; i < nd; ++i)
        for (int j = 0; j < nd; ++j) d.at(nc + i, nc + j) = D.diff().at(i, j);
    return CfkComplex(std::move(gens), std::move(d));
}

CfkComplex cfk_unknot() {
    return CfkComplex({{"x", {0, 0}}}, RMat(1, 1));
}

CfkComplex cfk_trefoil_right() {
    std::vector<Generator> g{{"a", {0, -2}}, {"b", {-1, -1}}, {"c", {-2, 0}}};
    RMat d(3, 3);
    d.at(0, 1) = RElem::upow(1);  // d b = U a + V c
    d.at(2, 1) = RElem::vpow(1);
    return CfkComplex(std::move(g), std::move(d));
}

CfkComplex cfk_trefoil_left() { return dual(cfk_trefoil_right()); }

CfkComplex cfk_figure_eight() {
    std::vector<Generator> g{
        {"x0", {0, 0}}, {"a", {0, 0}}, {"b", {1, -1}}, {"c", {-1, 1}}, {"d", {0, 0}}};
    RMat d(5, 5);
    d.at(2, 1) = RElem::upow(1);  // d a = U b + V c
    d.at(3, 1) = RElem::vpow(1);
    d.at(4, 2) = RElem::vpow(1);  // d b = V d
    d.at(4, 3) = RElem::upow(1);  // d c = U d
    return CfkComplex(std::move(g), std::move(d));
}

CfkComplex cfk_sn(int n) {
    std::vector<Generator> g{{"a", {0, 0}},
                             {"b", {2 * n - 1, -1}},
                             {"c", {-1, 2 * n - 1}},
                             {"d", {2 * n - 2, 2 * n - 2}}};
    RMat d(4, 4);
    d.at(1, 0) = RElem::upow(n);  // d a = U^n b + V^n c
    d.at(2, 0) = RElem::vpow(n);
    d.at(3, 1) = RElem::vpow(n);  // d b = V^n d
    d.at(3, 2) = RElem::upow(n);  // d c = U^n d
    return CfkComplex(std::move(g), std::move(d));
}

CfkComplex cfk_cn(int n) {
    return direct_sum(CfkComplex({{"x", {0, 0}}}, RMat(1, 1)), cfk_sn(n));
}

}  // namespace bfk
