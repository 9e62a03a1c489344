#include "moorek/kprofile.hpp"

#include <algorithm>
#include <sstream>

namespace moorek {

namespace {

IntVec unit_vec(Index n, Index i) {
    IntVec v = IntVec::Zero(n);
    v(i) = 1;
    return v;
}

BilinearTable zero_table(const AbelianGroup& a, const AbelianGroup& b, const AbelianGroup& target) {
    return BilinearTable(static_cast<size_t>(a.rank()),
                         std::vector<IntVec>(static_cast<size_t>(b.rank()), IntVec::Zero(target.rank())));
}

// Bilinear extension of a generator table.
IntVec bilinear(const BilinearTable& t, const AbelianGroup& target, const IntVec& x, const IntVec& y) {
    IntVec out = IntVec::Zero(target.rank());
    for (Index a = 0; a < x.size(); ++a) {
        if (x(a) == 0) continue;
        for (Index b = 0; b < y.size(); ++b) {
            if (y(b) == 0) continue;
            Int c = checked_mul(x(a), y(b));
            const IntVec& e = t[static_cast<size_t>(a)][static_cast<size_t>(b)];
            for (Index k = 0; k < out.size(); ++k) out(k) = checked_add(out(k), checked_mul(c, e(k)));
        }
    }
    return target.reduce(out);
}

IntVec scaled(const AbelianGroup& g, const IntVec& v, Int c) {
    IntVec out(v.size());
    for (Index i = 0; i < v.size(); ++i) out(i) = checked_mul(v(i), c);
    return g.reduce(out);
}

// Solve M x = target modulo the relation lattice spanned by rel's columns.
std::optional<IntVec> solve_with_relations(const IntMat& m, const IntMat& rel, const IntVec& target) {
    IntMat a(m.rows(), m.cols() + rel.cols());
    if (rel.cols() == 0)
        a = m;
    else
        a << m, rel;
    auto z = solve_exact(a, target);
    if (!z) return std::nullopt;
    return IntVec(z->col(0).topRows(m.cols()));
}

} // namespace

std::string format_element(const AbelianGroup& g, const IntVec& coeffs) {
    IntVec c = g.reduce(coeffs);
    std::ostringstream os;
    bool first = true;
    for (Index i = 0; i < c.size(); ++i) {
        if (c(i) == 0) continue;
        if (!first) os << "+";
        if (c(i) != 1) os << c(i) << "*";
        os << g.labels()[static_cast<size_t>(i)];
        first = false;
    }
    if (first) return "0";
    return os.str();
}

// --- KProfile element operations ---------------------------------------------

IntVec KProfile::mult_raw(int di, const IntVec& x, int dj, const IntVec& y) const {
    return bilinear(ring[di % 2][dj % 2], red(di + dj), x, y);
}

IntVec KProfile::actl_raw(int di, const IntVec& x, int dj, const IntVec& b) const {
    return bilinear(actl[di % 2][dj % 2], modn(di + dj), x, b);
}

IntVec KProfile::actr_raw(int dj, const IntVec& b, int di, const IntVec& x) const {
    IntVec v = actl_raw(di, x, dj, b);
    if ((di % 2) * (dj % 2) != 0) v = scaled(modn(di + dj), v, -1);
    return modn(di + dj).reduce(v);
}

RedElement KProfile::mult(const RedElement& x, const RedElement& y) const {
    if (x.degree < 0 || x.degree > 1 || y.degree < 0 || y.degree > 1)
        throw input_error("mult: degree must be 0 or 1");
    if (x.coeffs.size() != red(x.degree).rank() || y.coeffs.size() != red(y.degree).rank())
        throw input_error("mult: element does not belong to this profile");
    return RedElement{(x.degree + y.degree) % 2, mult_raw(x.degree, x.coeffs, y.degree, y.coeffs)};
}

ModnElement KProfile::act(const RedElement& x, const ModnElement& b, Side side) const {
    if (x.degree < 0 || x.degree > 1 || b.degree < 0 || b.degree > 1)
        throw input_error("act: degree must be 0 or 1");
    if (x.coeffs.size() != red(x.degree).rank() || b.coeffs.size() != modn(b.degree).rank())
        throw input_error("act: element does not belong to this profile");
    IntVec v = side == Side::Left ? actl_raw(x.degree, x.coeffs, b.degree, b.coeffs)
                                  : actr_raw(b.degree, b.coeffs, x.degree, x.coeffs);
    return ModnElement{(x.degree + b.degree) % 2, std::move(v)};
}

// --- validation ----------------------------------------------------------------

namespace {

struct Validator {
    const KProfile& p;
    ValidationReport rep;

    void check(const std::string& name, bool pass, const std::string& detail = "") {
        rep.checks.push_back({name, pass, pass ? "" : detail});
        if (!pass) rep.pass = false;
    }

    std::string gen_name(const AbelianGroup& g, Index i) const {
        return g.labels()[static_cast<size_t>(i)];
    }

    void structural() {
        bool shapes = true;
        std::string why;
        auto expect = [&](bool ok, const std::string& w) {
            if (!ok && shapes) {
                shapes = false;
                why = w;
            }
        };
        expect(p.rho0.domain().same_group(p.k0red) && p.rho0.codomain().same_group(p.k0n), "rho0 endpoints");
        expect(p.rho1.domain().same_group(p.k1red) && p.rho1.codomain().same_group(p.k1n), "rho1 endpoints");
        expect(p.beta0.domain().same_group(p.k0n) && p.beta0.codomain().same_group(p.k1red), "beta0 endpoints");
        expect(p.beta1.domain().same_group(p.k1n) && p.beta1.codomain().same_group(p.k0red), "beta1 endpoints");
        check("map endpoints", shapes, why);

        bool wd = true;
        std::string detail;
        for (int i = 0; i < 2 && wd; ++i) {
            std::string w;
            if (!p.rho(i).is_well_defined(&w)) {
                wd = false;
                detail = "rho" + std::to_string(i) + ": " + w;
            } else if (!p.beta(i).is_well_defined(&w)) {
                wd = false;
                detail = "beta" + std::to_string(i) + ": " + w;
            }
        }
        check("rho/beta well-defined", wd, detail);

        bool tables = true;
        std::string tdetail;
        auto check_table = [&](const BilinearTable& t, const AbelianGroup& a, const AbelianGroup& b,
                               const AbelianGroup& target, const std::string& which) {
            if (!tables) return;
            if (t.size() != static_cast<size_t>(a.rank())) {
                tables = false;
                tdetail = which + ": row count";
                return;
            }
            for (Index i = 0; i < a.rank(); ++i) {
                const auto& row = t[static_cast<size_t>(i)];
                if (row.size() != static_cast<size_t>(b.rank())) {
                    tables = false;
                    tdetail = which + ": column count";
                    return;
                }
                for (Index j = 0; j < b.rank(); ++j) {
                    const IntVec& e = row[static_cast<size_t>(j)];
                    if (e.size() != target.rank()) {
                        tables = false;
                        tdetail = which + ": entry size at (" + gen_name(a, i) + "," + gen_name(b, j) + ")";
                        return;
                    }
                    Int da = a.factors()[static_cast<size_t>(i)];
                    Int db = b.factors()[static_cast<size_t>(j)];
                    if ((da > 0 && !target.is_zero(scaled(target, e, da))) ||
                        (db > 0 && !target.is_zero(scaled(target, e, db)))) {
                        tables = false;
                        tdetail = which + ": entry at (" + gen_name(a, i) + "," + gen_name(b, j) +
                                  ") is not killed by the generator orders";
                        return;
                    }
                }
            }
        };
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                check_table(p.ring[i][j], p.red(i), p.red(j), p.red(i + j),
                            "ring[" + std::to_string(i) + "][" + std::to_string(j) + "]");
                check_table(p.actl[i][j], p.red(i), p.modn(j), p.modn(i + j),
                            "act[" + std::to_string(i) + "][" + std::to_string(j) + "]");
            }
        check("tables bilinear well-defined", tables, tdetail);
    }

    void bockstein() {
        Int n = p.modulus;
        std::vector<GroupHom> cycle = {
            GroupHom::mult_by(-n, p.k0red), p.rho0, p.beta0,
            GroupHom::mult_by(-n, p.k1red), p.rho1, p.beta1,
        };
        try {
            ExactnessReport ex = is_exact(cycle, /*cyclic=*/true);
            static const char* node_names[6] = {"k0red (target of beta1)", "k0red (after -n)", "k0n",
                                                "k1red (target of beta0)", "k1red (after -n)", "k1n"};
            for (size_t i = 0; i < ex.nodes.size(); ++i)
                check(std::string("Bockstein exact at ") + node_names[i], ex.nodes[i].exact,
                      ex.nodes[i].detail);
        } catch (const error& e) {
            check("Bockstein 6-term sequence", false, e.what());
        }
    }

    void sign_rule() {
        bool ok = true;
        std::string detail;
        for (int i = 0; i < 2 && ok; ++i)
            for (int j = 0; j < 2 && ok; ++j) {
                const AbelianGroup& target = p.red(i + j);
                for (Index a = 0; a < p.red(i).rank() && ok; ++a)
                    for (Index b = 0; b < p.red(j).rank() && ok; ++b) {
                        IntVec xy = p.ring[i][j][static_cast<size_t>(a)][static_cast<size_t>(b)];
                        IntVec yx = p.ring[j][i][static_cast<size_t>(b)][static_cast<size_t>(a)];
                        Int sign = (i * j) % 2 ? -1 : 1;
                        if (target.reduce(yx) != scaled(target, xy, sign)) {
                            ok = false;
                            detail = gen_name(p.red(j), b) + "*" + gen_name(p.red(i), a) +
                                     " != (-1)^" + std::to_string(i * j) + " * " + gen_name(p.red(i), a) +
                                     "*" + gen_name(p.red(j), b);
                        }
                    }
            }
        check("graded commutativity (-1)^{ij}", ok, detail);
    }

    void ring_associativity() {
        bool ok = true;
        std::string detail;
        for (int i = 0; i < 2 && ok; ++i)
            for (int j = 0; j < 2 && ok; ++j)
                for (int k = 0; k < 2 && ok; ++k)
                    for (Index a = 0; a < p.red(i).rank() && ok; ++a)
                        for (Index b = 0; b < p.red(j).rank() && ok; ++b)
                            for (Index c = 0; c < p.red(k).rank() && ok; ++c) {
                                IntVec xa = unit_vec(p.red(i).rank(), a);
                                IntVec xb = unit_vec(p.red(j).rank(), b);
                                IntVec xc = unit_vec(p.red(k).rank(), c);
                                IntVec left = p.mult_raw((i + j) % 2, p.mult_raw(i, xa, j, xb), k, xc);
                                IntVec right = p.mult_raw(i, xa, (j + k) % 2, p.mult_raw(j, xb, k, xc));
                                if (left != right) {
                                    ok = false;
                                    detail = "(" + gen_name(p.red(i), a) + "*" + gen_name(p.red(j), b) +
                                             ")*" + gen_name(p.red(k), c);
                                }
                            }
        check("ring associativity", ok, detail);
    }

    void nilpotency() {
        if (!p.connected) {
            check("reduced classes nilpotent (skipped: non-connected space)", true);
            return;
        }
        bool ok = true;
        std::string detail;
        Index bound = p.k0red.rank() + p.k1red.rank() + 1;
        for (int i = 0; i < 2 && ok; ++i)
            for (Index a = 0; a < p.red(i).rank() && ok; ++a) {
                int deg = i;
                IntVec w = unit_vec(p.red(i).rank(), a);
                bool vanished = p.red(deg).is_zero(w);
                for (Index step = 1; step <= bound && !vanished; ++step) {
                    w = p.mult_raw(deg, w, i, unit_vec(p.red(i).rank(), a));
                    deg = (deg + i) % 2;
                    vanished = p.red(deg).is_zero(w);
                }
                if (!vanished) {
                    ok = false;
                    detail = gen_name(p.red(i), a) + " has no vanishing power up to exponent " +
                             std::to_string(bound + 1);
                }
            }
        check("reduced classes nilpotent", ok, detail);
    }

    void rho_compat() {
        bool ok = true;
        std::string detail;
        for (int i = 0; i < 2 && ok; ++i)
            for (int j = 0; j < 2 && ok; ++j)
                for (Index a = 0; a < p.red(i).rank() && ok; ++a)
                    for (Index b = 0; b < p.red(j).rank() && ok; ++b) {
                        IntVec x = unit_vec(p.red(i).rank(), a);
                        IntVec y = unit_vec(p.red(j).rank(), b);
                        IntVec lhs = p.actl_raw(i, x, j, p.rho(j).apply(y));
                        IntVec rhs = p.rho((i + j) % 2).apply(p.mult_raw(i, x, j, y));
                        if (lhs != rhs) {
                            ok = false;
                            detail = "mu_L(" + gen_name(p.red(i), a) + " (x) rho(" + gen_name(p.red(j), b) +
                                     ")) != rho(product)";
                        }
                        // mu_R(rho(y) (x) x) = rho(y*x)
                        IntVec lhs2 = p.actr_raw(j, p.rho(j).apply(y), i, x);
                        IntVec rhs2 = p.rho((i + j) % 2).apply(p.mult_raw(j, y, i, x));
                        if (ok && lhs2 != rhs2) {
                            ok = false;
                            detail = "mu_R(rho(" + gen_name(p.red(j), b) + ") (x) " + gen_name(p.red(i), a) +
                                     ") != rho(product)";
                        }
                    }
        check("reduction compatibility mu(rho) = rho(mu)", ok, detail);
    }

    void beta_compat() {
        bool ok_r = true, ok_l = true;
        std::string detail_r, detail_l;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (Index a = 0; a < p.red(i).rank(); ++a)
                    for (Index b = 0; b < p.modn(j).rank(); ++b) {
                        IntVec x = unit_vec(p.red(i).rank(), a);
                        IntVec bb = unit_vec(p.modn(j).rank(), b);
                        IntVec betab = p.beta(j).apply(bb);
                        // beta(mu_R(b (x) x)) = mu(beta(b) (x) x), on the nose
                        IntVec lhs = p.beta((i + j) % 2).apply(p.actr_raw(j, bb, i, x));
                        IntVec rhs = p.mult_raw((j + 1) % 2, betab, i, x);
                        if (ok_r && lhs != rhs) {
                            ok_r = false;
                            detail_r = "beta(mu_R(" + gen_name(p.modn(j), b) + " (x) " +
                                       gen_name(p.red(i), a) + "))";
                        }
                        // beta(mu_L(x (x) b)) = (-1)^i mu(x (x) beta(b))
                        IntVec lhs2 = p.beta((i + j) % 2).apply(p.actl_raw(i, x, j, bb));
                        IntVec rhs2 = scaled(p.red((i + j + 1) % 2),
                                             p.mult_raw(i, x, (j + 1) % 2, betab), i % 2 ? -1 : 1);
                        if (ok_l && lhs2 != rhs2) {
                            ok_l = false;
                            detail_l = "beta(mu_L(" + gen_name(p.red(i), a) + " (x) " +
                                       gen_name(p.modn(j), b) + "))";
                        }
                    }
        check("Bockstein compatibility beta(mu_R(id (x) id)) = mu(beta (x) id)", ok_r, detail_r);
        check("Bockstein compatibility beta(mu_L(id (x) id)) = (-1)^i mu(id (x) beta)", ok_l, detail_l);
    }

    void act_associativity() {
        bool ok = true;
        std::string detail;
        for (int i = 0; i < 2 && ok; ++i)
            for (int j = 0; j < 2 && ok; ++j)
                for (int t = 0; t < 2 && ok; ++t)
                    for (Index a = 0; a < p.red(i).rank() && ok; ++a)
                        for (Index b = 0; b < p.red(j).rank() && ok; ++b)
                            for (Index c = 0; c < p.modn(t).rank() && ok; ++c) {
                                IntVec x = unit_vec(p.red(i).rank(), a);
                                IntVec y = unit_vec(p.red(j).rank(), b);
                                IntVec bb = unit_vec(p.modn(t).rank(), c);
                                IntVec left = p.actl_raw(i, x, (j + t) % 2, p.actl_raw(j, y, t, bb));
                                IntVec right = p.actl_raw((i + j) % 2, p.mult_raw(i, x, j, y), t, bb);
                                if (left != right) {
                                    ok = false;
                                    detail = "mu_L(" + gen_name(p.red(i), a) + ", mu_L(" +
                                             gen_name(p.red(j), b) + ", " + gen_name(p.modn(t), c) + "))";
                                }
                            }
        check("module associativity of the action", ok, detail);
    }
};

} // namespace

ValidationReport validate(const KProfile& p) {
    Validator v{p, {}};
    v.structural();
    if (!v.rep.pass) return v.rep; // shape problems make the rest meaningless
    v.bockstein();
    v.sign_rule();
    v.ring_associativity();
    v.nilpotency();
    v.rho_compat();
    v.beta_compat();
    v.act_associativity();
    return v.rep;
}

std::string ValidationReport::to_string() const {
    std::ostringstream os;
    for (const auto& c : checks) {
        os << (c.pass ? "[pass] " : "[FAIL] ") << c.name;
        if (!c.detail.empty()) os << ": " << c.detail;
        os << "\n";
    }
    os << (pass ? "all checks passed" : "validation FAILED") << "\n";
    return os.str();
}

// --- generic mod-n layer and action assembly ------------------------------------

namespace {

struct ModnLayer {
    AbelianGroup group;
    GroupHom rho;  // red(s) -> group
    GroupHom beta; // group -> red(s+1)
    bool assumed_split = false;
    std::vector<bool> pinned; // per generator
};

// Builds K^s(X;Z_n) from the Bockstein sequence ends
//   0 -> red(s) (x) Z_n -> K^s(X;Z_n) -> Tor(red(s+1), Z_n) -> 0.
// Determined outright when either end vanishes; otherwise requires split
// data.
ModnLayer assemble_modn(const AbelianGroup& red_s, const AbelianGroup& red_s1, Int n,
                        const std::optional<SplittingData>& split, const std::string& what) {
    AbelianGroup tens = tensor_Zn(red_s, n);
    TorsionPart tor = tor_part(red_s1, n);

    ModnLayer out;
    if (tor.group.is_trivial()) {
        out.group = tens;
        out.rho = reduction_hom(red_s, n);
        out.beta = GroupHom::zero(tens, red_s1);
        out.pinned.assign(static_cast<size_t>(out.group.rank()), true);
        return out;
    }
    if (tens.is_trivial()) {
        out.group = tor.group;
        out.rho = GroupHom::zero(red_s, tor.group);
        out.beta = tor.embedding;
        out.pinned.assign(static_cast<size_t>(out.group.rank()), true);
        return out;
    }
    if (!split || !split->assume_split)
        throw ambiguity_error(what + ": extension 0 -> " + tens.to_string(false) + " -> ? -> " +
                              tor.group.to_string(false) +
                              " -> 0 is not determined; pass splitting data (assume_split)");

    std::vector<Int> orders;
    std::vector<std::string> labels;
    for (Index i = 0; i < tens.rank(); ++i) {
        orders.push_back(tens.factors()[static_cast<size_t>(i)]);
        labels.push_back(tens.labels()[static_cast<size_t>(i)]);
    }
    for (Index i = 0; i < tor.group.rank(); ++i) {
        orders.push_back(tor.group.factors()[static_cast<size_t>(i)]);
        labels.push_back(tor.group.labels()[static_cast<size_t>(i)] + "'");
    }
    NormalizedSummands ns = normalize_summands(orders, labels);
    out.group = ns.group;
    out.assumed_split = true;

    IntMat embed_t = ns.to_normal.leftCols(tens.rank());
    IntMat proj_r = ns.lift.bottomRows(tor.group.rank());
    out.rho = GroupHom(red_s, out.group, checked_matmul(embed_t, reduction_hom(red_s, n).matrix()));
    out.beta = GroupHom(out.group, red_s1, checked_matmul(tor.embedding.matrix(), proj_r));
    // Split-assumed Bockstein lifts are unbacked for even n: their additive
    // relation to the reduction part is exactly the assumed part.
    std::vector<bool> summand_pinned(static_cast<size_t>(tens.rank()), true);
    summand_pinned.resize(static_cast<size_t>(tens.rank() + tor.group.rank()), n % 2 == 1);
    out.pinned.assign(static_cast<size_t>(out.group.rank()), true);
    for (Index k = 0; k < out.group.rank(); ++k)
        for (Index m = 0; m < ns.to_normal.cols(); ++m)
            if (ns.to_normal(k, m) != 0 && !summand_pinned[static_cast<size_t>(m)])
                out.pinned[static_cast<size_t>(k)] = false;
    return out;
}

// Canonical module action: for b = rho(y) take rho(x*y); for a Bockstein lift
// take the preimage of (-1)^i x*beta(b) under beta that is killed by the
// generator orders. Every catalog action table is of this shape.
void assemble_act_uniform(KProfile& p) {
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const AbelianGroup& a = p.red(i);
            const AbelianGroup& bg = p.modn(j);
            const AbelianGroup& target = p.modn(i + j);
            BilinearTable table = zero_table(a, bg, target);
            for (Index ai = 0; ai < a.rank(); ++ai)
                for (Index bi = 0; bi < bg.rank(); ++bi) {
                    IntVec x = unit_vec(a.rank(), ai);
                    IntVec b = unit_vec(bg.rank(), bi);
                    IntVec betab = p.beta(j).apply(b);
                    IntVec value;
                    if (p.red((j + 1) % 2).is_zero(betab)) {
                        auto y = solve_mod(p.rho(j), b);
                        if (!y)
                            throw construction_error(
                                "action assembly: generator " + bg.labels()[static_cast<size_t>(bi)] +
                                " has beta = 0 but no rho-preimage (sequence not exact)");
                        value = p.rho((i + j) % 2).apply(p.mult_raw(i, x, j, *y));
                    } else {
                        IntVec w = p.mult_raw(i, x, (j + 1) % 2, betab);
                        if (i % 2) w = scaled(p.red((i + j + 1) % 2), w, -1);
                        // Preimage under beta, additionally killed by the
                        // generator orders so the table stays bilinear.
                        Int da = a.factors()[static_cast<size_t>(ai)];
                        Int db = bg.factors()[static_cast<size_t>(bi)];
                        Int g = da == 0 ? db : (db == 0 ? da : gcd_int(da, db));
                        const IntMat& bm = p.beta((i + j) % 2).matrix();
                        const AbelianGroup& red_t = p.red((i + j + 1) % 2);
                        IntMat stacked(bm.rows() + target.rank(), bm.cols());
                        stacked << bm, (IntMat::Identity(target.rank(), target.rank()) * g).eval();
                        IntMat rel_red = red_t.relation_matrix();
                        IntMat rel_tar = target.relation_matrix();
                        IntMat rel = IntMat::Zero(stacked.rows(), rel_red.cols() + rel_tar.cols());
                        rel.topLeftCorner(rel_red.rows(), rel_red.cols()) = rel_red;
                        rel.bottomRightCorner(rel_tar.rows(), rel_tar.cols()) = rel_tar;
                        IntVec rhs = IntVec::Zero(stacked.rows());
                        rhs.topRows(red_t.rank()) = red_t.reduce(w);
                        auto pre = solve_with_relations(stacked, rel, rhs);
                        if (!pre)
                            throw construction_error(
                                "action assembly: no bilinear Bockstein lift for (" +
                                a.labels()[static_cast<size_t>(ai)] + ", " +
                                bg.labels()[static_cast<size_t>(bi)] + ")");
                        value = target.reduce(*pre);
                    }
                    table[static_cast<size_t>(ai)][static_cast<size_t>(bi)] = std::move(value);
                }
            p.actl[i][j] = std::move(table);
        }
}

// Renames mod-n generators by their classification: rho-images become
// "rho(<integral class>)", Bockstein lifts become "lift(<beta image>)".
void relabel_modn(KProfile& p) {
    for (int s = 0; s < 2; ++s) {
        const AbelianGroup& g = p.modn(s);
        std::vector<std::string> labels;
        for (Index i = 0; i < g.rank(); ++i) {
            IntVec b = unit_vec(g.rank(), i);
            IntVec betab = p.beta(s).apply(b);
            if (p.red((s + 1) % 2).is_zero(betab)) {
                auto y = solve_mod(p.rho(s), b);
                labels.push_back(y ? "rho(" + format_element(p.red(s), *y) + ")"
                                   : "c" + std::to_string(i + 1));
            } else {
                labels.push_back("lift(" + format_element(p.red((s + 1) % 2), betab) + ")");
            }
        }
        AbelianGroup renamed(g.factors(), labels);
        if (s == 0)
            p.k0n = renamed;
        else
            p.k1n = renamed;
    }
}

void init_tables(KProfile& p) {
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            p.ring[i][j] = zero_table(p.red(i), p.red(j), p.red(i + j));
            p.actl[i][j] = zero_table(p.red(i), p.modn(j), p.modn(i + j));
        }
}

void require_modulus(Int n) {
    if (n < 2) throw input_error("modulus must be at least 2");
}

KProfile finish_profile(KProfile p) {
    relabel_modn(p);
    ValidationReport rep = validate(p);
    if (!rep.pass)
        throw construction_error("profile '" + p.name + "' failed validation:\n" + rep.to_string());
    return p;
}

} // namespace

// --- catalog leaves --------------------------------------------------------------

KProfile point_profile(Int n) {
    require_modulus(n);
    KProfile p;
    p.name = "point";
    p.modulus = n;
    p.k0red = p.k1red = p.k0n = p.k1n = AbelianGroup::trivial();
    p.rho0 = GroupHom::zero(p.k0red, p.k0n);
    p.rho1 = GroupHom::zero(p.k1red, p.k1n);
    p.beta0 = GroupHom::zero(p.k0n, p.k1red);
    p.beta1 = GroupHom::zero(p.k1n, p.k0red);
    p.modn_pinned[0].clear();
    p.modn_pinned[1].clear();
    init_tables(p);
    return finish_profile(std::move(p));
}

KProfile sphere_profile(Int k, Int n) {
    require_modulus(n);
    if (k < 0) throw input_error("sphere dimension must be >= 0");
    KProfile p;
    p.name = "S(" + std::to_string(k) + ")";
    p.modulus = n;
    p.connected = k >= 1;
    p.notes.push_back("standard-topology: sphere K-theory is built-in background data");
    int deg = static_cast<int>(k % 2);
    AbelianGroup z({0}, {"t"});
    if (deg == 0) {
        p.k0red = z;
        p.k1red = AbelianGroup::trivial();
    } else {
        p.k0red = AbelianGroup::trivial();
        p.k1red = z;
    }
    ModnLayer l0 = assemble_modn(p.k0red, p.k1red, n, std::nullopt, p.name + " K^0(;Z_n)");
    ModnLayer l1 = assemble_modn(p.k1red, p.k0red, n, std::nullopt, p.name + " K^1(;Z_n)");
    p.k0n = l0.group;
    p.k1n = l1.group;
    p.rho0 = l0.rho;
    p.rho1 = l1.rho;
    p.beta0 = l0.beta;
    p.beta1 = l1.beta;
    p.modn_pinned[0] = l0.pinned;
    p.modn_pinned[1] = l1.pinned;
    init_tables(p);
    if (k == 0) {
        // S^0 is two points: the reduced class is idempotent, not nilpotent.
        p.ring[0][0][0][0] = unit_vec(1, 0);
    }
    assemble_act_uniform(p);
    return finish_profile(std::move(p));
}

KProfile moore_profile(Int m, Int n) {
    require_modulus(n);
    if (m < 2) throw input_error("Moore parameter must be >= 2");
    if (n % m != 0)
        throw unsupported_error("catalog Moore space M(" + std::to_string(m) +
                                ") requires its parameter to divide the modulus " + std::to_string(n));
    KProfile p;
    p.name = "M(" + std::to_string(m) + ")";
    p.modulus = n;
    p.k0red = AbelianGroup::cyclic(m, "g");
    p.k1red = AbelianGroup::trivial();
    ModnLayer l0 = assemble_modn(p.k0red, p.k1red, n, std::nullopt, p.name + " K^0(;Z_n)");
    ModnLayer l1 = assemble_modn(p.k1red, p.k0red, n, std::nullopt, p.name + " K^1(;Z_n)");
    p.k0n = l0.group;
    p.k1n = l1.group;
    p.rho0 = l0.rho;
    p.rho1 = l1.rho;
    p.beta0 = l0.beta;
    p.beta1 = l1.beta;
    p.modn_pinned[0] = l0.pinned;
    p.modn_pinned[1] = l1.pinned;
    init_tables(p); // g*g = 0 and the trivial action, per the catalog data
    assemble_act_uniform(p);
    KProfile out = finish_profile(std::move(p));
    out.k1n = AbelianGroup(out.k1n.factors(), {"a_lambda"});
    return out;
}

KProfile suspend(const KProfile& p) {
    KProfile s;
    s.name = "susp(" + p.name + ")";
    s.modulus = p.modulus;
    s.connected = true; // a reduced suspension is path connected
    s.assumptions = p.assumptions;
    s.notes = p.notes;
    s.full_modn_trusted = p.full_modn_trusted;
    s.k0red = p.k1red;
    s.k1red = p.k0red;
    s.k0n = p.k1n;
    s.k1n = p.k0n;
    s.rho0 = p.rho1;
    s.rho1 = p.rho0;
    s.beta0 = p.beta1;
    s.beta1 = p.beta0;
    s.modn_pinned[0] = p.modn_pinned[1];
    s.modn_pinned[1] = p.modn_pinned[0];
    init_tables(s); // all products on a suspension vanish
    return finish_profile(std::move(s));
}

// --- Kunneth smash assembly -------------------------------------------------------

namespace {

struct SmashSummand {
    bool is_tor = false;
    int i = 0; // degree of the X generator
    Index a = 0, b = 0;
};

struct SmashDegree {
    std::vector<SmashSummand> meta;
    AbelianGroup group;
    IntMat to_normal; // group.rank x meta.size
    IntMat lift;      // meta.size x group.rank
};

Int tensor_order(Int da, Int db) {
    if (da == 0 && db == 0) return 0;
    if (da == 0) return db;
    if (db == 0) return da;
    return gcd_int(da, db);
}

Index find_tensor(const SmashDegree& d, int i, Index a, Index b) {
    for (size_t k = 0; k < d.meta.size(); ++k)
        if (!d.meta[k].is_tor && d.meta[k].i == i && d.meta[k].a == a && d.meta[k].b == b)
            return static_cast<Index>(k);
    return -1;
}

struct SmashResult {
    KProfile profile;
    SmashDegree deg[2];
};

// Elementary ring product of two tensor summands of the smash, with the
// Koszul sign; anything touching a Tor class is not determined by the
// Kunneth data and is zero here.
IntVec elementary_smash_product(const KProfile& x, const KProfile& y, const SmashResult& r, int s,
                                size_t m1, int t, size_t m2) {
    const SmashDegree& dtar = r.deg[(s + t) % 2];
    IntVec out = IntVec::Zero(dtar.group.rank());
    const SmashSummand& s1 = r.deg[s].meta[m1];
    const SmashSummand& s2 = r.deg[t].meta[m2];
    if (s1.is_tor || s2.is_tor) return out;
    int deg_b1 = (s1.i + s) % 2;
    int deg_a2 = s2.i;
    Int sign = (deg_b1 * deg_a2) % 2 ? -1 : 1;
    const IntVec& pa = x.ring[s1.i][s2.i][static_cast<size_t>(s1.a)][static_cast<size_t>(s2.a)];
    const IntVec& pb =
        y.ring[deg_b1][(s2.i + t) % 2][static_cast<size_t>(s1.b)][static_cast<size_t>(s2.b)];
    int ci = (s1.i + s2.i) % 2;
    for (Index c = 0; c < pa.size(); ++c) {
        if (pa(c) == 0) continue;
        for (Index d = 0; d < pb.size(); ++d) {
            if (pb(d) == 0) continue;
            Index summand = find_tensor(dtar, ci, c, d);
            if (summand < 0) continue; // an order-1 summand; the class is zero
            Int coeff = checked_mul(checked_mul(pa(c), pb(d)), sign);
            for (Index k = 0; k < out.size(); ++k)
                out(k) = checked_add(out(k), checked_mul(coeff, dtar.to_normal(k, summand)));
        }
    }
    return dtar.group.reduce(out);
}

SmashResult smash_impl(const KProfile& x, const KProfile& y,
                       const std::optional<SplittingData>& split) {
    if (x.modulus != y.modulus) throw input_error("smash: profiles have different moduli");
    Int n = x.modulus;

    SmashResult r;
    KProfile& p = r.profile;
    p.name = "smash(" + x.name + "," + y.name + ")";
    p.modulus = n;
    p.connected = x.connected || y.connected;
    p.assumptions = x.assumptions;
    p.assumptions.insert(p.assumptions.end(), y.assumptions.begin(), y.assumptions.end());
    p.notes = x.notes;
    p.notes.insert(p.notes.end(), y.notes.begin(), y.notes.end());
    p.full_modn_trusted = x.full_modn_trusted && y.full_modn_trusted;

    for (int s = 0; s < 2; ++s) {
        SmashDegree& d = r.deg[s];
        std::vector<Int> orders;
        std::vector<std::string> labels;
        size_t tensor_count = 0;
        for (int i = 0; i < 2; ++i) {
            const AbelianGroup& ga = x.red(i);
            const AbelianGroup& gb = y.red((i + s) % 2);
            for (Index a = 0; a < ga.rank(); ++a)
                for (Index b = 0; b < gb.rank(); ++b) {
                    Int o = tensor_order(ga.factors()[static_cast<size_t>(a)],
                                         gb.factors()[static_cast<size_t>(b)]);
                    if (o == 1) continue;
                    d.meta.push_back({false, i, a, b});
                    orders.push_back(o);
                    labels.push_back(ga.labels()[static_cast<size_t>(a)] + "⊗" +
                                     gb.labels()[static_cast<size_t>(b)]);
                    ++tensor_count;
                }
        }
        size_t tor_start = d.meta.size();
        for (int i = 0; i < 2; ++i) {
            const AbelianGroup& ga = x.red(i);
            const AbelianGroup& gb = y.red((i + 1 + s) % 2);
            for (Index a = 0; a < ga.rank(); ++a)
                for (Index b = 0; b < gb.rank(); ++b) {
                    Int da = ga.factors()[static_cast<size_t>(a)];
                    Int db = gb.factors()[static_cast<size_t>(b)];
                    if (da == 0 || db == 0) continue; // Tor with a free factor vanishes
                    Int o = gcd_int(da, db);
                    if (o == 1) continue;
                    d.meta.push_back({true, i, a, b});
                    orders.push_back(o);
                    labels.push_back(ga.labels()[static_cast<size_t>(a)] + "∧" +
                                     gb.labels()[static_cast<size_t>(b)] + "'");
                }
        }
        if (tensor_count > 0 && d.meta.size() > tor_start) {
            if (!split || !split->assume_split)
                throw ambiguity_error(
                    "smash: the Kunneth extension for degree " + std::to_string(s) + " of " + p.name +
                    " has nonzero tensor and Tor parts; supply splitting data (assume_split)");
            p.assumptions.push_back("Kunneth extension of degree " + std::to_string(s) + " of " +
                                    p.name + " assumed split");
            if (n % 2 == 0) p.full_modn_trusted = false;
        }
        NormalizedSummands ns = normalize_summands(orders, labels);
        d.group = ns.group;
        d.to_normal = ns.to_normal;
        d.lift = ns.lift;
    }
    p.k0red = r.deg[0].group;
    p.k1red = r.deg[1].group;

    // Ring over normalized generators via summand expansion.
    for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 2; ++t) {
            const SmashDegree& ds = r.deg[s];
            const SmashDegree& dt = r.deg[t];
            const SmashDegree& dtar = r.deg[(s + t) % 2];
            BilinearTable table = zero_table(ds.group, dt.group, dtar.group);
            for (Index ga = 0; ga < ds.group.rank(); ++ga)
                for (Index gb = 0; gb < dt.group.rank(); ++gb) {
                    IntVec val = IntVec::Zero(dtar.group.rank());
                    for (size_t m1 = 0; m1 < ds.meta.size(); ++m1) {
                        Int c1 = ds.lift(static_cast<Index>(m1), ga);
                        if (c1 == 0) continue;
                        for (size_t m2 = 0; m2 < dt.meta.size(); ++m2) {
                            Int c2 = dt.lift(static_cast<Index>(m2), gb);
                            if (c2 == 0) continue;
                            IntVec e = elementary_smash_product(x, y, r, s, m1, t, m2);
                            if (e.isZero()) continue;
                            Int c = checked_mul(c1, c2);
                            for (Index k = 0; k < val.size(); ++k)
                                val(k) = checked_add(val(k), checked_mul(c, e(k)));
                        }
                    }
                    table[static_cast<size_t>(ga)][static_cast<size_t>(gb)] = dtar.group.reduce(val);
                }
            p.ring[s][t] = std::move(table);
        }

    // Mod-n layers from the Bockstein ends.
    ModnLayer l0 = assemble_modn(p.k0red, p.k1red, n, split, p.name + " K^0(;Z_n)");
    ModnLayer l1 = assemble_modn(p.k1red, p.k0red, n, split, p.name + " K^1(;Z_n)");
    if (l0.assumed_split) {
        p.assumptions.push_back("Bockstein extension of K^0(" + p.name + ";Z_n) assumed split");
        if (n % 2 == 0) p.full_modn_trusted = false;
    }
    if (l1.assumed_split) {
        p.assumptions.push_back("Bockstein extension of K^1(" + p.name + ";Z_n) assumed split");
        if (n % 2 == 0) p.full_modn_trusted = false;
    }
    p.k0n = l0.group;
    p.k1n = l1.group;
    p.rho0 = l0.rho;
    p.rho1 = l1.rho;
    p.beta0 = l0.beta;
    p.beta1 = l1.beta;
    p.modn_pinned[0] = l0.pinned;
    p.modn_pinned[1] = l1.pinned;

    assemble_act_uniform(p);
    return r;
}

} // namespace

KProfile smash(const KProfile& x, const KProfile& y, const std::optional<SplittingData>& split) {
    SmashResult r = smash_impl(x, y, split);
    return finish_profile(std::move(r.profile));
}

// --- product assembly ---------------------------------------------------------------

namespace {

AbelianGroup relabel_group(const AbelianGroup& g, const std::string& prefix, const std::string& suffix) {
    std::vector<std::string> labels;
    for (const auto& l : g.labels()) labels.push_back(prefix + l + suffix);
    return AbelianGroup(g.factors(), labels);
}

struct DirectSum {
    AbelianGroup group;
    std::vector<IntMat> embed;   // part coords -> sum coords
    std::vector<IntMat> project; // sum coords -> part coords (section)
};

DirectSum direct_sum(const std::vector<const AbelianGroup*>& parts) {
    std::vector<Int> orders;
    std::vector<std::string> labels;
    for (const AbelianGroup* g : parts) {
        for (Index i = 0; i < g->rank(); ++i) {
            orders.push_back(g->factors()[static_cast<size_t>(i)]);
            labels.push_back(g->labels()[static_cast<size_t>(i)]);
        }
    }
    NormalizedSummands ns = normalize_summands(orders, labels);
    DirectSum out;
    out.group = ns.group;
    Index off = 0;
    for (const AbelianGroup* g : parts) {
        out.embed.push_back(ns.to_normal.middleCols(off, g->rank()));
        out.project.push_back(ns.lift.middleRows(off, g->rank()));
        off += g->rank();
    }
    return out;
}

} // namespace

KProfile product(const KProfile& x, const KProfile& y, const std::optional<SplittingData>& split) {
    if (x.modulus != y.modulus) throw input_error("product: profiles have different moduli");
    Int n = x.modulus;
    SmashResult sm = smash_impl(x, y, split);
    const KProfile& s = sm.profile;

    KProfile p;
    p.name = "prod(" + x.name + "," + y.name + ")";
    p.modulus = n;
    p.connected = x.connected && y.connected;
    p.assumptions = s.assumptions;
    p.notes = s.notes;
    p.full_modn_trusted = s.full_modn_trusted;

    // Relabeled copies of the factor groups; the smash part keeps its labels.
    AbelianGroup xr[2] = {relabel_group(x.k0red, "", "×1"), relabel_group(x.k1red, "", "×1")};
    AbelianGroup yr[2] = {relabel_group(y.k0red, "1⊗", ""), relabel_group(y.k1red, "1⊗", "")};

    DirectSum red[2], mod[2];
    for (int t = 0; t < 2; ++t) {
        red[t] = direct_sum({&xr[t], &yr[t], &s.red(t)});
        mod[t] = direct_sum({&x.modn(t), &y.modn(t), &s.modn(t)});
    }
    p.k0red = red[0].group;
    p.k1red = red[1].group;
    p.k0n = mod[0].group;
    p.k1n = mod[1].group;

    // Block rho and beta.
    const KProfile* parts[3] = {&x, &y, &s};
    for (int t = 0; t < 2; ++t) {
        std::vector<bool> summand_pinned;
        for (int q = 0; q < 3; ++q) {
            const auto& mask = parts[q]->modn_pinned[t];
            for (Index i = 0; i < parts[q]->modn(t).rank(); ++i)
                summand_pinned.push_back(mask.empty() ? true : mask[static_cast<size_t>(i)]);
        }
        auto& out_mask = p.modn_pinned[t];
        out_mask.assign(static_cast<size_t>(mod[t].group.rank()), true);
        Index off = 0;
        for (int q = 0; q < 3; ++q) {
            for (Index i = 0; i < parts[q]->modn(t).rank(); ++i) {
                if (!summand_pinned[static_cast<size_t>(off + i)]) {
                    IntVec col = checked_matvec(mod[t].embed[q], unit_vec(parts[q]->modn(t).rank(), i));
                    for (Index k = 0; k < col.size(); ++k)
                        if (col(k) != 0) out_mask[static_cast<size_t>(k)] = false;
                }
            }
            off += parts[q]->modn(t).rank();
        }
    }
    for (int t = 0; t < 2; ++t) {
        IntMat rho_m = IntMat::Zero(mod[t].group.rank(), red[t].group.rank());
        IntMat beta_m = IntMat::Zero(red[(t + 1) % 2].group.rank(), mod[t].group.rank());
        for (int q = 0; q < 3; ++q) {
            rho_m += checked_matmul(checked_matmul(mod[t].embed[q], parts[q]->rho(t).matrix()),
                                    red[t].project[q]);
            beta_m += checked_matmul(
                checked_matmul(red[(t + 1) % 2].embed[q], parts[q]->beta(t).matrix()),
                mod[t].project[q]);
        }
        if (t == 0) {
            p.rho0 = GroupHom(p.k0red, p.k0n, rho_m);
            p.beta0 = GroupHom(p.k0n, p.k1red, beta_m);
        } else {
            p.rho1 = GroupHom(p.k1red, p.k1n, rho_m);
            p.beta1 = GroupHom(p.k1n, p.k0red, beta_m);
        }
    }

    // Elementary tensor (X gen a of degree i) x (Y gen b of degree j) landing
    // in the smash part of the product.
    auto embed_tensor = [&](int i, Index a, int j, Index b) -> IntVec {
        int sdeg = (i + j) % 2;
        Index summand = find_tensor(sm.deg[sdeg], i % 2, a, b);
        IntVec v = IntVec::Zero(sm.deg[sdeg].group.rank());
        if (summand >= 0) v = sm.deg[sdeg].to_normal.col(summand);
        return checked_matvec(red[sdeg].embed[2], v);
    };

    // Ring: within-part products are functorial, the factor cross terms
    // multiply into the smash tensor part, and products against smash Tor
    // classes vanish as in the smash profile.
    for (int sd = 0; sd < 2; ++sd)
        for (int td = 0; td < 2; ++td) {
            const AbelianGroup& ga = red[sd].group;
            const AbelianGroup& gb = red[td].group;
            const AbelianGroup& gt = red[(sd + td) % 2].group;
            BilinearTable table = zero_table(ga, gb, gt);
            for (Index u = 0; u < ga.rank(); ++u)
                for (Index v = 0; v < gb.rank(); ++v) {
                    IntVec val = IntVec::Zero(gt.rank());
                    auto add = [&](const IntVec& w, Int c) {
                        if (c == 0) return;
                        for (Index k = 0; k < val.size(); ++k)
                            val(k) = checked_add(val(k), checked_mul(c, w(k)));
                    };
                    IntVec ua[3], vb[3];
                    for (int q = 0; q < 3; ++q) {
                        ua[q] = checked_matvec(red[sd].project[q], unit_vec(ga.rank(), u));
                        vb[q] = checked_matvec(red[td].project[q], unit_vec(gb.rank(), v));
                    }
                    // Within-part products.
                    for (int q = 0; q < 3; ++q) {
                        IntVec w = parts[q]->mult_raw(sd, ua[q], td, vb[q]);
                        if (!w.isZero()) add(checked_matvec(red[(sd + td) % 2].embed[q], w), 1);
                    }
                    // (X part) * (Y part) = mu(a (x) b).
                    for (Index a = 0; a < ua[0].size(); ++a)
                        for (Index b = 0; b < vb[1].size(); ++b)
                            add(embed_tensor(sd, a, td, b), checked_mul(ua[0](a), vb[1](b)));
                    // (Y part) * (X part) = (-1)^{|a||b|} mu(a (x) b).
                    {
                        Int sign = (sd * td) % 2 ? -1 : 1;
                        for (Index b = 0; b < ua[1].size(); ++b)
                            for (Index a = 0; a < vb[0].size(); ++a)
                                add(embed_tensor(td, a, sd, b),
                                    checked_mul(sign, checked_mul(ua[1](b), vb[0](a))));
                    }
                    // (X part) * (smash tensor c (x) d) = (a*c) (x) d.
                    for (size_t m = 0; m < sm.deg[td].meta.size(); ++m) {
                        const SmashSummand& ms = sm.deg[td].meta[m];
                        if (ms.is_tor) continue;
                        Int cm = 0;
                        for (Index k = 0; k < vb[2].size(); ++k)
                            cm = checked_add(cm,
                                             checked_mul(vb[2](k), sm.deg[td].lift(static_cast<Index>(m), k)));
                        if (cm == 0) continue;
                        int cdeg = ms.i, ddeg = (ms.i + td) % 2;
                        IntVec ac = x.mult_raw(sd, ua[0], cdeg, unit_vec(x.red(cdeg).rank(), ms.a));
                        for (Index e = 0; e < ac.size(); ++e)
                            add(embed_tensor((sd + cdeg) % 2, e, ddeg, ms.b),
                                checked_mul(cm, ac(e)));
                        // (Y part) * (smash tensor) = (-1)^{|b||c|} c (x) (b*d).
                        Int sign = (sd * cdeg) % 2 ? -1 : 1;
                        IntVec bd = y.mult_raw(sd, ua[1], ddeg, unit_vec(y.red(ddeg).rank(), ms.b));
                        for (Index f = 0; f < bd.size(); ++f)
                            add(embed_tensor(cdeg, ms.a, (sd + ddeg) % 2, f),
                                checked_mul(sign, checked_mul(cm, bd(f))));
                    }
                    // (smash tensor c (x) d) * (X part) = (-1)^{|d||a|} (c*a) (x) d.
                    for (size_t m = 0; m < sm.deg[sd].meta.size(); ++m) {
                        const SmashSummand& ms = sm.deg[sd].meta[m];
                        if (ms.is_tor) continue;
                        Int cm = 0;
                        for (Index k = 0; k < ua[2].size(); ++k)
                            cm = checked_add(cm,
                                             checked_mul(ua[2](k), sm.deg[sd].lift(static_cast<Index>(m), k)));
                        if (cm == 0) continue;
                        int cdeg = ms.i, ddeg = (ms.i + sd) % 2;
                        Int sign = (ddeg * td) % 2 ? -1 : 1;
                        IntVec ca = x.mult_raw(cdeg, unit_vec(x.red(cdeg).rank(), ms.a), td, vb[0]);
                        for (Index e = 0; e < ca.size(); ++e)
                            add(embed_tensor((cdeg + td) % 2, e, ddeg, ms.b),
                                checked_mul(sign, checked_mul(cm, ca(e))));
                        // (smash tensor) * (Y part) = c (x) (d*b), no sign.
                        IntVec db = y.mult_raw(ddeg, unit_vec(y.red(ddeg).rank(), ms.b), td, vb[1]);
                        for (Index f = 0; f < db.size(); ++f)
                            add(embed_tensor(cdeg, ms.a, (ddeg + td) % 2, f), checked_mul(cm, db(f)));
                    }
                    table[static_cast<size_t>(u)][static_cast<size_t>(v)] = gt.reduce(val);
                }
            p.ring[sd][td] = std::move(table);
        }

    assemble_act_uniform(p);
    return finish_profile(std::move(p));
}

KProfile mn_x_sigma_mn(Int n) {
    require_modulus(n);
    KProfile m = moore_profile(n, n);
    KProfile sig = suspend(m);
    sig.k1red = AbelianGroup(sig.k1red.factors(), {"u"});
    sig.rho1 = GroupHom(sig.k1red, sig.k1n, sig.rho1.matrix());
    sig.beta0 = GroupHom(sig.k0n, sig.k1red, sig.beta0.matrix());
    relabel_modn(sig);
    sig.name = "susp(M(" + std::to_string(n) + "))";

    KProfile p = product(m, sig, SplittingData{true});
    p.name = "MxSM(" + std::to_string(n) + ")";
    p.assumptions.push_back("mod-n carriers of MxSM(" + std::to_string(n) +
                            ") stored as Z_" + std::to_string(n) +
                            "^4 (split Bockstein/Kunneth extensions assumed)");
    if (n % 2 == 0) p.full_modn_trusted = false;
    return p;
}

KProfile catalog(const SpaceExpr& expr, Int n, const std::optional<SplittingData>& split) {
    require_modulus(n);
    using K = SpaceExpr::Kind;
    switch (expr.kind) {
    case K::Point:
        return point_profile(n);
    case K::Sphere:
        return sphere_profile(expr.param, n);
    case K::Moore:
        return moore_profile(expr.param, n);
    case K::Susp: {
        const SpaceExpr& c = expr.children[0];
        if (c.kind == K::Moore) {
            // The distinguished suspension carries the paper's generator name.
            KProfile m = moore_profile(c.param, n);
            KProfile sig = suspend(m);
            sig.k1red = AbelianGroup(sig.k1red.factors(), {"u"});
            sig.rho1 = GroupHom(sig.k1red, sig.k1n, sig.rho1.matrix());
            sig.beta0 = GroupHom(sig.k0n, sig.k1red, sig.beta0.matrix());
            relabel_modn(sig);
            return sig;
        }
        return suspend(catalog(c, n, split));
    }
    case K::Smash:
        return smash(catalog(expr.children[0], n, split), catalog(expr.children[1], n, split), split);
    case K::Prod: {
        const SpaceExpr& a = expr.children[0];
        const SpaceExpr& b = expr.children[1];
        // prod(M(n), susp(M(n))) is the distinguished catalog entry.
        if (a.kind == K::Moore && a.param == n && b.kind == K::Susp &&
            b.children[0].kind == K::Moore && b.children[0].param == n)
            return mn_x_sigma_mn(n);
        return product(catalog(a, n, split), catalog(b, n, split), split);
    }
    case K::MnXSigmaMn:
        if (expr.param != n)
            throw input_error("MxSM(" + std::to_string(expr.param) +
                              ") requires the modulus to equal its parameter (got n = " +
                              std::to_string(n) + ")");
        return mn_x_sigma_mn(n);
    }
    throw input_error("catalog: unknown space constructor");
}

} // namespace moorek
