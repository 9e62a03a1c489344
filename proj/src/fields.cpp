#include "moorek/fields.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace moorek {

namespace {

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

struct VecLess {
    bool operator()(const IntVec& a, const IntVec& b) const {
        return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(),
                                            b.data() + b.size());
    }
};

} // namespace

// --- FiniteNilRing ------------------------------------------------------------------

FiniteNilRing::FiniteNilRing(AbelianGroup additive, BilinearTable mult)
    : additive_(std::move(additive)), mult_(std::move(mult)) {
    if (!additive_.is_finite()) throw unsupported_error("FiniteNilRing requires a finite additive group");
    Index r = additive_.rank();
    if (mult_.size() != static_cast<size_t>(r))
        throw input_error("FiniteNilRing: multiplication table shape mismatch");
    for (Index i = 0; i < r; ++i) {
        if (mult_[static_cast<size_t>(i)].size() != static_cast<size_t>(r))
            throw input_error("FiniteNilRing: multiplication table shape mismatch");
        for (Index j = 0; j < r; ++j) {
            IntVec& e = mult_[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (e.size() != r) throw input_error("FiniteNilRing: table entry size mismatch");
            e = additive_.reduce(e);
            // Bilinearity: the entry must be killed by both generator orders.
            for (Int d : {additive_.factors()[static_cast<size_t>(i)],
                          additive_.factors()[static_cast<size_t>(j)]}) {
                IntVec s(e.size());
                for (Index k = 0; k < e.size(); ++k) s(k) = checked_mul(e(k), d);
                if (!additive_.is_zero(s))
                    throw input_error("FiniteNilRing: table entry not compatible with generator orders");
            }
        }
    }
    // Commutativity and associativity on generators.
    for (Index i = 0; i < r; ++i)
        for (Index j = 0; j < r; ++j) {
            if (mult_[static_cast<size_t>(i)][static_cast<size_t>(j)] !=
                mult_[static_cast<size_t>(j)][static_cast<size_t>(i)])
                throw construction_error("FiniteNilRing: multiplication is not commutative");
            for (Index k = 0; k < r; ++k) {
                IntVec ei = IntVec::Zero(r), ej = IntVec::Zero(r), ek = IntVec::Zero(r);
                ei(i) = 1;
                ej(j) = 1;
                ek(k) = 1;
                if (multiply(multiply(ei, ej), ek) != multiply(ei, multiply(ej, ek)))
                    throw construction_error("FiniteNilRing: multiplication is not associative");
            }
        }
    // Nilpotency of every element, powers iterated up to the ring order.
    Int order = additive_.order();
    if (order <= 4096) {
        for (const IntVec& a : additive_.elements()) {
            IntVec w = a;
            bool vanished = additive_.is_zero(w);
            for (Int step = 0; step < order && !vanished; ++step) {
                w = multiply(w, a);
                vanished = additive_.is_zero(w);
            }
            if (!vanished)
                throw construction_error("FiniteNilRing: element " + format_element(additive_, a) +
                                         " is not nilpotent");
        }
    } else {
        for (Index i = 0; i < r; ++i) {
            IntVec a = IntVec::Zero(r);
            a(i) = 1;
            IntVec w = a;
            bool vanished = false;
            for (Index step = 0; step <= r && !vanished; ++step) {
                w = multiply(w, a);
                vanished = additive_.is_zero(w);
            }
            if (!vanished)
                throw construction_error("FiniteNilRing: generator is not nilpotent");
        }
    }
}

FiniteNilRing FiniteNilRing::zero_ring(AbelianGroup additive) {
    Index r = additive.rank();
    BilinearTable t(static_cast<size_t>(r),
                    std::vector<IntVec>(static_cast<size_t>(r), IntVec::Zero(r)));
    return FiniteNilRing(std::move(additive), std::move(t));
}

IntVec FiniteNilRing::multiply(const IntVec& a, const IntVec& b) const {
    return bilinear(mult_, additive_, additive_.reduce(a), additive_.reduce(b));
}

// --- cohomology profiles --------------------------------------------------------------

const AbelianGroup& CohomologyProfile::h(size_t k) const {
    static const AbelianGroup zero = AbelianGroup::trivial();
    if (k == 0 || k > entries.size()) return zero;
    return entries[k - 1];
}

namespace {

// Reduced integral cohomology as a vector indexed from degree 0.
using RedCoh = std::vector<AbelianGroup>;

AbelianGroup concat_groups(const AbelianGroup& a, const AbelianGroup& b) {
    std::vector<Int> orders;
    std::vector<std::string> labels;
    for (Index i = 0; i < a.rank(); ++i) {
        orders.push_back(a.factors()[static_cast<size_t>(i)]);
        labels.push_back(a.labels()[static_cast<size_t>(i)]);
    }
    for (Index i = 0; i < b.rank(); ++i) {
        orders.push_back(b.factors()[static_cast<size_t>(i)]);
        labels.push_back(b.labels()[static_cast<size_t>(i)]);
    }
    return AbelianGroup::normalized(orders, labels);
}

AbelianGroup tensor_groups(const AbelianGroup& a, const AbelianGroup& b) {
    std::vector<Int> orders;
    for (Index i = 0; i < a.rank(); ++i)
        for (Index j = 0; j < b.rank(); ++j) {
            Int da = a.factors()[static_cast<size_t>(i)];
            Int db = b.factors()[static_cast<size_t>(j)];
            Int o = (da == 0 && db == 0) ? 0 : (da == 0 ? db : (db == 0 ? da : gcd_int(da, db)));
            if (o != 1) orders.push_back(o);
        }
    return AbelianGroup::normalized(orders, {});
}

AbelianGroup tor_groups(const AbelianGroup& a, const AbelianGroup& b) {
    std::vector<Int> orders;
    for (Index i = 0; i < a.rank(); ++i)
        for (Index j = 0; j < b.rank(); ++j) {
            Int da = a.factors()[static_cast<size_t>(i)];
            Int db = b.factors()[static_cast<size_t>(j)];
            if (da == 0 || db == 0) continue;
            Int o = gcd_int(da, db);
            if (o != 1) orders.push_back(o);
        }
    return AbelianGroup::normalized(orders, {});
}

RedCoh reduced_cohomology(const SpaceExpr& e) {
    using K = SpaceExpr::Kind;
    if (!e.cohomology_annotation.empty()) {
        RedCoh c(e.cohomology_annotation.size() + 1, AbelianGroup::trivial());
        for (size_t k = 0; k < e.cohomology_annotation.size(); ++k)
            c[k + 1] = e.cohomology_annotation[k];
        return c;
    }
    switch (e.kind) {
    case K::Point:
        return {};
    case K::Sphere: {
        RedCoh c(static_cast<size_t>(e.param) + 1, AbelianGroup::trivial());
        c[static_cast<size_t>(e.param)] = AbelianGroup({0}, {"t"});
        return c;
    }
    case K::Moore: {
        RedCoh c(3, AbelianGroup::trivial());
        c[2] = AbelianGroup::cyclic(e.param, "g");
        return c;
    }
    case K::Susp: {
        RedCoh inner = reduced_cohomology(e.children[0]);
        RedCoh c(inner.size() + 1, AbelianGroup::trivial());
        for (size_t k = 0; k < inner.size(); ++k) c[k + 1] = inner[k];
        return c;
    }
    case K::Smash: {
        RedCoh a = reduced_cohomology(e.children[0]);
        RedCoh b = reduced_cohomology(e.children[1]);
        RedCoh c(a.size() + b.size() + 1, AbelianGroup::trivial());
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < b.size(); ++j) {
                c[i + j] = concat_groups(c[i + j], tensor_groups(a[i], b[j]));
                c[i + j + 1] = concat_groups(c[i + j + 1], tor_groups(a[i], b[j]));
            }
        return c;
    }
    case K::Prod: {
        RedCoh a = reduced_cohomology(e.children[0]);
        RedCoh b = reduced_cohomology(e.children[1]);
        SpaceExpr sm = SpaceExpr::smash(e.children[0], e.children[1]);
        RedCoh s = reduced_cohomology(sm);
        size_t top = std::max({a.size(), b.size(), s.size()});
        RedCoh c(top, AbelianGroup::trivial());
        for (size_t k = 0; k < top; ++k) {
            AbelianGroup g = k < a.size() ? a[k] : AbelianGroup::trivial();
            if (k < b.size()) g = concat_groups(g, b[k]);
            if (k < s.size()) g = concat_groups(g, s[k]);
            c[k] = g;
        }
        return c;
    }
    case K::MnXSigmaMn: {
        SpaceExpr expanded = SpaceExpr::prod(SpaceExpr::moore(e.param),
                                             SpaceExpr::susp(SpaceExpr::moore(e.param)));
        return reduced_cohomology(expanded);
    }
    }
    throw input_error("space_cohomology: unknown constructor");
}

} // namespace

CohomologyProfile space_cohomology(const SpaceExpr& e) {
    RedCoh c = reduced_cohomology(e);
    CohomologyProfile out;
    for (size_t k = 1; k < c.size(); ++k) out.entries.push_back(c[k]);
    out.entries.push_back(AbelianGroup::trivial()); // explicit zero top entry
    return out;
}

// --- the ~_n quotient -------------------------------------------------------------------

std::vector<std::vector<IntVec>> sim_n_quotient(const FiniteNilRing& r, Int n) {
    if (n < 2) throw input_error("sim_n_quotient: modulus must be at least 2");
    if (n_primary_part(r.additive(), n).factors() != r.additive().factors())
        throw unsupported_error("sim_n_quotient: the additive group must be entirely n-primary "
                                "(apply n_primary_part upstream)");
    std::vector<IntVec> elems = r.elements();
    std::map<IntVec, int, VecLess> index;
    for (size_t i = 0; i < elems.size(); ++i) index.emplace(elems[i], static_cast<int>(i));

    // Union-find over b = a + n z + a z for all a, z.
    std::vector<int> parent(elems.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int v) {
        while (parent[static_cast<size_t>(v)] != v) {
            parent[static_cast<size_t>(v)] = parent[static_cast<size_t>(parent[static_cast<size_t>(v)])];
            v = parent[static_cast<size_t>(v)];
        }
        return v;
    };
    auto unite = [&](int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
    };
    const AbelianGroup& g = r.additive();
    for (size_t ia = 0; ia < elems.size(); ++ia)
        for (size_t iz = 0; iz < elems.size(); ++iz) {
            IntVec nz(elems[iz].size());
            for (Index k = 0; k < nz.size(); ++k) nz(k) = checked_mul(n, elems[iz](k));
            IntVec b = g.reduce(elems[ia] + nz + r.multiply(elems[ia], elems[iz]));
            unite(static_cast<int>(ia), index.at(b));
        }

    std::map<int, std::vector<IntVec>> buckets;
    for (size_t i = 0; i < elems.size(); ++i) buckets[find(static_cast<int>(i))].push_back(elems[i]);
    std::vector<std::vector<IntVec>> classes;
    for (auto& [root, members] : buckets) {
        std::sort(members.begin(), members.end(), VecLess{});
        classes.push_back(std::move(members));
    }
    std::sort(classes.begin(), classes.end(),
              [](const auto& a, const auto& b) { return VecLess{}(a.front(), b.front()); });
    return classes;
}

SimnReport lemma_tec_check(const FiniteNilRing& r, Int n) {
    SimnReport rep;
    rep.classes = static_cast<Int>(sim_n_quotient(r, n).size());
    rep.tensor_order = tensor_Zn(r.additive(), n).order();
    rep.inequality = rep.classes >= rep.tensor_order;
    rep.note = "units r^{-1} of Z_(n) are absorbed into the ring element and not modeled separately";
    return rep;
}

// --- counting ----------------------------------------------------------------------------

Int heven_order(const CohomologyProfile& c, Int n) {
    if (n < 2) throw input_error("heven_order: modulus must be at least 2");
    if (!c.entries.empty() && !c.entries.back().is_trivial())
        throw input_error("heven_order: the top cohomology entry is nonzero; supply an explicit "
                          "dimension bound by listing a zero group past the top degree");
    Int total = 1;
    for (size_t m = 2; m <= c.top() + 1; m += 2) {
        Int part = tensor_Zn(c.h(m), n).is_trivial() ? 1 : tensor_Zn(c.h(m), n).order();
        Int torp = tor_Zn(c.h(m + 1), n).is_trivial() ? 1 : tor_Zn(c.h(m + 1), n).order();
        total = checked_mul(total, checked_mul(part, torp));
    }
    return total;
}

CountReport dadarlat_count_check(const KProfile& p, const CohomologyProfile& c, Int n) {
    CountReport rep;
    rep.tor_hypothesis = true;
    for (size_t k = 1; k <= c.top(); ++k)
        if (!tor_Zn(c.h(k), n).is_trivial()) rep.tor_hypothesis = false;
    rep.k0_tensor_order = tensor_Zn(p.k0red, n).is_finite() ? tensor_Zn(p.k0red, n).order() : -1;
    rep.heven = heven_order(c, n);
    rep.equal = rep.k0_tensor_order == rep.heven;
    rep.asserted = rep.tor_hypothesis;
    return rep;
}

PimsnerPieces pimsner_pieces(const KProfile& p, Int rank, const IntVec& e_tilde) {
    if (rank < 2) throw input_error("pimsner_pieces: the bundle rank must be at least 2");
    if (e_tilde.size() != p.k0red.rank())
        throw input_error("pimsner_pieces: reduced class does not belong to K~0 of the profile");
    IntVec et = p.k0red.reduce(e_tilde);

    // Unitalized K^0(X) = Z<1> + K~0(X); the unit coordinate goes last so the
    // invariant-factor ordering is preserved.
    std::vector<Int> factors = p.k0red.factors();
    std::vector<std::string> labels = p.k0red.labels();
    factors.push_back(0);
    labels.push_back("1");
    AbelianGroup k0full(factors, labels);
    Index g = p.k0red.rank();

    IntMat m0 = IntMat::Zero(g + 1, g + 1);
    // column of the unit: (1-rank) * 1 - e~.
    for (Index i = 0; i < g; ++i) m0(i, g) = checked_neg(et(i));
    m0(g, g) = 1 - rank;
    // columns of the reduced generators: (1-rank) x - e~ * x.
    for (Index j = 0; j < g; ++j) {
        IntVec ej = IntVec::Zero(g);
        ej(j) = 1;
        IntVec prod = p.mult_raw(0, et, 0, ej);
        for (Index i = 0; i < g; ++i)
            m0(i, j) = checked_sub(i == j ? 1 - rank : 0, prod(i));
    }
    Subquotients sq0 = subquotients(GroupHom(k0full, k0full, m0));

    // K^1(X) = K~1(X); multiplication by (1-rank) - e~ through the module
    // structure.
    Index g1 = p.k1red.rank();
    IntMat m1 = IntMat::Zero(g1, g1);
    for (Index j = 0; j < g1; ++j) {
        IntVec ej = IntVec::Zero(g1);
        ej(j) = 1;
        IntVec prod = p.mult_raw(0, et, 1, ej);
        for (Index i = 0; i < g1; ++i)
            m1(i, j) = checked_sub(i == j ? 1 - rank : 0, prod(i));
    }
    Subquotients sq1 = subquotients(GroupHom(p.k1red, p.k1red, m1));

    PimsnerPieces out;
    out.coker0 = sq0.cokernel;
    out.ker0 = sq0.kernel;
    out.coker1 = sq1.cokernel;
    out.ker1 = sq1.kernel;
    out.note = "K_0(O_E) is an extension of ker(1-[E]) on K^1 by coker(1-[E]) on K^0 (and K_1 "
               "symmetrically); the 6-term sequence does not resolve the extension class";
    return out;
}

} // namespace moorek
