#include "moorek/twisted.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

namespace moorek {

namespace {

IntVec unit_vec(Index n, Index i) {
    IntVec v = IntVec::Zero(n);
    v(i) = 1;
    return v;
}

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

// --- GroupTable ------------------------------------------------------------------

int GroupTable::inverse_of(int i) const {
    for (int j = 0; j < static_cast<int>(elements.size()); ++j)
        if (mul(i, j) == identity && mul(j, i) == identity) return j;
    throw construction_error("group table has no inverse for element " + std::to_string(i));
}

int GroupTable::element_order(int i) const {
    int k = 1;
    int cur = i;
    while (cur != identity) {
        cur = mul(cur, i);
        ++k;
        if (k > static_cast<int>(elements.size()))
            throw construction_error("element order exceeds group order; table is not a group");
    }
    return k;
}

int GroupTable::find(const IntVec& coeffs) const {
    for (size_t i = 0; i < elements.size(); ++i)
        if (elements[i] == coeffs) return static_cast<int>(i);
    return -1;
}

// --- TwistedGroup -----------------------------------------------------------------

TwistedGroup TwistedGroup::build(const KProfile& p) {
    ValidationReport rep = validate(p);
    if (!rep.pass)
        throw construction_error("twisted build requires a validated profile:\n" + rep.to_string());
    if (!p.k1n.is_finite()) throw unsupported_error("twisted build requires a finite K^1(X;Z_n)");

    TwistedGroup tg;
    tg.carrier_ = p.k1n;
    tg.assumptions_ = p.assumptions;
    tg.full_trusted_ = p.full_modn_trusted;
    tg.pinned_ = p.modn_pinned[1];
    if (tg.pinned_.empty()) tg.pinned_.assign(static_cast<size_t>(p.k1n.rank()), true);

    TorsionPart tp = tor_part(p.k0red, p.modulus);
    tg.tor_ = tp.group;
    tg.tor_embed_ = tp.embedding.matrix();

    // beta1 lands in the n-torsion subgroup; re-express in T coordinates.
    auto to_tor = [&](const IntVec& w_in) -> IntVec {
        IntVec w = p.k0red.reduce(w_in);
        IntVec t = IntVec::Zero(tg.tor_.rank());
        Index col = 0;
        for (Index i = 0; i < p.k0red.rank(); ++i) {
            Int d = p.k0red.factors()[static_cast<size_t>(i)];
            if (d == 0) {
                if (w(i) != 0)
                    throw construction_error("class with free coordinate is not n-torsion");
                continue;
            }
            Int g = gcd_int(d, p.modulus);
            if (g == 1) {
                if (w(i) != 0)
                    throw construction_error("class is not n-torsion at coordinate " +
                                             std::to_string(i));
                continue;
            }
            Int step = d / g;
            if (w(i) % step != 0)
                throw construction_error("class is not n-torsion at coordinate " + std::to_string(i));
            t(col++) = w(i) / step;
        }
        return tg.tor_.reduce(t);
    };

    tg.beta_ = IntMat::Zero(tg.tor_.rank(), p.k1n.rank());
    for (Index j = 0; j < p.k1n.rank(); ++j)
        tg.beta_.col(j) = to_tor(p.beta1.apply(unit_vec(p.k1n.rank(), j)));

    // Pairing: mu_R(a (x) s) with s running over embedded T generators.
    tg.pairing_.assign(static_cast<size_t>(p.k1n.rank()),
                       std::vector<IntVec>(static_cast<size_t>(tg.tor_.rank()),
                                           IntVec::Zero(p.k1n.rank())));
    for (Index a = 0; a < p.k1n.rank(); ++a)
        for (Index t = 0; t < tg.tor_.rank(); ++t) {
            IntVec s = checked_matvec(tg.tor_embed_, unit_vec(tg.tor_.rank(), t));
            tg.pairing_[static_cast<size_t>(a)][static_cast<size_t>(t)] =
                p.actr_raw(1, unit_vec(p.k1n.rank(), a), 0, p.k0red.reduce(s));
        }

    // Ring on T.
    tg.tor_ring_.assign(static_cast<size_t>(tg.tor_.rank()),
                        std::vector<IntVec>(static_cast<size_t>(tg.tor_.rank()),
                                            IntVec::Zero(tg.tor_.rank())));
    for (Index s = 0; s < tg.tor_.rank(); ++s)
        for (Index t = 0; t < tg.tor_.rank(); ++t) {
            IntVec es = checked_matvec(tg.tor_embed_, unit_vec(tg.tor_.rank(), s));
            IntVec et = checked_matvec(tg.tor_embed_, unit_vec(tg.tor_.rank(), t));
            IntVec w = p.mult_raw(0, p.k0red.reduce(es), 0, p.k0red.reduce(et));
            tg.tor_ring_[static_cast<size_t>(s)][static_cast<size_t>(t)] = to_tor(w);
        }

    tg.verify_invariants();
    return tg;
}

IntVec TwistedGroup::tor_mult(const IntVec& s, const IntVec& t) const {
    return bilinear(tor_ring_, tor_, s, t);
}

IntVec TwistedGroup::beta_of(const IntVec& a) const {
    if (a.size() != carrier_.rank()) throw input_error("element does not belong to the carrier");
    return tor_.reduce(checked_matvec(beta_, carrier_.reduce(a)));
}

IntVec TwistedGroup::beta_hat(const IntVec& a) const { return beta_of(a); }

IntVec TwistedGroup::pair(const IntVec& a, const IntVec& t) const {
    return bilinear(pairing_, carrier_, carrier_.reduce(a), tor_.reduce(t));
}

bool TwistedGroup::in_ker_beta(const IntVec& a) const { return tor_.is_zero(beta_of(a)); }

IntVec TwistedGroup::compose(const IntVec& a_in, const IntVec& b_in) const {
    IntVec a = carrier_.reduce(a_in), b = carrier_.reduce(b_in);
    IntVec v = a + b - pair(a, beta_of(b));
    return carrier_.reduce(v);
}

IntVec TwistedGroup::inverse(const IntVec& a_in) const {
    IntVec a = carrier_.reduce(a_in);
    IntVec s = beta_of(a);
    // -a (1 - beta(a))^{-1} = -(a + a.s + a.s^2 + ...), finite by nilpotency.
    IntVec total = a;
    IntVec r = a;
    Int cap = carrier_.order() + 1;
    for (Int k = 0; k < cap; ++k) {
        r = pair(r, s);
        if (carrier_.is_zero(r)) {
            IntVec out = -total;
            return carrier_.reduce(out);
        }
        total = carrier_.reduce(total + r);
    }
    throw resource_error("geometric series for the twisted inverse did not terminate; "
                         "nilpotency is violated");
}

IntVec TwistedGroup::conjugate(const IntVec& a, const IntVec& b) const {
    return compose(inverse(a), compose(b, a));
}

void TwistedGroup::verify_invariants() const {
    // beta(pairing(a, s)) = beta(a) * s in T, generator-wise.
    for (Index a = 0; a < carrier_.rank(); ++a)
        for (Index t = 0; t < tor_.rank(); ++t) {
            IntVec av = unit_vec(carrier_.rank(), a);
            IntVec tv = unit_vec(tor_.rank(), t);
            IntVec lhs = beta_of(pair(av, tv));
            IntVec rhs = tor_mult(beta_of(av), tv);
            if (lhs != rhs)
                throw construction_error(
                    "twisted build: beta(mu_R(a (x) s)) != beta(a)s at generators (" +
                    std::to_string(a) + "," + std::to_string(t) + ")");
        }
    // Module associativity: (a.s).t = a.(st).
    for (Index a = 0; a < carrier_.rank(); ++a)
        for (Index s = 0; s < tor_.rank(); ++s)
            for (Index t = 0; t < tor_.rank(); ++t) {
                IntVec av = unit_vec(carrier_.rank(), a);
                IntVec sv = unit_vec(tor_.rank(), s);
                IntVec tv = unit_vec(tor_.rank(), t);
                if (pair(pair(av, sv), tv) != pair(av, tor_mult(sv, tv)))
                    throw construction_error("twisted build: module associativity fails at (" +
                                             std::to_string(a) + "," + std::to_string(s) + "," +
                                             std::to_string(t) + ")");
            }
    // Nilpotency of T generators (commutativity then gives all of T).
    for (Index t = 0; t < tor_.rank(); ++t) {
        IntVec w = unit_vec(tor_.rank(), t);
        Int cap = tor_.rank() + 1;
        bool vanished = tor_.is_zero(w);
        for (Int k = 0; k < cap && !vanished; ++k) {
            w = tor_mult(w, unit_vec(tor_.rank(), t));
            vanished = tor_.is_zero(w);
        }
        if (!vanished)
            throw construction_error("twisted build: T generator " + std::to_string(t) +
                                     " is not nilpotent");
    }
    // Group axioms, checked rather than assumed. Identity and inverses are
    // exhaustive on small carriers; associativity is exhaustive on very
    // small carriers and randomized above that.
    Int order = carrier_.order();
    if (order <= 4096) {
        for (const IntVec& a : carrier_.elements()) {
            if (compose(a, IntVec::Zero(carrier_.rank())) != a ||
                compose(IntVec::Zero(carrier_.rank()), a) != a)
                throw construction_error("twisted build: 0 is not a two-sided identity");
            IntVec inv = inverse(a);
            if (!carrier_.is_zero(compose(inv, a)) || !carrier_.is_zero(compose(a, inv)))
                throw construction_error("twisted build: inverse fails for " +
                                         format_element(carrier_, a));
        }
    }
    if (order > 0 && order <= 125) {
        auto elems = carrier_.elements();
        for (const IntVec& a : elems)
            for (const IntVec& b : elems)
                for (const IntVec& c : elems)
                    if (compose(compose(a, b), c) != compose(a, compose(b, c)))
                        throw construction_error("twisted build: associativity fails");
    } else if (order > 125) {
        std::mt19937 rng(12345);
        std::uniform_int_distribution<Int> pick(0, order - 1);
        auto nth = [&](Int k) {
            IntVec v = IntVec::Zero(carrier_.rank());
            for (Index i = carrier_.rank() - 1; i >= 0; --i) {
                Int d = carrier_.factors()[static_cast<size_t>(i)];
                v(i) = k % d;
                k /= d;
            }
            return v;
        };
        for (int iter = 0; iter < 2000; ++iter) {
            IntVec a = nth(pick(rng)), b = nth(pick(rng)), c = nth(pick(rng));
            if (compose(compose(a, b), c) != compose(a, compose(b, c)))
                throw construction_error("twisted build: associativity fails (randomized)");
        }
    }
}

namespace {

GroupTable table_from_elements(const TwistedGroup& tg, std::vector<IntVec> elems) {
    std::sort(elems.begin(), elems.end(), VecLess{});
    GroupTable t;
    t.elements = std::move(elems);
    t.assumptions = tg.assumptions();
    std::map<IntVec, int, VecLess> index;
    for (size_t i = 0; i < t.elements.size(); ++i)
        index.emplace(t.elements[i], static_cast<int>(i));
    t.identity = index.at(IntVec::Zero(tg.carrier().rank()));
    t.table.assign(t.elements.size(), std::vector<int>(t.elements.size(), -1));
    for (size_t i = 0; i < t.elements.size(); ++i)
        for (size_t j = 0; j < t.elements.size(); ++j) {
            auto it = index.find(tg.compose(t.elements[i], t.elements[j]));
            if (it == index.end())
                throw construction_error("element set is not closed under the twisted product");
            t.table[i][j] = it->second;
        }
    return t;
}

} // namespace

GroupTable TwistedGroup::subgroup(const std::vector<IntVec>& generators, Int max_order) const {
    // On untrusted carriers only the data-backed sublattice supports honest
    // computation: every touched element must vanish on unpinned coordinates.
    auto pinned_ok = [&](const IntVec& v) {
        if (full_trusted_) return true;
        IntVec r = carrier_.reduce(v);
        for (Index i = 0; i < r.size(); ++i)
            if (r(i) != 0 && !pinned_[static_cast<size_t>(i)]) return false;
        return true;
    };
    for (const IntVec& g : generators)
        if (!pinned_ok(g))
            throw unsupported_error(
                "subgroup generator leaves the data-backed part of the carrier; the full "
                "extension of this mod-n K-group is not determined for even moduli");

    std::map<IntVec, int, VecLess> seen;
    std::vector<IntVec> elems;
    auto push = [&](const IntVec& v) {
        IntVec r = carrier_.reduce(v);
        if (seen.emplace(r, static_cast<int>(elems.size())).second) {
            if (!pinned_ok(r))
                throw unsupported_error("subgroup closure leaves the data-backed part of the "
                                        "carrier; refusing (extension not determined)");
            elems.push_back(r);
            if (static_cast<Int>(elems.size()) > max_order)
                throw resource_error("subgroup closure exceeded the bound of " +
                                     std::to_string(max_order) + " elements");
        }
    };
    push(IntVec::Zero(carrier_.rank()));
    for (const IntVec& g : generators) push(g);
    for (size_t i = 0; i < elems.size(); ++i) {
        push(inverse(elems[i]));
        for (size_t j = 0; j <= i && j < elems.size(); ++j) {
            push(compose(elems[i], elems[j]));
            push(compose(elems[j], elems[i]));
        }
    }
    return table_from_elements(*this, elems);
}

GroupTable TwistedGroup::full_table(Int max_order) const {
    if (!full_trusted_)
        throw unsupported_error(
            "the full mod-n carrier of this profile is stored under an extension assumption "
            "that is not backed for even moduli; only subgroup-level computation is available");
    if (carrier_.order() > max_order)
        throw resource_error("carrier too large for a full multiplication table");
    return table_from_elements(*this, carrier_.elements(max_order));
}

GroupTable TwistedGroup::unit_group() const {
    // Units 1 - t with (1-s)(1-t) = 1 - (s + t - st). Element t stands for
    // the unit 1 - t.
    GroupTable t;
    t.assumptions = assumptions_;
    auto elems = tor_.elements();
    std::sort(elems.begin(), elems.end(), VecLess{});
    std::map<IntVec, int, VecLess> index;
    for (size_t i = 0; i < elems.size(); ++i) index.emplace(elems[i], static_cast<int>(i));
    t.elements = elems;
    t.identity = index.at(IntVec::Zero(tor_.rank()));
    t.table.assign(elems.size(), std::vector<int>(elems.size(), -1));
    for (size_t i = 0; i < elems.size(); ++i)
        for (size_t j = 0; j < elems.size(); ++j) {
            IntVec prod = tor_.reduce(elems[i] + elems[j] - tor_mult(elems[i], elems[j]));
            t.table[i][j] = index.at(prod);
        }
    return t;
}

// --- classification -----------------------------------------------------------------

namespace {

std::vector<int> closure_in_table(const GroupTable& g, std::vector<int> start) {
    std::vector<char> in(g.elements.size(), 0);
    std::vector<int> elems;
    auto push = [&](int e) {
        if (!in[static_cast<size_t>(e)]) {
            in[static_cast<size_t>(e)] = 1;
            elems.push_back(e);
        }
    };
    push(g.identity);
    for (int e : start) push(e);
    for (size_t i = 0; i < elems.size(); ++i) {
        push(g.inverse_of(elems[i]));
        for (size_t j = 0; j <= i; ++j) {
            push(g.mul(elems[i], elems[j]));
            push(g.mul(elems[j], elems[i]));
        }
    }
    std::sort(elems.begin(), elems.end());
    return elems;
}

int commutator(const GroupTable& g, int a, int b) {
    return g.mul(g.mul(g.inverse_of(a), g.inverse_of(b)), g.mul(a, b));
}

// Invariant factors of an abelian table group by peeling maximal cyclic
// summands off coset quotients.
std::vector<Int> abelian_invariants(const GroupTable& g) {
    size_t n = g.elements.size();
    // cosets: start with singleton classes, quotient repeatedly.
    std::vector<int> rep(n);
    for (size_t i = 0; i < n; ++i) rep[i] = static_cast<int>(i);
    auto find_rep = [&](int x) { return rep[static_cast<size_t>(x)]; };

    std::vector<Int> factors;
    std::vector<int> alive;
    for (size_t i = 0; i < n; ++i) alive.push_back(static_cast<int>(i));

    while (true) {
        // order of the class of x in the quotient: least k with x^k ~ e.
        auto class_order = [&](int x) {
            int k = 1, cur = x;
            while (find_rep(cur) != find_rep(g.identity)) {
                cur = g.mul(cur, x);
                ++k;
            }
            return k;
        };
        int best = -1, best_order = 1;
        for (int x : alive) {
            int o = class_order(x);
            if (o > best_order) {
                best_order = o;
                best = x;
            }
        }
        if (best < 0) break;
        factors.push_back(best_order);
        // Quotient by <best>: merge cosets y ~ y * best^k.
        for (int y : alive) {
            int cur = y;
            int mn = find_rep(y);
            for (int k = 1; k < best_order; ++k) {
                cur = g.mul(cur, best);
                mn = std::min(mn, find_rep(cur));
            }
            int cur2 = y;
            rep[static_cast<size_t>(y)] = mn;
            for (int k = 1; k < best_order; ++k) {
                cur2 = g.mul(cur2, best);
                rep[static_cast<size_t>(cur2)] = mn;
            }
        }
        // Normalize reps transitively and shrink the alive set to reps.
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t i = 0; i < n; ++i)
                if (rep[i] != rep[static_cast<size_t>(rep[i])]) {
                    rep[i] = rep[static_cast<size_t>(rep[i])];
                    changed = true;
                }
        }
        std::vector<int> next;
        for (size_t i = 0; i < n; ++i)
            if (rep[i] == static_cast<int>(i)) next.push_back(static_cast<int>(i));
        alive = next;
        if (alive.size() <= 1) break;
    }
    // Peeling gives factors in decreasing divisibility order; reverse to the
    // ascending invariant-factor convention and drop 1s.
    std::reverse(factors.begin(), factors.end());
    factors.erase(std::remove(factors.begin(), factors.end(), Int{1}), factors.end());
    return factors;
}

} // namespace

ClassifyReport classify(const GroupTable& g) {
    ClassifyReport r;
    r.order = g.order();
    r.assumptions = g.assumptions;
    size_t n = g.elements.size();

    r.abelian = true;
    for (size_t i = 0; i < n && r.abelian; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (g.mul(static_cast<int>(i), static_cast<int>(j)) !=
                g.mul(static_cast<int>(j), static_cast<int>(i))) {
                r.abelian = false;
                break;
            }

    r.exponent = 1;
    for (size_t i = 0; i < n; ++i) {
        Int o = g.element_order(static_cast<int>(i));
        r.exponent = checked_mul(r.exponent / gcd_int(r.exponent, o), o);
    }

    std::vector<int> center;
    for (size_t i = 0; i < n; ++i) {
        bool central = true;
        for (size_t j = 0; j < n && central; ++j)
            if (g.mul(static_cast<int>(i), static_cast<int>(j)) !=
                g.mul(static_cast<int>(j), static_cast<int>(i)))
                central = false;
        if (central) center.push_back(static_cast<int>(i));
    }
    r.center_order = static_cast<Int>(center.size());

    std::vector<int> comms;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) comms.push_back(commutator(g, static_cast<int>(i), static_cast<int>(j)));
    std::sort(comms.begin(), comms.end());
    comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
    std::vector<int> derived = closure_in_table(g, comms);
    r.derived_order = static_cast<Int>(derived.size());

    if (r.abelian) r.abelian_invariants = abelian_invariants(g);

    // Heisenberg presentation search: x^m = y^m = e, z = [x,y] != e central of
    // order m, and <x, y> the whole group of order m^3.
    auto is_central = [&](int z) {
        for (size_t j = 0; j < n; ++j)
            if (g.mul(z, static_cast<int>(j)) != g.mul(static_cast<int>(j), z)) return false;
        return true;
    };
    auto heisenberg_pair = [&](Int order_target, Int m, int* out_x, int* out_y) {
        if (order_target != checked_mul(m, checked_mul(m, m))) return false;
        for (size_t i = 0; i < n; ++i) {
            if (g.element_order(static_cast<int>(i)) > m) continue;
            for (size_t j = 0; j < n; ++j) {
                if (g.element_order(static_cast<int>(j)) > m) continue;
                int z = commutator(g, static_cast<int>(i), static_cast<int>(j));
                if (z == g.identity) continue;
                if (g.element_order(z) != m || !is_central(z)) continue;
                std::vector<int> gen =
                    closure_in_table(g, {static_cast<int>(i), static_cast<int>(j)});
                if (static_cast<Int>(gen.size()) == order_target) {
                    if (out_x) *out_x = static_cast<int>(i);
                    if (out_y) *out_y = static_cast<int>(j);
                    return true;
                }
            }
        }
        return false;
    };

    if (!r.abelian) {
        // Try m = cube root of the order.
        Int m = 1;
        while (checked_mul(m, checked_mul(m, m)) < r.order) ++m;
        if (checked_mul(m, checked_mul(m, m)) == r.order && heisenberg_pair(r.order, m, nullptr, nullptr)) {
            r.heisenberg = true;
            r.heisenberg_n = m;
        }
        // Direct split of a central cyclic factor: order = m^3 * m with a
        // Heisenberg subgroup of order m^3 and a central complement.
        if (!r.heisenberg) {
            Int m4 = 1;
            while (m4 * m4 * m4 * m4 < r.order) ++m4;
            if (m4 >= 2 && m4 * m4 * m4 * m4 == r.order) {
                int hx = -1, hy = -1;
                bool found_pair = false;
                // Heisenberg subgroup of order m4^3.
                for (size_t i = 0; i < n && !found_pair; ++i) {
                    if (g.element_order(static_cast<int>(i)) > m4) continue;
                    for (size_t j = 0; j < n && !found_pair; ++j) {
                        if (g.element_order(static_cast<int>(j)) > m4) continue;
                        int z = commutator(g, static_cast<int>(i), static_cast<int>(j));
                        if (z == g.identity || g.element_order(z) != m4 || !is_central(z)) continue;
                        std::vector<int> gen =
                            closure_in_table(g, {static_cast<int>(i), static_cast<int>(j)});
                        if (static_cast<Int>(gen.size()) == m4 * m4 * m4) {
                            hx = static_cast<int>(i);
                            hy = static_cast<int>(j);
                            found_pair = true;
                        }
                    }
                }
                if (found_pair) {
                    std::vector<int> h = closure_in_table(g, {hx, hy});
                    std::vector<char> in_h(n, 0);
                    for (int e : h) in_h[static_cast<size_t>(e)] = 1;
                    for (int c : center) {
                        if (c == g.identity || g.element_order(c) != m4) continue;
                        // <c> must meet H trivially.
                        bool clean = true;
                        int cur = c;
                        for (Int k = 1; k < m4 && clean; ++k) {
                            if (in_h[static_cast<size_t>(cur)]) clean = false;
                            cur = g.mul(cur, c);
                        }
                        if (clean) {
                            r.heisenberg_times_cyclic = true;
                            r.heisenberg_n = m4;
                            r.cyclic_factor = m4;
                            break;
                        }
                    }
                }
            }
        }
    }
    return r;
}

std::string ClassifyReport::to_string() const {
    std::ostringstream os;
    os << "order " << order << ", " << (abelian ? "abelian" : "nonabelian") << ", exponent "
       << exponent << ", center order " << center_order << ", derived subgroup order "
       << derived_order;
    if (abelian) {
        os << ", invariants [";
        for (size_t i = 0; i < abelian_invariants.size(); ++i)
            os << (i ? ", " : "") << abelian_invariants[i];
        os << "]";
    }
    if (heisenberg) os << "; Heisenberg group over Z_" << heisenberg_n;
    if (heisenberg_times_cyclic)
        os << "; Heisenberg group over Z_" << heisenberg_n << " x Z_" << cyclic_factor;
    for (const auto& a : assumptions) os << "\n  [assumption] " << a;
    return os.str();
}

std::vector<IntVec> theorem36_generators(const KProfile& p) {
    // rho-images of the two integral degree-1 generators plus the Bockstein
    // lift of the first degree-0 generator (g x 1).
    if (p.k1red.rank() < 1 || p.k0red.rank() < 1)
        throw input_error("profile does not carry the distinguished generating set");
    std::vector<IntVec> gens;
    for (Index i = 0; i < p.k1red.rank(); ++i) {
        IntVec e = IntVec::Zero(p.k1red.rank());
        e(i) = 1;
        gens.push_back(p.rho1.apply(e));
    }
    // x: a carrier generator with beta1(x) = first degree-0 generator.
    IntVec target = IntVec::Zero(p.k0red.rank());
    target(0) = 1;
    for (Index j = 0; j < p.k1n.rank(); ++j) {
        IntVec e = IntVec::Zero(p.k1n.rank());
        e(j) = 1;
        if (p.beta1.apply(e) == target) {
            gens.push_back(e);
            return gens;
        }
    }
    throw input_error("profile has no Bockstein lift of the first degree-0 generator");
}

} // namespace moorek
