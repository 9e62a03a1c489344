#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <sstream>

#include "moorek/twisted.hpp"

using namespace moorek;

namespace {

IntVec vec(std::initializer_list<Int> vals) {
    IntVec v(static_cast<Index>(vals.size()));
    Index i = 0;
    for (Int x : vals) v(i++) = x;
    return v;
}

IntVec unit(Index n, Index i) {
    IntVec v = IntVec::Zero(n);
    v(i) = 1;
    return v;
}

} // namespace

TEST_CASE("Moore twisted group: composition is plain addition (Lemma 3.5)") {
    for (Int n : {2, 3, 4, 5, 6}) {
        KProfile p = moore_profile(n, n);
        TwistedGroup tg = TwistedGroup::build(p);
        CHECK(tg.carrier().factors() == std::vector<Int>{n});
        CHECK(tg.tor().factors() == std::vector<Int>{n}); // T = K~0(M_n)
        for (const IntVec& a : tg.carrier().elements())
            for (const IntVec& b : tg.carrier().elements())
                CHECK(tg.compose(a, b) == tg.carrier().reduce(a + b));
        // Full table exists and classifies as abelian Z_n.
        ClassifyReport rep = classify(tg.full_table());
        CHECK(rep.abelian);
        CHECK(rep.order == n);
        CHECK(rep.abelian_invariants == std::vector<Int>{n});
    }
}

TEST_CASE("sphere twisted group is trivial") {
    KProfile p = sphere_profile(2, 3);
    TwistedGroup tg = TwistedGroup::build(p);
    CHECK(tg.carrier().is_trivial());
    CHECK(classify(tg.full_table()).order == 1);
}

TEST_CASE("twisted composition degenerates to + when beta(b) = 0") {
    KProfile p = mn_x_sigma_mn(3);
    TwistedGroup tg = TwistedGroup::build(p);
    // Generators with beta = 0 are the rho-images (indices found by beta).
    for (Index i = 0; i < tg.carrier().rank(); ++i) {
        IntVec b = unit(4, i);
        if (!tg.in_ker_beta(b)) continue;
        IntVec a = vec({1, 2, 0, 1});
        CHECK(tg.compose(a, b) == tg.carrier().reduce(a + b));
    }
}

TEST_CASE("non-commutativity witness in MxSM (Theorem 3.6 corollary)") {
    for (Int n : {2, 3, 4, 5}) {
        KProfile p = mn_x_sigma_mn(n);
        TwistedGroup tg = TwistedGroup::build(p);
        std::vector<IntVec> gens = theorem36_generators(p);
        REQUIRE(gens.size() == 3);
        const IntVec& vbar = gens[0]; // rho(1 (x) u)
        const IntVec& x = gens[2];    // lift of g x 1
        IntVec ab = tg.compose(x, vbar);
        IntVec ba = tg.compose(vbar, x);
        CHECK(ab != ba);
    }
}

TEST_CASE("inverse formula against brute-force table inverse") {
    for (Int n : {2, 3, 5}) {
        KProfile p = mn_x_sigma_mn(n);
        TwistedGroup tg = TwistedGroup::build(p);
        GroupTable t = tg.subgroup(theorem36_generators(p));
        for (int i = 0; i < static_cast<int>(t.elements.size()); ++i) {
            IntVec inv = tg.inverse(t.elements[static_cast<size_t>(i)]);
            int brute = t.inverse_of(i);
            CHECK(t.elements[static_cast<size_t>(brute)] == inv);
        }
    }
    // beta(a) = 0 gives inverse = -a.
    KProfile m = moore_profile(4, 4);
    TwistedGroup tgm = TwistedGroup::build(m);
    for (const IntVec& a : tgm.carrier().elements())
        CHECK(tgm.inverse(a) == tgm.carrier().reduce(-a));
}

TEST_CASE("Lemma 3.2: inverse and conjugation closed forms") {
    for (Int n : {2, 3, 4, 5}) {
        KProfile p = mn_x_sigma_mn(n);
        TwistedGroup tg = TwistedGroup::build(p);
        GroupTable t = tg.subgroup(theorem36_generators(p));
        for (const IntVec& a : t.elements) {
            // compose(a, inverse(a)) = 0 both ways.
            CHECK(tg.carrier().is_zero(tg.compose(a, tg.inverse(a))));
            CHECK(tg.carrier().is_zero(tg.compose(tg.inverse(a), a)));
            for (const IntVec& b : t.elements) {
                // a^{o(-1)} o b o a = b + a.beta(b) - beta(a).b
                IntVec lhs = tg.conjugate(a, b);
                IntVec rhs = tg.carrier().reduce(b + tg.pair(a, tg.beta_of(b)) -
                                                 tg.pair(b, tg.beta_of(a)));
                CHECK(lhs == rhs);
                // Conjugation on ker beta is multiplication by beta-hat(a).
                if (tg.in_ker_beta(b)) {
                    IntVec mult = tg.carrier().reduce(b - tg.pair(b, tg.beta_of(a)));
                    CHECK(lhs == mult);
                }
            }
        }
    }
}

TEST_CASE("conjugation in MxSM matches the semidirect matrix (1 1 / 0 1)") {
    for (Int n : {2, 3, 5}) {
        KProfile p = mn_x_sigma_mn(n);
        TwistedGroup tg = TwistedGroup::build(p);
        auto gens = theorem36_generators(p);
        const IntVec& vbar = gens[0];
        const IntVec& wbar = gens[1];
        const IntVec& x = gens[2];
        // x^{o(-1)} o rho(1 (x) u) o x = rho(1 (x) u) - rho(g (x) u).
        CHECK(tg.conjugate(x, vbar) == tg.carrier().reduce(vbar - wbar));
        // w-bar is fixed.
        CHECK(tg.conjugate(x, wbar) == tg.carrier().reduce(wbar));
        // Central elements conjugate trivially.
        CHECK(tg.conjugate(wbar, vbar) == tg.carrier().reduce(vbar));
    }
}

TEST_CASE("beta-hat is a homomorphism into the unit group") {
    for (Int n : {2, 3, 4}) {
        KProfile p = mn_x_sigma_mn(n);
        TwistedGroup tg = TwistedGroup::build(p);
        GroupTable units = tg.unit_group();
        GroupTable sub = tg.subgroup(theorem36_generators(p));
        for (const IntVec& a : sub.elements)
            for (const IntVec& b : sub.elements) {
                // beta-hat(a o b) = beta-hat(a) beta-hat(b):
                // 1 - beta(aob) = (1 - beta(a))(1 - beta(b)).
                IntVec ta = tg.beta_hat(a);
                IntVec tb = tg.beta_hat(b);
                int ia = units.find(ta);
                int ib = units.find(tb);
                REQUIRE(ia >= 0);
                REQUIRE(ib >= 0);
                IntVec tab = tg.beta_hat(tg.compose(a, b));
                CHECK(units.elements[static_cast<size_t>(units.mul(ia, ib))] == tab);
            }
        // Commutators land in ker beta-hat.
        for (const IntVec& a : sub.elements)
            for (const IntVec& b : sub.elements) {
                IntVec comm = tg.compose(tg.inverse(a), tg.compose(tg.inverse(b), tg.compose(a, b)));
                CHECK(tg.in_ker_beta(comm));
            }
    }
}

TEST_CASE("Moore beta-hat image is an order-n unit (geometric series)") {
    for (Int n : {3, 4, 5}) {
        KProfile p = moore_profile(n, n);
        TwistedGroup tg = TwistedGroup::build(p);
        GroupTable units = tg.unit_group();
        CHECK(units.order() == n);
        // a_lambda maps to 1 - g; (1 - g)^k = 1 - k g because g^2 = 0: the
        // unit has order exactly n.
        IntVec t = tg.beta_hat(unit(1, 0));
        int i = units.find(t);
        REQUIRE(i >= 0);
        CHECK(units.element_order(i) == n);
    }
}

TEST_CASE("unit group examples: trivial T and two-generator T") {
    // T = 0: sphere.
    TwistedGroup s = TwistedGroup::build(sphere_profile(2, 4));
    CHECK(s.unit_group().order() == 1);
    // T = Z_n^2 with zero products: the product of M(n) ^ M(n)-style data is
    // covered by MxSM: units form an abelian group of order n^2.
    TwistedGroup m = TwistedGroup::build(mn_x_sigma_mn(3));
    GroupTable u = m.unit_group();
    CHECK(u.order() == 9);
    ClassifyReport rep = classify(u);
    CHECK(rep.abelian);
    CHECK(rep.abelian_invariants == std::vector<Int>({3, 3}));
}

TEST_CASE("subgroup closure: Theorem 3.6 subgroup and edge cases") {
    for (Int n : {2, 3, 4, 5}) {
        KProfile p = mn_x_sigma_mn(n);
        TwistedGroup tg = TwistedGroup::build(p);
        GroupTable t = tg.subgroup(theorem36_generators(p));
        CHECK(t.order() == n * n * n);
        ClassifyReport rep = classify(t);
        CHECK_FALSE(rep.abelian);
        CHECK(rep.heisenberg);
        CHECK(rep.heisenberg_n == n);
        CHECK(rep.derived_order == n);
        CHECK(rep.center_order == n);
    }
    // Trivial subgroup.
    TwistedGroup tg = TwistedGroup::build(mn_x_sigma_mn(3));
    GroupTable triv = tg.subgroup({IntVec::Zero(4)});
    CHECK(triv.order() == 1);
    // A single ker-beta generator of additive order n gives Z_n.
    auto gens = theorem36_generators(mn_x_sigma_mn(3));
    GroupTable cyc = tg.subgroup({gens[0]});
    CHECK(cyc.order() == 3);
    CHECK(classify(cyc).abelian);
    // Resource bound.
    CHECK_THROWS_AS(tg.subgroup(gens, 5), resource_error);
}

TEST_CASE("full twisted group: odd case classifies as Heisenberg x Z_n") {
    for (Int n : {3, 5}) {
        KProfile p = mn_x_sigma_mn(n);
        TwistedGroup tg = TwistedGroup::build(p);
        CHECK(tg.full_carrier_trusted());
        GroupTable t = tg.full_table();
        CHECK(t.order() == n * n * n * n);
        ClassifyReport rep = classify(t);
        CHECK_FALSE(rep.abelian);
        CHECK(rep.center_order == n * n);
        CHECK(rep.derived_order == n);
        CHECK(rep.heisenberg_times_cyclic);
        CHECK(rep.heisenberg_n == n);
        CHECK(rep.cyclic_factor == n);
        CHECK_FALSE(rep.assumptions.empty());
    }
}

TEST_CASE("full twisted group refused for even moduli, subgroup level fine") {
    for (Int n : {2, 4}) {
        KProfile p = mn_x_sigma_mn(n);
        TwistedGroup tg = TwistedGroup::build(p);
        CHECK_FALSE(tg.full_carrier_trusted());
        CHECK_THROWS_AS(tg.full_table(), unsupported_error);
        GroupTable t = tg.subgroup(theorem36_generators(p));
        CHECK(t.order() == n * n * n);
        // Generators leaving the pinned sublattice are refused.
        IntVec y = IntVec::Zero(4);
        bool found = false;
        for (Index i = 0; i < 4 && !found; ++i) {
            IntVec e = IntVec::Zero(4);
            e(i) = 1;
            // the y generator is the lift of the smash Tor class: beta(y) != 0
            // and it is not the x generator (index of theorem36 gens).
            if (!tg.in_ker_beta(e) && e != theorem36_generators(p)[2]) {
                y = e;
                found = true;
            }
        }
        REQUIRE(found);
        CHECK_THROWS_AS(tg.subgroup({y}), unsupported_error);
    }
}

TEST_CASE("group axioms hold exhaustively on all built carriers") {
    for (Int n : {2, 3, 4, 5, 6}) {
        // Build-time verification runs the axiom checks; reaching here means
        // they passed. Additionally check associativity on the Moore carrier.
        TwistedGroup tg = TwistedGroup::build(moore_profile(n, n));
        auto elems = tg.carrier().elements();
        for (const IntVec& a : elems)
            for (const IntVec& b : elems)
                for (const IntVec& c : elems)
                    CHECK(tg.compose(tg.compose(a, b), c) == tg.compose(a, tg.compose(b, c)));
    }
}

TEST_CASE("classify identifies plain abelian tables") {
    TwistedGroup tg = TwistedGroup::build(moore_profile(6, 6));
    ClassifyReport rep = classify(tg.full_table());
    CHECK(rep.abelian);
    CHECK(rep.order == 6);
    CHECK(rep.exponent == 6);
    CHECK(rep.abelian_invariants == std::vector<Int>{6});
}

TEST_CASE("the beta-hat extension: kernel, image and coset structure") {
    // 0 -> K^1(X) (x) Z_n -> (K^1(X;Z_n), o) -> (1 + Tor(K~0, Z_n))^x -> 0:
    // |carrier| = |ker beta-hat| * |image beta-hat| and the fibers of
    // beta-hat are exactly the cosets of the kernel.
    for (Int n : {3, 5}) {
        KProfile p = mn_x_sigma_mn(n);
        TwistedGroup tg = TwistedGroup::build(p);
        auto elems = tg.carrier().elements();
        std::map<std::string, std::vector<IntVec>> fibers;
        Int kernel_size = 0;
        for (const IntVec& a : elems) {
            std::ostringstream key;
            key << tg.beta_hat(a).transpose();
            fibers[key.str()].push_back(a);
            if (tg.in_ker_beta(a)) ++kernel_size;
        }
        CHECK(static_cast<Int>(elems.size()) == kernel_size * static_cast<Int>(fibers.size()));
        for (const auto& [key, members] : fibers) {
            CHECK(static_cast<Int>(members.size()) == kernel_size);
            // Any two members differ by a kernel element under o.
            for (const IntVec& m : members) {
                IntVec diff = tg.compose(tg.inverse(members.front()), m);
                CHECK(tg.in_ker_beta(diff));
            }
        }
    }
}

TEST_CASE("inverse of x collapses the geometric series (x . beta(x) = 0)") {
    for (Int n : {2, 3, 4, 5}) {
        KProfile p = mn_x_sigma_mn(n);
        TwistedGroup tg = TwistedGroup::build(p);
        IntVec x = theorem36_generators(p)[2];
        CHECK(tg.carrier().is_zero(tg.pair(x, tg.beta_of(x))));
        CHECK(tg.inverse(x) == tg.carrier().reduce(-x));
    }
}
