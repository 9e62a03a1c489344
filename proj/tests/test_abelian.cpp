#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <limits>
#include <random>
#include <vector>

#include "moorek/abelian.hpp"

using namespace moorek;

namespace {

IntMat mat(std::initializer_list<std::initializer_list<Int>> rows) {
    Index r = static_cast<Index>(rows.size());
    Index c = r ? static_cast<Index>(rows.begin()->size()) : 0;
    IntMat m(r, c);
    Index i = 0;
    for (auto& row : rows) {
        Index j = 0;
        for (Int v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

IntVec vec(std::initializer_list<Int> vals) {
    IntVec v(static_cast<Index>(vals.size()));
    Index i = 0;
    for (Int x : vals) v(i++) = x;
    return v;
}

void combinations(Index n, Index k, Index start, std::vector<Index>& cur,
                  std::vector<std::vector<Index>>& out) {
    if (static_cast<Index>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (Index i = start; i < n; ++i) {
        cur.push_back(i);
        combinations(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

// Independent oracle: k-th determinantal divisor = gcd of all k x k minors.
Int determinantal_divisor(const IntMat& m, Index k) {
    std::vector<std::vector<Index>> rsel, csel;
    std::vector<Index> cur;
    combinations(m.rows(), k, 0, cur, rsel);
    combinations(m.cols(), k, 0, cur, csel);
    Int g = 0;
    for (const auto& rs : rsel)
        for (const auto& cs : csel) {
            IntMat sub(k, k);
            for (Index i = 0; i < k; ++i)
                for (Index j = 0; j < k; ++j) sub(i, j) = m(rs[static_cast<size_t>(i)], cs[static_cast<size_t>(j)]);
            g = gcd_int(g, determinant(sub));
        }
    return g;
}

std::vector<Int> snf_diagonal(const IntMat& d) {
    std::vector<Int> out;
    for (Index i = 0; i < std::min(d.rows(), d.cols()); ++i) out.push_back(d(i, i));
    return out;
}

// Wide-accumulator product check: A * B == I. Entries of the transforms can
// reach ~1e13 on adversarial inputs, so the verification multiplies in
// 128-bit. A * B = I over the integers forces det(A) * det(B) = 1, hence
// |det A| = |det B| = 1: this is the unimodularity oracle.
bool product_is_identity(const IntMat& a, const IntMat& b) {
    if (a.cols() != b.rows() || a.rows() != b.cols()) return false;
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < b.cols(); ++j) {
            __int128 acc = 0;
            for (Index k = 0; k < a.cols(); ++k)
                acc += static_cast<__int128>(a(i, k)) * static_cast<__int128>(b(k, j));
            if (acc != (i == j ? 1 : 0)) return false;
        }
    return true;
}

IntMat wide_matmul(const IntMat& a, const IntMat& b) {
    IntMat r(a.rows(), b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < b.cols(); ++j) {
            __int128 acc = 0;
            for (Index k = 0; k < a.cols(); ++k)
                acc += static_cast<__int128>(a(i, k)) * static_cast<__int128>(b(k, j));
            REQUIRE(acc <= std::numeric_limits<Int>::max());
            REQUIRE(acc >= std::numeric_limits<Int>::min());
            r(i, j) = static_cast<Int>(acc);
        }
    return r;
}

void check_snf_contract(const IntMat& m) {
    SmithResult s = smith_normal_form(m);
    CHECK(wide_matmul(wide_matmul(s.u, m), s.v) == s.d);
    CHECK(product_is_identity(s.u, s.uinv));
    CHECK(product_is_identity(s.v, s.vinv));
    auto diag = snf_diagonal(s.d);
    for (size_t i = 0; i + 1 < diag.size(); ++i) {
        CHECK(diag[i] >= 0);
        if (diag[i] != 0)
            CHECK(diag[i + 1] % diag[i] == 0);
        else
            CHECK(diag[i + 1] == 0);
    }
    // Off-diagonal of d must vanish.
    for (Index i = 0; i < s.d.rows(); ++i)
        for (Index j = 0; j < s.d.cols(); ++j)
            if (i != j) CHECK(s.d(i, j) == 0);
}

AbelianGroup zn(Int n) { return AbelianGroup::cyclic(n, "a"); }

} // namespace

TEST_CASE("smith normal form: worked example against determinantal-divisor oracle") {
    IntMat m = mat({{2, 4}, {6, 8}});
    // Oracle: d1 = gcd of all entries = 2, d1*d2 = |det| = |16-24| = 8.
    Int dd1 = determinantal_divisor(m, 1);
    Int dd2 = determinantal_divisor(m, 2);
    CHECK(dd1 == 2);
    CHECK(dd2 == 8);
    SmithResult s = smith_normal_form(m);
    CHECK(s.d(0, 0) == dd1);
    CHECK(s.d(1, 1) == dd2 / dd1);
    CHECK(s.d(0, 0) == 2);
    CHECK(s.d(1, 1) == 4);
    check_snf_contract(m);
}

TEST_CASE("smith normal form: fixed points") {
    SmithResult id3 = smith_normal_form(IntMat::Identity(3, 3));
    CHECK(id3.d == IntMat::Identity(3, 3));
    SmithResult z23 = smith_normal_form(IntMat::Zero(2, 3));
    CHECK(z23.d == IntMat::Zero(2, 3));
}

TEST_CASE("smith normal form: randomized contract and divisor oracle") {
    std::mt19937 rng(20240811);
    std::uniform_int_distribution<Int> entry(-9, 9);
    std::uniform_int_distribution<Index> dim(1, 6);
    for (int iter = 0; iter < 250; ++iter) {
        IntMat m(dim(rng), dim(rng));
        for (Index i = 0; i < m.rows(); ++i)
            for (Index j = 0; j < m.cols(); ++j) m(i, j) = entry(rng);
        check_snf_contract(m);
        if (m.rows() <= 4 && m.cols() <= 4) {
            SmithResult s = smith_normal_form(m);
            Int prev = 1;
            for (Index k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
                Int dd = determinantal_divisor(m, k);
                Int expected = (prev == 0 || dd == 0) ? 0 : dd / prev;
                CHECK(s.d(k - 1, k - 1) == expected);
                prev = dd;
            }
        }
    }
}

TEST_CASE("from_presentation: cyclic, free and diagonal cases") {
    Presentation p1 = from_presentation(1, mat({{5}}));
    CHECK(p1.group.factors() == std::vector<Int>{5});

    Presentation p2 = from_presentation(2, IntMat::Zero(0, 2));
    CHECK(p2.group.factors() == std::vector<Int>({0, 0}));

    Presentation p3 = from_presentation(2, mat({{2, 0}, {0, 4}}));
    CHECK(p3.group.factors() == std::vector<Int>({2, 4}));

    CHECK_THROWS_AS(from_presentation(3, mat({{1, 2}})), input_error);
}

TEST_CASE("from_presentation: idempotent under re-presentation") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<Int> entry(-6, 6);
    for (int iter = 0; iter < 50; ++iter) {
        IntMat rel(3, 3);
        for (Index i = 0; i < 3; ++i)
            for (Index j = 0; j < 3; ++j) rel(i, j) = entry(rng);
        AbelianGroup g = from_presentation(3, rel).group;
        IntMat diag = IntMat::Zero(g.rank(), g.rank());
        for (Index i = 0; i < g.rank(); ++i) diag(i, i) = g.factors()[static_cast<size_t>(i)];
        AbelianGroup again = from_presentation(g.rank(), diag).group;
        CHECK(again.factors() == g.factors());
    }
}

TEST_CASE("subquotients: multiplication by -n on Z") {
    AbelianGroup z({0}, {"t"});
    for (Int n : {2, 3, 5}) {
        Subquotients sq = subquotients(GroupHom::mult_by(-n, z));
        CHECK(sq.kernel.is_trivial());
        CHECK(sq.image.factors() == std::vector<Int>{0});
        CHECK(sq.cokernel.factors() == std::vector<Int>{n});
    }
}

TEST_CASE("subquotients: zero map on Z_n") {
    Subquotients sq = subquotients(GroupHom::zero(zn(6), zn(6)));
    CHECK(sq.kernel.factors() == std::vector<Int>{6});
    CHECK(sq.image.is_trivial());
    CHECK(sq.cokernel.factors() == std::vector<Int>{6});
}

TEST_CASE("subquotients: multiplication by 2 on Z_4 against enumeration") {
    AbelianGroup z4 = zn(4);
    GroupHom h = GroupHom::mult_by(2, z4);
    // Enumerate all four elements.
    int kernel_size = 0;
    std::vector<Int> image_vals;
    for (const IntVec& e : z4.elements()) {
        IntVec img = h.apply(e);
        if (z4.is_zero(img)) ++kernel_size;
        image_vals.push_back(img(0));
    }
    std::sort(image_vals.begin(), image_vals.end());
    image_vals.erase(std::unique(image_vals.begin(), image_vals.end()), image_vals.end());
    CHECK(kernel_size == 2);
    CHECK(image_vals == std::vector<Int>({0, 2}));

    Subquotients sq = subquotients(h);
    CHECK(sq.kernel.factors() == std::vector<Int>{2});
    CHECK(sq.image.factors() == std::vector<Int>{2});
    CHECK(sq.cokernel.factors() == std::vector<Int>{2});

    // Embeddings land where they should.
    IntVec kgen = sq.kernel_embedding.apply(vec({1}));
    CHECK(z4.is_zero(h.apply(kgen)));
    CHECK_FALSE(z4.is_zero(kgen));
    IntVec igen = sq.image_embedding.apply(vec({1}));
    CHECK(igen(0) == 2);
}

TEST_CASE("subquotients: |kernel| * |image| = |domain| on random finite homs") {
    std::mt19937 rng(99);
    std::vector<std::vector<Int>> shapes = {{2}, {4}, {2, 4}, {3}, {2, 2}, {6}, {2, 2, 4}, {3, 9}};
    std::uniform_int_distribution<size_t> pick(0, shapes.size() - 1);
    std::uniform_int_distribution<Int> scale(-3, 3);
    for (int iter = 0; iter < 200; ++iter) {
        AbelianGroup g(shapes[pick(rng)], {});
        AbelianGroup h(shapes[pick(rng)], {});
        IntMat m(h.rank(), g.rank());
        for (Index i = 0; i < h.rank(); ++i)
            for (Index j = 0; j < g.rank(); ++j) {
                Int e = h.factors()[static_cast<size_t>(i)];
                Int d = g.factors()[static_cast<size_t>(j)];
                m(i, j) = scale(rng) * (e / gcd_int(d, e)); // forces well-definedness
            }
        GroupHom hom(g, h, m);
        REQUIRE(hom.is_well_defined());
        Subquotients sq = subquotients(hom);
        CHECK(checked_mul(sq.kernel.order(), sq.image.order()) == g.order());

        // Cross-check against enumeration when small.
        if (g.order() <= 200) {
            Int ker = 0;
            std::vector<IntVec> image_set;
            for (const IntVec& e : g.elements()) {
                IntVec img = hom.apply(e);
                if (h.is_zero(img)) ++ker;
                image_set.push_back(img);
            }
            std::sort(image_set.begin(), image_set.end(),
                      [](const IntVec& a, const IntVec& b) {
                          return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(),
                                                              b.data() + b.size());
                      });
            image_set.erase(std::unique(image_set.begin(), image_set.end()), image_set.end());
            CHECK(sq.kernel.order() == ker);
            CHECK(sq.image.order() == static_cast<Int>(image_set.size()));
        }
    }
}

TEST_CASE("is_exact: Bockstein-style rows") {
    AbelianGroup z({0}, {"t"});
    AbelianGroup z0 = AbelianGroup::trivial();
    for (Int n : {2, 3, 4}) {
        AbelianGroup znn = zn(n);
        std::vector<GroupHom> seq = {
            GroupHom::mult_by(-n, z),
            GroupHom(z, znn, mat({{1}})),
            GroupHom::zero(znn, z0),
        };
        ExactnessReport rep = is_exact(seq);
        CHECK(rep.exact);
        REQUIRE(rep.nodes.size() == 2);
    }
}

TEST_CASE("is_exact: short exact and failing sequences") {
    AbelianGroup z0 = AbelianGroup::trivial();
    AbelianGroup z5 = zn(5);
    std::vector<GroupHom> ok = {GroupHom::zero(z0, z5), GroupHom::identity(z5), GroupHom::zero(z5, z0)};
    CHECK(is_exact(ok).exact);

    AbelianGroup z({0}, {"t"});
    std::vector<GroupHom> bad = {GroupHom::zero(z, z), GroupHom::zero(z, z)};
    ExactnessReport rep = is_exact(bad);
    CHECK_FALSE(rep.exact);
    REQUIRE(rep.nodes.size() == 1);
    CHECK_FALSE(rep.nodes[0].exact);

    std::vector<GroupHom> mism = {GroupHom::zero(z, z5), GroupHom::zero(z, z)};
    CHECK_THROWS_AS(is_exact(mism), input_error);
}

TEST_CASE("tensor and tor with Z_n: stated examples") {
    AbelianGroup z({0}, {"t"});
    CHECK(tensor_Zn(z, 3).factors() == std::vector<Int>{3});
    CHECK(tensor_Zn(zn(4), 2).factors() == std::vector<Int>{2});
    CHECK(tensor_Zn(zn(3), 2).is_trivial());

    CHECK(tor_Zn(z, 5).is_trivial());
    AbelianGroup znn({3, 3}, {"a", "b"});
    CHECK(tor_Zn(znn, 3).factors() == std::vector<Int>({3, 3}));
    CHECK(tor_Zn(zn(6), 4).factors() == std::vector<Int>{2}); // gcd(6,4)=2

    CHECK_THROWS_AS(tensor_Zn(z, 1), input_error);
    CHECK_THROWS_AS(tor_Zn(z, 0), input_error);
}

TEST_CASE("tensor/tor agree with brute-force presentation computation") {
    std::mt19937 rng(4242);
    std::vector<std::vector<Int>> shapes = {{2}, {4}, {2, 4}, {3, 9}, {6}, {2, 2}, {0}, {2, 0}, {0, 0}, {12}};
    std::uniform_int_distribution<size_t> pick(0, shapes.size() - 1);
    std::uniform_int_distribution<Int> modn(2, 9);
    for (int iter = 0; iter < 150; ++iter) {
        AbelianGroup g(shapes[pick(rng)], {});
        Int n = modn(rng);

        // G (x) Z_n = cokernel of (relations | n*I) on the same generators.
        IntMat rel = g.relation_matrix();
        IntMat rel_all(g.rank(), rel.cols() + g.rank());
        rel_all << rel, (IntMat::Identity(g.rank(), g.rank()) * n).eval();
        AbelianGroup brute = from_presentation(g.rank(), rel_all.transpose().eval()).group;
        CHECK(tensor_Zn(g, n).factors() == brute.factors());

        // Tor(G, Z_n) = kernel of multiplication by n, for finite G.
        if (g.is_finite()) {
            Subquotients sq = subquotients(GroupHom::mult_by(n, g));
            CHECK(tor_Zn(g, n).factors() == sq.kernel.factors());
        }
    }
}

TEST_CASE("tor_part embeds as the n-torsion subgroup") {
    AbelianGroup g({4, 8}, {"a", "b"});
    TorsionPart t = tor_part(g, 2);
    CHECK(t.group.factors() == std::vector<Int>({2, 2}));
    // Embedded generators: 2*a and 4*b, both killed by 2.
    CHECK(t.embedding.apply(vec({1, 0})) == vec({2, 0}));
    CHECK(t.embedding.apply(vec({0, 1})) == vec({0, 4}));
}

TEST_CASE("n-primary part") {
    CHECK(n_primary_part(zn(6), 2).factors() == std::vector<Int>{2});
    CHECK(n_primary_part(zn(9), 3).factors() == std::vector<Int>{9});
    CHECK(n_primary_part(zn(5), 2).is_trivial());
    CHECK(n_primary_part(zn(12), 6).factors() == std::vector<Int>{12});
    AbelianGroup z({0}, {"t"});
    CHECK_THROWS_AS(n_primary_part(z, 2), unsupported_error);
}

TEST_CASE("normalize_summands: permutations keep labels, merges do not") {
    NormalizedSummands a = normalize_summands({0, 2, 4}, {"t", "a", "b"});
    CHECK(a.group.factors() == std::vector<Int>({2, 4, 0}));
    CHECK(a.group.labels() == std::vector<std::string>({"a", "b", "t"}));

    NormalizedSummands b = normalize_summands({2, 3}, {"a", "b"});
    CHECK(b.group.factors() == std::vector<Int>{6});
    // Transported multiplication must stay valid: check to_normal/lift are inverse mod group.
    IntVec img = b.group.reduce(checked_matvec(b.to_normal, vec({1, 0})));
    IntVec back = checked_matvec(b.lift, img);
    // back - (1,0) must be in the relation lattice of the summand list.
    CHECK((back(0) - 1) % 2 == 0);
    CHECK(back(1) % 3 == 0);
}

TEST_CASE("group invariants are enforced") {
    CHECK_THROWS_AS(AbelianGroup({1}, {"a"}), input_error);
    CHECK_THROWS_AS(AbelianGroup({4, 2}, {"a", "b"}), input_error);
    CHECK_THROWS_AS(AbelianGroup({0, 2}, {"a", "b"}), input_error);
    CHECK_THROWS_AS(AbelianGroup({2, 4}, {"a"}), input_error);
    // 2*1 = 2 is not divisible by 4: Z_2 -> Z_4 via [1] is not well defined.
    CHECK_FALSE(GroupHom(zn(2), zn(4), mat({{1}})).is_well_defined());
    CHECK(GroupHom(zn(2), zn(4), mat({{2}})).is_well_defined());
}

TEST_CASE("element order and enumeration") {
    AbelianGroup g({2, 4}, {"a", "b"});
    CHECK(g.element_order(vec({1, 0})) == 2);
    CHECK(g.element_order(vec({1, 1})) == 4);
    CHECK(g.element_order(vec({0, 2})) == 2);
    auto all = g.elements();
    CHECK(all.size() == 8);
    CHECK(all.front() == vec({0, 0}));
    CHECK(all[1] == vec({0, 1})); // lexicographic, last coordinate fastest
    CHECK(all.back() == vec({1, 3}));
}

TEST_CASE("solve_mod finds preimages in the codomain") {
    GroupHom rho = reduction_hom(AbelianGroup({0}, {"t"}), 4); // Z -> Z_4
    auto pre = solve_mod(rho, vec({3}));
    REQUIRE(pre.has_value());
    CHECK(rho.apply(*pre) == vec({3}));
    // Multiplication by 2 on Z_4 cannot reach 1.
    GroupHom h = GroupHom::mult_by(2, zn(4));
    CHECK_FALSE(solve_mod(h, vec({1})).has_value());
}

TEST_CASE("checked arithmetic traps overflow") {
    Int big = std::numeric_limits<Int>::max();
    CHECK_THROWS_AS(checked_add(big, 1), overflow_error);
    CHECK_THROWS_AS(checked_mul(big, 2), overflow_error);
    IntMat m(1, 1);
    m(0, 0) = big;
    IntMat two(1, 1);
    two(0, 0) = 2;
    CHECK_THROWS_AS(checked_matmul(m, two), overflow_error);
}
