#pragma once

#include <string>
#include <vector>

#include "moorek/kprofile.hpp"

namespace moorek {

// Finite commutative ring with every element nilpotent (no unit). Used for
// the ~_n counting arguments on K~0(X) (x) Z_(n).
class FiniteNilRing {
public:
    // Validates commutativity, associativity and nilpotency.
    FiniteNilRing(AbelianGroup additive, BilinearTable mult);

    static FiniteNilRing zero_ring(AbelianGroup additive);

    const AbelianGroup& additive() const { return additive_; }
    const BilinearTable& mult_table() const { return mult_; }
    IntVec multiply(const IntVec& a, const IntVec& b) const;
    std::vector<IntVec> elements(Int cap = 1 << 16) const { return additive_.elements(cap); }
    Int order() const { return additive_.order(); }

private:
    AbelianGroup additive_;
    BilinearTable mult_;
};

// Integral cohomology H^k(X) for k = 1..entries.size(). The top entry must
// be zero: it certifies that the profile lists everything nonzero.
struct CohomologyProfile {
    std::vector<AbelianGroup> entries;

    const AbelianGroup& h(size_t k) const; // k >= 1; zero group beyond the list
    size_t top() const { return entries.size(); }
};

// Integral cohomology of a catalog space (suspension shift, Kunneth for
// smash and product), always ending in an explicit zero entry.
CohomologyProfile space_cohomology(const SpaceExpr& e);

// Equivalence classes of a ~_n b  iff  (n+a)(1+z) = (n+b) for some z, i.e.
// b = a + nz + az. Requires the additive group to be entirely n-primary.
// Classes are sorted lexicographically, each class sorted internally.
std::vector<std::vector<IntVec>> sim_n_quotient(const FiniteNilRing& r, Int n);

struct SimnReport {
    Int classes = 0;      // |R / ~_n|
    Int tensor_order = 0; // |R (x) Z_n|
    bool inequality = false;
    std::string note;
};

// Computes both sides of |R/~_n| >= |R (x) Z_n| and reports them.
SimnReport lemma_tec_check(const FiniteNilRing& r, Int n);

// prod_{k>=1} |H^{2k}(X;Z_n)| with H^m(X;Z_n) = H^m (x) Z_n + Tor(H^{m+1}, Z_n).
Int heven_order(const CohomologyProfile& c, Int n);

struct CountReport {
    Int k0_tensor_order = 0;
    Int heven = 0;
    bool tor_hypothesis = false; // Tor(H^*(X), Z_n) = 0
    bool asserted = false;       // identity asserted (hypothesis held)
    bool equal = false;
};

// |K~0(X) (x) Z_n| = |H~even(X, Z_n)| under the torsion-free hypothesis;
// when the hypothesis fails both numbers are reported without assertion.
CountReport dadarlat_count_check(const KProfile& p, const CohomologyProfile& c, Int n);

struct PimsnerPieces {
    AbelianGroup coker0, ker0; // of 1-[E] on K^0(X)
    AbelianGroup coker1, ker1; // of 1-[E] on K^1(X)
    std::string note;          // the 6-term sequence does not resolve the extension
};

// Kernel and cokernel of multiplication by 1-[E] = (1-rank) - e~ on
// K^0(X) = Z + K~0(X) and on K^1(X). Requires rank >= 2.
PimsnerPieces pimsner_pieces(const KProfile& p, Int rank, const IntVec& e_tilde);

} // namespace moorek
