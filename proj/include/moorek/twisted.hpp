#pragma once

#include <optional>
#include <string>
#include <vector>

#include "moorek/kprofile.hpp"

namespace moorek {

// Finite group presented by its full multiplication table. Elements are
// carrier coefficient vectors in lexicographic order.
struct GroupTable {
    std::vector<IntVec> elements;
    std::vector<std::vector<int>> table; // table[i][j] = index of e_i o e_j
    int identity = 0;
    std::vector<std::string> assumptions;

    Int order() const { return static_cast<Int>(elements.size()); }
    int mul(int i, int j) const { return table[static_cast<size_t>(i)][static_cast<size_t>(j)]; }
    int inverse_of(int i) const;
    int element_order(int i) const;
    int find(const IntVec& coeffs) const; // -1 when absent
};

// The twisted group (K^1(X;Z_n), o) with a o b = a + b - a.beta(b):
// additive carrier K^1(X;Z_n), Bockstein into the n-torsion T of K~0(X),
// and the mu_R pairing carrier x T -> carrier.
class TwistedGroup {
public:
    // Builds from a validated profile and verifies every structural
    // invariant (beta/pairing compatibility, module associativity,
    // nilpotency of T, group axioms for o).
    static TwistedGroup build(const KProfile& p);

    const AbelianGroup& carrier() const { return carrier_; }
    const AbelianGroup& tor() const { return tor_; }
    const std::vector<std::string>& assumptions() const { return assumptions_; }
    bool full_carrier_trusted() const { return full_trusted_; }

    IntVec compose(const IntVec& a, const IntVec& b) const;
    // a^{o(-1)} = -a.(1 - beta(a))^{-1}, the geometric series cut off by
    // nilpotency.
    IntVec inverse(const IntVec& a) const;
    // a^{o(-1)} o b o a; equals b + a.beta(b) - beta(a).b.
    IntVec conjugate(const IntVec& a, const IntVec& b) const;
    // beta-hat(a) = 1 - beta(a), returned as the T-coordinates of beta(a).
    IntVec beta_hat(const IntVec& a) const;
    IntVec beta_of(const IntVec& a) const;        // T-coordinates
    IntVec pair(const IntVec& a, const IntVec& t) const; // mu_R(a (x) t)

    // Closure of the generators under o and inversion. max_order bounds the
    // closure size (resource_error past it). Refuses generators whose
    // additive span leaves the data-backed part of an untrusted carrier.
    GroupTable subgroup(const std::vector<IntVec>& generators, Int max_order = 100000) const;

    // Multiplication table of the whole carrier; refused when the carrier
    // extension is not data-backed (even-n distinguished catalog entry).
    GroupTable full_table(Int max_order = 100000) const;

    // The unit group (1 + T)^x: element t represents the unit 1 - t.
    GroupTable unit_group() const;

    // Kernel of beta as a sublattice test.
    bool in_ker_beta(const IntVec& a) const;

private:
    AbelianGroup carrier_;
    AbelianGroup tor_;
    IntMat beta_;              // carrier -> T coordinates
    IntMat tor_embed_;         // T -> k0red coordinates (diagnostic only)
    BilinearTable pairing_;    // carrier x T -> carrier
    BilinearTable tor_ring_;   // T x T -> T
    std::vector<std::string> assumptions_;
    bool full_trusted_ = true;
    std::vector<bool> pinned_;

    IntVec tor_mult(const IntVec& s, const IntVec& t) const;
    void verify_invariants() const;
};

// Structure report for a finite group table.
struct ClassifyReport {
    Int order = 0;
    bool abelian = false;
    Int exponent = 0;
    Int center_order = 0;
    Int derived_order = 0;
    std::vector<Int> abelian_invariants; // abelian case only
    bool heisenberg = false;             // matched x^n = y^n = 1, [x,y] central of order n
    Int heisenberg_n = 0;
    bool heisenberg_times_cyclic = false;
    Int cyclic_factor = 0;
    std::vector<std::string> assumptions;

    std::string to_string() const;
};

ClassifyReport classify(const GroupTable& g);

// The Theorem-3.6 generating set {rho(1 (x) u), rho(g (x) u), x} of the
// distinguished M_n x Sigma M_n profile, as carrier coefficient vectors.
std::vector<IntVec> theorem36_generators(const KProfile& p);

} // namespace moorek
