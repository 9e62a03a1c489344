#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "moorek/abelian.hpp"
#include "moorek/spaces.hpp"

namespace moorek {

// Bilinear table: entry[a][b] = coefficient vector of gen_a * gen_b in the
// target group.
using BilinearTable = std::vector<std::vector<IntVec>>;

// Reduced-integral or mod-n class tagged with its degree.
struct RedElement {
    int degree = 0;
    IntVec coeffs;
};
struct ModnElement {
    int degree = 0;
    IntVec coeffs;
};

enum class Side { Left, Right };

// K-theoretic record of a space: reduced integral K-groups with their graded
// ring, mod-n K-groups with the Bockstein/reduction maps, and the module
// action of the integral ring on the mod-n layer.
struct KProfile {
    std::string name;
    Int modulus = 0;
    bool connected = true;
    // Extensions that were assumed split rather than derived.
    std::vector<std::string> assumptions;
    // Informational provenance notes (e.g. standard-topology background data).
    std::vector<std::string> notes;
    // When false the mod-n carriers are coordinate scaffolding whose full
    // isomorphism class is not backed by data; whole-carrier constructions
    // must be refused, subgroup-level work is fine.
    bool full_modn_trusted = true;
    // Per mod-n generator: whether its additive relation to the rest of the
    // carrier is backed by data (reduction images and determined Bockstein
    // layers) rather than by an assumed splitting.
    std::array<std::vector<bool>, 2> modn_pinned;

    AbelianGroup k0red, k1red; // reduced integral K-groups
    AbelianGroup k0n, k1n;     // mod-n K-groups
    GroupHom rho0, rho1;       // reduction: red(i) -> modn(i)
    GroupHom beta0, beta1;     // Bockstein: modn(i) -> red(i+1)

    // ring[i][j]: red(i) x red(j) -> red(i+j); actl[i][j]: mu_L,
    // red(i) x modn(j) -> modn(i+j). mu_R is derived by the sign rule.
    std::array<std::array<BilinearTable, 2>, 2> ring;
    std::array<std::array<BilinearTable, 2>, 2> actl;

    const AbelianGroup& red(int i) const { return i % 2 == 0 ? k0red : k1red; }
    const AbelianGroup& modn(int i) const { return i % 2 == 0 ? k0n : k1n; }
    const GroupHom& rho(int i) const { return i % 2 == 0 ? rho0 : rho1; }
    const GroupHom& beta(int i) const { return i % 2 == 0 ? beta0 : beta1; }

    // Bilinear extension of the ring table. Throws input_error on mismatch.
    RedElement mult(const RedElement& x, const RedElement& y) const;
    // Module action of a reduced class on a mod-n class; Side::Left is mu_L,
    // Side::Right applies the (-1)^{ij} rule.
    ModnElement act(const RedElement& x, const ModnElement& b, Side side) const;

    IntVec mult_raw(int di, const IntVec& x, int dj, const IntVec& y) const;
    IntVec actl_raw(int di, const IntVec& x, int dj, const IntVec& b) const;
    IntVec actr_raw(int dj, const IntVec& b, int di, const IntVec& x) const;
};

struct ValidationCheck {
    std::string name;
    bool pass = true;
    std::string detail; // counterexample generators on failure
};

struct ValidationReport {
    bool pass = true;
    std::vector<ValidationCheck> checks;
    std::string to_string() const;
};

// Runs every profile invariant: Bockstein 6-term exactness, the graded sign
// rule, nilpotency of the reduced ring, rho/beta compatibility of the module
// action, and associativity of all tables.
ValidationReport validate(const KProfile& p);

// Extension choices for Kunneth/Bockstein assemblies whose two ends are both
// nonzero. assume_split = take the direct-sum carrier and flag the profile.
struct SplittingData {
    bool assume_split = false;
};

KProfile point_profile(Int n);
KProfile sphere_profile(Int k, Int n);
KProfile moore_profile(Int m, Int n);
KProfile suspend(const KProfile& p);
KProfile smash(const KProfile& x, const KProfile& y,
               const std::optional<SplittingData>& split = std::nullopt);
KProfile product(const KProfile& x, const KProfile& y,
                 const std::optional<SplittingData>& split = std::nullopt);

// The distinguished catalog entry M_n x Sigma M_n with its built-in
// extension data.
KProfile mn_x_sigma_mn(Int n);

// Builds the profile of a space expression at the given modulus. Composite
// nodes delegate to suspend/smash/product; prod(M(n), susp(M(n))) is
// recognized as the distinguished entry. Every emitted profile passes
// validate.
KProfile catalog(const SpaceExpr& expr, Int n,
                 const std::optional<SplittingData>& split = std::nullopt);

// Formats an element of a group as a sum of labeled generators ("g+2*u").
std::string format_element(const AbelianGroup& g, const IntVec& coeffs);

} // namespace moorek
