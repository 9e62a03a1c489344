#pragma once

#include <optional>
#include <string>
#include <vector>

#include "moorek/types.hpp"

namespace moorek {

// Finitely generated abelian group in invariant-factor normal form.
// `factors` lists cyclic orders d_1 | d_2 | ... | d_k followed by 0-entries
// (infinite cyclic summands); no entry equals 1. Labels name the generators
// for reporting and never participate in equality.
class AbelianGroup {
public:
    AbelianGroup() = default;
    AbelianGroup(std::vector<Int> factors, std::vector<std::string> labels);

    static AbelianGroup trivial() { return AbelianGroup({}, {}); }
    static AbelianGroup cyclic(Int order, std::string label);
    // Direct sum of cyclic summands in arbitrary order; reorders (and, for
    // coprime torsion, merges) into normal form. Labels survive exactly when
    // the normalization is a pure permutation of summands.
    static AbelianGroup normalized(const std::vector<Int>& orders, const std::vector<std::string>& labels);

    const std::vector<Int>& factors() const { return factors_; }
    const std::vector<std::string>& labels() const { return labels_; }
    Index rank() const { return static_cast<Index>(factors_.size()); }
    bool is_trivial() const { return factors_.empty(); }
    bool is_finite() const;
    Int order() const; // throws unsupported_error when infinite

    bool same_group(const AbelianGroup& other) const { return factors_ == other.factors_; }

    // Reduce a coefficient vector into canonical range [0, d_i) on finite
    // coordinates (free coordinates are left as-is).
    IntVec reduce(const IntVec& coeffs) const;
    bool is_zero(const IntVec& coeffs) const;
    // Additive order of an element; throws unsupported_error when infinite.
    Int element_order(const IntVec& coeffs) const;

    // All elements in lexicographic coefficient order (finite groups only).
    std::vector<IntVec> elements(Int cap = 1 << 20) const;

    // Relation matrix: columns d_i * e_i for each finite factor (rank x #finite).
    IntMat relation_matrix() const;

    std::string to_string(bool with_labels = true) const;

private:
    std::vector<Int> factors_;
    std::vector<std::string> labels_;
};

// An element tagged with its group, for the public API surface.
struct Element {
    AbelianGroup group;
    IntVec coeffs;

    Element() = default;
    Element(AbelianGroup g, IntVec c);
    bool is_zero() const { return group.is_zero(coeffs); }
};

// Homomorphism G -> H as an integer matrix acting on coefficient columns.
class GroupHom {
public:
    GroupHom() = default;
    GroupHom(AbelianGroup domain, AbelianGroup codomain, IntMat matrix);

    static GroupHom zero(const AbelianGroup& domain, const AbelianGroup& codomain);
    static GroupHom identity(const AbelianGroup& g);
    static GroupHom mult_by(Int k, const AbelianGroup& g);

    const AbelianGroup& domain() const { return domain_; }
    const AbelianGroup& codomain() const { return codomain_; }
    const IntMat& matrix() const { return matrix_; }

    // d_i * column_i must vanish in the codomain for every finite domain
    // factor d_i (and free codomain coordinates must be hit by 0 exactly).
    bool is_well_defined(std::string* why = nullptr) const;

    IntVec apply(const IntVec& coeffs) const;
    Element apply(const Element& e) const;
    GroupHom compose(const GroupHom& inner) const; // this ∘ inner
    bool is_zero_map() const;

private:
    AbelianGroup domain_, codomain_;
    IntMat matrix_;
};

// --- integer matrix normal forms -------------------------------------------

struct SmithResult {
    IntMat u, uinv; // unimodular, u * m * v = d
    IntMat d;       // same shape as m, diagonal, d_i >= 0, d_i | d_{i+1}
    IntMat v, vinv; // unimodular
};

// Smith normal form over the integers. Handles degenerate shapes (0 rows or
// columns) by returning identity transforms of the right size.
SmithResult smith_normal_form(const IntMat& m);

// Row-style Hermite normal form: canonical basis of the row lattice.
// Pivots positive, entries above each pivot reduced into [0, pivot),
// zero rows dropped.
IntMat hermite_row(const IntMat& m);

// Canonical basis of the lattice spanned by the columns of `gens` inside Z^k.
IntMat lattice_canonical(const IntMat& gens);

// Basis (as columns) of { x : m x = 0 } over the integers.
IntMat kernel_lattice(const IntMat& m);

// Exact integer solution X of A X = B, if one exists.
std::optional<IntMat> solve_exact(const IntMat& a, const IntMat& b);

// Solve h(x) = target in the codomain (i.e. modulo codomain relations).
std::optional<IntVec> solve_mod(const GroupHom& h, const IntVec& target);

// Determinant by fraction-free (Bareiss) elimination; exact, checked.
Int determinant(const IntMat& m);

// --- presentations and subquotients -----------------------------------------

struct Presentation {
    AbelianGroup group;
    // Coordinates: group coords of old generator j = to_normal.col(j).
    IntMat to_normal; // group.rank() x num_gens
    // Representative of group generator j in the old coordinates.
    IntMat lift;      // num_gens x group.rank()
};

// Cokernel of the relation matrix: rows of `relations` are relations among
// `num_gens` generators. Labels for surviving generators are auto-generated
// unless `labels` supplies num_gens-independent names.
Presentation from_presentation(Index num_gens, const IntMat& relations,
                               const std::vector<std::string>& labels = {});

// Normal form of a direct sum of cyclic summands given in arbitrary order,
// carrying the coordinate change. When normalization is a pure permutation
// the labels survive; coprime-torsion merges get fresh labels.
struct NormalizedSummands {
    AbelianGroup group;
    IntMat to_normal; // group.rank() x #summands
    IntMat lift;      // #summands x group.rank()
};
NormalizedSummands normalize_summands(const std::vector<Int>& orders,
                                      const std::vector<std::string>& labels);

struct Subquotients {
    AbelianGroup kernel, image, cokernel;
    GroupHom kernel_embedding;     // kernel -> domain
    GroupHom image_embedding;      // image -> codomain
    GroupHom cokernel_projection;  // codomain -> cokernel
};

Subquotients subquotients(const GroupHom& h);

// Canonical lattice of the subgroup of `ambient` generated by the columns of
// `gens` (inside Z^rank, together with the ambient relations). Two subgroups
// are equal iff their canonical lattices are identical matrices.
IntMat subgroup_lattice(const AbelianGroup& ambient, const IntMat& gens);

struct ExactnessNode {
    std::string at;    // label of the middle group
    bool exact = false;
    std::string detail;
};

struct ExactnessReport {
    bool exact = true;
    std::vector<ExactnessNode> nodes;
};

// Exactness of G_1 -> G_2 -> ... -> G_{m+1} at every interior node.
// When `cyclic` is set the last map is followed by the first one again, so
// every node (including the endpoints) is interior.
ExactnessReport is_exact(const std::vector<GroupHom>& sequence, bool cyclic = false);

// --- coefficient functors ----------------------------------------------------

// G ⊗ Z_n: summand-wise Z ↦ Z_n, Z_d ↦ Z_{gcd(d,n)}.
AbelianGroup tensor_Zn(const AbelianGroup& g, Int n);

// Tor(G, Z_n): summand-wise Z ↦ 0, Z_d ↦ Z_{gcd(d,n)}.
AbelianGroup tor_Zn(const AbelianGroup& g, Int n);

// The reduction hom G -> G ⊗ Z_n in the summand-wise coordinates.
GroupHom reduction_hom(const AbelianGroup& g, Int n);

// The n-torsion subgroup Tor(G, Z_n) together with its embedding into G
// (generator i of the Tor part maps to (d_i/gcd(d_i,n)) * e_i).
struct TorsionPart {
    AbelianGroup group;
    GroupHom embedding; // group -> ambient
};
TorsionPart tor_part(const AbelianGroup& g, Int n);

// Largest quotient/summand with all prime factors dividing n (finite G only).
AbelianGroup n_primary_part(const AbelianGroup& g, Int n);

} // namespace moorek
