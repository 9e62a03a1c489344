#include "moorek/abelian.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace moorek {

namespace {

std::vector<std::string> auto_labels(Index count, const char* stem = "x") {
    std::vector<std::string> out;
    out.reserve(static_cast<size_t>(count));
    for (Index i = 0; i < count; ++i) out.push_back(stem + std::to_string(i + 1));
    return out;
}

// Floor division: remainder in [0, |b|).
Int floor_div(Int a, Int b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// Balanced division: remainder magnitude at most |b|/2. Keeps entry growth
// of the unimodular transforms tame.
Int balanced_div(Int a, Int b) {
    Int q = a / b;
    Int r = a - q * b;
    if (2 * std::abs(r) > std::abs(b)) q += ((r < 0) != (b < 0)) ? -1 : 1;
    return q;
}

} // namespace

// --- AbelianGroup ------------------------------------------------------------

AbelianGroup::AbelianGroup(std::vector<Int> factors, std::vector<std::string> labels)
    : factors_(std::move(factors)), labels_(std::move(labels)) {
    if (labels_.empty() && !factors_.empty()) labels_ = auto_labels(rank());
    if (labels_.size() != factors_.size())
        throw input_error("AbelianGroup: label count differs from factor count");
    bool seen_free = false;
    Int prev = 0;
    bool have_prev = false;
    for (Int d : factors_) {
        if (d < 0) throw input_error("AbelianGroup: negative invariant factor");
        if (d == 1) throw input_error("AbelianGroup: trivial factor 1 must be normalized away");
        if (d == 0) {
            seen_free = true;
            continue;
        }
        if (seen_free) throw input_error("AbelianGroup: finite factor after free summand");
        if (have_prev && prev != 0 && d % prev != 0)
            throw input_error("AbelianGroup: invariant factors violate divisibility chain");
        prev = d;
        have_prev = true;
    }
}

AbelianGroup AbelianGroup::cyclic(Int order, std::string label) {
    if (order == 1) return trivial();
    return AbelianGroup({order}, {std::move(label)});
}

AbelianGroup AbelianGroup::normalized(const std::vector<Int>& orders,
                                      const std::vector<std::string>& labels) {
    return normalize_summands(orders, labels).group;
}

bool AbelianGroup::is_finite() const {
    return std::all_of(factors_.begin(), factors_.end(), [](Int d) { return d != 0; });
}

Int AbelianGroup::order() const {
    if (!is_finite()) throw unsupported_error("order of an infinite group");
    Int o = 1;
    for (Int d : factors_) o = checked_mul(o, d);
    return o;
}

IntVec AbelianGroup::reduce(const IntVec& coeffs) const {
    if (coeffs.size() != rank()) throw input_error("element coefficient count differs from group rank");
    IntVec out = coeffs;
    for (Index i = 0; i < rank(); ++i) {
        Int d = factors_[static_cast<size_t>(i)];
        if (d > 0) {
            out(i) %= d;
            if (out(i) < 0) out(i) += d;
        }
    }
    return out;
}

bool AbelianGroup::is_zero(const IntVec& coeffs) const { return reduce(coeffs).isZero(); }

Int AbelianGroup::element_order(const IntVec& coeffs) const {
    IntVec c = reduce(coeffs);
    Int ord = 1;
    for (Index i = 0; i < rank(); ++i) {
        Int d = factors_[static_cast<size_t>(i)];
        if (d == 0) {
            if (c(i) != 0) throw unsupported_error("element of infinite order");
            continue;
        }
        if (c(i) == 0) continue;
        Int o = d / gcd_int(c(i), d);
        ord = checked_mul(ord / gcd_int(ord, o), o);
    }
    return ord;
}

std::vector<IntVec> AbelianGroup::elements(Int cap) const {
    if (!is_finite()) throw unsupported_error("cannot enumerate an infinite group");
    Int n = order();
    if (n > cap) throw resource_error("group too large to enumerate: order " + std::to_string(n));
    std::vector<IntVec> out;
    out.reserve(static_cast<size_t>(n));
    IntVec cur = IntVec::Zero(rank());
    for (Int step = 0; step < n; ++step) {
        out.push_back(cur);
        for (Index i = rank() - 1; i >= 0; --i) {
            if (++cur(i) < factors_[static_cast<size_t>(i)]) break;
            cur(i) = 0;
        }
    }
    return out;
}

IntMat AbelianGroup::relation_matrix() const {
    Index nfin = 0;
    for (Int d : factors_)
        if (d > 0) ++nfin;
    IntMat r = IntMat::Zero(rank(), nfin);
    Index col = 0;
    for (Index i = 0; i < rank(); ++i)
        if (factors_[static_cast<size_t>(i)] > 0) r(i, col++) = factors_[static_cast<size_t>(i)];
    return r;
}

std::string AbelianGroup::to_string(bool with_labels) const {
    if (is_trivial()) return "0";
    std::ostringstream os;
    for (Index i = 0; i < rank(); ++i) {
        if (i) os << " ⊕ ";
        Int d = factors_[static_cast<size_t>(i)];
        if (d == 0)
            os << "Z";
        else
            os << "Z_" << d;
        if (with_labels) os << "<" << labels_[static_cast<size_t>(i)] << ">";
    }
    return os.str();
}

Element::Element(AbelianGroup g, IntVec c) : group(std::move(g)) { coeffs = group.reduce(c); }

// --- GroupHom ----------------------------------------------------------------

GroupHom::GroupHom(AbelianGroup domain, AbelianGroup codomain, IntMat matrix)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != codomain_.rank() || matrix_.cols() != domain_.rank())
        throw input_error("GroupHom: matrix shape disagrees with domain/codomain ranks");
}

GroupHom GroupHom::zero(const AbelianGroup& domain, const AbelianGroup& codomain) {
    return GroupHom(domain, codomain, IntMat::Zero(codomain.rank(), domain.rank()));
}

GroupHom GroupHom::identity(const AbelianGroup& g) {
    return GroupHom(g, g, IntMat::Identity(g.rank(), g.rank()));
}

GroupHom GroupHom::mult_by(Int k, const AbelianGroup& g) {
    return GroupHom(g, g, (IntMat::Identity(g.rank(), g.rank()) * k).eval());
}

bool GroupHom::is_well_defined(std::string* why) const {
    for (Index j = 0; j < domain_.rank(); ++j) {
        Int d = domain_.factors()[static_cast<size_t>(j)];
        if (d == 0) continue;
        for (Index i = 0; i < codomain_.rank(); ++i) {
            Int e = codomain_.factors()[static_cast<size_t>(i)];
            Int v = checked_mul(d, matrix_(i, j));
            bool ok = (e == 0) ? (v == 0) : (v % e == 0);
            if (!ok) {
                if (why)
                    *why = "column " + std::to_string(j) + " times its order " + std::to_string(d) +
                           " does not vanish at codomain coordinate " + std::to_string(i);
                return false;
            }
        }
    }
    return true;
}

IntVec GroupHom::apply(const IntVec& coeffs) const {
    if (coeffs.size() != domain_.rank()) throw input_error("GroupHom::apply: coefficient count mismatch");
    return codomain_.reduce(checked_matvec(matrix_, coeffs));
}

Element GroupHom::apply(const Element& e) const {
    if (!e.group.same_group(domain_)) throw input_error("GroupHom::apply: element not in the domain");
    return Element(codomain_, apply(e.coeffs));
}

GroupHom GroupHom::compose(const GroupHom& inner) const {
    if (!inner.codomain_.same_group(domain_))
        throw input_error("GroupHom::compose: maps are not composable");
    return GroupHom(inner.domain_, codomain_, checked_matmul(matrix_, inner.matrix_));
}

bool GroupHom::is_zero_map() const {
    for (Index j = 0; j < matrix_.cols(); ++j)
        if (!codomain_.is_zero(matrix_.col(j))) return false;
    return true;
}

// --- Smith normal form ---------------------------------------------------------

namespace {

// x*a + y*b = g = gcd(a,b) >= 0, with the canonical small Bezout pair.
void ext_gcd(Int a, Int b, Int& g, Int& x, Int& y) {
    Int old_r = a, r = b;
    Int old_x = 1, xx = 0;
    Int old_y = 0, yy = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int t = checked_submul(old_r, r, q);
        old_r = r;
        r = t;
        t = checked_submul(old_x, xx, q);
        old_x = xx;
        xx = t;
        t = checked_submul(old_y, yy, q);
        old_y = yy;
        yy = t;
    }
    if (old_r < 0) {
        old_r = checked_neg(old_r);
        old_x = checked_neg(old_x);
        old_y = checked_neg(old_y);
    }
    g = old_r;
    x = old_x;
    y = old_y;
}

struct SnfState {
    IntMat a, u, uinv, v, vinv;

    void row_swap(Index i, Index j) {
        if (i == j) return;
        a.row(i).swap(a.row(j));
        u.row(i).swap(u.row(j));
        uinv.col(i).swap(uinv.col(j));
    }
    void col_swap(Index i, Index j) {
        if (i == j) return;
        a.col(i).swap(a.col(j));
        v.col(i).swap(v.col(j));
        vinv.row(i).swap(vinv.row(j));
    }
    void row_negate(Index i) {
        for (Index j = 0; j < a.cols(); ++j) a(i, j) = checked_neg(a(i, j));
        for (Index j = 0; j < u.cols(); ++j) u(i, j) = checked_neg(u(i, j));
        for (Index j = 0; j < uinv.rows(); ++j) uinv(j, i) = checked_neg(uinv(j, i));
    }
    // row_i += c * row_j
    void row_addmul(Index i, Index j, Int c) {
        if (c == 0) return;
        for (Index k = 0; k < a.cols(); ++k) a(i, k) = checked_add(a(i, k), checked_mul(c, a(j, k)));
        for (Index k = 0; k < u.cols(); ++k) u(i, k) = checked_add(u(i, k), checked_mul(c, u(j, k)));
        for (Index k = 0; k < uinv.rows(); ++k)
            uinv(k, j) = checked_sub(uinv(k, j), checked_mul(c, uinv(k, i)));
    }
    // col_i += c * col_j
    void col_addmul(Index i, Index j, Int c) {
        if (c == 0) return;
        for (Index k = 0; k < a.rows(); ++k) a(k, i) = checked_add(a(k, i), checked_mul(c, a(k, j)));
        for (Index k = 0; k < v.rows(); ++k) v(k, i) = checked_add(v(k, i), checked_mul(c, v(k, j)));
        for (Index k = 0; k < vinv.cols(); ++k)
            vinv(j, k) = checked_sub(vinv(j, k), checked_mul(c, vinv(i, k)));
    }

    // Unimodular transform on the (i, j) row plane: (row_i, row_j) <-
    // (p*row_i + q*row_j, r*row_i + s*row_j), with ps - qr = 1.
    void rows_transform(Index i, Index j, Int p, Int q, Int r, Int s) {
        auto apply_rows = [&](IntMat& m) {
            for (Index k = 0; k < m.cols(); ++k) {
                Int vi = m(i, k), vj = m(j, k);
                m(i, k) = checked_add(checked_mul(p, vi), checked_mul(q, vj));
                m(j, k) = checked_add(checked_mul(r, vi), checked_mul(s, vj));
            }
        };
        apply_rows(a);
        apply_rows(u);
        // uinv <- uinv * T^{-1}; T^{-1} = [[s, -q], [-r, p]]
        for (Index k = 0; k < uinv.rows(); ++k) {
            Int ci = uinv(k, i), cj = uinv(k, j);
            uinv(k, i) = checked_sub(checked_mul(s, ci), checked_mul(r, cj));
            uinv(k, j) = checked_sub(checked_mul(p, cj), checked_mul(q, ci));
        }
    }

    // Unimodular transform on the (i, j) column plane: (col_i, col_j) <-
    // (p*col_i + q*col_j, r*col_i + s*col_j), with ps - qr = 1.
    void cols_transform(Index i, Index j, Int p, Int q, Int r, Int s) {
        auto apply_cols = [&](IntMat& m) {
            for (Index k = 0; k < m.rows(); ++k) {
                Int vi = m(k, i), vj = m(k, j);
                m(k, i) = checked_add(checked_mul(p, vi), checked_mul(q, vj));
                m(k, j) = checked_add(checked_mul(r, vi), checked_mul(s, vj));
            }
        };
        apply_cols(a);
        apply_cols(v);
        for (Index k = 0; k < vinv.cols(); ++k) {
            Int ri = vinv(i, k), rj = vinv(j, k);
            vinv(i, k) = checked_sub(checked_mul(s, ri), checked_mul(r, rj));
            vinv(j, k) = checked_sub(checked_mul(p, rj), checked_mul(q, ri));
        }
    }

    // Zero a(j, t) against the pivot a(t, t) in one unimodular step.
    void clear_row_entry(Index t, Index j) {
        Int aa = a(t, t), bb = a(j, t);
        if (bb == 0) return;
        if (aa != 0 && bb % aa == 0) {
            row_addmul(j, t, checked_neg(bb / aa));
            return;
        }
        Int g, x, y;
        ext_gcd(aa, bb, g, x, y);
        rows_transform(t, j, x, y, checked_neg(bb / g), aa / g);
    }

    void clear_col_entry(Index t, Index j) {
        Int aa = a(t, t), bb = a(t, j);
        if (bb == 0) return;
        if (aa != 0 && bb % aa == 0) {
            col_addmul(j, t, checked_neg(bb / aa));
            return;
        }
        Int g, x, y;
        ext_gcd(aa, bb, g, x, y);
        cols_transform(t, j, x, y, checked_neg(bb / g), aa / g);
    }
};

} // namespace

SmithResult smith_normal_form(const IntMat& m) {
    const Index rows = m.rows(), cols = m.cols();
    SnfState s;
    s.a = m;
    s.u = IntMat::Identity(rows, rows);
    s.uinv = IntMat::Identity(rows, rows);
    s.v = IntMat::Identity(cols, cols);
    s.vinv = IntMat::Identity(cols, cols);

    const Index steps = std::min(rows, cols);
    for (Index t = 0; t < steps; ++t) {
        for (;;) {
            // Pivot: smallest nonzero magnitude in the trailing block.
            Index pi = -1, pj = -1;
            for (Index i = t; i < rows; ++i)
                for (Index j = t; j < cols; ++j)
                    if (s.a(i, j) != 0 &&
                        (pi < 0 || std::abs(s.a(i, j)) < std::abs(s.a(pi, pj)))) {
                        pi = i;
                        pj = j;
                    }
            if (pi < 0) goto done; // trailing block is zero
            s.row_swap(t, pi);
            s.col_swap(t, pj);
            if (s.a(t, t) < 0) s.row_negate(t);
            const Int p = s.a(t, t);

            // Reduce the whole trailing block against the pivot with balanced
            // quotients. Keeping every entry near the pivot scale is what
            // keeps the unimodular transforms small.
            bool clean = true;
            for (Index i = t + 1; i < rows; ++i) {
                Int q = balanced_div(s.a(i, t), p);
                s.row_addmul(i, t, checked_neg(q));
                if (s.a(i, t) != 0) clean = false;
            }
            for (Index j = t + 1; j < cols; ++j) {
                Int q = balanced_div(s.a(t, j), p);
                s.col_addmul(j, t, checked_neg(q));
                if (s.a(t, j) != 0) clean = false;
            }
            if (!clean) continue; // smaller remainders became pivots

            // Pivot must divide the rest of the block; fold in one offending
            // row and keep going (pivot strictly shrinks).
            Index bi = -1;
            for (Index i = t + 1; i < rows && bi < 0; ++i)
                for (Index j = t + 1; j < cols; ++j)
                    if (s.a(i, j) % p != 0) {
                        bi = i;
                        break;
                    }
            if (bi < 0) break;
            s.row_addmul(t, bi, 1);
        }
    }
done:;

    // Enforce the divisibility chain with 2x2 diagonal fixes
    // diag(a, b) -> diag(gcd, lcm); every number involved stays small.
    for (bool changed = true; changed;) {
        changed = false;
        for (Index i = 0; i + 1 < steps; ++i) {
            Int a = s.a(i, i), b = s.a(i + 1, i + 1);
            if (a == 0 && b != 0) { // push zeros past finite entries
                s.row_swap(i, i + 1);
                s.col_swap(i, i + 1);
                changed = true;
                continue;
            }
            if (a == 0 || b == 0 || b % a == 0) continue;
            s.col_addmul(i, i + 1, 1); // a(i+1, i) becomes b
            s.clear_row_entry(i, i + 1);
            s.clear_col_entry(i, i + 1);
            // One more sweep in case fill reappeared in the 2x2 block.
            while (s.a(i + 1, i) != 0 || s.a(i, i + 1) != 0) {
                s.clear_row_entry(i, i + 1);
                s.clear_col_entry(i, i + 1);
            }
            if (s.a(i, i) < 0) s.row_negate(i);
            if (s.a(i + 1, i + 1) < 0) s.row_negate(i + 1);
            changed = true;
        }
    }
    for (Index t = 0; t < steps; ++t)
        if (s.a(t, t) < 0) s.row_negate(t);

    SmithResult r;
    r.u = std::move(s.u);
    r.uinv = std::move(s.uinv);
    r.v = std::move(s.v);
    r.vinv = std::move(s.vinv);
    r.d = std::move(s.a);
    return r;
}

IntMat hermite_row(const IntMat& m) {
    IntMat a = m;
    const Index rows = a.rows(), cols = a.cols();
    Index r = 0;
    for (Index c = 0; c < cols && r < rows; ++c) {
        // Reduce column c over rows >= r to a single nonzero entry.
        for (;;) {
            Index best = -1;
            int nonzero = 0;
            for (Index i = r; i < rows; ++i)
                if (a(i, c) != 0) {
                    ++nonzero;
                    if (best < 0 || std::abs(a(i, c)) < std::abs(a(best, c))) best = i;
                }
            if (nonzero == 0) { best = -1; }
            if (nonzero <= 1) {
                if (nonzero == 1) {
                    if (best != r) a.row(best).swap(a.row(r));
                } else {
                    goto next_column; // column already clear below r
                }
                break;
            }
            for (Index i = r; i < rows; ++i) {
                if (i == best || a(i, c) == 0) continue;
                Int q = balanced_div(a(i, c), a(best, c));
                for (Index k = 0; k < cols; ++k)
                    a(i, k) = checked_submul(a(i, k), a(best, k), q);
            }
        }
        if (a(r, c) < 0)
            for (Index k = 0; k < cols; ++k) a(r, k) = checked_neg(a(r, k));
        // Reduce the entries above the pivot into [0, pivot).
        for (Index i = 0; i < r; ++i) {
            Int q = floor_div(a(i, c), a(r, c));
            if (q != 0)
                for (Index k = 0; k < cols; ++k) a(i, k) = checked_submul(a(i, k), a(r, k), q);
        }
        ++r;
    next_column:;
    }
    return a.topRows(r).eval();
}

IntMat lattice_canonical(const IntMat& gens) { return hermite_row(gens.transpose()); }

IntMat kernel_lattice(const IntMat& m) {
    SmithResult s = smith_normal_form(m);
    const Index diag = std::min(m.rows(), m.cols());
    std::vector<Index> free_cols;
    for (Index j = 0; j < m.cols(); ++j)
        if (j >= diag || s.d(j, j) == 0) free_cols.push_back(j);
    IntMat k(m.cols(), static_cast<Index>(free_cols.size()));
    for (size_t jj = 0; jj < free_cols.size(); ++jj) k.col(static_cast<Index>(jj)) = s.v.col(free_cols[jj]);
    return k;
}

std::optional<IntMat> solve_exact(const IntMat& a, const IntMat& b) {
    if (a.rows() != b.rows()) throw input_error("solve_exact: row counts disagree");
    SmithResult s = smith_normal_form(a);
    IntMat c = checked_matmul(s.u, b);
    IntMat y = IntMat::Zero(a.cols(), b.cols());
    const Index diag = std::min(a.rows(), a.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        Int d = (i < diag) ? s.d(i, i) : 0;
        for (Index j = 0; j < b.cols(); ++j) {
            if (d == 0) {
                if (c(i, j) != 0) return std::nullopt;
            } else {
                if (c(i, j) % d != 0) return std::nullopt;
                if (i < a.cols()) y(i, j) = c(i, j) / d;
            }
        }
    }
    return checked_matmul(s.v, y);
}

std::optional<IntVec> solve_mod(const GroupHom& h, const IntVec& target) {
    const Index m = h.domain().rank();
    IntMat rel = h.codomain().relation_matrix();
    IntMat a(h.codomain().rank(), m + rel.cols());
    a << h.matrix(), rel;
    IntMat b = h.codomain().reduce(target);
    auto x = solve_exact(a, b);
    if (!x) return std::nullopt;
    return h.domain().reduce(x->col(0).topRows(m));
}

Int determinant(const IntMat& m) {
    if (m.rows() != m.cols()) throw input_error("determinant of a non-square matrix");
    const Index n = m.rows();
    if (n == 0) return 1;
    IntMat a = m;
    Int prev = 1, sign = 1;
    for (Index k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            Index p = -1;
            for (Index i = k + 1; i < n; ++i)
                if (a(i, k) != 0) {
                    p = i;
                    break;
                }
            if (p < 0) return 0;
            a.row(k).swap(a.row(p));
            sign = -sign;
        }
        for (Index i = k + 1; i < n; ++i)
            for (Index j = k + 1; j < n; ++j)
                a(i, j) = checked_sub(checked_mul(a(i, j), a(k, k)), checked_mul(a(i, k), a(k, j))) / prev;
        prev = a(k, k);
    }
    return checked_mul(sign, a(n - 1, n - 1));
}

// --- presentations -------------------------------------------------------------

Presentation from_presentation(Index num_gens, const IntMat& relations,
                               const std::vector<std::string>& labels) {
    if (relations.cols() != num_gens && relations.size() != 0)
        throw input_error("from_presentation: relation matrix must have one column per generator");
    IntMat a = (relations.size() == 0) ? IntMat::Zero(num_gens, 0)
                                       : IntMat(relations.transpose());
    SmithResult s = smith_normal_form(a);
    const Index diag = std::min(a.rows(), a.cols());

    std::vector<Index> kept;
    std::vector<Int> factors;
    for (Index i = 0; i < num_gens; ++i) {
        Int d = (i < diag) ? s.d(i, i) : 0;
        if (d == 1) continue;
        kept.push_back(i);
        factors.push_back(d);
    }

    Presentation p;
    p.to_normal = IntMat(static_cast<Index>(kept.size()), num_gens);
    p.lift = IntMat(num_gens, static_cast<Index>(kept.size()));
    for (size_t r = 0; r < kept.size(); ++r) {
        p.to_normal.row(static_cast<Index>(r)) = s.u.row(kept[r]);
        p.lift.col(static_cast<Index>(r)) = s.uinv.col(kept[r]);
    }
    // Provided labels survive only when the generators were not mixed.
    bool identity_transform = kept.size() == static_cast<size_t>(num_gens) &&
                              p.to_normal == IntMat::Identity(num_gens, num_gens);
    std::vector<std::string> lab = (identity_transform && labels.size() == static_cast<size_t>(num_gens))
                                       ? labels
                                       : auto_labels(static_cast<Index>(kept.size()));
    p.group = AbelianGroup(std::move(factors), std::move(lab));
    return p;
}

NormalizedSummands normalize_summands(const std::vector<Int>& orders,
                                      const std::vector<std::string>& labels) {
    const Index n = static_cast<Index>(orders.size());
    std::vector<std::string> lab = labels.empty() ? auto_labels(n) : labels;
    if (lab.size() != orders.size())
        throw input_error("normalize_summands: label count differs from summand count");

    // Try a pure permutation first: finite orders ascending, frees last.
    std::vector<Index> perm(static_cast<size_t>(n));
    std::iota(perm.begin(), perm.end(), Index{0});
    std::stable_sort(perm.begin(), perm.end(), [&](Index i, Index j) {
        Int a = orders[static_cast<size_t>(i)], b = orders[static_cast<size_t>(j)];
        if ((a == 0) != (b == 0)) return b == 0;
        return a < b;
    });
    bool chain_ok = true;
    Int prev = 0;
    bool have_prev = false;
    for (Index idx : perm) {
        Int d = orders[static_cast<size_t>(idx)];
        if (d == 1) continue; // dropped below
        if (d == 0) break;
        if (have_prev && d % prev != 0) {
            chain_ok = false;
            break;
        }
        prev = d;
        have_prev = true;
    }

    NormalizedSummands out;
    if (chain_ok) {
        std::vector<Int> factors;
        std::vector<std::string> kept_labels;
        std::vector<Index> kept;
        for (Index idx : perm) {
            Int d = orders[static_cast<size_t>(idx)];
            if (d == 1) continue;
            factors.push_back(d);
            kept_labels.push_back(lab[static_cast<size_t>(idx)]);
            kept.push_back(idx);
        }
        out.group = AbelianGroup(std::move(factors), std::move(kept_labels));
        out.to_normal = IntMat::Zero(out.group.rank(), n);
        out.lift = IntMat::Zero(n, out.group.rank());
        for (size_t r = 0; r < kept.size(); ++r) {
            out.to_normal(static_cast<Index>(r), kept[r]) = 1;
            out.lift(kept[r], static_cast<Index>(r)) = 1;
        }
        return out;
    }

    // Coprime torsion present: merge through a presentation; labels are
    // regenerated because the new generators mix the old ones.
    IntMat rel = IntMat::Zero(n, n);
    Index nrel = 0;
    for (Index i = 0; i < n; ++i)
        if (orders[static_cast<size_t>(i)] > 0) rel(nrel++, i) = orders[static_cast<size_t>(i)];
    Presentation p = from_presentation(n, rel.topRows(nrel).eval());
    out.group = p.group;
    out.to_normal = p.to_normal;
    out.lift = p.lift;
    return out;
}

// --- subquotients ----------------------------------------------------------------

namespace {

// Basis (columns) of the lattice spanned by the columns of `gens`.
IntMat column_basis(const IntMat& gens) {
    return hermite_row(gens.transpose()).transpose().eval();
}

} // namespace

Subquotients subquotients(const GroupHom& h) {
    std::string why;
    if (!h.is_well_defined(&why)) throw input_error("subquotients: map is not well defined: " + why);

    const AbelianGroup& g = h.domain();
    const AbelianGroup& hh = h.codomain();
    const Index m = g.rank(), k = hh.rank();
    IntMat rel_g = g.relation_matrix();
    IntMat rel_h = hh.relation_matrix();

    // Preimage lattice K = { x in Z^m : M x lies in the codomain relations }.
    IntMat stacked(k, m + rel_h.cols());
    stacked << h.matrix(), rel_h;
    IntMat ker_full = kernel_lattice(stacked);
    IntMat bk = column_basis(ker_full.topRows(m).eval()); // m x t, contains rel_g

    Subquotients out;

    // kernel = K / L_G
    auto x = solve_exact(bk, rel_g);
    if (!x) throw construction_error("subquotients: domain relations escape the kernel lattice");
    Presentation kp = from_presentation(bk.cols(), x->transpose().eval());
    out.kernel = kp.group;
    out.kernel_embedding =
        GroupHom(out.kernel, g, checked_matmul(bk, kp.lift));

    // image = Z^m / K  (first isomorphism theorem), embedded through M
    Presentation ip = from_presentation(m, bk.transpose().eval());
    out.image = ip.group;
    out.image_embedding = GroupHom(out.image, hh, checked_matmul(h.matrix(), ip.lift));

    // cokernel = Z^k / (im M + L_H)
    IntMat cok_rel(k, m + rel_h.cols());
    cok_rel << h.matrix(), rel_h;
    Presentation cp = from_presentation(k, cok_rel.transpose().eval());
    out.cokernel = cp.group;
    out.cokernel_projection = GroupHom(hh, out.cokernel, cp.to_normal);

    return out;
}

IntMat subgroup_lattice(const AbelianGroup& ambient, const IntMat& gens) {
    if (gens.size() != 0 && gens.rows() != ambient.rank())
        throw input_error("subgroup_lattice: generator coordinates disagree with ambient rank");
    IntMat rel = ambient.relation_matrix();
    IntMat all(ambient.rank(), (gens.size() == 0 ? 0 : gens.cols()) + rel.cols());
    if (gens.size() == 0)
        all << rel;
    else
        all << gens, rel;
    return lattice_canonical(all);
}

ExactnessReport is_exact(const std::vector<GroupHom>& sequence, bool cyclic) {
    ExactnessReport rep;
    if (sequence.empty()) return rep;
    const size_t n = sequence.size();
    const size_t first = cyclic ? 0 : 1;
    for (size_t i = 0; i < n; ++i) {
        size_t prev = (i + n - 1) % n;
        if (!cyclic && i == 0) continue;
        if (!sequence[prev].codomain().same_group(sequence[i].domain()))
            throw input_error("is_exact: maps " + std::to_string(prev) + " and " + std::to_string(i) +
                              " are not composable");
    }
    for (size_t i = first; i < n; ++i) {
        const GroupHom& in = sequence[(i + n - 1) % n];
        const GroupHom& outh = sequence[i];
        const AbelianGroup& mid = outh.domain();

        IntMat image = subgroup_lattice(mid, in.matrix());

        IntMat rel_next = outh.codomain().relation_matrix();
        IntMat stacked(outh.codomain().rank(), mid.rank() + rel_next.cols());
        stacked << outh.matrix(), rel_next;
        IntMat ker_gens = kernel_lattice(stacked).topRows(mid.rank()).eval();
        IntMat kernel = subgroup_lattice(mid, ker_gens);

        ExactnessNode node;
        node.at = mid.to_string(false);
        node.exact = (image.rows() == kernel.rows() && image.cols() == kernel.cols() && image == kernel);
        if (!node.exact) {
            node.detail = "image lattice differs from kernel lattice at position " + std::to_string(i);
            rep.exact = false;
        }
        rep.nodes.push_back(std::move(node));
    }
    return rep;
}

// --- coefficient functors ---------------------------------------------------------

AbelianGroup tensor_Zn(const AbelianGroup& g, Int n) {
    if (n < 2) throw input_error("tensor_Zn: modulus must be at least 2");
    std::vector<Int> factors;
    std::vector<std::string> labels;
    for (Index i = 0; i < g.rank(); ++i) {
        Int d = g.factors()[static_cast<size_t>(i)];
        Int f = (d == 0) ? n : gcd_int(d, n);
        if (f == 1) continue;
        factors.push_back(f);
        labels.push_back(g.labels()[static_cast<size_t>(i)]);
    }
    return AbelianGroup(std::move(factors), std::move(labels));
}

AbelianGroup tor_Zn(const AbelianGroup& g, Int n) {
    if (n < 2) throw input_error("tor_Zn: modulus must be at least 2");
    std::vector<Int> factors;
    std::vector<std::string> labels;
    for (Index i = 0; i < g.rank(); ++i) {
        Int d = g.factors()[static_cast<size_t>(i)];
        if (d == 0) continue;
        Int f = gcd_int(d, n);
        if (f == 1) continue;
        factors.push_back(f);
        labels.push_back(g.labels()[static_cast<size_t>(i)]);
    }
    return AbelianGroup(std::move(factors), std::move(labels));
}

GroupHom reduction_hom(const AbelianGroup& g, Int n) {
    AbelianGroup t = tensor_Zn(g, n);
    IntMat m = IntMat::Zero(t.rank(), g.rank());
    Index row = 0;
    for (Index i = 0; i < g.rank(); ++i) {
        Int d = g.factors()[static_cast<size_t>(i)];
        Int f = (d == 0) ? n : gcd_int(d, n);
        if (f == 1) continue;
        m(row++, i) = 1;
    }
    return GroupHom(g, t, m);
}

TorsionPart tor_part(const AbelianGroup& g, Int n) {
    AbelianGroup t = tor_Zn(g, n);
    IntMat m = IntMat::Zero(g.rank(), t.rank());
    Index col = 0;
    for (Index i = 0; i < g.rank(); ++i) {
        Int d = g.factors()[static_cast<size_t>(i)];
        if (d == 0) continue;
        Int f = gcd_int(d, n);
        if (f == 1) continue;
        m(i, col++) = d / f;
    }
    TorsionPart out;
    out.embedding = GroupHom(t, g, m);
    out.group = std::move(t);
    return out;
}

AbelianGroup n_primary_part(const AbelianGroup& g, Int n) {
    if (n < 2) throw input_error("n_primary_part: modulus must be at least 2");
    if (!g.is_finite())
        throw unsupported_error("n_primary_part: free summands are out of scope for localization");
    std::vector<Int> factors;
    std::vector<std::string> labels;
    for (Index i = 0; i < g.rank(); ++i) {
        Int d = g.factors()[static_cast<size_t>(i)];
        Int coprime = d;
        for (;;) {
            Int gg = gcd_int(coprime, n);
            if (gg == 1) break;
            coprime /= gg;
        }
        Int f = d / coprime;
        if (f == 1) continue;
        factors.push_back(f);
        labels.push_back(g.labels()[static_cast<size_t>(i)]);
    }
    return AbelianGroup(std::move(factors), std::move(labels));
}

} // namespace moorek
