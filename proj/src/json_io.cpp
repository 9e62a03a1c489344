#include "moorek/json_io.hpp"

namespace moorek {

namespace {

IntVec vec_from_json(const Json& j, Index expected) {
    if (!j.is_array() || static_cast<Index>(j.size()) != expected)
        throw input_error("json: coefficient array of length " + std::to_string(expected) +
                          " expected");
    IntVec v(expected);
    for (Index i = 0; i < expected; ++i) v(i) = j[static_cast<size_t>(i)].get<Int>();
    return v;
}

Json vec_to_json(const IntVec& v) {
    Json a = Json::array();
    for (Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

} // namespace

Json group_to_json(const AbelianGroup& g) {
    Json j;
    j["factors"] = g.factors();
    j["labels"] = g.labels();
    return j;
}

AbelianGroup group_from_json(const Json& j) {
    if (!j.contains("factors")) throw input_error("json: group requires a \"factors\" array");
    std::vector<Int> factors = j.at("factors").get<std::vector<Int>>();
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    return AbelianGroup(std::move(factors), std::move(labels));
}

Json matrix_to_json(const IntMat& m) {
    Json rows = Json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

IntMat matrix_from_json(const Json& j, Index rows, Index cols) {
    if (!j.is_array() || static_cast<Index>(j.size()) != rows)
        throw input_error("json: matrix with " + std::to_string(rows) + " rows expected");
    IntMat m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        const Json& row = j[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<Index>(row.size()) != cols)
            throw input_error("json: matrix row of length " + std::to_string(cols) + " expected");
        for (Index k = 0; k < cols; ++k) m(i, k) = row[static_cast<size_t>(k)].get<Int>();
    }
    return m;
}

Json table_to_json(const BilinearTable& t) {
    Json triples = Json::array();
    for (size_t i = 0; i < t.size(); ++i)
        for (size_t j = 0; j < t[i].size(); ++j) {
            if (t[i][j].isZero()) continue;
            Json triple = Json::array();
            triple.push_back(static_cast<Int>(i));
            triple.push_back(static_cast<Int>(j));
            triple.push_back(vec_to_json(t[i][j]));
            triples.push_back(std::move(triple));
        }
    return triples;
}

BilinearTable table_from_json(const Json& j, Index rows, Index cols, Index target_rank) {
    BilinearTable t(static_cast<size_t>(rows),
                    std::vector<IntVec>(static_cast<size_t>(cols), IntVec::Zero(target_rank)));
    if (!j.is_array()) throw input_error("json: sparse table must be an array of [i, j, coeffs]");
    for (const Json& triple : j) {
        if (!triple.is_array() || triple.size() != 3)
            throw input_error("json: sparse table entries are [i, j, coeffs]");
        Index i = triple[0].get<Index>();
        Index k = triple[1].get<Index>();
        if (i < 0 || i >= rows || k < 0 || k >= cols)
            throw input_error("json: sparse table index out of range");
        t[static_cast<size_t>(i)][static_cast<size_t>(k)] = vec_from_json(triple[2], target_rank);
    }
    return t;
}

Json profile_to_json(const KProfile& p) {
    Json j;
    j["name"] = p.name;
    j["modulus"] = p.modulus;
    j["connected"] = p.connected;
    j["full_modn_trusted"] = p.full_modn_trusted;
    j["assumptions"] = p.assumptions;
    j["notes"] = p.notes;
    j["k0red"] = group_to_json(p.k0red);
    j["k1red"] = group_to_json(p.k1red);
    j["k0n"] = group_to_json(p.k0n);
    j["k1n"] = group_to_json(p.k1n);
    j["rho0"] = matrix_to_json(p.rho0.matrix());
    j["rho1"] = matrix_to_json(p.rho1.matrix());
    j["beta0"] = matrix_to_json(p.beta0.matrix());
    j["beta1"] = matrix_to_json(p.beta1.matrix());
    Json pinned = Json::array();
    for (int s = 0; s < 2; ++s) {
        Json row = Json::array();
        const auto& mask = p.modn_pinned[s];
        for (Index i = 0; i < p.modn(s).rank(); ++i)
            row.push_back(mask.empty() ? true : static_cast<bool>(mask[static_cast<size_t>(i)]));
        pinned.push_back(std::move(row));
    }
    j["modn_pinned"] = std::move(pinned);
    Json ring;
    Json act;
    const char* keys[2][2] = {{"00", "01"}, {"10", "11"}};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            ring[keys[a][b]] = table_to_json(p.ring[a][b]);
            act[keys[a][b]] = table_to_json(p.actl[a][b]);
        }
    j["ring"] = std::move(ring);
    j["act"] = std::move(act);
    return j;
}

KProfile profile_from_json(const Json& j) {
    KProfile p;
    p.name = j.at("name").get<std::string>();
    p.modulus = j.at("modulus").get<Int>();
    p.connected = j.at("connected").get<bool>();
    p.full_modn_trusted = j.at("full_modn_trusted").get<bool>();
    p.assumptions = j.at("assumptions").get<std::vector<std::string>>();
    if (j.contains("notes")) p.notes = j.at("notes").get<std::vector<std::string>>();
    p.k0red = group_from_json(j.at("k0red"));
    p.k1red = group_from_json(j.at("k1red"));
    p.k0n = group_from_json(j.at("k0n"));
    p.k1n = group_from_json(j.at("k1n"));
    p.rho0 = GroupHom(p.k0red, p.k0n, matrix_from_json(j.at("rho0"), p.k0n.rank(), p.k0red.rank()));
    p.rho1 = GroupHom(p.k1red, p.k1n, matrix_from_json(j.at("rho1"), p.k1n.rank(), p.k1red.rank()));
    p.beta0 = GroupHom(p.k0n, p.k1red, matrix_from_json(j.at("beta0"), p.k1red.rank(), p.k0n.rank()));
    p.beta1 = GroupHom(p.k1n, p.k0red, matrix_from_json(j.at("beta1"), p.k0red.rank(), p.k1n.rank()));
    if (j.contains("modn_pinned")) {
        const Json& pinned = j.at("modn_pinned");
        for (int s = 0; s < 2; ++s) {
            p.modn_pinned[s].clear();
            for (const Json& b : pinned[static_cast<size_t>(s)])
                p.modn_pinned[s].push_back(b.get<bool>());
        }
    }
    const char* keys[2][2] = {{"00", "01"}, {"10", "11"}};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            p.ring[a][b] = table_from_json(j.at("ring").at(keys[a][b]), p.red(a).rank(),
                                           p.red(b).rank(), p.red(a + b).rank());
            p.actl[a][b] = table_from_json(j.at("act").at(keys[a][b]), p.red(a).rank(),
                                           p.modn(b).rank(), p.modn(a + b).rank());
        }
    return p;
}

Json group_table_to_json(const GroupTable& t) {
    Json j;
    j["order"] = t.order();
    Json elems = Json::array();
    for (const IntVec& e : t.elements) elems.push_back(vec_to_json(e));
    j["elements"] = std::move(elems);
    Json rows = Json::array();
    for (const auto& row : t.table) {
        Json r = Json::array();
        for (int v : row) r.push_back(v);
        rows.push_back(std::move(r));
    }
    j["table"] = std::move(rows);
    if (!t.assumptions.empty()) j["assumptions"] = t.assumptions;
    return j;
}

Json classify_to_json(const ClassifyReport& r) {
    Json j;
    j["order"] = r.order;
    j["abelian"] = r.abelian;
    j["exponent"] = r.exponent;
    j["center_order"] = r.center_order;
    j["derived_order"] = r.derived_order;
    if (r.abelian) j["abelian_invariants"] = r.abelian_invariants;
    j["heisenberg"] = r.heisenberg;
    if (r.heisenberg || r.heisenberg_times_cyclic) j["heisenberg_n"] = r.heisenberg_n;
    j["heisenberg_times_cyclic"] = r.heisenberg_times_cyclic;
    if (r.heisenberg_times_cyclic) j["cyclic_factor"] = r.cyclic_factor;
    j["assumptions"] = r.assumptions;
    return j;
}

Json simn_to_json(const SimnReport& r, const std::vector<std::vector<IntVec>>* classes) {
    Json j;
    j["classes"] = r.classes;
    j["tensor_order"] = r.tensor_order;
    j["inequality"] = r.inequality;
    j["note"] = r.note;
    if (classes) {
        Json cl = Json::array();
        for (const auto& c : *classes) {
            Json members = Json::array();
            for (const IntVec& m : c) members.push_back(vec_to_json(m));
            cl.push_back(std::move(members));
        }
        j["class_members"] = std::move(cl);
    }
    return j;
}

Json count_to_json(const CountReport& r) {
    Json j;
    j["k0_tensor_order"] = r.k0_tensor_order;
    j["heven_order"] = r.heven;
    j["tor_hypothesis"] = r.tor_hypothesis;
    j["asserted"] = r.asserted;
    j["equal"] = r.equal;
    return j;
}

Json pimsner_to_json(const PimsnerPieces& p) {
    Json j;
    j["coker0"] = group_to_json(p.coker0);
    j["ker0"] = group_to_json(p.ker0);
    j["coker1"] = group_to_json(p.coker1);
    j["ker1"] = group_to_json(p.ker1);
    j["note"] = p.note;
    return j;
}

Json ring_to_json(const FiniteNilRing& r) {
    Json j;
    j["additive"] = group_to_json(r.additive());
    j["mult"] = table_to_json(r.mult_table());
    return j;
}

FiniteNilRing ring_from_json(const Json& j) {
    AbelianGroup add = group_from_json(j.at("additive"));
    Index r = add.rank();
    BilinearTable t = j.contains("mult")
                          ? table_from_json(j.at("mult"), r, r, r)
                          : BilinearTable(static_cast<size_t>(r),
                                          std::vector<IntVec>(static_cast<size_t>(r), IntVec::Zero(r)));
    return FiniteNilRing(std::move(add), std::move(t));
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

} // namespace moorek
