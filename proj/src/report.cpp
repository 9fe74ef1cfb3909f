#include "strata/report.hpp"

namespace strata {

json label_to_json(const StratumLabel& c) { return json::array({c.h, c.l}); }

json mat_to_json(const Mat& m) {
    json rows = json::array();
    for (int i = 0; i < m.nr; ++i) {
        json row = json::array();
        for (int j = 0; j < m.nc; ++j) row.push_back(m.at(i, j));
        rows.push_back(row);
    }
    return json{{"rows", m.nr}, {"cols", m.nc}, {"entries", rows}};
}

Mat mat_from_json(const Fq& F, const json& j) {
    Mat m(j.at("rows").get<int>(), j.at("cols").get<int>());
    const json& rows = j.at("entries");
    for (int i = 0; i < m.nr; ++i)
        for (int c = 0; c < m.nc; ++c) {
            int v = rows[i][c].get<int>();
            if (v < 0 || v >= F.q()) throw std::invalid_argument("mat_from_json: bad entry");
            m.at(i, c) = static_cast<fqe>(v);
        }
    return m;
}

json pmat_to_json(const PMat& m) {
    json rows = json::array();
    for (int i = 0; i < m.nr; ++i) {
        json row = json::array();
        for (int j = 0; j < m.nc; ++j) {
            json coeffs = json::array();
            for (fqe c : m.at(i, j)) coeffs.push_back(c);
            row.push_back(coeffs);
        }
        rows.push_back(row);
    }
    return json{{"rows", m.nr}, {"cols", m.nc}, {"trunc", m.N}, {"entries", rows}};
}

PMat pmat_from_json(const json& j, int N) {
    PMat m(j.at("rows").get<int>(), j.at("cols").get<int>(), N);
    const json& rows = j.at("entries");
    for (int i = 0; i < m.nr; ++i)
        for (int c = 0; c < m.nc; ++c)
            for (int k = 0; k < N && k < static_cast<int>(rows[i][c].size()); ++k)
                m.at(i, c)[k] = rows[i][c][k].get<fqe>();
    return m;
}

json family_to_json(const FamilyPoint& fam) {
    return json{{"p", fam.S.F->p()},
                {"f", fam.S.F->f()},
                {"a", fam.S.a},
                {"b", fam.S.b},
                {"case", form_case_name(fam.S.form_case)},
                {"trunc", fam.N},
                {"modified_gram", mat_to_json(fam.S.Q)},
                {"omega", pmat_to_json(fam.omega_b)},
                {"omega1", pmat_to_json(fam.omega1_b)}};
}

FamilyPoint family_from_json(const Fq& F, const json& j) {
    if (j.at("p").get<int>() != F.p() || j.at("f").get<int>() != F.f())
        throw std::invalid_argument("family_from_json: field mismatch");
    int a = j.at("a").get<int>(), b = j.at("b").get<int>();
    int N = j.at("trunc").get<int>();
    FamilyPoint fam;
    fam.S = make_pispace(F, a, b, mat_from_json(F, j.at("modified_gram")),
                         form_case_from_name(j.at("case").get<std::string>()));
    fam.N = N;
    fam.omega_b = pmat_from_json(j.at("omega"), N);
    fam.omega1_b = pmat_from_json(j.at("omega1"), N);
    validate_family(fam);
    return fam;
}

json datum_to_json(const DieudonneDatum& d) {
    return json{{"p", d.S.F->p()},
                {"f", d.S.F->f()},
                {"n", d.S.b},
                {"case", form_case_name(d.S.form_case)},
                {"modified_gram", mat_to_json(d.S.Q)},
                {"omega", mat_to_json(d.x.omega.basis)},
                {"omega1", mat_to_json(d.x.omega1.basis)},
                {"verschiebung", mat_to_json(d.V)},
                {"unit", d.unit}};
}

json poset9_to_json(int n) {
    json closures = json::object();
    for (const auto& [s, cs] : poset9(n)) {
        json members = json::array();
        for (Stratum9 t : cs) members.push_back(stratum9_name(t));
        closures[stratum9_name(s)] = members;
    }
    json edges = json::array();
    for (const auto& [s, t] : poset9_edges(n))
        edges.push_back(json::array({stratum9_name(s), stratum9_name(t)}));
    return json{{"n", n}, {"closures", closures}, {"edges", edges}};
}

json cm_index_to_json(const CMShape& shape, const std::vector<IndexC>& all) {
    json legs = json::array();
    for (auto [a, b] : shape.legs) legs.push_back(json::array({a, b}));
    json idx = json::array();
    for (const IndexC& c : all) {
        json labels = json::array();
        for (const StratumLabel& l : c.labels) labels.push_back(label_to_json(l));
        idx.push_back(json{{"labels", labels}, {"conjectural_dim", conjectural_dim(shape, c)}});
    }
    json edges = json::array();
    for (const auto& [c, cp] : cm_hasse_edges(shape, all)) {
        json from = json::array(), to = json::array();
        for (const StratumLabel& l : c.labels) from.push_back(label_to_json(l));
        for (const StratumLabel& l : cp.labels) to.push_back(label_to_json(l));
        edges.push_back(json{{"from", from}, {"to", to}});
    }
    return json{{"legs", legs}, {"count", static_cast<long long>(all.size())},
                {"indexes", idx}, {"hasse_edges", edges}};
}

std::string csv_escape(const std::string& s) {
    bool needs = s.find_first_of(",\"\n") != std::string::npos;
    if (!needs) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

} // namespace strata
