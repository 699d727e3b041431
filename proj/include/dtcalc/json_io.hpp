#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "dtcalc/dcritical.hpp"
#include "dtcalc/errors.hpp"
#include "dtcalc/matrix.hpp"
#include "dtcalc/monodromy.hpp"
#include "dtcalc/poly.hpp"
#include "dtcalc/quadform.hpp"
#include "dtcalc/scalar.hpp"
#include "dtcalc/symplectic.hpp"
#include "dtcalc/vanishing.hpp"

namespace dtcalc::io {

using json = nlohmann::json;

[[noreturn]] inline void schema_error(const std::string& path, const std::string& what) {
    throw DomainError(ErrorCode::SchemaViolation, path + ": " + what);
}

inline Scalar scalar_from_json(const json& j, const std::string& path) {
    if (!j.is_string()) schema_error(path, "expected a scalar string");
    try {
        return parse_scalar(j.get<std::string>());
    } catch (const ParseError& e) {
        schema_error(path, std::string("bad scalar: ") + e.what());
    }
}

inline Rational rational_from_json(const json& j, const std::string& path) {
    Scalar s = scalar_from_json(j, path);
    if (!s.is_rational()) schema_error(path, "expected a rational");
    return s.re();
}

inline json matrix_to_json(const Matrix<Scalar>& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Matrix<Scalar> matrix_from_json(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) schema_error(path, "expected a nonempty array of rows");
    std::size_t rows = j.size();
    if (!j[0].is_array()) schema_error(path + "/0", "expected a row array");
    std::size_t cols = j[0].size();
    Matrix<Scalar> m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const json& row = j[i];
        std::string rp = path + "/" + std::to_string(i);
        if (!row.is_array() || row.size() != cols) schema_error(rp, "ragged row");
        for (std::size_t c = 0; c < cols; ++c)
            m(i, c) = scalar_from_json(row[c], rp + "/" + std::to_string(c));
    }
    return m;
}

inline json monodromy_to_json(const MonodromyData& m) {
    json blocks = json::array();
    for (const auto& b : m.blocks()) {
        json jb;
        jb["exponent"] = rational_to_string(b.exponent);
        jb["jordan"] = b.sizes;
        blocks.push_back(std::move(jb));
    }
    return json{{"blocks", blocks}};
}

inline MonodromyData monodromy_from_json(const json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("blocks"))
        schema_error(path, "expected an object with a 'blocks' array");
    const json& jb = j["blocks"];
    if (!jb.is_array() || jb.empty()) schema_error(path + "/blocks", "expected blocks");
    std::vector<JordanBlockSet> blocks;
    for (std::size_t k = 0; k < jb.size(); ++k) {
        std::string bp = path + "/blocks/" + std::to_string(k);
        const json& b = jb[k];
        if (!b.is_object() || !b.contains("exponent") || !b.contains("jordan"))
            schema_error(bp, "expected {exponent, jordan}");
        Rational e = rational_from_json(b["exponent"], bp + "/exponent");
        if (!(e > Rational(-1)) || e > 0)
            schema_error(bp + "/exponent", "exponent outside G = (-1, 0]");
        if (!b["jordan"].is_array() || b["jordan"].empty())
            schema_error(bp + "/jordan", "expected Jordan sizes");
        std::vector<int> sizes;
        for (std::size_t s = 0; s < b["jordan"].size(); ++s) {
            const json& v = b["jordan"][s];
            if (!v.is_number_integer() || v.get<int>() <= 0)
                schema_error(bp + "/jordan/" + std::to_string(s),
                             "Jordan sizes are positive integers");
            sizes.push_back(v.get<int>());
        }
        blocks.push_back(JordanBlockSet{e, sizes});
    }
    return MonodromyData(std::move(blocks));
}

inline SymplecticSpace space_from_json(const json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("form"))
        schema_error(path, "expected an object with a 'form' matrix");
    Matrix<Scalar> form = matrix_from_json(j["form"], path + "/form");
    if (form.rows() != form.cols() || form.rows() == 0 || form.rows() % 2 != 0)
        schema_error(path + "/form", "form must be square of even positive size");
    for (std::size_t a = 0; a < form.rows(); ++a)
        for (std::size_t b = 0; b < form.cols(); ++b)
            if (form(a, b) != -form(b, a))
                schema_error(path + "/form/" + std::to_string(a) + "/" + std::to_string(b),
                             "antisymmetry violated");
    if (form.det().is_zero()) schema_error(path + "/form", "form is degenerate");
    return SymplecticSpace(std::move(form));
}

inline std::vector<LagrangianSubspace> chain_from_json(const json& j, const SpacePtr& space,
                                                       const std::string& path) {
    if (!j.is_object() || !j.contains("chain"))
        schema_error(path, "expected an object with a 'chain' array");
    const json& jc = j["chain"];
    if (!jc.is_array() || jc.empty()) schema_error(path + "/chain", "expected subspaces");
    std::vector<LagrangianSubspace> out;
    for (std::size_t k = 0; k < jc.size(); ++k) {
        std::string sp = path + "/chain/" + std::to_string(k);
        Matrix<Scalar> basis = matrix_from_json(jc[k], sp);
        try {
            out.emplace_back(space, std::move(basis));
        } catch (const DomainError& e) {
            schema_error(sp, e.what());
        }
    }
    return out;
}

inline json spectrum_to_json(const Spectrum& s) {
    json a = json::array();
    for (const auto& v : s.values()) a.push_back(rational_to_string(v));
    return a;
}

inline json torsor_to_json(const TorsorElement& e) {
    json j;
    j["target"] = e.target().to_string();
    j["coeff"] = e.coeff().to_string();
    json rad = json::array();
    for (const auto& r : e.radicals()) rad.push_back(r.to_string());
    j["radicals"] = rad;
    j["sign"] = e.sign();
    if (!e.label().empty()) j["label"] = e.label();
    return j;
}

inline TorsorElement torsor_from_json(const json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("target"))
        schema_error(path, "expected an object with 'target'");
    Scalar target = scalar_from_json(j["target"], path + "/target");
    if (j.contains("rep")) {
        Scalar rep = scalar_from_json(j["rep"], path + "/rep");
        if (rep * rep != target) schema_error(path + "/rep", "rep^2 != target");
        return TorsorElement(target, rep,
                             j.value("label", std::string{}));
    }
    int sign = j.value("sign", 1);
    if (sign != 1 && sign != -1) schema_error(path + "/sign", "sign must be +-1");
    try {
        return TorsorElement::oriented(target, sign, j.value("label", std::string{}));
    } catch (const DomainError& e) {
        schema_error(path, e.what());
    }
}

inline json pvdata_to_json(const PVData& d) {
    json j;
    j["monodromy"] = monodromy_to_json(d.monodromy);
    j["ambient_dim"] = d.ambient_dim;
    j["twisted"] = d.twisted;
    if (d.torsor) j["torsor"] = torsor_to_json(*d.torsor);
    return j;
}

} // namespace dtcalc::io
