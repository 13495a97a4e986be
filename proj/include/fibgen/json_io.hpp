#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fibgen/diagram_level.hpp"
#include "fibgen/postfactor.hpp"

namespace fibgen::io {

using json = nlohmann::json;

inline ValidationError parse_error(const std::string& where, const std::string& what) {
    return ValidationError(ErrorCode::ParseError, where + ": " + what);
}

inline const json& member(const json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key))
        throw parse_error(where, std::string("missing \"") + key + "\"");
    return j.at(key);
}

inline std::size_t to_index(const json& j, const std::string& where) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
        throw parse_error(where, "expected a non-negative integer");
    return j.get<std::size_t>();
}

inline json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError(ErrorCode::ParseError, "cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError(ErrorCode::ParseError, path + ": " + e.what());
    }
}

/// Field named by a document, if any.
inline std::optional<FieldSpec> field_of(const json& j) {
    if (j.is_object() && j.contains("field") && j.at("field").is_string())
        return FieldSpec::parse(j.at("field").get<std::string>());
    return std::nullopt;
}

template <Field F>
void check_field(const F& fld, const json& j, const std::string& where) {
    if (auto spec = field_of(j); spec && spec->to_string() != fld.spec().to_string())
        throw ValidationError(ErrorCode::FieldMismatch, where + ": document is over " + spec->to_string() +
                                                            ", expected " + fld.spec().to_string());
}

// ---------------------------------------------------------------------------
// matrices, complexes, maps

template <Field F>
json to_json(const Matrix<F>& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(m.field().to_string(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Reads a rows x cols matrix; a matrix with no rows may be written [].
template <Field F>
Matrix<F> matrix_from_json(const F& fld, const json& j, std::size_t rows, std::size_t cols, const std::string& where) {
    if (!j.is_array() || j.size() != rows)
        throw ValidationError(ErrorCode::ShapeMismatch,
                              where + ": expected " + std::to_string(rows) + "x" + std::to_string(cols));
    Matrix<F> m(fld, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const auto& row = j[i];
        if (!row.is_array() || row.size() != cols)
            throw ValidationError(ErrorCode::ShapeMismatch, where + ": row " + std::to_string(i) + " should have " +
                                                                std::to_string(cols) + " entries");
        for (std::size_t k = 0; k < cols; ++k) {
            if (row[k].is_string())
                m(i, k) = fld.parse(row[k].get<std::string>());
            else if (row[k].is_number_integer())
                m(i, k) = fld.parse(std::to_string(row[k].get<long long>()));
            else
                throw parse_error(where, "scalars are strings or integers");
        }
    }
    return m;
}

template <Field F>
json to_json(const ChainComplex<F>& c) {
    json diff = json::array();
    for (std::size_t n = 1; n < c.length(); ++n)
        diff.push_back(to_json(c.d(n)));
    return {{"field", c.field().spec().to_string()}, {"dims", c.dims()}, {"diff", diff}};
}

template <Field F>
ChainComplex<F> complex_from_json(const F& fld, const json& j, const std::string& where = "complex") {
    check_field(fld, j, where);
    const auto& jd = member(j, "dims", where);
    if (!jd.is_array())
        throw parse_error(where, "\"dims\" must be an array");
    std::vector<std::size_t> dims;
    for (const auto& x : jd)
        dims.push_back(to_index(x, where + ".dims"));
    std::vector<Matrix<F>> diff;
    const json empty = json::array();
    const auto& jf = j.contains("diff") ? j.at("diff") : empty;
    if (!jf.is_array() || jf.size() + 1 < dims.size() || (dims.empty() && !jf.empty()) ||
        (!dims.empty() && jf.size() != dims.size() - 1))
        throw ValidationError(ErrorCode::ShapeMismatch, where + ": need one differential per positive degree");
    for (std::size_t n = 1; n < dims.size(); ++n)
        diff.push_back(matrix_from_json(fld, jf[n - 1], dims[n - 1], dims[n], where + ".diff[" + std::to_string(n - 1) + "]"));
    return ChainComplex<F>::make(fld, std::move(dims), std::move(diff));
}

template <Field F>
json comps_to_json(const ChainMap<F>& f) {
    json out = json::array();
    for (const auto& c : f.comps())
        out.push_back(to_json(c));
    return out;
}

template <Field F>
ChainMap<F> comps_from_json(const json& j, const ChainComplex<F>& s, const ChainComplex<F>& t,
                            const std::string& where) {
    const F& fld = s.field();
    std::size_t len = std::max(s.length(), t.length());
    if (!j.is_array() || j.size() > len)
        throw ValidationError(ErrorCode::ShapeMismatch, where + ": expected at most " + std::to_string(len) +
                                                            " components");
    std::vector<Matrix<F>> comps;
    for (std::size_t n = 0; n < j.size(); ++n)
        comps.push_back(matrix_from_json(fld, j[n], t.dim(n), s.dim(n), where + "[" + std::to_string(n) + "]"));
    return ChainMap<F>::make(s, t, std::move(comps));
}

/// A map document: {"source": complex, "target": complex, "comps": [...]}.
/// Complexes may be given inline or as a path to a complex document.
template <Field F>
json to_json(const ChainMap<F>& f) {
    return {{"field", f.field().spec().to_string()},
            {"source", to_json(f.source())},
            {"target", to_json(f.target())},
            {"comps", comps_to_json(f)}};
}

template <Field F>
ChainComplex<F> complex_ref(const F& fld, const json& j, const std::string& where) {
    if (j.is_string())
        return complex_from_json(fld, read_file(j.get<std::string>()), j.get<std::string>());
    return complex_from_json(fld, j, where);
}

template <Field F>
ChainMap<F> map_from_json(const F& fld, const json& j, const std::string& where = "map") {
    check_field(fld, j, where);
    auto s = complex_ref(fld, member(j, "source", where), where + ".source");
    auto t = complex_ref(fld, member(j, "target", where), where + ".target");
    return comps_from_json(member(j, "comps", where), s, t, where + ".comps");
}

template <Field F>
json to_json(const SquareProblem<F>& sq) {
    return {{"field", sq.left.field().spec().to_string()},
            {"left", to_json(sq.left)},
            {"right", to_json(sq.right)},
            {"top", to_json(sq.top)},
            {"bottom", to_json(sq.bottom)}};
}

template <Field F>
SquareProblem<F> square_from_json(const F& fld, const json& j) {
    check_field(fld, j, "square");
    return SquareProblem<F>::make(map_from_json(fld, member(j, "left", "square"), "square.left"),
                                  map_from_json(fld, member(j, "right", "square"), "square.right"),
                                  map_from_json(fld, member(j, "top", "square"), "square.top"),
                                  map_from_json(fld, member(j, "bottom", "square"), "square.bottom"));
}

// ---------------------------------------------------------------------------
// categories, diagrams, transformations

/// {"objects": [...], "morphisms": [{"name","src","tgt"}], "identities":
/// {object: morphism}, "composites": [[g, f, g o f], ...]}, all by name.
/// Composites with an identity factor may be left out. A "builtin" entry
/// ("arrow", "parallel_pair", "discrete:n", "simplex:n") replaces the rest.
inline json to_json(const FinCat& c) {
    json objs = json::array();
    for (std::size_t o = 0; o < c.num_objects(); ++o)
        objs.push_back(c.object_name(o));
    json morphs = json::array();
    for (std::size_t m = 0; m < c.num_morphisms(); ++m)
        morphs.push_back({{"name", c.morphism(m).name},
                          {"src", c.object_name(c.src(m))},
                          {"tgt", c.object_name(c.tgt(m))}});
    json ids = json::object();
    for (std::size_t o = 0; o < c.num_objects(); ++o)
        ids[c.object_name(o)] = c.morphism(c.identity(o)).name;
    json comps = json::array();
    for (const auto& k : c.composites())
        if (!c.is_identity(k.g) && !c.is_identity(k.f))
            comps.push_back({c.morphism(k.g).name, c.morphism(k.f).name, c.morphism(k.h).name});
    return {{"objects", objs}, {"morphisms", morphs}, {"identities", ids}, {"composites", comps}};
}

inline std::size_t builtin_size(const std::string& name, const std::string& prefix) {
    try {
        std::size_t pos = 0;
        auto n = std::stoul(name.substr(prefix.size()), &pos);
        if (pos == name.size() - prefix.size())
            return n;
    } catch (const std::exception&) {
    }
    throw parse_error("category", "bad builtin '" + name + "'");
}

inline FinCat category_from_json(const json& j) {
    const std::string where = "category";
    if (j.is_object() && j.contains("builtin")) {
        auto name = j.at("builtin").get<std::string>();
        if (name == "arrow")
            return FinCat::arrow();
        if (name == "parallel_pair")
            return FinCat::parallel_pair();
        if (name.rfind("discrete:", 0) == 0)
            return FinCat::discrete(builtin_size(name, "discrete:"));
        if (name.rfind("simplex:", 0) == 0)
            return FinCat::truncated_simplex(builtin_size(name, "simplex:"));
        throw parse_error(where, "unknown builtin '" + name + "'");
    }
    std::vector<std::string> objects;
    for (const auto& o : member(j, "objects", where))
        objects.push_back(o.get<std::string>());
    auto obj_index = [&](const json& x) -> std::size_t {
        auto name = x.get<std::string>();
        for (std::size_t i = 0; i < objects.size(); ++i)
            if (objects[i] == name)
                return i;
        throw ValidationError(ErrorCode::NotACategory, "unknown object '" + name + "'");
    };
    std::vector<FinCat::Morphism> morphs;
    for (const auto& m : member(j, "morphisms", where))
        morphs.push_back({member(m, "name", where).get<std::string>(), obj_index(member(m, "src", where)),
                          obj_index(member(m, "tgt", where))});
    auto mor_index = [&](const json& x) -> std::size_t {
        auto name = x.get<std::string>();
        for (std::size_t i = 0; i < morphs.size(); ++i)
            if (morphs[i].name == name)
                return i;
        throw ValidationError(ErrorCode::NotACategory, "unknown morphism '" + name + "'");
    };
    std::vector<std::size_t> ids(objects.size(), FinCat::npos);
    const auto& jid = member(j, "identities", where);
    for (std::size_t o = 0; o < objects.size(); ++o) {
        if (!jid.contains(objects[o]))
            throw ValidationError(ErrorCode::NotACategory, "no identity for '" + objects[o] + "'");
        ids[o] = mor_index(jid.at(objects[o]));
    }
    std::vector<FinCat::Composite> comps;
    if (j.contains("composites"))
        for (const auto& k : j.at("composites")) {
            if (!k.is_array() || k.size() != 3)
                throw parse_error(where, "composites are [g, f, g o f] triples");
            comps.push_back({mor_index(k[0]), mor_index(k[1]), mor_index(k[2])});
        }
    return FinCat::make(std::move(objects), std::move(morphs), std::move(ids), comps);
}

/// {"category": ..., "objects": [complex per object], "maps": {name: comps}}.
/// Identity maps are implied; every other morphism needs an entry.
template <Field F>
json to_json(const Diagram<F>& d, bool with_category = true) {
    const auto& c = *d.cat();
    json objs = json::array();
    for (const auto& o : d.objects())
        objs.push_back(to_json(o));
    json maps = json::object();
    for (std::size_t m = 0; m < c.num_morphisms(); ++m)
        if (!c.is_identity(m))
            maps[c.morphism(m).name] = comps_to_json(d.map(m));
    json out = {{"field", d.field().spec().to_string()}, {"objects", objs}, {"maps", maps}};
    if (with_category)
        out["category"] = to_json(c);
    return out;
}

template <Field F>
Diagram<F> diagram_from_json(const F& fld, const CatPtr& cat, const json& j, const std::string& where = "diagram") {
    check_field(fld, j, where);
    const auto& c = *cat;
    const auto& jo = member(j, "objects", where);
    if (!jo.is_array() || jo.size() != c.num_objects())
        throw ValidationError(ErrorCode::ShapeMismatch, where + ": one complex per object required");
    std::vector<ChainComplex<F>> objs;
    for (std::size_t o = 0; o < c.num_objects(); ++o)
        objs.push_back(complex_ref(fld, jo[o], where + ".objects[" + c.object_name(o) + "]"));
    const json none = json::object();
    const auto& jm = j.contains("maps") ? j.at("maps") : none;
    std::vector<ChainMap<F>> maps;
    for (std::size_t m = 0; m < c.num_morphisms(); ++m) {
        std::size_t a = c.src(m), b = c.tgt(m);
        if (c.is_identity(m)) {
            maps.push_back(ChainMap<F>::identity(objs[a]));
            continue;
        }
        const auto& name = c.morphism(m).name;
        if (!jm.contains(name))
            throw ValidationError(ErrorCode::ShapeMismatch, where + ": no map for '" + name + "'");
        maps.push_back(comps_from_json(jm.at(name), objs[a], objs[b], where + ".maps[" + name + "]"));
    }
    return Diagram<F>::make(cat, fld, std::move(objs), std::move(maps));
}

inline CatPtr category_of(const json& j, const std::string& where) {
    return share(category_from_json(member(j, "category", where)));
}

template <Field F>
json comps_to_json(const NatTrans<F>& t) {
    json out = json::array();
    for (const auto& c : t.comps())
        out.push_back(comps_to_json(c));
    return out;
}

template <Field F>
NatTrans<F> nat_comps_from_json(const json& j, const Diagram<F>& s, const Diagram<F>& t, const std::string& where) {
    const auto& c = *s.cat();
    if (!j.is_array() || j.size() != c.num_objects())
        throw ValidationError(ErrorCode::ShapeMismatch, where + ": one component per object required");
    std::vector<ChainMap<F>> comps;
    for (std::size_t o = 0; o < c.num_objects(); ++o)
        comps.push_back(comps_from_json(j[o], s.at(o), t.at(o), where + "[" + c.object_name(o) + "]"));
    return NatTrans<F>::make(s, t, std::move(comps));
}

/// {"category", "source": diagram, "target": diagram, "components": [...]}.
template <Field F>
json to_json(const NatTrans<F>& t, bool with_category = true) {
    json out = {{"field", t.field().spec().to_string()},
                {"source", to_json(t.source(), false)},
                {"target", to_json(t.target(), false)},
                {"components", comps_to_json(t)}};
    if (with_category)
        out["category"] = to_json(*t.cat());
    return out;
}

template <Field F>
NatTrans<F> nat_from_json(const F& fld, const CatPtr& cat, const json& j, const std::string& where = "transformation") {
    check_field(fld, j, where);
    auto s = diagram_from_json(fld, cat, member(j, "source", where), where + ".source");
    auto t = diagram_from_json(fld, cat, member(j, "target", where), where + ".target");
    return nat_comps_from_json(member(j, "components", where), s, t, where + ".components");
}

// ---------------------------------------------------------------------------
// Reedy descriptors

inline json to_json(const ReedyCat& R) {
    const auto& c = *R.cat();
    json out = to_json(c);
    json deg = json::object();
    for (std::size_t o = 0; o < c.num_objects(); ++o)
        deg[c.object_name(o)] = R.degree(o);
    json plus = json::array(), minus = json::array();
    for (std::size_t m = 0; m < c.num_morphisms(); ++m) {
        if (c.is_identity(m))
            continue;
        if (R.is_plus(m))
            plus.push_back(c.morphism(m).name);
        if (R.is_minus(m))
            minus.push_back(c.morphism(m).name);
    }
    out["degree"] = deg;
    out["plus"] = plus;
    out["minus"] = minus;
    return out;
}

/// A category document plus "degree" {object: n} and "plus"/"minus" lists
/// of morphism names or indices; identities are in both implicitly.
/// {"builtin": "simplex:n"} alone gives the standard structure.
inline ReedyCat reedy_from_json(const json& j) {
    const std::string where = "reedy";
    if (j.is_object() && j.contains("builtin") && !j.contains("degree")) {
        auto name = j.at("builtin").get<std::string>();
        if (name.rfind("simplex:", 0) == 0)
            return ReedyCat::simplex(builtin_size(name, "simplex:"));
    }
    auto cat = share(category_from_json(j));
    const auto& c = *cat;
    std::vector<std::size_t> degree(c.num_objects());
    const auto& jd = member(j, "degree", where);
    for (std::size_t o = 0; o < c.num_objects(); ++o) {
        if (!jd.contains(c.object_name(o)))
            throw parse_error(where, "no degree for '" + c.object_name(o) + "'");
        degree[o] = to_index(jd.at(c.object_name(o)), where + ".degree");
    }
    auto arrows = [&](const char* key) {
        ArrowSet s(c.num_morphisms(), false);
        for (std::size_t o = 0; o < c.num_objects(); ++o)
            s[c.identity(o)] = true;
        for (const auto& x : member(j, key, where)) {
            std::size_t m = x.is_string() ? c.morphism_index(x.get<std::string>()) : to_index(x, where + "." + key);
            if (m >= c.num_morphisms())
                throw parse_error(where, std::string("unknown morphism in \"") + key + "\"");
            s[m] = true;
        }
        return s;
    };
    return ReedyCat::make(cat, std::move(degree), arrows("plus"), arrows("minus"));
}

// ---------------------------------------------------------------------------
// generators and certificates

template <Field F>
json to_json(const Generator<F>& g) {
    json out = {{"family", family_name(g.family)}, {"shape", shape_name(g.shape)}, {"object", g.object},
                {"label", g.label()}};
    if (g.family == GenFamily::custom)
        out["map"] = to_json(*g.custom);
    else
        out["degree"] = g.degree;
    return out;
}

template <Field F>
Generator<F> generator_from_json(const F& fld, const json& j, const std::string& where) {
    Generator<F> g;
    auto fam = member(j, "family", where).get<std::string>();
    if (fam == "p" || fam == "q") {
        g.family = fam == "p" ? GenFamily::p : GenFamily::q;
        g.degree = to_index(member(j, "degree", where), where + ".degree");
    } else if (fam == "custom") {
        g.family = GenFamily::custom;
        g.custom = map_from_json(fld, member(j, "map", where), where + ".map");
    } else {
        throw parse_error(where, "unknown family '" + fam + "'");
    }
    auto shape = j.contains("shape") ? j.at("shape").get<std::string>() : std::string("plain");
    bool found = false;
    for (auto s : {GenShape::plain, GenShape::pitchfork, GenShape::tensor, GenShape::reedy_cotensor,
                   GenShape::reedy_pushout_product})
        if (shape_name(s) == shape) {
            g.shape = s;
            found = true;
        }
    if (!found)
        throw parse_error(where, "unknown shape '" + shape + "'");
    g.object = j.contains("object") ? to_index(j.at("object"), where + ".object") : 0;
    return g;
}

/// Level-specific JSON for objects and maps. Maps are written as bare
/// components; their source and target come from the certificate.
template <Field F>
struct ChainCodec {
    F field;
    json object(const ChainComplex<F>& c) const { return to_json(c); }
    ChainComplex<F> object(const json& j, const std::string& where) const { return complex_ref(field, j, where); }
    json map(const ChainMap<F>& m) const { return comps_to_json(m); }
    ChainMap<F> map(const json& j, const ChainComplex<F>& s, const ChainComplex<F>& t, const std::string& where) const {
        return comps_from_json(j, s, t, where);
    }
};

template <Field F>
struct DiagramCodec {
    F field;
    CatPtr cat;
    json object(const Diagram<F>& d) const { return to_json(d, false); }
    Diagram<F> object(const json& j, const std::string& where) const { return diagram_from_json(field, cat, j, where); }
    json map(const NatTrans<F>& m) const { return comps_to_json(m); }
    NatTrans<F> map(const json& j, const Diagram<F>& s, const Diagram<F>& t, const std::string& where) const {
        return nat_comps_from_json(j, s, t, where);
    }
};

template <class Level, class Codec>
json cert_to_json(const Codec& codec, const PostnikovCert<Level>& c) {
    json stages = json::array();
    for (const auto& st : c.stages) {
        json gens = json::array();
        for (const auto& g : st.generators)
            gens.push_back(to_json(g));
        stages.push_back({{"generators", gens},
                          {"attaching", codec.map(st.attaching)},
                          {"object", codec.object(st.object)},
                          {"down", codec.map(st.down)},
                          {"to_gen", codec.map(st.to_gen)}});
    }
    return {{"kind", "postnikov_cert"}, {"base", codec.object(c.base)}, {"stages", stages}, {"claimed", codec.map(c.claimed)}};
}

template <class Level, class Codec>
json cert_to_json(const Codec& codec, const CellCert<Level>& c) {
    json stages = json::array();
    for (const auto& st : c.stages) {
        json gens = json::array();
        for (const auto& g : st.generators)
            gens.push_back(to_json(g));
        stages.push_back({{"generators", gens},
                          {"attaching", codec.map(st.attaching)},
                          {"object", codec.object(st.object)},
                          {"up", codec.map(st.up)},
                          {"from_gen", codec.map(st.from_gen)}});
    }
    return {{"kind", "cell_cert"}, {"base", codec.object(c.base)}, {"stages", stages}, {"claimed", codec.map(c.claimed)}};
}

/// Reads a tower. Shapes are checked while reading; whether the stages are
/// pullbacks is left to verify_postnikov.
template <class Level, class Codec>
PostnikovCert<Level> postnikov_from_json(const Level& L, const Codec& codec, const json& j) {
    using F = typename Level::FieldType;
    PostnikovCert<Level> c;
    c.base = codec.object(member(j, "base", "cert"), "cert.base");
    const auto* prev = &c.base;
    const auto& js = member(j, "stages", "cert");
    for (std::size_t s = 0; s < js.size(); ++s) {
        std::string where = "cert.stages[" + std::to_string(s) + "]";
        const auto& x = js[s];
        PostnikovStage<Level> st;
        for (const auto& g : member(x, "generators", where))
            st.generators.push_back(generator_from_json<F>(L.field, g, where + ".generators"));
        auto prod = generator_product(L, st.generators);
        st.attaching = codec.map(member(x, "attaching", where), *prev, prod.target, where + ".attaching");
        st.object = codec.object(member(x, "object", where), where + ".object");
        st.down = codec.map(member(x, "down", where), st.object, *prev, where + ".down");
        st.to_gen = codec.map(member(x, "to_gen", where), st.object, prod.source, where + ".to_gen");
        c.stages.push_back(std::move(st));
        prev = &c.stages.back().object;
    }
    c.claimed = codec.map(member(j, "claimed", "cert"), *prev, c.base, "cert.claimed");
    return c;
}

template <class Level, class Codec>
CellCert<Level> cell_from_json(const Level& L, const Codec& codec, const json& j) {
    using F = typename Level::FieldType;
    CellCert<Level> c;
    c.base = codec.object(member(j, "base", "cert"), "cert.base");
    const auto* prev = &c.base;
    const auto& js = member(j, "stages", "cert");
    for (std::size_t s = 0; s < js.size(); ++s) {
        std::string where = "cert.stages[" + std::to_string(s) + "]";
        const auto& x = js[s];
        CellStage<Level> st;
        for (const auto& g : member(x, "generators", where))
            st.generators.push_back(generator_from_json<F>(L.field, g, where + ".generators"));
        auto prod = generator_product(L, st.generators);
        st.attaching = codec.map(member(x, "attaching", where), prod.source, *prev, where + ".attaching");
        st.object = codec.object(member(x, "object", where), where + ".object");
        st.up = codec.map(member(x, "up", where), *prev, st.object, where + ".up");
        st.from_gen = codec.map(member(x, "from_gen", where), prod.target, st.object, where + ".from_gen");
        c.stages.push_back(std::move(st));
        prev = &c.stages.back().object;
    }
    c.claimed = codec.map(member(j, "claimed", "cert"), c.base, *prev, "cert.claimed");
    return c;
}

} // namespace fibgen::io
