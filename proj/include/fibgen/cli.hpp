#pragma once

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "fibgen/injective.hpp"
#include "fibgen/json_io.hpp"
#include "fibgen/random_diagram.hpp"
#include "fibgen/reedy_tower.hpp"

#ifndef FIBGEN_VERSION
#define FIBGEN_VERSION "0.0.0"
#endif

namespace fibgen::cli {

using io::json;

enum Exit : int { ok = 0, invalid = 1, negative = 2, defect = 3 };

struct Request {
    std::vector<std::string> verb;  // e.g. {"reedy", "tower"}
    std::optional<std::string> field;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> in;
    std::optional<std::string> out;
    std::string side = "z";
    std::optional<std::string> object;
    std::optional<std::string> kind;
    std::size_t count = 10;
};

struct Outcome {
    int status = ok;
    json report;
};

namespace detail {

inline json envelope(const Request& req, const std::string& kind, const FieldSpec& spec) {
    json j = {{"kind", kind}, {"field", spec.to_string()}, {"version", FIBGEN_VERSION}};
    j["seed"] = req.seed ? json(*req.seed) : json(nullptr);
    return j;
}

inline const std::string& input(const Request& req, std::size_t i, const char* what) {
    if (i >= req.in.size())
        throw ValidationError(ErrorCode::ParseError, std::string("missing --in for the ") + what);
    return req.in[i];
}

inline json class_json(const MapClass& k) {
    return {{"cofibration", k.cofibration}, {"fibration", k.fibration}, {"weak_equivalence", k.weak_equivalence}};
}

inline std::size_t object_arg(const Request& req, const FinCat& c) {
    if (!req.object)
        throw ValidationError(ErrorCode::ParseError, "--object is required");
    return c.object_index(*req.object);
}

template <Field F>
json chain_cert_doc(const F& fld, const ChainCert<F>& c) {
    auto j = io::cert_to_json<ChainLevel<F>>(io::ChainCodec<F>{fld}, c);
    j["level"] = "chain";
    j["field"] = fld.spec().to_string();
    return j;
}

template <Field F, class Cert>
json diagram_cert_doc(const F& fld, const Cert& c, const CatPtr& cat, const std::optional<ReedyCat>& R) {
    auto j = io::cert_to_json<DiagramLevel<F>>(io::DiagramCodec<F>{fld, cat}, c);
    j["level"] = "diagram";
    j["field"] = fld.spec().to_string();
    if (R)
        j["reedy"] = io::to_json(*R);
    else
        j["category"] = io::to_json(*cat);
    return j;
}

inline json verify_json(const VerifyResult& v) {
    json j = {{"verified", v.ok}};
    if (!v.ok) {
        j["stage"] = v.stage;
        j["reason"] = v.reason;
    }
    return j;
}

/// Verifies a certificate document, or the "cert" inside a factorization
/// report (then also checking composite o left = map when both are there).
template <Field F>
VerifyResult verify_doc(const F& fld, const json& doc) {
    const json& c = doc.contains("cert") ? doc.at("cert") : doc;
    io::check_field(fld, c, "cert");
    auto kind = io::member(c, "kind", "cert").get<std::string>();
    if (kind != "postnikov_cert" && kind != "cell_cert")
        throw ValidationError(ErrorCode::ParseError, "not a certificate: kind '" + kind + "'");
    bool tower = kind == "postnikov_cert";
    auto level = c.contains("level") ? c.at("level").get<std::string>() : std::string("chain");
    if (level == "chain") {
        ChainLevel<F> L{fld};
        io::ChainCodec<F> codec{fld};
        if (!tower)
            return verify_cell(L, io::cell_from_json(L, codec, c));
        auto cert = io::postnikov_from_json(L, codec, c);
        auto v = verify_postnikov(L, cert);
        if (v.ok && doc.contains("cert") && doc.contains("left") && doc.contains("map")) {
            auto left = io::map_from_json(fld, doc.at("left"), "left");
            auto f = io::map_from_json(fld, doc.at("map"), "map");
            if (!(left.target() == cert.top_object()) || !(cert.claimed * left == f))
                return VerifyResult::defect(cert.stages.size(), "composite o left differs from the map");
        }
        return v;
    }
    if (level != "diagram")
        throw ValidationError(ErrorCode::ParseError, "unknown certificate level '" + level + "'");
    std::optional<ReedyCat> R;
    CatPtr cat;
    if (c.contains("reedy")) {
        R = io::reedy_from_json(c.at("reedy"));
        cat = R->cat();
    } else {
        cat = io::category_of(c, "cert");
    }
    DiagramLevel<F> L{fld, cat, R};
    io::DiagramCodec<F> codec{fld, cat};
    if (!tower)
        return verify_cell(L, io::cell_from_json(L, codec, c));
    auto cert = io::postnikov_from_json(L, codec, c);
    auto v = verify_postnikov(L, cert);
    if (v.ok && doc.contains("cert") && doc.contains("left") && doc.contains("map")) {
        auto left = io::nat_from_json(fld, cat, doc.at("left"), "left");
        auto tau = io::nat_from_json(fld, cat, doc.at("map"), "map");
        if (!(left.target() == cert.top_object()) || !(cert.claimed * left == tau))
            return VerifyResult::defect(cert.stages.size(), "composite o left differs from the map");
    }
    return v;
}

// ---------------------------------------------------------------------------
// self-test suites

struct Suite {
    const char* name;
    std::function<bool(std::mt19937_64&)> run_case;
};

template <Field F>
std::vector<Suite> suites(const F& fld) {
    std::vector<Suite> out;
    out.push_back({"z_factorization", [fld](std::mt19937_64& rng) {
                       auto f = random_map(fld, rng, 3, 3);
                       auto fz = factor_acyclic_fibration(f);
                       return verify_postnikov(ChainLevel<F>{fld}, fz.cert).ok && fz.cert.claimed * fz.left == f &&
                              is_degreewise_injective(fz.left);
                   }});
    out.push_back({"x_factorization", [fld](std::mt19937_64& rng) {
                       auto f = random_map(fld, rng, 3, 3);
                       auto fx = factor_fibration(f);
                       auto k = classify(fx.left);
                       return verify_postnikov(ChainLevel<F>{fld}, fx.cert).ok && fx.cert.claimed * fx.left == f &&
                              k.cofibration && k.weak_equivalence;
                   }});
    out.push_back({"lift_soundness", [fld](std::mt19937_64& rng) {
                       auto i = random_acyclic_cofibration(fld, rng, 2, 2);
                       auto p = factor_fibration(random_map(fld, rng, 2, 2)).cert.claimed;
                       return solve_lift(random_square(i, p, rng)).has_value();
                   }});
    out.push_back({"homology", [fld](std::mt19937_64& rng) {
                       auto c = random_complex(fld, rng, 4, 4);
                       auto h = homology(c).betti();
                       std::int64_t e = 0;
                       for (std::size_t n = 0; n < h.size(); ++n)
                           e += (n % 2 ? -1 : 1) * static_cast<std::int64_t>(h[n]);
                       return e == c.euler_characteristic();
                   }});
    out.push_back({"kan_transposes", [fld](std::mt19937_64& rng) {
                       auto cat = share(random_poset(1 + rng() % 4, rng));
                       auto phi = random_diagram(cat, fld, rng, 2, 2);
                       auto fam = random_family(*cat, fld, rng, 2, 2);
                       auto ran = ran_discrete(cat, fld, fam);
                       auto theta = random_nat_trans(phi, ran.object, rng);
                       return ran_transpose(phi, ran, ran_untranspose(theta, ran)) == theta &&
                              is_objectwise_injective(ran_unit(phi, ran_discrete(cat, fld, phi.objects())));
                   }});
    out.push_back({"injective_z", [fld](std::mt19937_64& rng) {
                       auto cat = share(random_poset(1 + rng() % 3, rng));
                       auto tau = random_nat_trans(random_diagram(cat, fld, rng, 2, 2),
                                                   random_diagram(cat, fld, rng, 2, 2), rng);
                       auto fz = factor_injective_z(tau);
                       return verify_postnikov(DiagramLevel<F>{fld, cat, std::nullopt}, fz.cert).ok &&
                              fz.cert.claimed * fz.left == tau && is_objectwise_injective(fz.left);
                   }});
    out.push_back({"reedy_tower", [fld](std::mt19937_64& rng) {
                       auto R = rng() % 2 ? ReedyCat::simplex(1) : ReedyCat::direct(share(FinCat::arrow()), {0, 1});
                       auto tau = random_nat_trans(random_diagram(R.cat(), fld, rng, 2, 2),
                                                   random_diagram(R.cat(), fld, rng, 2, 2), rng);
                       DiagramLevel<F> L{fld, R.cat(), R};
                       auto t = reedy_canonical_tower(R, tau);
                       auto c = reedy_canonical_cells(R, tau);
                       return verify_postnikov(L, t).ok && verify_cell(L, c).ok && t.claimed == tau &&
                              c.claimed == tau;
                   }});
    return out;
}

// ---------------------------------------------------------------------------
// verbs

template <Field F>
Outcome run_verb(const Request& req, const F& fld) {
    const auto spec = fld.spec();
    const auto& v = req.verb;
    auto report = [&](const std::string& kind) { return envelope(req, kind, spec); };
    auto doc = [&](std::size_t i, const char* what) { return io::read_file(input(req, i, what)); };

    if (v[0] == "classify") {
        auto f = io::map_from_json(fld, doc(0, "map"));
        auto r = report("classification");
        r.update(class_json(classify(f)));
        return {ok, r};
    }
    if (v[0] == "lift") {
        auto sq = io::square_from_json(fld, doc(0, "square"));
        auto r = report("lift");
        if (auto c = solve_lift(sq)) {
            r["status"] = "Lifted";
            r["lift"] = io::to_json(*c);
            return {ok, r};
        }
        r["status"] = "NoLift";
        return {negative, r};
    }
    if (v[0] == "factor") {
        auto f = io::map_from_json(fld, doc(0, "map"));
        if (req.side != "z" && req.side != "x")
            throw ValidationError(ErrorCode::ParseError, "--side must be z or x");
        auto fac = req.side == "z" ? factor_acyclic_fibration(f) : factor_fibration(f);
        auto r = report("factorization");
        r["side"] = req.side;
        r["map"] = io::to_json(f);
        r["left"] = io::to_json(fac.left);
        r["cert"] = chain_cert_doc(fld, fac.cert);
        return {ok, r};
    }
    if (v[0] == "homology") {
        auto j = doc(0, "complex or map");
        auto r = report("homology");
        if (j.contains("comps")) {
            auto f = io::map_from_json(fld, j);
            r["source_betti"] = homology(f.source()).betti();
            r["target_betti"] = homology(f.target()).betti();
            json maps = json::array();
            for (const auto& m : homology_map(f))
                maps.push_back(io::to_json(m));
            r["maps"] = maps;
        } else {
            r["betti"] = homology(io::complex_from_json(fld, j)).betti();
        }
        return {ok, r};
    }
    if (v[0] == "verify") {
        auto res = verify_doc(fld, doc(0, "certificate"));
        auto r = report("verification");
        r.update(verify_json(res));
        return {res.ok ? ok : defect, r};
    }
    if (v[0] == "diagram") {
        if (v[1] == "gen") {
            auto cat = share(io::category_from_json(doc(0, "category")));
            auto f = io::map_from_json(fld, doc(1, "map"));
            std::string kind = req.kind.value_or("");
            std::size_t d = object_arg(req, *cat);
            NatTrans<F> g;
            if (kind == "tensor")
                g = tensor_gen(cat, f, d);
            else if (kind == "pitchfork")
                g = pitchfork_gen(cat, f, d);
            else
                throw ValidationError(ErrorCode::ParseError, "--kind must be tensor or pitchfork");
            auto r = report("transformation");
            r["transformation"] = io::to_json(g);
            return {ok, r};
        }
        auto j = doc(0, "transformation");
        auto cat = io::category_of(j, "transformation");
        auto tau = io::nat_from_json(fld, cat, j);
        if (v[1] == "classify") {
            auto k = objectwise_classify(tau);
            auto r = report("objectwise_classification");
            json per = json::object();
            for (std::size_t o = 0; o < cat->num_objects(); ++o)
                per[cat->object_name(o)] = class_json(k.per_object[o]);
            r["objects"] = per;
            r["all"] = class_json(k.all);
            return {ok, r};
        }
        auto fz = factor_injective_z(tau);
        auto r = report("diagram_factorization");
        r["map"] = io::to_json(tau);
        r["left"] = io::to_json(fz.left);
        r["cert"] = diagram_cert_doc(fld, fz.cert, cat, std::nullopt);
        return {ok, r};
    }
    if (v[0] == "reedy") {
        auto R = io::reedy_from_json(doc(0, "Reedy category"));
        const auto& cat = R.cat();
        const auto& c = *cat;
        if (v[1] == "validate") {
            auto r = report("reedy_validation");
            r["valid"] = true;
            json fac = json::array();
            for (std::size_t m = 0; m < c.num_morphisms(); ++m)
                fac.push_back({{"morphism", c.morphism(m).name},
                               {"plus", c.morphism(R.plus_part(m)).name},
                               {"minus", c.morphism(R.minus_part(m)).name}});
            r["factorizations"] = fac;
            r["reedy"] = io::to_json(R);
            return {ok, r};
        }
        if (v[1] == "gen") {
            auto f = io::map_from_json(fld, doc(1, "map"));
            std::size_t r0 = object_arg(req, c);
            std::string kind = req.kind.value_or("");
            NatTrans<F> g;
            if (kind == "pushout-product")
                g = pushout_product_gen(R, f, r0).map;
            else if (kind == "pullback-cotensor")
                g = pullback_cotensor_gen(R, f, r0).map;
            else
                throw ValidationError(ErrorCode::ParseError, "--kind must be pushout-product or pullback-cotensor");
            auto r = report("transformation");
            r["transformation"] = io::to_json(g);
            return {ok, r};
        }
        if (v[1] == "latching" || v[1] == "matching") {
            auto phi = io::diagram_from_json(fld, cat, doc(1, "diagram"));
            std::size_t r0 = object_arg(req, c);
            auto r = report(v[1]);
            r["object"] = c.object_name(r0);
            if (v[1] == "latching") {
                auto l = latching(R, phi, r0);
                r["value"] = io::to_json(l.object);
                r["map"] = io::to_json(l.map);
            } else {
                auto m = matching(R, phi, r0);
                r["value"] = io::to_json(m.object);
                r["map"] = io::to_json(m.map);
            }
            r["conventions_agree"] = slice_conventions_agree(R, phi, r0, v[1] == "latching");
            return {ok, r};
        }
        auto tau = io::nat_from_json(fld, cat, doc(1, "transformation"));
        if (v[1] == "classify") {
            auto k = reedy_classify(R, tau);
            auto r = report("reedy_classification");
            r["cofibration"] = k.cofibration;
            r["fibration"] = k.fibration;
            r["weak_equivalence"] = k.weak_equivalence;
            return {ok, r};
        }
        // tower
        DiagramLevel<F> L{fld, cat, R};
        auto r = report("reedy_presentation");
        r["map"] = io::to_json(tau);
        bool verified = false;
        if (req.kind.value_or("tower") == "cells") {
            auto cert = reedy_canonical_cells(R, tau);
            verified = verify_cell(L, cert).ok;
            r["cert"] = diagram_cert_doc(fld, cert, cat, R);
        } else if (req.kind.value_or("tower") == "tower") {
            auto cert = reedy_canonical_tower(R, tau);
            verified = verify_postnikov(L, cert).ok;
            r["cert"] = diagram_cert_doc(fld, cert, cat, R);
        } else {
            throw ValidationError(ErrorCode::ParseError, "--kind must be tower or cells");
        }
        r["verified"] = verified;
        return {verified ? ok : defect, r};
    }
    // selftest
    if (!req.seed)
        throw ValidationError(ErrorCode::ParseError, "selftest needs --seed");
    auto r = report("selftest");
    r["count"] = req.count;
    json table = json::array();
    bool all = true;
    std::size_t idx = 0;
    for (const auto& s : suites(fld)) {
        std::mt19937_64 rng(*req.seed + 1000003ULL * idx++);
        std::size_t passed = 0;
        for (std::size_t k = 0; k < req.count; ++k) {
            try {
                passed += s.run_case(rng);
            } catch (const std::exception&) {
            }
        }
        all = all && passed == req.count;
        table.push_back({{"suite", s.name}, {"cases", req.count}, {"passed", passed}, {"ok", passed == req.count}});
    }
    r["suites"] = table;
    r["ok"] = all;
    return {all ? ok : defect, r};
}

inline FieldSpec pick_field(const Request& req) {
    if (req.field)
        return FieldSpec::parse(*req.field);
    for (const auto& path : req.in) {
        auto j = io::read_file(path);
        if (auto s = io::field_of(j))
            return *s;
        if (j.is_object() && j.contains("cert"))
            if (auto s = io::field_of(j.at("cert")))
                return *s;
    }
    return FieldSpec::parse("prime:101");
}

} // namespace detail

/// Parses `args` (without the program name); returns the request or the
/// exit status when parsing already decided it (help, usage errors).
inline std::variant<Request, int> parse(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Request req;
    CLI::App app{"Generators, factorizations and certificates for chain complexes and their diagrams", "fibgen"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string field;
    std::uint64_t seed = 0;
    std::string out_path;
    std::string object, kind;
    auto* field_opt = app.add_option("--field", field, "prime:P or rational (default: from the input, else prime:101)");
    auto* seed_opt = app.add_option("--seed", seed, "seed for randomized commands");
    app.add_option("--in", req.in, "input documents")->expected(1, -1);
    auto* out_opt = app.add_option("--out", out_path, "also write the report here");
    app.add_option("--side", req.side, "factorization side")->check(CLI::IsMember({"z", "x"}));
    auto* object_opt = app.add_option("--object", object, "object name");
    auto* kind_opt = app.add_option("--kind", kind, "generator or presentation kind");
    app.add_option("--count", req.count, "cases per self-test suite");

    app.add_subcommand("classify", "classify a chain map");
    app.add_subcommand("lift", "solve a lifting square");
    app.add_subcommand("factor", "factor a chain map with a certificate");
    app.add_subcommand("homology", "homology of a complex or map");
    app.add_subcommand("verify", "check a certificate");
    auto* diagram = app.add_subcommand("diagram", "diagram-level commands");
    diagram->require_subcommand(1);
    diagram->add_subcommand("factor-z", "injective Z-side factorization");
    diagram->add_subcommand("classify", "objectwise classification");
    diagram->add_subcommand("gen", "tensor or pitchfork generator");
    auto* reedy = app.add_subcommand("reedy", "Reedy category commands");
    reedy->require_subcommand(1);
    for (const char* s : {"validate", "classify", "latching", "matching", "gen", "tower"})
        reedy->add_subcommand(s);
    app.add_subcommand("selftest", "seeded self-test suites");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? ok : invalid;
    }
    for (const CLI::App* a = &app; !a->get_subcommands().empty();) {
        a = a->get_subcommands().front();
        req.verb.push_back(a->get_name());
    }
    if (*field_opt)
        req.field = field;
    if (*seed_opt)
        req.seed = seed;
    if (*out_opt)
        req.out = out_path;
    if (*object_opt)
        req.object = object;
    if (*kind_opt)
        req.kind = kind;
    return req;
}

/// Runs one request: the JSON report goes to `out` (and --out), and the
/// return value is the exit status.
inline int run(const Request& req, std::ostream& out, std::ostream& err) {
    Outcome res;
    FieldSpec spec = FieldSpec::parse("prime:101");
    try {
        spec = detail::pick_field(req);
        if (spec.kind == FieldSpec::Kind::rational)
            res = detail::run_verb(req, RationalField{});
        else
            res = detail::run_verb(req, PrimeField{spec.p});
    } catch (const ValidationError& e) {
        res.status = invalid;
        res.report = detail::envelope(req, "error", spec);
        res.report["code"] = error_name(e.code());
        res.report["witness"] = e.witness();
        err << "fibgen: " << e.what() << "\n";
    } catch (const InternalError& e) {
        res.status = defect;
        res.report = detail::envelope(req, "error", spec);
        res.report["code"] = "Internal";
        res.report["witness"] = e.what();
        err << "fibgen: internal error: " << e.what() << "\n";
    }
    auto text = res.report.dump(2) + "\n";
    out << text;
    if (req.out) {
        std::ofstream f(*req.out);
        if (!f) {
            err << "fibgen: cannot write '" << *req.out << "'\n";
            return invalid;
        }
        f << text;
    }
    return res.status;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    auto parsed = parse(args, out, err);
    if (auto* code = std::get_if<int>(&parsed))
        return *code;
    return run(std::get<Request>(parsed), out, err);
}

} // namespace fibgen::cli
