#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fibgen/limits.hpp"
#include "fibgen/wfs.hpp"

namespace fibgen {

/// p_n: D^n -> S^n (p_0: 0 -> S^0), q_n: D^n -> 0, or an explicit map.
enum class GenFamily { p, q, custom };

/// How a chain-level generator is spread over a diagram category. `plain`
/// is the chain-level generator itself.
enum class GenShape { plain, pitchfork, tensor, reedy_cotensor, reedy_pushout_product };

inline std::string_view family_name(GenFamily f) {
    switch (f) {
    case GenFamily::p: return "p";
    case GenFamily::q: return "q";
    case GenFamily::custom: return "custom";
    }
    return "?";
}

inline std::string_view shape_name(GenShape s) {
    switch (s) {
    case GenShape::plain: return "plain";
    case GenShape::pitchfork: return "pitchfork";
    case GenShape::tensor: return "tensor";
    case GenShape::reedy_cotensor: return "reedy_cotensor";
    case GenShape::reedy_pushout_product: return "reedy_pushout_product";
    }
    return "?";
}

template <Field F>
struct Generator {
    GenFamily family = GenFamily::p;
    std::size_t degree = 0;
    std::optional<ChainMap<F>> custom;
    GenShape shape = GenShape::plain;
    std::size_t object = 0;

    static Generator p(std::size_t n) { return {GenFamily::p, n, std::nullopt}; }
    static Generator q(std::size_t n) { return {GenFamily::q, n, std::nullopt}; }
    static Generator of(ChainMap<F> m) { return {GenFamily::custom, 0, std::move(m)}; }

    Generator at(GenShape s, std::size_t obj) const {
        Generator g = *this;
        g.shape = s;
        g.object = obj;
        return g;
    }

    std::string label() const {
        std::string s = family == GenFamily::custom ? std::string("custom")
                                                    : std::string(family_name(family)) + "_" + std::to_string(degree);
        if (shape != GenShape::plain)
            s += "@" + std::string(shape_name(shape)) + ":" + std::to_string(object);
        return s;
    }
};

template <Field F>
ChainMap<F> p_generator(F field, std::size_t n) {
    auto s = ChainComplex<F>::sphere(field, n);
    if (n == 0)
        return ChainMap<F>::zero(ChainComplex<F>::zero(field), s);
    auto d = ChainComplex<F>::disc(field, n);
    std::vector<Matrix<F>> comps;
    for (std::size_t k = 0; k <= n; ++k)
        comps.emplace_back(field, s.dim(k), d.dim(k));
    comps[n] = Matrix<F>::identity(field, 1);
    return ChainMap<F>::make(d, s, std::move(comps));
}

template <Field F>
ChainMap<F> q_generator(F field, std::size_t n) {
    return ChainMap<F>::zero(ChainComplex<F>::disc(field, n), ChainComplex<F>::zero(field));
}

/// The chain-level map underlying a generator.
template <Field F>
ChainMap<F> core_map(F field, const Generator<F>& g) {
    switch (g.family) {
    case GenFamily::p: return p_generator(field, g.degree);
    case GenFamily::q:
        if (g.degree == 0)
            throw ValidationError(ErrorCode::BadDegree, "q_0 is not a generator");
        return q_generator(field, g.degree);
    case GenFamily::custom:
        if (!g.custom)
            throw ValidationError(ErrorCode::ParseError, "custom generator without a map");
        return *g.custom;
    }
    throw InternalError("unknown generator family");
}

/// Outcome of checking a certificate: `stage` is the failing stage index,
/// or the stage count when only the composite is wrong.
struct VerifyResult {
    bool ok = true;
    std::size_t stage = 0;
    std::string reason;

    static VerifyResult pass() { return {}; }
    static VerifyResult defect(std::size_t s, std::string why) { return {false, s, std::move(why)}; }
};

/// Ch itself as a certificate level.
template <Field F>
struct ChainLevel {
    using FieldType = F;
    using Object = ChainComplex<F>;
    using Map = ChainMap<F>;

    F field{};

    struct Product {
        Object source, target;
        Map map;
    };
    struct Square {
        Object object;
        Map leg1, leg2;
    };

    Map compose(const Map& g, const Map& f) const { return g * f; }
    Map identity(const Object& o) const { return Map::identity(o); }
    const Object& source(const Map& m) const { return m.source(); }
    const Object& target(const Map& m) const { return m.target(); }
    bool equal(const Map& a, const Map& b) const { return a == b; }
    bool same_object(const Object& a, const Object& b) const { return a == b; }

    Map realize(const Generator<F>& g) const {
        if (g.shape != GenShape::plain)
            throw ValidationError(ErrorCode::ParseError, "diagram generator in a chain-level certificate");
        return core_map(field, g);
    }

    Product product(const std::vector<Map>& maps) const {
        std::vector<Object> src, tgt;
        for (const auto& m : maps) {
            src.push_back(m.source());
            tgt.push_back(m.target());
        }
        auto bs = biproduct(field, src);
        auto bt = biproduct(field, tgt);
        if (maps.empty())
            return {bs.object, bt.object, Map::zero(bs.object, bt.object)};
        return {bs.object, bt.object, direct_sum_map(bs, bt, maps)};
    }

    Square pullback_of(const Map& k, const Map& p) const {
        auto pb = fibgen::pullback(k, p);
        return {pb.object, pb.leg1, pb.leg2};
    }
    Square pushout_of(const Map& k, const Map& i) const {
        auto po = fibgen::pushout(k, i);
        return {po.object, po.leg1, po.leg2};
    }

    /// P with legs down: P -> Y, gen: P -> E is a pullback of k: Y -> B
    /// along p: E -> B.
    std::optional<std::string> check_pullback(const Map& k, const Map& p, const Object& P, const Map& down,
                                              const Map& gen) const {
        std::size_t len = std::max({P.length(), k.source().length(), p.source().length(), k.target().length()});
        for (std::size_t n = 0; n < len; ++n) {
            if (!(k.comp(n) * down.comp(n) == p.comp(n) * gen.comp(n)))
                return "square does not commute in degree " + std::to_string(n);
            if (!is_injective(vstack(down.comp(n), gen.comp(n))))
                return "legs not jointly injective in degree " + std::to_string(n);
            Matrix<F> diff = hstack(k.comp(n), -p.comp(n));
            if (P.dim(n) != diff.cols() - rank(diff))
                return "pullback has the wrong dimension in degree " + std::to_string(n);
        }
        return std::nullopt;
    }

    /// Q with legs up: Y -> Q, gen: B -> Q is a pushout of k: A -> Y along
    /// i: A -> B.
    std::optional<std::string> check_pushout(const Map& k, const Map& i, const Object& Q, const Map& up,
                                             const Map& gen) const {
        std::size_t len = std::max({Q.length(), k.target().length(), i.target().length(), k.source().length()});
        for (std::size_t n = 0; n < len; ++n) {
            if (!(up.comp(n) * k.comp(n) == gen.comp(n) * i.comp(n)))
                return "square does not commute in degree " + std::to_string(n);
            if (!is_surjective(hstack(up.comp(n), gen.comp(n))))
                return "legs not jointly surjective in degree " + std::to_string(n);
            Matrix<F> span = vstack(k.comp(n), -i.comp(n));
            if (Q.dim(n) != span.rows() - rank(span))
                return "pushout has the wrong dimension in degree " + std::to_string(n);
        }
        return std::nullopt;
    }
};

/// One stage of a tower: `object` is the pullback of `attaching` (out of
/// the previous stage object) along the product of the generators.
template <class Level>
struct PostnikovStage {
    using Map = typename Level::Map;
    using Object = typename Level::Object;
    std::vector<Generator<typename Level::FieldType>> generators;
    Map attaching;  // previous -> prod of generator targets
    Object object;
    Map down;       // object -> previous
    Map to_gen;     // object -> prod of generator sources
};

template <class Level>
struct PostnikovCert {
    using Map = typename Level::Map;
    using Object = typename Level::Object;
    Object base;
    std::vector<PostnikovStage<Level>> stages;
    Map claimed;  // top stage object -> base

    const Object& top_object() const { return stages.empty() ? base : stages.back().object; }
};

/// Dual: `object` is the pushout of `attaching` (into the previous stage
/// object) along the coproduct of the generators.
template <class Level>
struct CellStage {
    using Map = typename Level::Map;
    using Object = typename Level::Object;
    std::vector<Generator<typename Level::FieldType>> generators;
    Map attaching;  // coprod of generator sources -> previous
    Object object;
    Map up;         // previous -> object
    Map from_gen;   // coprod of generator targets -> object
};

template <class Level>
struct CellCert {
    using Map = typename Level::Map;
    using Object = typename Level::Object;
    Object base;
    std::vector<CellStage<Level>> stages;
    Map claimed;  // base -> last stage object

    const Object& top_object() const { return stages.empty() ? base : stages.back().object; }
};

template <class Level>
typename Level::Map tower_composite(const Level& L, const PostnikovCert<Level>& c) {
    auto comp = L.identity(c.base);
    for (const auto& st : c.stages)
        comp = L.compose(comp, st.down);
    return comp;
}

template <class Level>
typename Level::Map cell_composite(const Level& L, const CellCert<Level>& c) {
    auto comp = L.identity(c.base);
    for (const auto& st : c.stages)
        comp = L.compose(st.up, comp);
    return comp;
}

template <class Level>
typename Level::Product generator_product(const Level& L,
                                          const std::vector<Generator<typename Level::FieldType>>& gens) {
    std::vector<typename Level::Map> maps;
    for (const auto& g : gens)
        maps.push_back(L.realize(g));
    return L.product(maps);
}

template <class Level>
VerifyResult verify_postnikov(const Level& L, const PostnikovCert<Level>& c) {
    const auto* prev = &c.base;
    for (std::size_t s = 0; s < c.stages.size(); ++s) {
        const auto& st = c.stages[s];
        typename Level::Product prod;
        try {
            prod = generator_product(L, st.generators);
        } catch (const ValidationError& e) {
            return VerifyResult::defect(s, std::string("bad generator: ") + e.what());
        }
        if (!L.same_object(L.source(st.attaching), *prev) || !L.same_object(L.target(st.attaching), prod.target))
            return VerifyResult::defect(s, "attaching map has the wrong source or target");
        if (!L.same_object(L.source(st.down), st.object) || !L.same_object(L.target(st.down), *prev))
            return VerifyResult::defect(s, "downward leg has the wrong source or target");
        if (!L.same_object(L.source(st.to_gen), st.object) || !L.same_object(L.target(st.to_gen), prod.source))
            return VerifyResult::defect(s, "generator leg has the wrong source or target");
        if (auto why = L.check_pullback(st.attaching, prod.map, st.object, st.down, st.to_gen))
            return VerifyResult::defect(s, *why);
        prev = &st.object;
    }
    if (!L.same_object(L.source(c.claimed), *prev) || !L.same_object(L.target(c.claimed), c.base) ||
        !L.equal(tower_composite(L, c), c.claimed))
        return VerifyResult::defect(c.stages.size(), "composite differs from the claimed map");
    return VerifyResult::pass();
}

template <class Level>
VerifyResult verify_cell(const Level& L, const CellCert<Level>& c) {
    const auto* prev = &c.base;
    for (std::size_t s = 0; s < c.stages.size(); ++s) {
        const auto& st = c.stages[s];
        typename Level::Product prod;
        try {
            prod = generator_product(L, st.generators);
        } catch (const ValidationError& e) {
            return VerifyResult::defect(s, std::string("bad generator: ") + e.what());
        }
        if (!L.same_object(L.source(st.attaching), prod.source) || !L.same_object(L.target(st.attaching), *prev))
            return VerifyResult::defect(s, "attaching map has the wrong source or target");
        if (!L.same_object(L.source(st.up), *prev) || !L.same_object(L.target(st.up), st.object))
            return VerifyResult::defect(s, "upward leg has the wrong source or target");
        if (!L.same_object(L.source(st.from_gen), prod.target) || !L.same_object(L.target(st.from_gen), st.object))
            return VerifyResult::defect(s, "generator leg has the wrong source or target");
        if (auto why = L.check_pushout(st.attaching, prod.map, st.object, st.up, st.from_gen))
            return VerifyResult::defect(s, *why);
        prev = &st.object;
    }
    if (!L.same_object(L.source(c.claimed), c.base) || !L.same_object(L.target(c.claimed), *prev) ||
        !L.equal(cell_composite(L, c), c.claimed))
        return VerifyResult::defect(c.stages.size(), "composite differs from the claimed map");
    return VerifyResult::pass();
}

/// Incremental tower construction. Each push computes the pullback and
/// keeps the composite current.
template <class Level>
class TowerBuilder {
public:
    using Map = typename Level::Map;
    using Object = typename Level::Object;
    using Gen = Generator<typename Level::FieldType>;

    TowerBuilder(Level level, Object base) : L_(std::move(level)) {
        cert_.base = base;
        cert_.claimed = L_.identity(base);
    }

    const Object& current() const { return cert_.top_object(); }
    const Level& level() const { return L_; }

    /// Adds the stage pulling back `attaching: current -> prod targets`.
    /// Returns the new stage. Empty generator lists are skipped.
    const PostnikovStage<Level>* push(std::vector<Gen> gens, const Map& attaching) {
        if (gens.empty())
            return nullptr;
        auto prod = generator_product(L_, gens);
        auto sq = L_.pullback_of(attaching, prod.map);
        PostnikovStage<Level> st{std::move(gens), attaching, sq.object, sq.leg1, sq.leg2};
        cert_.claimed = L_.compose(cert_.claimed, st.down);
        cert_.stages.push_back(std::move(st));
        return &cert_.stages.back();
    }

    /// Adds a stage with an explicitly given pullback object and legs.
    void push_explicit(PostnikovStage<Level> st) {
        cert_.claimed = L_.compose(cert_.claimed, st.down);
        cert_.stages.push_back(std::move(st));
    }

    PostnikovCert<Level> finish() const { return cert_; }

private:
    Level L_;
    PostnikovCert<Level> cert_;
};

template <class Level>
class CellBuilder {
public:
    using Map = typename Level::Map;
    using Object = typename Level::Object;
    using Gen = Generator<typename Level::FieldType>;

    CellBuilder(Level level, Object base) : L_(std::move(level)) {
        cert_.base = base;
        cert_.claimed = L_.identity(base);
    }

    const Object& current() const { return cert_.top_object(); }

    const CellStage<Level>* push(std::vector<Gen> gens, const Map& attaching) {
        if (gens.empty())
            return nullptr;
        auto prod = generator_product(L_, gens);
        auto sq = L_.pushout_of(attaching, prod.map);
        CellStage<Level> st{std::move(gens), attaching, sq.object, sq.leg1, sq.leg2};
        cert_.claimed = L_.compose(st.up, cert_.claimed);
        cert_.stages.push_back(std::move(st));
        return &cert_.stages.back();
    }

    void push_explicit(CellStage<Level> st) {
        cert_.claimed = L_.compose(st.up, cert_.claimed);
        cert_.stages.push_back(std::move(st));
    }

    CellCert<Level> finish() const { return cert_; }

private:
    Level L_;
    CellCert<Level> cert_;
};

} // namespace fibgen
