#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fibgen/certificate.hpp"
#include "fibgen/reedy.hpp"

namespace fibgen {

/// Ch^D as a certificate level. Generators are chain-level generators spread
/// over D by their shape; the Reedy shapes need `reedy`.
template <Field F>
struct DiagramLevel {
    using FieldType = F;
    using Object = Diagram<F>;
    using Map = NatTrans<F>;

    F field{};
    CatPtr cat;
    std::optional<ReedyCat> reedy;

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
        if (g.object >= cat->num_objects())
            throw ValidationError(ErrorCode::ShapeMismatch, "generator placed at an unknown object");
        auto core = core_map(field, g);
        switch (g.shape) {
        case GenShape::plain:
            throw ValidationError(ErrorCode::ParseError, "chain-level generator in a diagram certificate");
        case GenShape::pitchfork: return pitchfork_gen(cat, core, g.object);
        case GenShape::tensor: return tensor_gen(cat, core, g.object);
        case GenShape::reedy_cotensor:
            if (!reedy)
                throw ValidationError(ErrorCode::ParseError, "Reedy generator without a Reedy structure");
            return pullback_cotensor_gen(*reedy, core, g.object).map;
        case GenShape::reedy_pushout_product:
            if (!reedy)
                throw ValidationError(ErrorCode::ParseError, "Reedy generator without a Reedy structure");
            return pushout_product_gen(*reedy, core, g.object).map;
        }
        throw InternalError("unknown generator shape");
    }

    Product product(const std::vector<Map>& maps) const {
        std::vector<Object> src, tgt;
        for (const auto& m : maps) {
            src.push_back(m.source());
            tgt.push_back(m.target());
        }
        auto bs = diagram_biproduct(cat, field, src);
        auto bt = diagram_biproduct(cat, field, tgt);
        return {bs.object, bt.object, diagram_direct_sum(bs, bt, maps)};
    }

    Square pullback_of(const Map& k, const Map& p) const {
        auto pb = diagram_pullback(k, p);
        return {pb.object, pb.leg1, pb.leg2};
    }
    Square pushout_of(const Map& k, const Map& i) const {
        auto po = diagram_pushout(k, i);
        return {po.object, po.leg1, po.leg2};
    }

    // (co)limits in Ch^D are objectwise
    std::optional<std::string> check_pullback(const Map& k, const Map& p, const Object& P, const Map& down,
                                              const Map& gen) const {
        ChainLevel<F> ch{field};
        for (std::size_t o = 0; o < cat->num_objects(); ++o)
            if (auto why = ch.check_pullback(k.at(o), p.at(o), P.at(o), down.at(o), gen.at(o)))
                return "at " + cat->object_name(o) + ": " + *why;
        return std::nullopt;
    }
    std::optional<std::string> check_pushout(const Map& k, const Map& i, const Object& Q, const Map& up,
                                             const Map& gen) const {
        ChainLevel<F> ch{field};
        for (std::size_t o = 0; o < cat->num_objects(); ++o)
            if (auto why = ch.check_pushout(k.at(o), i.at(o), Q.at(o), up.at(o), gen.at(o)))
                return "at " + cat->object_name(o) + ": " + *why;
        return std::nullopt;
    }
};

template <Field F>
using DiagramCert = PostnikovCert<DiagramLevel<F>>;
template <Field F>
using DiagramCellCert = CellCert<DiagramLevel<F>>;

/// The unique map into a pullback stage with the given legs.
template <Field F>
NatTrans<F> diagram_factor_through(const PostnikovStage<DiagramLevel<F>>& st, const NatTrans<F>& to_prev,
                                   const NatTrans<F>& to_gen) {
    std::vector<ChainMap<F>> comps;
    for (std::size_t o = 0; o < st.object.objects().size(); ++o) {
        const auto& obj = st.object.at(o);
        std::size_t len = std::max({to_prev.source().at(o).length(), obj.length(), to_gen.target().at(o).length()});
        std::vector<Matrix<F>> cs;
        for (std::size_t n = 0; n < len; ++n) {
            auto x = solve(vstack(st.down.at(o).comp(n), st.to_gen.at(o).comp(n)),
                           vstack(to_prev.at(o).comp(n), to_gen.at(o).comp(n)));
            require_internal(x.has_value(), "diagram_factor_through: cone does not land in the pullback");
            cs.push_back(std::move(*x));
        }
        comps.push_back(ChainMap<F>::raw(to_prev.source().at(o), obj, std::move(cs)));
    }
    return NatTrans<F>::raw(to_prev.source(), st.object, std::move(comps));
}

/// The unique map out of a pushout stage with the given legs.
template <Field F>
NatTrans<F> diagram_cofactor_through(const CellStage<DiagramLevel<F>>& st, const NatTrans<F>& from_prev,
                                     const NatTrans<F>& from_gen) {
    std::vector<ChainMap<F>> comps;
    for (std::size_t o = 0; o < st.object.objects().size(); ++o) {
        const auto& obj = st.object.at(o);
        std::size_t len = std::max({from_prev.target().at(o).length(), obj.length(), from_gen.source().at(o).length()});
        std::vector<Matrix<F>> cs;
        for (std::size_t n = 0; n < len; ++n) {
            // x [up | gen] = [prev | g], solved transposed
            auto x = solve(hstack(st.up.at(o).comp(n), st.from_gen.at(o).comp(n)).transpose(),
                           hstack(from_prev.at(o).comp(n), from_gen.at(o).comp(n)).transpose());
            require_internal(x.has_value(), "diagram_cofactor_through: cocone does not descend");
            cs.push_back(x->transpose());
        }
        comps.push_back(ChainMap<F>::raw(obj, from_prev.target().at(o), std::move(cs)));
    }
    return NatTrans<F>::raw(st.object, from_prev.target(), std::move(comps));
}

} // namespace fibgen
