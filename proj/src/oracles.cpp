#include "minuscy/oracles.hpp"

namespace minuscy {

std::optional<DbObject> interval_cone(Interval x, Interval y, int r) {
    auto [a, b] = x;
    auto [c, d] = y;
    DbObject out;
    if (r == 0) {
        if (!(c <= a && a <= d && d <= b)) return std::nullopt;
        if (c < a) out.push_back(Stalk{0, {c, a - 1}});
        if (d < b) out.push_back(Stalk{1, {d + 1, b}});
    } else if (r == 1) {
        // x -> Σy classifies y -> e -> x -> Σy, so the cone is Σe.
        if (!(a < c && c <= b + 1 && b + 1 <= d)) return std::nullopt;
        out.push_back(Stalk{1, {a, d}});
        if (c <= b) out.push_back(Stalk{1, {c, b}});
    } else {
        return std::nullopt;
    }
    return normal_form(out);
}

ObjectVector interval_cone(const OrbitCategory& c, int x, int y, int k) {
    const HomBasisElem& e = c.hom_basis(x, y).at(k);
    Stalk sx = c.rep(x);
    Stalk sy = c.apply_f(c.rep(y), e.degree);
    int r = sy.shift - sx.shift;
    auto cone = interval_cone(sx.iv, sy.iv, r);
    if (!cone) throw Error(ErrorCode::InvariantViolation, "basis morphism " + c.name(x) + " -> " + c.name(y) +
                                                              " has no interval realization");
    ObjectVector out(c.size(), 0);
    for (const Stalk& s : *cone) ++out[c.locate(s.shifted(sx.shift)).first];
    return out;
}

}  // namespace minuscy
