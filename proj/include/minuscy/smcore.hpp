#pragma once

// Orthogonal collections, extension closures, approximations, perpendicular
// categories, Riedtmann configurations, simple-minded systems and mutations
// over a finite orbit category.
//
// Subcategories closed under sums and summands are represented by their sets
// of indecomposable ids, sorted ascending.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "minuscy/orbitcat.hpp"

namespace minuscy {

using Collection = std::vector<int>;

Collection normalize_collection(Collection s, int size);
std::string format_collection(const OrbitCategory& c, const Collection& s);

// Hom dimensions and a shift permutation, enough for orthogonality,
// Riedtmann and simple-minded-system predicates in D or in a reduction.
struct CategoryView {
    std::vector<int> ids;                // global ids of the objects, view index -> id
    std::vector<std::vector<int>> hom;   // hom[i][j] = dim Hom(i, j)
    std::vector<int> shift, shift_inv;   // as view indices

    int size() const { return static_cast<int>(ids.size()); }
    int shift_power(int i, int k) const;
    static CategoryView of(const OrbitCategory& c);
};

struct Certificate {
    bool ok = true;
    std::string detail;
};

// Def: dim Hom(x,y) = δ_xy and Hom(Σ^k x, y) = 0 for 1 <= k <= w-1.
Certificate check_w_orthogonal(const CategoryView& v, const std::vector<int>& s, int w);
bool pair_w_compatible(const CategoryView& v, int x, int y, int w);
// Right: Hom(Σ^k d, S) = 0 for 0 <= k < w forces d = 0; left: Hom(Σ^k S, d).
Certificate riedtmann_check(const CategoryView& v, const std::vector<int>& s, int w, bool left);

Collection shift_collection(const OrbitCategory& c, const Collection& s, int k);
// {d : Hom(Σ^i x, d) = 0 for x in X, lo <= i <= hi}.
Collection right_perp(const OrbitCategory& c, const Collection& x, int lo, int hi);
// {d : Hom(d, Σ^i x) = 0 for x in X, lo <= i <= hi}.
Collection left_perp(const OrbitCategory& c, const Collection& x, int lo, int hi);
// S^{⊥_w} with i = 0..w and ^{⊥_w}S with i = -w..0.
Collection perp_w(const OrbitCategory& c, const Collection& s, int w);
Collection left_perp_w(const OrbitCategory& c, const Collection& s, int w);

// Extension closure of an orthogonal collection S. An object x of S-length n
// has, for every nonzero σ : s -> x with s in S, a cone of S-length n - 1, so
// lengths follow from cones of the maps out of S.
class ClosureTable {
public:
    ClosureTable(const OrbitCategory& c, const Collection& s);

    const Collection& generators() const { return s_; }
    // Indecomposables of <S>, sorted.
    const Collection& members() const { return members_; }
    bool contains(int x) const { return length_[x] > 0; }
    bool contains(const ObjectVector& x) const;
    // Indecomposables of S-length exactly n (n >= 1).
    Collection level(int n) const;
    int max_length() const;
    // S-length, 0 for the zero object; throws NotInClosure.
    int s_length(const ObjectVector& x) const;
    // Composition series: the successive (s_i, x_i) with s_i -> x_i -> x_{i-1}.
    std::vector<std::pair<int, ObjectVector>> composition_series(const ObjectVector& x) const;

private:
    const OrbitCategory* c_;
    Collection s_, members_;
    std::vector<int> length_;
};

// Minimal right add(A)-approximation f : a_d -> d of the sum of summands d,
// completed to a triangle a_d -> d -> z_d -> Σa_d (tri.f, tri.g, tri.h).
TriangleRecord min_right_approx(const OrbitCategory& c, const Collection& a, const std::vector<int>& d);
// Minimal left add(A)-approximation f : d -> a^d with its cone.
TriangleRecord min_left_approx(const OrbitCategory& c, const Collection& a, const std::vector<int>& d);

// Block-diagonal sum of morphisms.
OrbitMorphism direct_sum(const OrbitCategory& c, const std::vector<OrbitMorphism>& parts);

// Right and left mutation of d with respect to <S>.
ObjectVector right_mutation(const OrbitCategory& c, const ClosureTable& t, int d);
ObjectVector left_mutation(const OrbitCategory& c, const ClosureTable& t, int d);

// X = ^⊥S^⊥ ∩ ^⊥(Σ^{-1}S) ∩ Σ^{-1}(<S> * Y) and the dual equality for Y.
Certificate is_mutation_pair(const OrbitCategory& c, const ClosureTable& t, const Collection& x,
                             const Collection& y);

// D = <S> * Σ^{-1}<S> * ... * Σ^{1-w}<S>, tested by a tower of right
// approximations: d lies in the product iff the last remainder vanishes.
Certificate is_w_sms(const OrbitCategory& c, const Collection& s, int w);

// <S> * Σ^i<S> ⊆ Σ^i<S> * <S> for 0 < i < w. The left side is materialized
// from extensions between sums of at most three indecomposables.
Certificate reverse_order_check(const OrbitCategory& c, const Collection& s, int w);
// Hom(S, f) is an isomorphism for the minimal right <S>-approximation of
// every indecomposable.
Certificate approximation_iso_check(const OrbitCategory& c, const ClosureTable& t);
// For S ⊆ T orthogonal and x in <T> of T-length n: the right <S>-approximation
// triangle s_x -> x -> t_x has t_x in <T> ∩ S^⊥ of T-length m <= n, with
// m = n iff t_x ≅ x.
Certificate approximation_length_check(const OrbitCategory& c, const Collection& s, const Collection& t);

}  // namespace minuscy
