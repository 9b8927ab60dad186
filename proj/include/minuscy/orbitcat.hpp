#pragma once

// The orbit category D^b(kA_n)/F with F = Σ^{w+1}τ, a finite (-w)-CY category.
//
// Every object of D is a sum of indecomposables x_1..x_N, each represented by
// a stalk in D^b. Hom_D(x, y) is the direct sum over orbit degrees i of
// Hom_{D^b}(X, F^i Y), where F acts on morphisms through the normalized Serre
// functor of the derived engine, sign-twisted so that F is a triangle functor
// commuting strictly with Σ.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "minuscy/derived.hpp"

namespace minuscy {

struct HomBasisElem {
    int degree = 0;  // orbit degree i
    int rdeg = 0;    // degree of the underlying D^b morphism, 0 or 1
};

// Multiplicity vector over indecomposable ids.
using ObjectVector = std::vector<int>;

// Morphism between sums of indecomposables listed with repetition.
struct OrbitMorphism {
    std::vector<int> src, tgt;
    // coef[t][s][k] multiplies the k-th basis element of Hom(src[s], tgt[t]).
    std::vector<std::vector<std::vector<int>>> coef;

    bool is_zero() const;
};

struct TriangleRecord {
    std::vector<int> x, y, c;
    OrbitMorphism f, g, h;  // h : c -> Σx
    bool symbolic = false;  // connecting maps not reconstructed
    std::string provenance;
};

enum class Functor { Shift, ShiftInverse, Tau, TauInverse, Serre, SerreInverse };

class OrbitCategory {
public:
    static OrbitCategory build(int n, int w, int p);

    int rank() const { return n_; }
    int weight() const { return w_; }
    int prime() const { return p_; }
    int size() const { return static_cast<int>(reps_.size()); }
    const Stalk& rep(int x) const { return reps_[x]; }
    std::string name(int x) const { return "x" + std::to_string(x + 1); }
    const DbEngine& engine() const { return *engine_; }

    const std::vector<HomBasisElem>& hom_basis(int x, int y) const { return hom_[x][y]; }
    int hom_dim(int x, int y) const { return static_cast<int>(hom_[x][y].size()); }
    int hom_dim_vectors(const ObjectVector& x, const ObjectVector& y) const;
    const std::vector<std::vector<int>>& cartan() const { return cartan_; }
    int max_hom_dim() const;

    int sigma(int x) const { return sigma_[x]; }
    int sigma_inverse(int x) const { return sigma_inv_[x]; }
    int tau(int x) const { return tau_[x]; }
    int tau_inverse(int x) const { return tau_inv_[x]; }
    int serre(int x) const { return serre_[x]; }
    int serre_inverse(int x) const { return serre_inv_[x]; }
    int sigma_power(int x, int k) const;
    int act(Functor f, int x) const;
    ObjectVector act(Functor f, const ObjectVector& x) const;
    // S_m = Serre o Σ^{-m}.
    ObjectVector act_serre_shift(int m, const ObjectVector& x) const;

    // Stalk located in its orbit: s = F^power(rep(id)).
    std::pair<int, int> locate(const Stalk& s) const;
    Stalk apply_f(const Stalk& s, int k) const;

    // Composition e2 o e1 of basis elements e1 in Hom(x,y) and e2 in Hom(y,z).
    std::optional<std::pair<int, int>> compose_basis(int x, int y, int z, int k1, int k2) const;

    OrbitMorphism zero(const std::vector<int>& src, const std::vector<int>& tgt) const;
    OrbitMorphism identity(const std::vector<int>& obj) const;
    OrbitMorphism basis_morphism(int x, int y, int k) const;
    OrbitMorphism compose(const OrbitMorphism& g, const OrbitMorphism& f) const;
    OrbitMorphism add(const OrbitMorphism& a, const OrbitMorphism& b) const;
    OrbitMorphism scale(const OrbitMorphism& a, int c) const;
    // Σ_D on morphisms, k = ±1 applied repeatedly.
    OrbitMorphism shift(const OrbitMorphism& f, int k = 1) const;

    // Flattened coordinates of morphisms between fixed summand lists.
    std::vector<int> flatten(const OrbitMorphism& f) const;
    OrbitMorphism unflatten(const std::vector<int>& src, const std::vector<int>& tgt,
                            const std::vector<int>& v) const;
    int hom_dim(const std::vector<int>& src, const std::vector<int>& tgt) const;
    // Ranks of Hom(q, f) : Hom(q, src) -> Hom(q, tgt) and Hom(f, q).
    int rank_hom_from(int q, const OrbitMorphism& f) const;
    int rank_hom_to(const OrbitMorphism& f, int q) const;

    // Whether C is invertible, so that Hom-dimension vectors identify objects.
    bool cartan_certified() const { return cartan_certified_; }
    // d_q = dim Hom(q, cone f) = dim coker Hom(q,f) + dim ker Hom(Σ^{-1}q, f).
    std::vector<int> hom_fingerprint(const OrbitMorphism& f) const;
    // (C m)_q = dim Hom(q, m).
    std::vector<int> object_fingerprint(const ObjectVector& m) const;
    // Cone object solved from the fingerprint; needs a certified Cartan matrix.
    ObjectVector cone_fingerprint(const OrbitMorphism& f) const;
    ObjectVector fingerprint_solve(const std::vector<int>& d) const;
    // Cone with explicit connecting maps, computed in D^b along a degree
    // potential of the morphism, or nullopt if no potential exists.
    std::optional<TriangleRecord> lifted_cone(const OrbitMorphism& f) const;
    // Cone of (f_1, .., f_k) : x_1 + .. + x_k -> Y by the octahedral
    // recursion cone(f) = cone(g_1 f_2 + .. : x_2 + .. -> cone(f_1)); every
    // step has an indecomposable source and lifts. h is not reconstructed.
    TriangleRecord iterated_cone(const OrbitMorphism& f) const;
    // Lifted cone when possible, otherwise the iterated cone; the object is
    // always cross-checked against the Hom fingerprint.
    TriangleRecord cone(const OrbitMorphism& f) const;

    std::string to_json() const;
    static OrbitCategory from_json(const std::string& text);

private:
    OrbitCategory() = default;
    void build_composition();
    void build_shift_basis();
    void validate() const;
    int twisted_scalar(const Stalk& u, const Stalk& v) const;
    int lambda_power(int a, const Stalk& u, const Stalk& v) const;
    int basis_index(int x, int y, int degree) const;
    // Push a D^b basis morphism between located stalks down to D.
    std::pair<int, int> push_down(const Stalk& u, const Stalk& v, int coef) const;

    int n_ = 0, w_ = 0, p_ = 101;
    std::shared_ptr<DbEngine> engine_;
    std::vector<Stalk> reps_;
    std::map<Stalk, std::pair<int, int>> window_;
    int window_bound_ = 0;
    bool cartan_certified_ = false;
    std::vector<std::vector<std::vector<HomBasisElem>>> hom_;
    std::vector<std::vector<int>> cartan_;
    std::vector<int> sigma_, sigma_inv_, tau_, tau_inv_, serre_, serre_inv_;
    std::vector<int> sigma_pow_;  // Σ rep(x) = F^{sigma_pow_[x]} rep(sigma(x))
    // Global basis ids and structure constants.
    std::vector<std::vector<int>> basis_offset_;
    struct GlobalBasis {
        int x, y, k;
    };
    std::vector<GlobalBasis> global_;
    std::unordered_map<long long, std::pair<int, int>> compose_;  // (g1,g2) -> (g3, coef)
    std::vector<std::pair<int, int>> shift_basis_;                // g -> (g', coef)
};

ObjectVector to_vector(const OrbitCategory& c, const std::vector<int>& summands);
std::vector<int> to_summands(const ObjectVector& v);
std::string format_object(const OrbitCategory& c, const ObjectVector& v);

}  // namespace minuscy
