#pragma once

// Exhaustive enumeration of w-orthogonal collections and w-simple-minded
// systems in D or in a reduction Z, and the bijection between sms of D
// containing S and sms of Z = S^{⊥_w}.

#include <string>
#include <vector>

#include "minuscy/reduction.hpp"

namespace minuscy {

struct EnumerationOptions {
    Collection base;    // only collections containing base (view indices)
    int workers = 1;    // branch-parallel DFS over the first free element
    bool force = false; // lift the size guardrail
};

struct EnumerationReport {
    int size = 0;
    int w = 0;
    long orthogonal = 0;  // w-orthogonal collections containing base, the empty one included
    long riedtmann = 0;   // those satisfying both Riedtmann conditions
    long sms = 0;         // confirmed simple-minded systems
    std::vector<Collection> systems;  // global ids, sorted, duplicate-free
    bool audited = false;             // D side: every leaf also run through is_w_sms
    std::vector<std::string> audit_failures;
    double seconds = 0;
};

constexpr int kEnumerationGuard = 60;

// Throws Usage when the view has more than kEnumerationGuard objects and
// force is unset.
EnumerationReport enumerate_sms(const CategoryView& v, int w, const EnumerationOptions& opt = {});
// In D, with the Riedtmann filter audited against the approximation tower.
EnumerationReport enumerate_sms(const OrbitCategory& c, int w, const EnumerationOptions& opt = {});
// In Z through its Hom table and <1>.
EnumerationReport enumerate_sms(const ReducedCategory& r, const EnumerationOptions& opt = {});

struct BijectionReport {
    Collection s;
    long in_d = 0;  // sms T of D with S ⊆ T
    long in_z = 0;  // sms R of Z
    std::vector<std::pair<Collection, Collection>> pairs;  // (T, T ∖ S)
    Report report{"bijection"};
};

// T -> T ∖ S and R -> R ∪ S are mutually inverse between the two lists.
BijectionReport verify_bijection(const ReducedCategory& r, const EnumerationOptions& opt = {});

}  // namespace minuscy
