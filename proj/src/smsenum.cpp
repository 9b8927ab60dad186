#include "minuscy/smsenum.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <thread>

namespace minuscy {

namespace {

using Clock = std::chrono::steady_clock;

struct Branch {
    long orthogonal = 0;
    std::vector<Collection> passing;  // view indices
    std::vector<Collection> maximal_failing;
};

Collection to_global(const CategoryView& v, const Collection& s) {
    Collection out;
    for (int i : s) out.push_back(v.ids[i]);
    std::sort(out.begin(), out.end());
    return out;
}

// Every maximal extension of base is reached by exactly one branch: the
// branch of its smallest element outside base, or the root when there is none.
Branch run(const CategoryView& v, int w, const EnumerationOptions& opt) {
    if (v.size() > kEnumerationGuard && !opt.force)
        throw Error(ErrorCode::Usage, std::to_string(v.size()) + " objects exceed the enumeration guard of " +
                                          std::to_string(kEnumerationGuard) + "; pass --force");
    Collection base = opt.base;
    std::sort(base.begin(), base.end());
    Branch root;
    if (!check_w_orthogonal(v, base, w).ok) return root;

    std::vector<char> allowed(v.size(), 1);
    for (int x = 0; x < v.size(); ++x) {
        if (std::binary_search(base.begin(), base.end(), x)) {
            allowed[x] = 0;
            continue;
        }
        for (int y : base)
            if (!pair_w_compatible(v, x, y, w)) allowed[x] = 0;
    }
    std::vector<int> firsts;
    for (int x = 0; x < v.size(); ++x)
        if (allowed[x]) firsts.push_back(x);

    // The root collection itself.
    root.orthogonal = 1;
    bool passes = riedtmann_check(v, base, w, false).ok && riedtmann_check(v, base, w, true).ok;
    if (passes)
        root.passing.push_back(base);
    else if (firsts.empty())
        root.maximal_failing.push_back(base);

    std::vector<Branch> branches(firsts.size());
    auto work = [&](size_t i) {
        Branch& b = branches[i];
        Collection ext{firsts[i]};
        std::vector<char> sub = allowed;
        for (int x = 0; x <= firsts[i]; ++x) sub[x] = 0;
        for (int x = 0; x < v.size(); ++x)
            if (sub[x] && !pair_w_compatible(v, x, firsts[i], w)) sub[x] = 0;
        struct Local {
            const CategoryView& v;
            int w;
            const Collection& base;
            Branch& b;
            std::vector<char>& sub;
            void go(Collection& ext, int from) {
                ++b.orthogonal;
                bool extended = false;
                for (int x = from; x < v.size(); ++x) {
                    if (!sub[x]) continue;
                    bool ok = true;
                    for (int y : ext)
                        if (!pair_w_compatible(v, x, y, w)) {
                            ok = false;
                            break;
                        }
                    if (!ok) continue;
                    extended = true;
                    ext.push_back(x);
                    go(ext, x + 1);
                    ext.pop_back();
                }
                Collection full = base;
                full.insert(full.end(), ext.begin(), ext.end());
                std::sort(full.begin(), full.end());
                bool pass = riedtmann_check(v, full, w, false).ok && riedtmann_check(v, full, w, true).ok;
                if (pass)
                    b.passing.push_back(full);
                else if (!extended)
                    b.maximal_failing.push_back(full);
            }
        } local{v, w, base, b, sub};
        local.go(ext, firsts[i] + 1);
    };

    int workers = std::max(1, opt.workers);
    if (workers == 1 || firsts.size() < 2) {
        for (size_t i = 0; i < firsts.size(); ++i) work(i);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t)
            pool.emplace_back([&, t] {
                for (size_t i = t; i < firsts.size(); i += workers) work(i);
            });
        for (auto& th : pool) th.join();
    }
    for (auto& b : branches) {
        root.orthogonal += b.orthogonal;
        root.passing.insert(root.passing.end(), b.passing.begin(), b.passing.end());
        root.maximal_failing.insert(root.maximal_failing.end(), b.maximal_failing.begin(), b.maximal_failing.end());
    }
    return root;
}

EnumerationReport finish(const CategoryView& v, int w, Branch& b, Clock::time_point start) {
    EnumerationReport r;
    r.size = v.size();
    r.w = w;
    r.orthogonal = b.orthogonal;
    r.riedtmann = static_cast<long>(b.passing.size());
    r.sms = r.riedtmann;
    for (const auto& s : b.passing) r.systems.push_back(to_global(v, s));
    std::sort(r.systems.begin(), r.systems.end());
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return r;
}

}  // namespace

EnumerationReport enumerate_sms(const CategoryView& v, int w, const EnumerationOptions& opt) {
    auto start = Clock::now();
    Branch b = run(v, w, opt);
    return finish(v, w, b, start);
}

EnumerationReport enumerate_sms(const OrbitCategory& c, int w, const EnumerationOptions& opt) {
    auto start = Clock::now();
    CategoryView v = CategoryView::of(c);
    Branch b = run(v, w, opt);
    // Audit serially: the tower must accept every Riedtmann configuration
    // and reject every maximal orthogonal collection that fails.
    std::vector<std::string> failures;
    long rejected = 0;
    for (const auto& s : b.passing)
        if (!is_w_sms(c, s, w).ok) {
            ++rejected;
            failures.push_back(format_collection(c, s) + " passes Riedtmann but not the tower");
        }
    for (const auto& s : b.maximal_failing)
        if (is_w_sms(c, s, w).ok) failures.push_back(format_collection(c, s) + " passes the tower but not Riedtmann");
    EnumerationReport r = finish(v, w, b, start);
    r.audited = true;
    r.audit_failures = failures;
    r.sms = r.riedtmann - rejected;
    return r;
}

EnumerationReport enumerate_sms(const ReducedCategory& r, const EnumerationOptions& opt) {
    return enumerate_sms(r.view(), r.weight(), opt);
}

BijectionReport verify_bijection(const ReducedCategory& r, const EnumerationOptions& opt) {
    const OrbitCategory& c = r.parent();
    int w = r.weight();
    BijectionReport out;
    out.s = r.generators();

    EnumerationOptions dopt = opt;
    dopt.base = out.s;  // global ids coincide with view indices in D
    EnumerationReport d = enumerate_sms(c, w, dopt);
    EnumerationOptions zopt = opt;
    zopt.base.clear();
    EnumerationReport z = enumerate_sms(r, zopt);
    out.in_d = static_cast<long>(d.systems.size());
    out.in_z = static_cast<long>(z.systems.size());
    Report& rep = out.report;
    for (const auto& f : d.audit_failures) rep.fail(f);
    if (out.in_d != out.in_z)
        rep.fail(std::to_string(out.in_d) + " sms contain S but Z has " + std::to_string(out.in_z));

    std::set<Collection> zset(z.systems.begin(), z.systems.end());
    std::set<Collection> dset(d.systems.begin(), d.systems.end());
    std::set<Collection> image;
    for (const auto& t : d.systems) {
        ++rep.checks;
        Collection rest;
        std::set_difference(t.begin(), t.end(), out.s.begin(), out.s.end(), std::back_inserter(rest));
        out.pairs.push_back({t, rest});
        if (!r.contains(rest)) {
            rep.fail(format_collection(c, t) + " minus S leaves Z");
            continue;
        }
        if (!zset.count(rest)) rep.fail(format_collection(c, rest) + " is not an sms of Z");
        if (!image.insert(rest).second) rep.fail(format_collection(c, rest) + " is hit twice");
    }
    for (const auto& rz : z.systems) {
        ++rep.checks;
        Collection t = rz;
        t.insert(t.end(), out.s.begin(), out.s.end());
        std::sort(t.begin(), t.end());
        if (!dset.count(t)) rep.fail(format_collection(c, t) + " is not an sms of D");
        if (!image.count(rz)) rep.fail(format_collection(c, rz) + " is not hit");
    }
    return out;
}

}  // namespace minuscy
