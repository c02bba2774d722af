// Acceptance run: one line per criterion, nonzero exit on any failure.
// Every threshold is pinned here; the time budgets are part of the contract.

#include "sugop/verify.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

using namespace sugop;

namespace {

struct Criterion {
    int id;
    std::string title;
    double budget_s;
    std::function<verify::SuiteReport()> run;
};

} // namespace

int main() {
    verify::Options o;  // full grids, seed 0
    o.seed = 0;
    o.max_weight = 4;
    o.kmax2 = 4;
    o.level = 3;

    std::vector<Criterion> crits = {
        {1, "residue tables (|i|,|j| <= 6) and derivative pairings", 1.0,
         [&] { return verify::suite_residues(o); }},
        {2, "basis duality (|n|,|m| <= 8) and reconstruction (50 random)", 5.0,
         [&] { return verify::suite_duality(o); }},
        {3, "casimir identities", 1.0, [&] { return verify::suite_casimir(o); }},
        {4, "P_lambda homogeneity and full support (lambda <= 8)", 10.0,
         [&] { return verify::suite_plambda(o); }},
        {5, "f_lambda factorisation (lambda <= mu <= 4)", 60.0,
         [&] { return verify::suite_flambda(o); }},
        {6, "centrality mod J(3) and generic-level commutator", 120.0,
         [&] { return verify::suite_centrality(o); }},
        {7, "specialisation of the Sugawara operators mod J_1(6)", 10.0,
         [&] { return verify::suite_specialization(o); }},
        {8, "expansion congruences and leading terms", 60.0,
         [&] { return verify::suite_expansion(o); }},
        {9, "derivation identities (operators and coordinates)", 120.0,
         [&] {
             auto r = verify::suite_derivl(o);
             auto r2 = verify::suite_derivcoord(o);
             r.suite = "derivl+derivcoord";
             r.cases.insert(r.cases.end(), r2.cases.begin(), r2.cases.end());
             return r;
         }},
        {10, "FF equivariance cross-check", 60.0,
         [&] { return verify::suite_ff_equivariance(o); }},
        {11, "hypergeometric memberships and ODE residual (mu <= 3)", 60.0,
         [&] { return verify::suite_hyper(o); }},
        {12, "Weyl degree-0 matching (lambda, mu <= 2)", 300.0,
         [&] { return verify::suite_weyl(o); }},
        {13, "finite independence of the Sugawara operators", 60.0,
         [&] { return verify::suite_independence(o); }},
    };

    bool all_ok = true;
    for (const auto& c : crits) {
        auto t0 = std::chrono::steady_clock::now();
        verify::SuiteReport rep = c.run();
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool ok = rep.ok();
        bool in_time = secs < c.budget_s;
        std::printf("criterion %2d: %-58s %s (%zu cases, %.2fs%s)\n", c.id, c.title.c_str(),
                    ok && in_time ? "PASS" : "FAIL", rep.cases.size(), secs,
                    in_time ? "" : ", over budget");
        if (!ok) {
            for (const auto& cc : rep.cases) {
                if (cc.status != "fail") continue;
                std::printf("   fail: %s (%s)\n      expected: %s\n      actual:   %s\n",
                            cc.name.c_str(), cc.params.c_str(), cc.expected.c_str(),
                            cc.actual.c_str());
            }
        }
        all_ok = all_ok && ok && in_time;
    }
    std::printf("%s\n", all_ok ? "acceptance: all criteria passed"
                               : "acceptance: FAILURES present");
    return all_ok ? 0 : 1;
}
